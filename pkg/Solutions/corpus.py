"""Reading a corpus directory tree and selecting the valid solutions in it.

Layout::

    <root>/<problem_id>/metadata.csv      id,user_id,submitted_at,verdict,language,is_public
    <root>/<problem_id>/src/<id>.py
    <root>/<problem_id>/io_samples/<n>.in, <n>.out   (optional)
"""
import csv
import logging
from collections import Counter
from pathlib import Path

from .exceptions import MalformedLayout, MissingRoot
from .models import Corpus, CorpusReport, Problem, Submission
from .serializers import SubmissionRowSerializer

logger = logging.getLogger(__name__)

METADATA_FILE = 'metadata.csv'
SOURCE_DIR = 'src'
SAMPLES_DIR = 'io_samples'

REMOVAL_REASONS = ('verdict', 'language', 'private')


def _read_text(path):
    # bytes -> str keeps '\r\n' in samples and sources as written
    return path.read_bytes().decode('utf-8')


def _sample_key(path):
    stem = path.stem
    return (0, int(stem), stem) if stem.isdigit() else (1, 0, stem)


def _load_samples(directory):
    samples_dir = directory / SAMPLES_DIR
    if not samples_dir.is_dir():
        return ()
    samples = []
    for stdin_path in sorted(samples_dir.glob('*.in'), key=_sample_key):
        stdout_path = stdin_path.with_suffix('.out')
        if not stdout_path.is_file():
            logger.warning('Sample %s has no matching .out file, ignored', stdin_path)
            continue
        samples.append((_read_text(stdin_path), _read_text(stdout_path)))
    return tuple(samples)


def _format_errors(errors):
    return '; '.join('{}: {}'.format(field, ' '.join(str(message) for message in messages))
                     for field, messages in errors.items())


def _parse_row(directory, problem_id, row):
    """(Submission, None) or (None, reason)."""
    serializer = SubmissionRowSerializer(data=row)
    if not serializer.is_valid():
        return None, _format_errors(serializer.errors)
    data = serializer.validated_data
    source_path = directory / SOURCE_DIR / '{}.py'.format(data['id'])
    try:
        source = _read_text(source_path)
    except FileNotFoundError:
        return None, 'source file {} is missing'.format(source_path.name)
    except (OSError, UnicodeDecodeError) as exc:
        return None, 'source file {} is unreadable: {}'.format(source_path.name, exc)
    if not source.rstrip():
        return None, 'source file {} is empty'.format(source_path.name)
    return Submission(
        id=data['id'],
        problem_id=problem_id,
        user_id=data['user_id'],
        submitted_at=data['submitted_at'],
        verdict=data['verdict'],
        language=data['language'],
        source=source,
        is_public=data['is_public'],
    ), None


def load_corpus(root):
    root = Path(root)
    if not root.is_dir():
        raise MissingRoot('Corpus root {} does not exist.'.format(root))
    directories = sorted(path for path in root.iterdir()
                         if path.is_dir() and (path / METADATA_FILE).is_file())
    if not directories:
        raise MalformedLayout('No problem directories found under {}.'.format(root))

    problems = {}
    submissions = []
    report = CorpusReport()
    seen = set()
    for directory in directories:
        problem_id = directory.name
        problems[problem_id] = Problem(problem_id, io_samples=_load_samples(directory))
        with open(directory / METADATA_FILE, encoding='utf-8-sig', newline='') as handle:
            # row numbers count the header as line 1
            for number, row in enumerate(csv.DictReader(handle), start=2):
                submission, reason = _parse_row(directory, problem_id, row)
                if submission is not None and submission.id in seen:
                    submission, reason = None, 'duplicate id {}'.format(submission.id)
                if submission is None:
                    logger.warning('Skipping %s/%s row %d: %s', problem_id, METADATA_FILE, number, reason)
                    report.skipped_rows.append((problem_id, number, reason))
                    continue
                seen.add(submission.id)
                submissions.append(submission)
    logger.info('Loaded %d submissions for %d problems from %s (%d rows skipped)',
                len(submissions), len(problems), root, report.skipped)
    return Corpus(problems, tuple(submissions), report)


def removal_reason(submission, language):
    if not submission.verdict.is_accepted:
        return 'verdict'
    if submission.language != language:
        return 'language'
    if not submission.is_public:
        return 'private'
    return None


def filter_valid(corpus, language):
    """Accepted, public submissions in ``language``; removals are counted per reason."""
    removed = Counter()
    kept = []
    for submission in corpus.submissions:
        reason = removal_reason(submission, language)
        if reason is None:
            kept.append(submission)
        else:
            removed[reason] += 1
    report = CorpusReport(list(corpus.report.skipped_rows),
                          {reason: removed[reason] for reason in REMOVAL_REASONS})
    logger.info('%d of %d submissions are valid %s solutions (removed: %s)',
                len(kept), len(corpus.submissions), language,
                ', '.join('{}={}'.format(reason, count) for reason, count in report.removed.items()))
    return Corpus(corpus.problems, tuple(kept), report)


def submission_order(submission):
    return submission.submitted_at, submission.id


def group_by_problem(corpus):
    groups = {}
    for submission in corpus.submissions:
        groups.setdefault(submission.problem_id, []).append(submission)
    return {problem_id: sorted(groups[problem_id], key=submission_order) for problem_id in sorted(groups)}
