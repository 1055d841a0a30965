"""Per-problem processing: normalize, group, rank inputs and metrics.

Problems are independent, so ``run_problems`` hands them to a process pool
when more than one job is requested.
"""
import logging
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from typing import Optional, Tuple

from tqdm import tqdm

from .dedup import baseline_deduplicate, deduplicate
from .exceptions import OutlierError
from .metrics import build_report
from .models import NormalizedProgram, Outlier, ProblemReport, UniqueProgram
from .normalizer import normalize

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ProblemResult:
    problem_id: str
    normalized: Tuple[NormalizedProgram, ...]
    outliers: Tuple[Outlier, ...]
    groups: Tuple[UniqueProgram, ...]
    baseline_groups: Tuple[UniqueProgram, ...]
    report: Optional[ProblemReport]

    @property
    def is_empty(self):
        return not self.groups


def normalize_all(submissions):
    normalized = []
    outliers = []
    for submission in submissions:
        try:
            normalized.append(normalize(submission))
        except OutlierError as exc:
            logger.debug('Outlier %s: %s', submission.id, exc)
            outliers.append(Outlier(submission.id, str(exc)))
    return normalized, outliers


def process_problem(problem_id, submissions, normalized=None):
    """``normalized`` replaces in-flow normalization when given (a previous run's rows).

    Submissions without a normalized row are then treated as outliers.
    """
    if normalized is None:
        normalized, outliers = normalize_all(submissions)
    else:
        known = {program.submission_id for program in normalized}
        outliers = [Outlier(submission.id, 'not in normalized input')
                    for submission in submissions if submission.id not in known]
    outlier_ids = {outlier.submission_id for outlier in outliers}
    valid = [submission for submission in submissions if submission.id not in outlier_ids]
    groups = deduplicate(normalized, {submission.id: submission for submission in valid})
    baseline_groups = baseline_deduplicate(valid)
    report = build_report(problem_id, groups, baseline_groups, len(outliers)) if groups else None
    if outliers:
        logger.info('Problem %s: %d outliers excluded', problem_id, len(outliers))
    return ProblemResult(problem_id, tuple(normalized), tuple(outliers), tuple(groups),
                         tuple(baseline_groups), report)


def run_problems(problems, jobs=1, normalized=None, progress=True):
    """Process every ``problem_id -> submissions`` entry; results come back sorted by problem id."""
    normalized = normalized or {}
    bar = tqdm(total=len(problems), desc='problems', unit='problem', disable=not progress)
    results = []
    with bar:
        if jobs <= 1:
            for problem_id, submissions in problems.items():
                results.append(process_problem(problem_id, submissions, normalized.get(problem_id)))
                bar.update()
        else:
            with ProcessPoolExecutor(max_workers=jobs) as executor:
                futures = [executor.submit(process_problem, problem_id, submissions, normalized.get(problem_id))
                           for problem_id, submissions in problems.items()]
                for future in as_completed(futures):
                    results.append(future.result())
                    bar.update()
    return sorted(results, key=lambda result: result.problem_id)
