import hashlib
import logging
from collections.abc import Mapping

from .models import IdentifierMap, UniqueProgram

logger = logging.getLogger(__name__)


def text_digest(text):
    return hashlib.sha256(text.encode('utf-8')).hexdigest()


class _Group:
    __slots__ = ('text', 'members')

    def __init__(self, text):
        self.text = text
        # (submitted_at, submission_id, identifier_map)
        self.members = []


class Grouping:
    """Exact-match grouping of program texts.

    Texts are bucketed by digest and compared in full inside a bucket.
    ``merge`` is associative and commutative, so shards can be grouped
    separately and combined.
    """

    def __init__(self):
        self._buckets = {}

    def _group(self, text):
        bucket = self._buckets.setdefault(text_digest(text), [])
        for group in bucket:
            if group.text == text:
                return group
        group = _Group(text)
        bucket.append(group)
        return group

    def add(self, text, submission_id, submitted_at, identifier_map=None):
        self._group(text).members.append(
            (submitted_at, submission_id, identifier_map if identifier_map is not None else IdentifierMap()))
        return self

    def merge(self, other):
        merged = Grouping()
        for grouping in (self, other):
            for bucket in grouping._buckets.values():
                for group in bucket:
                    merged._group(group.text).members.extend(group.members)
        return merged

    def __len__(self):
        return sum(len(bucket) for bucket in self._buckets.values())

    def freeze(self):
        programs = []
        for bucket in self._buckets.values():
            for group in bucket:
                members = sorted(group.members, key=lambda member: (member[0], member[1]))
                programs.append(UniqueProgram(
                    normalized_text=group.text,
                    member_ids=tuple(member[1] for member in members),
                    identifier_maps=tuple(member[2] for member in members),
                    earliest_submission=members[0][0],
                ))
        programs.sort(key=lambda program: (program.earliest_submission, program.member_ids[0]))
        return programs


def _timestamps(submissions):
    if isinstance(submissions, Mapping):
        submissions = submissions.values()
    return {submission.id: submission.submitted_at for submission in submissions}


def deduplicate(programs, submissions):
    """Group normalized programs of one problem by exact text.

    ``submissions`` maps submission id to :class:`Submission` (a plain
    iterable of submissions works too) and supplies the timestamps.
    """
    submitted_at = _timestamps(submissions)
    grouping = Grouping()
    for program in programs:
        grouping.add(program.text, program.submission_id, submitted_at[program.submission_id], program.map)
    groups = grouping.freeze()
    logger.debug('%d normalized programs -> %d unique', len(programs), len(groups))
    return groups


def baseline_deduplicate(submissions):
    """Exact match on the raw source, no normalization."""
    grouping = Grouping()
    for submission in submissions:
        grouping.add(submission.source, submission.id, submission.submitted_at)
    return grouping.freeze()
