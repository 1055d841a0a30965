from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Tuple

from django.db import models

from .exceptions import DomainError


# Domain types are plain immutable records; nothing here is stored in a database.


class VerdictTag(models.TextChoices):
    ACCEPTED = 'AC', 'Accepted'
    WRONG_ANSWER = 'WA', 'Wrong Answer'
    RUNTIME_ERROR = 'RE', 'Runtime Error'
    OTHER = 'OTHER', 'Other'


VERDICT_ALIASES = {
    'AC': VerdictTag.ACCEPTED,
    'ACCEPTED': VerdictTag.ACCEPTED,
    'WA': VerdictTag.WRONG_ANSWER,
    'WRONGANSWER': VerdictTag.WRONG_ANSWER,
    'RE': VerdictTag.RUNTIME_ERROR,
    'RUNTIMEERROR': VerdictTag.RUNTIME_ERROR,
}


@dataclass(frozen=True)
class Verdict:
    tag: VerdictTag
    label: str = ''

    @classmethod
    def parse(cls, text):
        label = (text or '').strip()
        if not label:
            raise ValueError('verdict is empty')
        key = ''.join(label.upper().split()).replace('_', '')
        tag = VERDICT_ALIASES.get(key)
        if tag is None:
            return cls(VerdictTag.OTHER, label)
        return cls(tag)

    @property
    def is_accepted(self):
        return self.tag == VerdictTag.ACCEPTED

    def __str__(self):
        return self.label if self.tag == VerdictTag.OTHER else self.tag.value


@dataclass(frozen=True)
class Submission:
    id: str
    problem_id: str
    user_id: str
    submitted_at: int
    verdict: Verdict
    language: str
    source: str
    is_public: bool

    def __str__(self):
        return str(self.id)


@dataclass(frozen=True)
class Problem:
    id: str
    title: Optional[str] = None
    # (stdin, expected stdout) pairs
    io_samples: Tuple[Tuple[str, str], ...] = ()

    def __str__(self):
        return str(self.id)


@dataclass
class CorpusReport:
    skipped_rows: list = field(default_factory=list)     # (problem_id, row number, reason)
    removed: Dict[str, int] = field(default_factory=dict)

    @property
    def skipped(self):
        return len(self.skipped_rows)


@dataclass(frozen=True)
class Corpus:
    problems: Dict[str, Problem]
    submissions: Tuple[Submission, ...]
    report: CorpusReport = field(default_factory=CorpusReport, compare=False)


class IdentifierCategory(models.TextChoices):
    VAR = 'VAR', 'Var'
    FUNC = 'FUNC', 'Func'
    CLASS = 'CLASS', 'Class'
    ARG = 'ARG', 'Arg'


@dataclass(frozen=True)
class IdentifierMap:
    # (placeholder, original) in first-occurrence order of the placeholder
    entries: Tuple[Tuple[str, str], ...] = ()

    def as_dict(self):
        return dict(self.entries)

    @property
    def placeholders(self):
        return tuple(placeholder for placeholder, _ in self.entries)

    def is_identity(self):
        return all(placeholder == original for placeholder, original in self.entries)

    def serialize(self):
        return ','.join('{}={}'.format(placeholder, original) for placeholder, original in self.entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


@dataclass(frozen=True)
class NormalizedProgram:
    text: str
    map: IdentifierMap
    submission_id: str = ''


@dataclass(frozen=True)
class Outlier:
    submission_id: str
    reason: str


@dataclass(frozen=True)
class UniqueProgram:
    normalized_text: str
    member_ids: Tuple[str, ...]
    identifier_maps: Tuple[IdentifierMap, ...]
    earliest_submission: int

    @property
    def duplicate_count(self):
        return len(self.member_ids)


@dataclass(frozen=True)
class RankedSuggestion:
    rank: int
    program_text: str
    duplicate_count: int
    identifier_variants: Tuple[Tuple[IdentifierMap, int], ...]
    coverage_share: Fraction
    normalized_text: str = ''
    representative_id: str = ''


@dataclass(frozen=True)
class ProblemReport:
    problem_id: str
    n_solutions: int
    n_unique: int
    n_unique_baseline: int
    coverage_curve: Tuple[Tuple[int, Fraction], ...] = ()
    baseline_coverage_curve: Tuple[Tuple[int, Fraction], ...] = ()
    n_outliers: int = 0

    def _ratio(self, count):
        if self.n_solutions == 0:
            raise DomainError('Problem {} has no solutions'.format(self.problem_id))
        return Fraction(count, self.n_solutions)

    @property
    def unique_ratio(self):
        return self._ratio(self.n_unique)

    @property
    def baseline_ratio(self):
        return self._ratio(self.n_unique_baseline)

    @property
    def reduction(self):
        return 1 - self.unique_ratio

    @property
    def baseline_reduction(self):
        return 1 - self.baseline_ratio

    @property
    def relative_reduction(self):
        if self.n_unique_baseline == 0:
            raise DomainError('Problem {} has no baseline groups'.format(self.problem_id))
        return 1 - Fraction(self.n_unique, self.n_unique_baseline)


@dataclass(frozen=True)
class DatasetRow:
    problem_id: str
    submissions: int
    solutions: int
    available: int
    outliers: int

    @property
    def valid(self):
        return self.available - self.outliers


@dataclass(frozen=True)
class ExecutionResult:
    stdout: bytes
    exit_status: Optional[int]      # None when timed out
    elapsed_ms: int
    timed_out: bool = False


class Equivalence(models.TextChoices):
    EQUIVALENT = 'equivalent', 'Equivalent'
    DIVERGENT = 'divergent', 'Divergent'
    INCONCLUSIVE = 'inconclusive', 'Inconclusive'


@dataclass(frozen=True)
class EquivalenceResult:
    verdict: Equivalence
    sample_index: Optional[int] = None
    reason: str = ''

    def __str__(self):
        if self.verdict == Equivalence.DIVERGENT:
            return '{}({})'.format(self.verdict.label, self.sample_index)
        if self.verdict == Equivalence.INCONCLUSIVE:
            return '{}({})'.format(self.verdict.label, self.reason)
        return self.verdict.label
