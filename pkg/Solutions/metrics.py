"""Evaluation quantities: unique ratios, reductions and top-n coverage.

Values are exact :class:`~fractions.Fraction` objects; only ``render_percent``
turns them into text.
"""
import statistics
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from operator import attrgetter

from .exceptions import DomainError
from .models import ProblemReport

PERCENT_QUANTUM = Decimal('0.01')

DATASET_COLUMNS = ('submissions', 'solutions', 'available', 'outliers', 'valid')


def unique_ratio(n_unique, n_solutions):
    if n_solutions <= 0:
        raise DomainError('unique_ratio needs at least one solution, got {}.'.format(n_solutions))
    if not 0 <= n_unique <= n_solutions:
        raise DomainError('{} unique programs out of {} solutions.'.format(n_unique, n_solutions))
    return Fraction(n_unique, n_solutions)


def render_percent(value):
    """``Fraction(81, 10699)`` -> ``'0.76%'`` (half-even, two decimals)."""
    value = Fraction(value)
    with localcontext() as context:
        context.prec = 60
        scaled = Decimal(value.numerator * 100) / Decimal(value.denominator)
        return '{}%'.format(scaled.quantize(PERCENT_QUANTUM, rounding=ROUND_HALF_EVEN))


def reduction(ratio):
    return 1 - Fraction(ratio)


def relative_reduction(n_unique, n_unique_baseline):
    """How much smaller the normalized grouping is than the raw one."""
    if n_unique_baseline <= 0:
        raise DomainError('relative_reduction needs a baseline count, got {}.'.format(n_unique_baseline))
    return 1 - Fraction(n_unique, n_unique_baseline)


def top_n_coverage(ranked_counts, n):
    counts = list(ranked_counts)
    if not counts:
        raise DomainError('Coverage of an empty ranking is undefined.')
    if n < 0:
        raise DomainError('n must not be negative, got {}.'.format(n))
    total = sum(counts)
    if total <= 0:
        raise DomainError('Coverage needs a positive total count.')
    return Fraction(sum(counts[:n]), total)


def coverage_curve(ranked_counts):
    counts = list(ranked_counts)
    return tuple((n, top_n_coverage(counts, n)) for n in range(1, len(counts) + 1))


def _selector(field):
    return attrgetter(field) if isinstance(field, str) else field


def mean_over_problems(reports, field):
    """Unweighted mean of a per-problem value; ``field`` is an attribute name or a callable."""
    reports = list(reports)
    if not reports:
        raise DomainError('Cannot average over zero problems.')
    select = _selector(field)
    return sum((Fraction(select(report)) for report in reports), Fraction(0)) / len(reports)


def _coverage_at(curve, n):
    # past the last group every solution is covered
    return curve[n - 1][1] if n <= len(curve) else Fraction(1)


def mean_coverage_at(reports, n, baseline=False):
    curve_of = attrgetter('baseline_coverage_curve' if baseline else 'coverage_curve')
    return mean_over_problems(reports, lambda report: _coverage_at(curve_of(report), n))


def mean_coverage_curve(reports, baseline=False):
    reports = list(reports)
    if not reports:
        raise DomainError('Cannot average over zero problems.')
    curve_of = attrgetter('baseline_coverage_curve' if baseline else 'coverage_curve')
    longest = max(len(curve_of(report)) for report in reports)
    return tuple((n, mean_coverage_at(reports, n, baseline)) for n in range(1, longest + 1))


def build_report(problem_id, groups, baseline_groups, n_outliers=0):
    """ProblemReport for one problem from its normalized and raw groupings."""
    counts = sorted((group.duplicate_count for group in groups), reverse=True)
    baseline_counts = sorted((group.duplicate_count for group in baseline_groups), reverse=True)
    return ProblemReport(
        problem_id=problem_id,
        n_solutions=sum(counts),
        n_unique=len(counts),
        n_unique_baseline=len(baseline_counts),
        coverage_curve=coverage_curve(counts) if counts else (),
        baseline_coverage_curve=coverage_curve(baseline_counts) if baseline_counts else (),
        n_outliers=n_outliers,
    )


def dataset_summary(rows):
    """Total, Mean and Std (sample) of each dataset column across problems."""
    rows = list(rows)
    if not rows:
        raise DomainError('Cannot summarize zero problems.')
    summary = {'Total': {}, 'Mean': {}, 'Std': {}}
    for column in DATASET_COLUMNS:
        values = [getattr(row, column) for row in rows]
        summary['Total'][column] = sum(values)
        summary['Mean'][column] = Fraction(sum(values), len(values))
        summary['Std'][column] = statistics.stdev(values) if len(values) > 1 else 0.0
    return summary
