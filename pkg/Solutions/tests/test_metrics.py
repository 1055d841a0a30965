from fractions import Fraction

from django.test import SimpleTestCase

from Solutions.exceptions import DomainError
from Solutions.metrics import (
    build_report, coverage_curve, dataset_summary, mean_coverage_at, mean_coverage_curve,
    mean_over_problems, reduction, relative_reduction, render_percent, top_n_coverage, unique_ratio,
)
from Solutions.models import DatasetRow, ProblemReport

from .test_ranking import group


def report(problem_id, n_solutions, n_unique, counts=(), n_unique_baseline=None):
    return ProblemReport(problem_id, n_solutions, n_unique,
                         n_unique if n_unique_baseline is None else n_unique_baseline,
                         coverage_curve=coverage_curve(counts) if counts else ())


class UniqueRatioTests(SimpleTestCase):

    def test_published_values(self):
        self.assertEqual(render_percent(unique_ratio(81, 10699)), '0.76%')
        self.assertEqual(render_percent(unique_ratio(1361, 3420)), '39.80%')
        self.assertEqual(render_percent(unique_ratio(2408, 3420)), '70.41%')

    def test_identity(self):
        self.assertEqual(render_percent(unique_ratio(1, 1)), '100.00%')

    def test_exact(self):
        self.assertEqual(unique_ratio(3, 12), Fraction(1, 4))

    def test_domain(self):
        with self.assertRaises(DomainError):
            unique_ratio(0, 0)
        with self.assertRaises(DomainError):
            unique_ratio(5, 4)

    def test_half_even_rounding(self):
        self.assertEqual(render_percent(Fraction(1, 800)), '0.12%')
        self.assertEqual(render_percent(Fraction(3, 800)), '0.38%')

    def test_reductions(self):
        self.assertEqual(reduction(Fraction(1, 4)), Fraction(3, 4))
        self.assertEqual(render_percent(relative_reduction(1361, 2408)), '43.48%')
        with self.assertRaises(DomainError):
            relative_reduction(1, 0)


class CoverageTests(SimpleTestCase):

    def test_top_n(self):
        self.assertEqual(top_n_coverage([5, 3, 2], 1), Fraction(1, 2))
        self.assertEqual(top_n_coverage([5, 3, 2], 2), Fraction(4, 5))
        self.assertEqual(top_n_coverage([5, 3, 2], 3), 1)
        self.assertEqual(top_n_coverage([5, 3, 2], 7), 1)
        self.assertEqual(top_n_coverage([5, 3, 2], 0), 0)

    def test_domain(self):
        with self.assertRaises(DomainError):
            top_n_coverage([], 1)
        with self.assertRaises(DomainError):
            top_n_coverage([1], -1)

    def test_curve(self):
        self.assertEqual(coverage_curve([5, 3, 2]),
                         ((1, Fraction(1, 2)), (2, Fraction(4, 5)), (3, Fraction(1))))


class MeanTests(SimpleTestCase):

    def test_mean_of_ratios(self):
        reports = [report('A', 10, 2), report('B', 10, 6)]
        self.assertEqual(render_percent(mean_over_problems(reports, 'unique_ratio')), '40.00%')

    def test_single_problem(self):
        self.assertEqual(mean_over_problems([report('A', 8, 2)], 'unique_ratio'), Fraction(1, 4))

    def test_callable_selector(self):
        reports = [report('A', 10, 2), report('B', 30, 6)]
        self.assertEqual(mean_over_problems(reports, lambda r: r.n_solutions), 20)

    def test_empty(self):
        with self.assertRaises(DomainError):
            mean_over_problems([], 'unique_ratio')

    def test_short_curves_count_as_fully_covered(self):
        reports = [report('A', 10, 3, counts=[5, 3, 2]), report('B', 4, 1, counts=[4])]
        self.assertEqual(mean_coverage_at(reports, 1), Fraction(3, 4))
        self.assertEqual(mean_coverage_curve(reports),
                         ((1, Fraction(3, 4)), (2, Fraction(9, 10)), (3, Fraction(1))))


class BuildReportTests(SimpleTestCase):

    def test_counts_and_curves(self):
        groups = [group('a\n', 5), group('b\n', 2), group('c\n', 3)]
        baseline = [group(str(i), 1) for i in range(10)]
        built = build_report('P', groups, baseline, n_outliers=1)
        self.assertEqual((built.n_solutions, built.n_unique, built.n_unique_baseline), (10, 3, 10))
        self.assertEqual(built.coverage_curve[0], (1, Fraction(1, 2)))
        self.assertEqual(built.baseline_coverage_curve[-1], (10, 1))
        self.assertEqual(built.unique_ratio, Fraction(3, 10))
        self.assertEqual(built.relative_reduction, Fraction(7, 10))
        self.assertEqual(built.n_outliers, 1)


class DatasetSummaryTests(SimpleTestCase):

    def test_total_mean_std(self):
        rows = [DatasetRow('A', 14, 13, 11, 1), DatasetRow('B', 7, 7, 7, 0), DatasetRow('C', 12, 12, 12, 0)]
        summary = dataset_summary(rows)
        self.assertEqual(summary['Total']['submissions'], 33)
        self.assertEqual(summary['Total']['valid'], 29)
        self.assertEqual(summary['Mean']['submissions'], 11)
        self.assertAlmostEqual(summary['Std']['outliers'], 0.57735, places=4)

    def test_single_row_has_zero_std(self):
        self.assertEqual(dataset_summary([DatasetRow('A', 3, 2, 2, 0)])['Std']['valid'], 0.0)

    def test_empty(self):
        with self.assertRaises(DomainError):
            dataset_summary([])
