from collections import Counter

from django.core.management.base import CommandError

from Solutions.corpus import removal_reason
from Solutions.metrics import (
    DATASET_COLUMNS, dataset_summary, mean_coverage_at, mean_coverage_curve, mean_over_problems,
    relative_reduction, render_percent, unique_ratio,
)
from Solutions.models import DatasetRow
from Solutions.reports import write_csv, write_json

from ._base import NO_VALID_SOLUTIONS, PipelineCommand

STATS_HEADER = ('problem_id', 'n_solutions', 'baseline_unique', 'baseline_ratio',
                'ours_unique', 'ours_ratio', 'outliers')
COVERAGE_HEADER = ('problem_id', 'n', 'coverage')


def render_coverage(value):
    return '{:.6f}'.format(float(value))


def dataset_rows(corpus, language, outliers):
    """Per-problem counts over the whole loaded corpus, before filtering."""
    counts = {problem_id: Counter() for problem_id in corpus.problems}
    for submission in corpus.submissions:
        tally = counts[submission.problem_id]
        tally['submissions'] += 1
        if submission.verdict.is_accepted:
            tally['solutions'] += 1
        if removal_reason(submission, language) is None:
            tally['available'] += 1
    return [DatasetRow(problem_id, tally['submissions'], tally['solutions'], tally['available'],
                       outliers.get(problem_id, 0))
            for problem_id, tally in sorted(counts.items())]


class Command(PipelineCommand):
    help = 'Write unique-ratio, coverage and dataset tables for the corpus.'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--baseline', action='store_true',
                            help='Also write the coverage curves of the raw-source grouping.')

    def write_stats(self, path, reports):
        rows = [(report.problem_id, report.n_solutions, report.n_unique_baseline,
                 render_percent(report.baseline_ratio), report.n_unique,
                 render_percent(report.unique_ratio), report.n_outliers) for report in reports]
        n_solutions = sum(report.n_solutions for report in reports)
        n_baseline = sum(report.n_unique_baseline for report in reports)
        n_unique = sum(report.n_unique for report in reports)
        rows.append(('Total', n_solutions, n_baseline, render_percent(unique_ratio(n_baseline, n_solutions)),
                     n_unique, render_percent(unique_ratio(n_unique, n_solutions)),
                     sum(report.n_outliers for report in reports)))
        rows.append(('Mean',
                     round(mean_over_problems(reports, 'n_solutions')),
                     round(mean_over_problems(reports, 'n_unique_baseline')),
                     render_percent(mean_over_problems(reports, 'baseline_ratio')),
                     round(mean_over_problems(reports, 'n_unique')),
                     render_percent(mean_over_problems(reports, 'unique_ratio')),
                     round(mean_over_problems(reports, 'n_outliers'))))
        write_csv(path, STATS_HEADER, rows)

    def write_coverage(self, path, reports, baseline=False):
        rows = []
        for report in reports:
            curve = report.baseline_coverage_curve if baseline else report.coverage_curve
            rows.extend((report.problem_id, n, render_coverage(value)) for n, value in curve)
        rows.extend(('Mean', n, render_coverage(value)) for n, value in mean_coverage_curve(reports, baseline))
        write_csv(path, COVERAGE_HEADER, rows)

    def write_dataset(self, path, rows):
        summary = dataset_summary(rows)
        table = [(row.problem_id,) + tuple(getattr(row, column) for column in DATASET_COLUMNS) for row in rows]
        table.append(('Total',) + tuple(summary['Total'][column] for column in DATASET_COLUMNS))
        table.append(('Mean',) + tuple(round(summary['Mean'][column]) for column in DATASET_COLUMNS))
        table.append(('Std',) + tuple(round(summary['Std'][column]) for column in DATASET_COLUMNS))
        write_csv(path, ('problem_id',) + DATASET_COLUMNS, table)

    def summary(self, reports):
        mean_unique = mean_over_problems(reports, 'n_unique')
        mean_baseline = mean_over_problems(reports, 'n_unique_baseline')
        return {
            'problems': len(reports),
            'mean_solutions': float(mean_over_problems(reports, 'n_solutions')),
            'mean_unique': float(mean_unique),
            'mean_baseline_unique': float(mean_baseline),
            'mean_unique_ratio': render_percent(mean_over_problems(reports, 'unique_ratio')),
            'mean_baseline_ratio': render_percent(mean_over_problems(reports, 'baseline_ratio')),
            'mean_reduction': render_percent(mean_over_problems(reports, 'reduction')),
            'mean_baseline_reduction': render_percent(mean_over_problems(reports, 'baseline_reduction')),
            'relative_reduction': render_percent(relative_reduction(mean_unique, mean_baseline)),
            'mean_relative_reduction': render_percent(mean_over_problems(reports, 'relative_reduction')),
            'top_1_coverage': render_percent(mean_coverage_at(reports, 1)),
            'top_10_coverage': render_percent(mean_coverage_at(reports, 10)),
            'baseline_top_1_coverage': render_percent(mean_coverage_at(reports, 1, baseline=True)),
            'baseline_top_10_coverage': render_percent(mean_coverage_at(reports, 10, baseline=True)),
        }

    def run(self, config, options):
        corpus, valid, problems = self.load(config)
        results = self.process(config, problems)
        reports = [result.report for result in results if result.report is not None]
        for result in results:
            if result.report is None:
                self.warning('Skipping {}: every solution is an outlier'.format(result.problem_id))
        if not reports:
            raise CommandError(NO_VALID_SOLUTIONS, returncode=2)

        out = config.output_dir
        self.write_stats(out / 'stats.csv', reports)
        self.write_coverage(out / 'coverage.csv', reports)
        if options['baseline']:
            self.write_coverage(out / 'coverage_baseline.csv', reports, baseline=True)
        outliers = {result.problem_id: len(result.outliers) for result in results}
        self.write_dataset(out / 'dataset.csv', dataset_rows(corpus, config.language, outliers))
        summary = self.summary(reports)
        write_json(out / 'summary.json', summary)

        self.info('Mean unique ratio {} (baseline {}), relative reduction {}'.format(
            summary['mean_unique_ratio'], summary['mean_baseline_ratio'], summary['relative_reduction']))
        self.success('Wrote statistics for {} problems into {}'.format(len(reports), out))
