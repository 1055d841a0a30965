from Solutions.ranking import rank_programs
from Solutions.reports import write_json, write_jsonl
from Solutions.serializers import NormalizedRowSerializer, UniqueProgramSerializer

from ._base import PipelineCommand

NORMALIZED_DIR = 'normalized'
UNIQUE_DIR = 'unique'
REPORT_FILE = 'normalize_report.json'


class Command(PipelineCommand):
    help = 'Normalize every valid solution and write its rows and unique programs per problem.'

    def run(self, config, options):
        corpus, valid, problems = self.load(config)
        results = self.process(config, problems)

        for result in results:
            rows = {program.submission_id: {
                'submission_id': program.submission_id,
                'problem_id': result.problem_id,
                'normalized_text': program.text,
                'identifier_map': program.map,
                'outlier': False,
            } for program in result.normalized}
            rows.update((outlier.submission_id, {
                'submission_id': outlier.submission_id,
                'problem_id': result.problem_id,
                'outlier': True,
                'reason': outlier.reason,
            }) for outlier in result.outliers)
            write_jsonl(config.output_dir / NORMALIZED_DIR / '{}.jsonl'.format(result.problem_id),
                        [NormalizedRowSerializer(rows[submission.id]).data
                         for submission in problems[result.problem_id] if submission.id in rows])
            write_json(config.output_dir / UNIQUE_DIR / '{}.json'.format(result.problem_id), {
                'problem_id': result.problem_id,
                'unique_programs': UniqueProgramSerializer(rank_programs(result.groups), many=True).data,
            })

        n_normalized = sum(len(result.normalized) for result in results)
        n_outliers = sum(len(result.outliers) for result in results)
        write_json(config.output_dir / REPORT_FILE, {
            'language': config.language,
            'submissions': len(corpus.submissions),
            'skipped_rows': [{'problem_id': problem_id, 'row': row, 'reason': reason}
                             for problem_id, row, reason in valid.report.skipped_rows],
            'removed': valid.report.removed,
            'valid': len(valid.submissions),
            'normalized': n_normalized,
            'outlier_count': n_outliers,
            'outliers': {
                result.problem_id: [{'submission_id': outlier.submission_id, 'reason': outlier.reason}
                                    for outlier in result.outliers]
                for result in results if result.outliers
            },
        })
        if n_outliers:
            self.warning('{} submission(s) failed to normalize; see {}'.format(n_outliers, REPORT_FILE))
        self.success('Normalized {} programs for {} problems into {}'.format(
            n_normalized, len(results), config.output_dir / NORMALIZED_DIR))
