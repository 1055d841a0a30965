import logging
from pathlib import Path

from Solutions.exceptions import EmptyProblem
from Solutions.models import Equivalence, EquivalenceResult, NormalizedProgram
from Solutions.ranking import suggest
from Solutions.reports import read_jsonl, render_suggestions, write_json, write_text
from Solutions.serializers import RankedSuggestionSerializer
from Solutions.verify import verify_all

from ._base import PipelineCommand

logger = logging.getLogger(__name__)

SUGGESTIONS_DIR = 'suggestions'
NO_SAMPLES = EquivalenceResult(Equivalence.INCONCLUSIVE, reason='no io samples')


class Command(PipelineCommand):
    help = 'Rank the unique programs of every problem and write Markdown and JSON suggestions.'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--verify', action='store_true',
                            help='Run each suggestion against its representative submission on the io samples.')
        parser.add_argument('--baseline', action='store_true',
                            help='Rank raw-source groups instead of normalized ones.')
        parser.add_argument('--normalized', help='Directory of JSONL files written by the normalize command.')

    def read_normalized(self, directory, problems):
        normalized = {}
        for problem_id, submissions in problems.items():
            path = Path(directory) / '{}.jsonl'.format(problem_id)
            if not path.is_file():
                logger.warning('No normalized rows for %s in %s, normalizing in-flow', problem_id, directory)
                continue
            wanted = {submission.id for submission in submissions}
            normalized[problem_id] = [
                NormalizedProgram(row['normalized_text'], row['identifier_map'], row['submission_id'])
                for row in read_jsonl(path) if row['submission_id'] in wanted and not row['outlier']
            ]
        return normalized

    def verify(self, config, corpus, suggestions_by_problem):
        sources = {submission.id: submission for submission in corpus.submissions}
        checks = []
        verifications = {}
        for problem_id, suggestions in suggestions_by_problem.items():
            samples = corpus.problems[problem_id].io_samples
            verifications[problem_id] = {}
            for suggestion in suggestions:
                if samples:
                    checks.append(((problem_id, suggestion.rank), sources[suggestion.representative_id],
                                   suggestion.program_text, samples))
                else:
                    verifications[problem_id][suggestion.rank] = NO_SAMPLES
        for (problem_id, rank), result in verify_all(checks, config.timeout_ms, config.parallelism,
                                                     config.interpreter):
            verifications[problem_id][rank] = result
        return verifications

    def run(self, config, options):
        corpus, valid, problems = self.load(config)
        normalized = self.read_normalized(options['normalized'], problems) if options['normalized'] else None
        results = self.process(config, problems, normalized)
        baseline = options['baseline']

        suggestions_by_problem = {}
        groups_by_problem = {}
        for result in results:
            groups = result.baseline_groups if baseline else result.groups
            try:
                suggestions_by_problem[result.problem_id] = suggest(
                    result.problem_id, list(groups), config.top_k, config.top_m, baseline=baseline)
            except EmptyProblem as exc:
                self.warning('Skipping {}: {}'.format(result.problem_id, exc))
                continue
            groups_by_problem[result.problem_id] = groups

        verifications = self.verify(config, corpus, suggestions_by_problem) if options['verify'] else {}

        out = config.output_dir / SUGGESTIONS_DIR
        for problem_id, suggestions in suggestions_by_problem.items():
            groups = groups_by_problem[problem_id]
            n_solutions = sum(group.duplicate_count for group in groups)
            checked = verifications.get(problem_id, {})
            write_text(out / '{}.md'.format(problem_id),
                       render_suggestions(problem_id, suggestions, groups, n_solutions, checked, baseline))
            write_json(out / '{}.json'.format(problem_id), {
                'problem_id': problem_id,
                'baseline': baseline,
                'n_solutions': n_solutions,
                'n_unique': len(groups),
                'suggestions': RankedSuggestionSerializer(
                    suggestions, many=True, context={'verifications': checked}).data,
            })
            for rank, result in sorted(checked.items()):
                if result.verdict != Equivalence.EQUIVALENT:
                    self.warning('{} suggestion {}: {}'.format(problem_id, rank, result))

        self.success('Wrote suggestions for {} problems into {}'.format(len(suggestions_by_problem), out))
