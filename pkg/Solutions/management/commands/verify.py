from collections import Counter

from django.core.management.base import CommandError

from Solutions.models import Equivalence
from Solutions.reports import write_csv
from Solutions.verify import verify_all

from ._base import PipelineCommand

VERIFY_HEADER = ('problem_id', 'submission_id', 'verdict', 'detail')


def detail(result):
    if result.verdict == Equivalence.DIVERGENT:
        return 'sample {}'.format(result.sample_index)
    return result.reason


class Command(PipelineCommand):
    help = 'Check that every normalized solution prints what its original prints on the io samples.'

    def run(self, config, options):
        corpus, valid, problems = self.load(config)
        sources = {submission.id: submission for submission in valid.submissions}
        checks = []
        for result in self.process(config, problems):
            samples = corpus.problems[result.problem_id].io_samples
            if not samples:
                continue
            checks.extend(((result.problem_id, program.submission_id), sources[program.submission_id],
                           program.text, samples) for program in result.normalized)
        if not checks:
            raise CommandError('no problems with io samples', returncode=2)

        rows = []
        counts = Counter()
        for (problem_id, submission_id), result in verify_all(checks, config.timeout_ms, config.parallelism,
                                                              config.interpreter):
            counts[result.verdict] += 1
            rows.append((problem_id, submission_id, result.verdict.label, detail(result)))
        write_csv(config.output_dir / 'verify.csv', VERIFY_HEADER, rows)

        for verdict in Equivalence:
            self.info('{}: {}'.format(verdict.label, counts[verdict]))
        if counts[Equivalence.DIVERGENT]:
            self.warning('{} normalized program(s) diverge from their original'.format(
                counts[Equivalence.DIVERGENT]))
        else:
            self.success('Verified {} programs into {}'.format(len(rows), config.output_dir / 'verify.csv'))
