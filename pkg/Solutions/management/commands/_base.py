from django.core.management.base import BaseCommand, CommandError

from Solutions.config import resolve
from Solutions.corpus import filter_valid, group_by_problem, load_corpus
from Solutions.exceptions import RefSolError
from Solutions.pipeline import run_problems

NO_VALID_SOLUTIONS = 'no valid solutions'


class PipelineCommand(BaseCommand):
    """Shared flags, configuration and corpus loading for the pipeline commands.

    Subclasses implement ``run(config, options)``. Domain and I/O errors leave
    the command with exit status 1, an empty corpus with exit status 2.
    """

    def add_arguments(self, parser):
        parser.add_argument('--corpus', help='Corpus root directory.')
        parser.add_argument('--language', help='Language label of the solutions to keep (default Python3).')
        parser.add_argument('--top-k', type=int, help='Programs suggested per problem.')
        parser.add_argument('--top-m', type=int, help='Identifier variants listed per program.')
        parser.add_argument('--out', help='Output directory.')
        parser.add_argument('--jobs', type=int, help='Worker processes.')
        parser.add_argument('--timeout-ms', type=int, help='Per-run timeout when executing programs.')
        parser.add_argument('--config', help='TOML file with run configuration.')

    def handle(self, *args, **options):
        self.verbosity = options['verbosity']
        try:
            config = resolve({
                'corpus_root': options['corpus'],
                'language': options['language'],
                'top_k': options['top_k'],
                'top_m': options['top_m'],
                'output_dir': options['out'],
                'parallelism': options['jobs'],
                'timeout_ms': options['timeout_ms'],
            }, options['config'])
            self.run(config, options)
        except (RefSolError, OSError) as exc:
            raise CommandError(str(exc), returncode=1) from exc

    def run(self, config, options):
        raise NotImplementedError('subclasses of PipelineCommand must provide a run() method')

    def load(self, config):
        """(loaded corpus, valid corpus, problem_id -> submissions)."""
        corpus = load_corpus(config.corpus_root)
        valid = filter_valid(corpus, config.language)
        if not valid.submissions:
            raise CommandError(NO_VALID_SOLUTIONS, returncode=2)
        return corpus, valid, group_by_problem(valid)

    def process(self, config, problems, normalized=None):
        return run_problems(problems, jobs=config.parallelism, normalized=normalized,
                            progress=self.verbosity > 0)

    def info(self, message):
        if self.verbosity > 0:
            self.stdout.write(message)

    def success(self, message):
        if self.verbosity > 0:
            self.stdout.write(self.style.SUCCESS(message))

    def warning(self, message):
        self.stderr.write(self.style.WARNING(message))
