"""Running programs on sample input and comparing what they print.

There is no sandbox here: only run corpora you trust.
"""
import logging
import os
import shutil
import subprocess
import tempfile
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from django.conf import settings

from .exceptions import DomainError, InterpreterMissing, SpawnFailure
from .models import Equivalence, EquivalenceResult, ExecutionResult

logger = logging.getLogger(__name__)

PROGRAM_NAME = 'main.py'


def interpreter_path(interpreter=None):
    name = interpreter or settings.REFSOL['INTERPRETER']
    path = shutil.which(name)
    if path is None:
        raise InterpreterMissing('Interpreter {!r} was not found on PATH.'.format(name))
    return path


def _as_bytes(data):
    return data.encode('utf-8') if isinstance(data, str) else bytes(data)


def _elapsed_ms(started):
    return int((time.monotonic() - started) * 1000)


def run_program(source, stdin, timeout_ms, interpreter=None):
    """Run ``source`` in its own process and temp directory, killing it after ``timeout_ms``."""
    executable = interpreter_path(interpreter)
    environment = dict(os.environ, PYTHONIOENCODING='utf-8', PYTHONHASHSEED='0')
    with tempfile.TemporaryDirectory(prefix='refsol-') as workdir:
        program = Path(workdir) / PROGRAM_NAME
        program.write_text(source, encoding='utf-8')
        started = time.monotonic()
        try:
            completed = subprocess.run(
                [executable, str(program)],
                input=_as_bytes(stdin),
                stdout=subprocess.PIPE,
                stderr=subprocess.DEVNULL,
                cwd=workdir,
                env=environment,
                timeout=timeout_ms / 1000,
            )
        except subprocess.TimeoutExpired as exc:
            return ExecutionResult(exc.stdout or b'', None, _elapsed_ms(started), timed_out=True)
        except OSError as exc:
            raise SpawnFailure('Could not start {}: {}'.format(executable, exc)) from exc
    return ExecutionResult(completed.stdout, completed.returncode, _elapsed_ms(started))


def canonical_output(stdout):
    return stdout.replace(b'\r\n', b'\n')


def check_equivalence(original, transformed, samples, timeout_ms, interpreter=None):
    """Compare the stdout of two programs on every sample stdin.

    ``original`` is a :class:`Submission` or source text. The first mismatch
    makes the pair Divergent; a timeout or a failed start makes it
    Inconclusive. :class:`InterpreterMissing` is not caught.
    """
    if not samples:
        raise DomainError('check_equivalence needs at least one sample.')
    source = getattr(original, 'source', original)
    for index, (stdin, _expected) in enumerate(samples):
        try:
            left = run_program(source, stdin, timeout_ms, interpreter)
            right = run_program(transformed, stdin, timeout_ms, interpreter)
        except SpawnFailure as exc:
            return EquivalenceResult(Equivalence.INCONCLUSIVE, index, str(exc))
        if left.timed_out or right.timed_out:
            return EquivalenceResult(Equivalence.INCONCLUSIVE, index, 'timeout')
        if canonical_output(left.stdout) != canonical_output(right.stdout):
            return EquivalenceResult(Equivalence.DIVERGENT, index)
    return EquivalenceResult(Equivalence.EQUIVALENT)


def verify_all(checks, timeout_ms, jobs=1, interpreter=None):
    """Run ``(key, original, transformed, samples)`` checks on ``jobs`` threads.

    Yields ``(key, EquivalenceResult)`` in input order.
    """
    interpreter = interpreter_path(interpreter)

    def run(check):
        key, original, transformed, samples = check
        result = check_equivalence(original, transformed, samples, timeout_ms, interpreter)
        logger.debug('%s: %s', key, result)
        return key, result

    with ThreadPoolExecutor(max_workers=jobs) as executor:
        yield from executor.map(run, checks)
