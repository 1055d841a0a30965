class RefSolError(Exception):
    default_detail = 'Reference solution pipeline error.'
    default_code = 'error'

    def __init__(self, detail=None, code=None):
        self.detail = detail if detail is not None else self.default_detail
        self.code = code if code is not None else self.default_code
        super().__init__(self.detail)

    def __str__(self):
        return str(self.detail)


# corpus

class MissingRoot(RefSolError):
    default_detail = 'Corpus root does not exist.'
    default_code = 'missing_root'


class MalformedLayout(RefSolError):
    default_detail = 'No problem directories found.'
    default_code = 'malformed_layout'


# normalizer

class SourceError(RefSolError):
    """Base for errors that turn a submission into an outlier."""

    def __init__(self, line, column, reason):
        self.line = line
        self.column = column
        self.reason = reason
        super().__init__('{} at line {}, column {}'.format(reason, line, column))


class LexError(SourceError):
    default_code = 'lex_error'


class ParseError(SourceError):
    default_code = 'parse_error'


class OutlierError(RefSolError):
    default_code = 'outlier'

    def __init__(self, submission_id, cause):
        self.submission_id = submission_id
        self.cause = cause
        super().__init__('{}: {}'.format(type(cause).__name__, cause))


class UnmappedPlaceholder(RefSolError):
    default_code = 'unmapped_placeholder'

    def __init__(self, placeholder):
        self.placeholder = placeholder
        super().__init__('Placeholder {} is not in the identifier map'.format(placeholder))


# ranking / metrics

class EmptyProblem(RefSolError):
    default_code = 'empty_problem'

    def __init__(self, problem_id):
        self.problem_id = problem_id
        super().__init__('Problem {} has no unique programs'.format(problem_id))


class DomainError(RefSolError):
    default_detail = 'Value outside the metric domain.'
    default_code = 'domain_error'


# verify

class InterpreterMissing(RefSolError):
    default_detail = 'Interpreter not found.'
    default_code = 'interpreter_missing'


class SpawnFailure(RefSolError):
    default_detail = 'Could not start the program.'
    default_code = 'spawn_failure'


# cli

class ConfigError(RefSolError):
    default_detail = 'Invalid configuration.'
    default_code = 'config_error'
