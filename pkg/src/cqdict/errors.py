"""Exception hierarchy shared by all cqdict modules."""


class CqError(Exception):
    """Base class for every domain error raised by cqdict."""


class UwSyntaxError(CqError, ValueError):
    def __init__(self, message, text="", pos=None):
        self.text = text
        self.pos = pos
        where = f" at column {pos + 1}" if pos is not None else ""
        super().__init__(f"{message}{where}")
        self.reason = message


class UnlSyntaxError(CqError, ValueError):
    def __init__(self, message, line_no=None):
        self.line_no = line_no
        self.reason = message
        prefix = f"line {line_no}: " if line_no is not None else ""
        super().__init__(prefix + message)


class DictionaryError(CqError):
    pass


class MalformedRecordError(DictionaryError, ValueError):
    pass


class DuplicateIdError(DictionaryError, ValueError):
    pass


class ConsistencyError(DictionaryError):
    def __init__(self, violations):
        self.violations = list(violations)
        lines = "\n".join(str(v) for v in self.violations)
        super().__init__(f"{len(self.violations)} consistency violation(s)\n{lines}")


class NoClassifierError(DictionaryError, LookupError):
    pass


class SelectionError(CqError):
    pass


class NoSenseError(SelectionError, LookupError):
    pass


class NoMatchError(SelectionError, LookupError):
    pass


class UnknownAnimacyError(SelectionError):
    pass


class UnknownSizeError(SelectionError):
    pass


class NormalizationError(CqError):
    pass


class NoNumericPhraseError(NormalizationError):
    pass


class AmbiguousPatternError(NormalizationError):
    def __init__(self, matches):
        self.matches = list(matches)
        super().__init__(f"{len(self.matches)} overlapping numeric-phrase matches")


class NoCompatibleHostError(NormalizationError):
    def __init__(self, message, notes=()):
        super().__init__(message)
        self.notes = tuple(notes)
