"""Exception hierarchy shared by all wikitailor modules."""

from __future__ import annotations


class TailorError(Exception):
    """Base class for every error raised by wikitailor."""


class DumpParseError(TailorError):
    """Malformed XML or SQL input; carries the byte offset of the failure."""

    def __init__(self, message: str, offset: int | None = None, path: str | None = None):
        self.offset = offset
        self.path = path
        where = []
        if path is not None:
            where.append(str(path))
        if offset is not None:
            where.append(f"byte offset {offset}")
        suffix = f" ({', '.join(where)})" if where else ""
        super().__init__(f"{message}{suffix}")


class ConfigurationError(TailorError):
    pass


class StoreIOError(TailorError):
    def __init__(self, message: str, path=None):
        self.path = path
        super().__init__(f"{message}: {path}" if path is not None else message)


class StoreFormatError(StoreIOError):
    """A persisted store file could not be decoded."""

    def __init__(self, message: str, path=None, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"{message} at line {line}"
        super().__init__(message, path)


class IntegrityError(StoreIOError):
    pass


class CategoryNotFoundError(TailorError):
    def __init__(self, name: str, suggestions: list[str]):
        self.name = name
        self.suggestions = list(suggestions)
        hint = ", ".join(repr(s) for s in self.suggestions) or "none"
        super().__init__(f"no category titled {name!r}; closest: {hint}")


class EmptySeedError(TailorError):
    pass


class EmptyVocabularyError(TailorError):
    pass


class UndefinedMetricError(TailorError):
    """A metric has no defined value on the given input."""


class SystemNameError(TailorError, ValueError):
    pass
