from pathlib import Path


class MtaugError(Exception):
    """Base class for every error the toolkit raises on purpose."""

    exit_code: int = 2

    def __init__(self, message: str, *, path: str | Path | None = None, line: int | None = None) -> None:
        self.path = str(path) if path is not None else None
        self.line = line
        location = ""
        if self.path is not None:
            location = f"{self.path}:{line}: " if line is not None else f"{self.path}: "
        super().__init__(f"{location}{message}")


class ConfigurationError(MtaugError):
    """Invalid flags, config file or spec values."""

    exit_code = 1


class StorageError(MtaugError):
    """File system failure (missing input, unwritable destination)."""

    exit_code = 3


class DataFormatError(MtaugError):
    """Input data violates its declared format or a data-model invariant."""

    exit_code = 2


class LineCountMismatch(DataFormatError):
    pass


class CorpusEncodingError(DataFormatError):
    pass


class MalformedLink(DataFormatError):
    pass


class OutOfRangeLink(DataFormatError):
    pass


class MalformedRow(DataFormatError):
    pass


class HeaderMismatch(DataFormatError):
    pass


class MalformedVector(DataFormatError):
    pass


class TagMismatch(DataFormatError):
    pass


class LengthMismatch(DataFormatError):
    pass


class EmptyInput(DataFormatError):
    pass


class EmptyReference(DataFormatError):
    pass


class EmptyDictionary(DataFormatError):
    pass


class EmptyThesaurus(DataFormatError):
    pass


class EmptyEmbeddings(DataFormatError):
    pass


class OutOfRange(DataFormatError):
    pass


class KTooLarge(DataFormatError):
    pass
