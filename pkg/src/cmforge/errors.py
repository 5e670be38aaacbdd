class ForgeError(Exception):
    """Base class for data errors raised by cmforge."""


class InvalidTokenError(ForgeError, ValueError):
    pass


class CorpusFormatError(ForgeError):
    """A corpus or side file could not be parsed.

    ``path`` and ``line`` (1-based) are set when known so the CLI can name
    the offending location.
    """

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}"
            if line is not None:
                where += f":{line}"
            where += ": "
        super().__init__(where + message)


class DuplicateIdError(CorpusFormatError):
    pass


class TagMismatchError(ForgeError):
    pass


class ConfigError(ForgeError, ValueError):
    pass


class OOVError(ForgeError, KeyError):
    def __str__(self):
        return Exception.__str__(self)
