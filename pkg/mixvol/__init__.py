import contextlib
import logging
import logging.config
import os
from typing import (
    Any,
    List,
    Optional,
    TYPE_CHECKING,
    Union,
)

from mixvol.config import (
    Config,
    MixvolConfigLocations,
)

if TYPE_CHECKING:
    from mixvol.discriminant import PsdCertificate
    from mixvol.report import InequalityReport

# Current version of the library
__version__ = "0.3.0"


config = Config()


def get_version() -> str:
    """
    Returns a string with the current version of the library (e.g., "0.3.0")
    """
    return __version__


def init_logging() -> None:
    """
    Initialize mixvol's logging from a configuration file.
    """
    for config_file in MixvolConfigLocations:
        with contextlib.suppress(Exception):
            logging.config.fileConfig(os.path.expanduser(config_file))


class NullHandler(logging.Handler):
    def emit(self, record: logging.LogRecord) -> None:
        pass


# By default, do not force any logging by the library. If you want to see the
# log messages in your scripts, add the following to the top of your script:
#   import logging
#   logging.basicConfig(filename="mixvol.log", level=logging.DEBUG)
default_format_string = "%(asctime)s %(name)s [%(levelname)s]: %(message)s"
log = logging.getLogger("mixvol")
log.addHandler(NullHandler())
init_logging()

# Convenience functions to set logging to a particular file or stream
# To enable either of these, simply add the following at the top of a
# script:
#   import mixvol
#   mixvol.set_stream_logger("mixvol")


def set_file_logger(
    name: str, filepath: str, level: Union[int, str] = logging.INFO, format_string: Optional[str] = None
) -> None:
    global log
    if not format_string:
        format_string = default_format_string
    logger = logging.getLogger(name)
    logger.setLevel(level)
    fh = logging.FileHandler(filepath)
    fh.setLevel(level)
    formatter = logging.Formatter(format_string)
    fh.setFormatter(formatter)
    logger.addHandler(fh)
    log = logger


def set_stream_logger(name: str, level: Union[int, str] = logging.DEBUG, format_string: Optional[str] = None) -> None:
    global log
    if not format_string:
        format_string = default_format_string
    logger = logging.getLogger(name)
    logger.setLevel(level)
    fh = logging.StreamHandler()
    fh.setLevel(level)
    formatter = logging.Formatter(format_string)
    fh.setFormatter(formatter)
    logger.addHandler(fh)
    log = logger


class MixvolError(Exception):
    """
    Base class for all errors raised by mixvol.
    """


class DimensionMismatchError(MixvolError, ValueError):
    """
    Raised when points, bodies or matrices of different dimensions are
    combined.
    """


class EmptyInputError(MixvolError, ValueError):
    pass


class DegenerateBodyError(MixvolError, ValueError):
    """
    Raised when an operation needs a full-dimensional body (or at least a
    body that is not a single point) and gets something thinner.
    """


class MalformedQueryError(MixvolError, ValueError):
    """
    Raised for multiplicities that do not add up, out-of-range selectors and
    groupings that contradict the data.
    """


class NotPositiveSemidefiniteError(MixvolError, ValueError):
    """
    Raised when a matrix fails a PSD (or PD) precondition.

    @see: certificate attribute for the exact witness
    """

    def __init__(self, message: str, certificate: Optional["PsdCertificate"] = None) -> None:
        super().__init__(message)
        self.certificate = certificate


class InterpolationError(MixvolError):
    pass


class LinearProgramError(MixvolError):
    pass


class InfeasibleProblem(LinearProgramError):
    pass


class UnboundedProblem(LinearProgramError):
    pass


class ParseError(MixvolError, ValueError):
    """
    A syntax error in a polynomial, with the 1-based position of the
    offending character.
    """

    def __init__(self, message: str, line: int = 1, column: int = 1) -> None:
        super().__init__(message)
        self.line = line
        self.column = column

    def __str__(self) -> str:
        return f"{self.args[0]} (line {self.line}, column {self.column})"


class ZeroPolynomialError(MixvolError, ValueError):
    pass


class IntegralityError(MixvolError):
    pass


class ViolationError(MixvolError):
    """
    Raised when a verification run finishes with at least one violated
    inequality.

    @see: reports attribute for the failing reports, each carrying the digest
    needed to reproduce its instance
    """

    def __init__(self, message: str, reports: Optional[List["InequalityReport"]] = None) -> None:
        super().__init__(message)
        self.reports: List[Any] = list(reports or [])

    def __str__(self) -> str:
        digests = ", ".join(report.digest for report in self.reports)
        return f"{self.args[0]}: {digests}" if digests else self.args[0]
