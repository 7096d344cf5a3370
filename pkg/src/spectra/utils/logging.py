import logging


global logger
logger = logging.getLogger(__name__)


class SpectraError(Exception):
    """
    Base class of every rejection raised by the toolkit.

    Attributes:
    - exit_code: int -> status the command line returns when this error escapes a task
    """
    exit_code = 1


class UsageError(SpectraError):
    exit_code = 1


class DomainError(SpectraError):
    exit_code = 1


class NumericalQualityError(SpectraError):
    exit_code = 2


class ValidationFailure(SpectraError):
    exit_code = 3


def RaiseError(message, error=SpectraError):
    if (isinstance(message,str)):
        logger.error(msg=message)
        raise error(message)
    else:
        InvalidLogMessage()
        raise error("Invalid logging message")

def RaiseWarning(message):
    if (isinstance(message,str)):
        logger.warning(msg=message)
    else:
        InvalidLogMessage()

def PrintInfo(message):
    if (isinstance(message,str)):
        logger.info(msg=message)
    else:
        InvalidLogMessage()

def InvalidLogMessage():
    logger.warning(msg="Invalid logging message")
