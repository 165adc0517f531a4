"""
Outcomes shared by the decision procedures, and the exceptions they raise when a
budget or a contract is broken.
"""

from dataclasses import dataclass
from typing import Any, Optional


@dataclass(frozen=True)
class Accept:
    """ A decision procedure found a schedule within its stated bound. """

    schedule: Any
    value: Optional[Any] = None

    @property
    def accepted(self):
        return True


@dataclass(frozen=True)
class Reject:
    """ A decision procedure proved that no schedule meets the bound it was asked about. """

    certificate: str = ''

    @property
    def accepted(self):
        return False


class SizeLimitExceeded(Exception):
    """ Exception raised when an exact oracle would exceed its configured budget. """

    def __init__(self, what, size, limit):
        self.what = what
        self.size = size
        self.limit = limit
        self.build_message()

    def build_message(self):
        self.message = f"{self.what} of size {self.size} exceeds the configured limit {self.limit}"

    def __str__(self):
        return self.message


class ContractViolation(RuntimeError):
    """ Exception raised when a plugged-in procedure breaks its acceptance guarantee. """

    def __init__(self, procedure, detail):
        self.procedure = procedure
        self.detail = detail
        self.build_message()

    def build_message(self):
        self.message = f"{self.procedure} broke its guarantee: {self.detail}"

    def __str__(self):
        return self.message
