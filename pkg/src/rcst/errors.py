"""Exception hierarchy shared by every solver."""

from __future__ import annotations


class RcstError(Exception):
    """Base class for all library errors."""


class ParseError(RcstError):
    def __init__(self, line: int, reason: str) -> None:
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class InvalidGraph(RcstError):
    """A constructed graph violates the simple, nonnegative-integer invariants."""


class NotATree(RcstError):
    def __init__(self, reason: str, detail: str = "") -> None:
        msg = reason if not detail else f"{reason}: {detail}"
        super().__init__(msg)
        self.reason = reason
        self.detail = detail


class CostOverflow(RcstError):
    """An exact cost left the signed 128-bit range."""


class OverflowBound(RcstError):
    """Preflight check: worst-case costs for this input would overflow."""


class NotMinUnique(RcstError):
    def __init__(self, report) -> None:
        super().__init__(f"graph is not strongly min-unique (witness {report.witness})")
        self.report = report


class Unreachable(RcstError):
    def __init__(self, s: int, t: int) -> None:
        super().__init__(f"vertex {t} is not reachable from {s}")
        self.s = s
        self.t = t


class NoneReachable(RcstError):
    """No vertex of the target set is reachable."""


class CapExceeded(RcstError):
    """Spanning-tree enumeration exceeded its configured cap."""


class BudgetExceeded(RcstError):
    """Candidate enumeration would exceed the configured work budget."""


class ConstructionInvalid(RcstError):
    def __init__(self, which: str, cause: NotATree) -> None:
        super().__init__(f"{which} is not a valid tree ({cause})")
        self.which = which
        self.cause = cause
