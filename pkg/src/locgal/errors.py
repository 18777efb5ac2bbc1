"""Exception hierarchy.

Every error carries the offending witness as attributes so callers (and the
CLI) can print a concrete counterexample instead of a bare message.
"""


class LocgalError(Exception):
    """Base class for all errors raised by this package."""


class InputError(LocgalError):
    """Malformed JSON input. ``where`` names the field or path that failed."""

    def __init__(self, message, where=None):
        self.where = where
        if where is not None:
            message = f"{where}: {message}"
        super().__init__(message)


class InvalidPreorder(LocgalError):
    pass


class NotReflexive(InvalidPreorder):
    def __init__(self, x):
        self.x = x
        super().__init__(f"relation is not reflexive at {x!r}")


class NotTransitive(InvalidPreorder):
    def __init__(self, x, y, z):
        self.x, self.y, self.z = x, y, z
        super().__init__(f"relation is not transitive: {x!r}<={y!r}<={z!r} but not {x!r}<={z!r}")


class NotASemilattice(LocgalError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class MismatchedBase(LocgalError):
    def __init__(self):
        super().__init__("elements live over different base posets")


class InvalidSite(LocgalError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class BudgetExceeded(LocgalError):
    """Common parent for resource ceilings; never a silent truncation."""


class SaturationBudgetExceeded(BudgetExceeded):
    def __init__(self, limit, kind="families", reached=None):
        self.limit = limit
        self.kind = kind
        self.reached = reached
        super().__init__(f"saturation exceeded the {kind} budget ({limit})")


class SearchBudgetExceeded(BudgetExceeded):
    def __init__(self, limit, needed=None):
        self.limit = limit
        self.needed = needed
        super().__init__(f"point search needs {needed} candidates, budget is {limit}")


class NotAPoint(LocgalError):
    def __init__(self, reason, witness=None):
        self.witness = witness
        super().__init__(f"candidate is not a point: {reason}")


class CoverNotPreserved(LocgalError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"cover not sent to a cover: {witness!r}")


class CategoryLawError(LocgalError):
    def __init__(self, law, witness):
        self.law = law
        self.witness = witness
        super().__init__(f"category law '{law}' violated at {witness!r}")


class FunctorLawError(LocgalError):
    def __init__(self, law, witness):
        self.law = law
        self.witness = witness
        super().__init__(f"functor law '{law}' violated at {witness!r}")


class GroupLawError(LocgalError):
    def __init__(self, law, witness):
        self.law = law
        self.witness = witness
        super().__init__(f"group law '{law}' violated at {witness!r}")


class NotAnAction(LocgalError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"table is not a group action: {witness!r}")


class GroupMismatch(LocgalError):
    def __init__(self):
        super().__init__("actions are over different groups")


class LawViolation(LocgalError):
    def __init__(self, law, witness):
        self.law = law
        self.witness = witness
        super().__init__(f"{law} fails at {witness!r}")


class NoIrreducibleFound(LocgalError):
    def __init__(self, p, n):
        super().__init__(f"no monic irreducible polynomial of degree {n} over F_{p}")
