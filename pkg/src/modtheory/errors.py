"""Exception types shared across the engine."""


class ModTheoryError(Exception):
    """Base class for all engine errors."""


class AxiomViolation(ModTheoryError):
    """A ring or module axiom fails; carries the axiom name and a witness tuple."""

    def __init__(self, axiom: str, witness: tuple):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"{axiom} fails at {witness}")


class CapExceeded(ModTheoryError):
    """A configured size/breadth cap was hit before the computation finished."""

    def __init__(self, what: str, limit: int, reached: int):
        self.what = what
        self.limit = limit
        self.reached = reached
        super().__init__(f"{what}: reached {reached}, cap {limit}")


class VerificationFailure(ModTheoryError):
    """A mandatory post-hoc verification pass failed (e.g. right-annihilator closure)."""


class NotFullyInvariant(ModTheoryError):
    """Predicate requires a fully invariant submodule; carries the offending endomorphism."""


class NotProper(ModTheoryError):
    """Predicate requires a proper submodule."""


class SigmaMembershipUnverified(ModTheoryError):
    """Certification that a module lives in the subgenerated category failed."""


class ParseError(ModTheoryError):
    """Algebra-definition file does not parse; carries position information."""


class ValidationError(ModTheoryError):
    """Algebra-definition file parses but a described object fails validation."""


class ResolutionError(ModTheoryError):
    """Algebra-definition file references an undefined name."""


class UnknownStatementId(ModTheoryError):
    """Requested statement id is not in the registry."""
