"""Exception types shared across the package."""


class SemispectraError(Exception):
    """Base class for all package-specific errors."""


class AxiomViolation(SemispectraError):
    """A join table fails one of the semilattice axioms.

    `axiom` is one of "idempotence", "commutativity", "associativity",
    "order"; `witness` is a tuple of element indices reproducing the failure.
    """

    def __init__(self, axiom, witness):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"{axiom} violated at {witness}")


class NotAGrill(SemispectraError):
    """Operation requires a (non-empty) grill as input."""


class NotBounded(SemispectraError):
    """Operation requires a semilattice with both bottom and top."""


class NotUnionClosed(SemispectraError):
    """Operation requires a family closed under pairwise unions."""


class PreconditionViolated(SemispectraError):
    """Input does not satisfy a stated precondition of the operation."""


class NoWitness(SemispectraError):
    """A search that is expected to succeed found no witness."""


class SizeCapExceeded(SemispectraError):
    """Instance is larger than the enumeration cap of the operation."""
