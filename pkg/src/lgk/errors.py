"""Exception types shared across the package."""


class LgkError(Exception):
    pass


class InvalidType(LgkError, ValueError):
    """Unsupported Cartan type, rank, or model."""


class DatumMismatch(LgkError, ValueError):
    pass


class InvalidScaling(LgkError, ValueError):
    """A scaling vector is not invariant under the Weyl group and Galois action."""


class InvalidData(LgkError, ValueError):
    """a-data or chi-data violating their defining invariants."""


class InvalidAutomorphism(LgkError, ValueError):
    pass


class UnassignedSymbol(LgkError, KeyError):
    pass


class ConstructionFailure(LgkError, RuntimeError):
    pass


class InvalidRCochain(LgkError, ValueError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class WitnessNotFound(LgkError, RuntimeError):
    pass


class InconclusiveBound(LgkError, ValueError):
    pass


class SpecError(LgkError, ValueError):
    """Malformed verification spec file."""
