"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: bad input is 2, an internal invariant
violation is 3, and a check command whose mathematical verdict is "false"
exits 1 without raising.
"""


class DeltafanError(Exception):
    """Base class for every error raised by this package."""


class InputError(DeltafanError):
    """Malformed, schema-violating, or mathematically unusable input."""


class InvariantError(DeltafanError):
    """An internal consistency condition failed; this indicates a bug."""


class DimensionError(InputError):
    """Input has the wrong dimension (not full-dimensional, size mismatch)."""


class LinearSolveError(DeltafanError):
    """Base for exact linear system failures."""


class InconsistentSystemError(LinearSolveError):
    """The system A x = b has no solution."""


class UnderdeterminedSystemError(LinearSolveError):
    """The system A x = b has more than one solution."""


class NotInLatticeError(InputError):
    """A vector expected to be a lattice point is not in the lattice."""


class FanError(InputError):
    """The ray/cone data does not define a complete fan of strongly convex cones."""


class NotGorensteinError(InputError):
    """The fan admits no integral support function taking value 1 on every ray.

    ``reason`` is "no support function" when the linear system for some cone
    has no solution at all, and "non-integral" when the unique candidate
    vector fails to lie in the dual lattice.
    """

    def __init__(self, reason, cone_index, witness=None):
        self.reason = reason
        self.cone_index = cone_index
        self.witness = witness
        detail = f" (cone {cone_index}"
        if witness is not None:
            detail += ", candidate (" + ", ".join(str(x) for x in witness) + ")"
        detail += ")"
        super().__init__(f"not Gorenstein ({reason}){detail}")


class EhrhartConsistencyError(DeltafanError):
    """Point counts are not those of a lattice polytope (bad counter)."""
