"""Exception types shared across the toolkit."""


class ModulusMismatchError(ValueError):
    """Two ring elements live in incompatible cyclotomic fields."""


class ExactDivisionError(ArithmeticError):
    """An exact integer division left a remainder.

    Raised when dividing coefficient vectors that a caller expected to be
    divisible; for spectra this signals that the input was not a valid
    spectrum of a Z_q-valued function.
    """


class InternalConsistencyError(RuntimeError):
    """An identity the code relies on failed; indicates a bug, not bad data."""


class FunctionFormatError(ValueError):
    """A function, spectrum or construction file could not be parsed."""
