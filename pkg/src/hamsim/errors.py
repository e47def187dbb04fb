"""
Exception hierarchy shared by the library and the command-line surface.

Every error carries the process exit code the CLI maps it to: 2 for
malformed input, 1 for well-formed requests the mathematics refuses.
"""

from typing import Optional


class HamSimError(Exception):
    """Base class for all hamsim failures"""

    exit_code = 1


class InputValidationError(HamSimError):
    """Input that does not satisfy a documented precondition"""

    exit_code = 2


class NotHermitianError(InputValidationError):
    pass


class DimensionMismatchError(InputValidationError):
    pass


class MalformedSpectrumError(InputValidationError):
    """Spectrum that is unsorted or does not sum to zero"""


class NotCanonicalError(InputValidationError):
    """h-vector violating h1 >= h2 >= |h3|"""


class NotSpecialOrthogonalError(InputValidationError):
    pass


class DomainError(HamSimError):
    """Well-formed request with no mathematical solution"""

    exit_code = 1


class NotMajorizedError(DomainError):

    def __init__(self, message: str, failing_index: int):
        super().__init__(message)
        self.failing_index = failing_index


class FactorExceededError(DomainError):

    def __init__(self, message: str, optimum: Optional[float]):
        super().__init__(message)
        self.optimum = optimum


class UnrealizableSpectrumError(DomainError):
    pass


class ReconstructionError(DomainError):

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class GeneratorVerificationError(DomainError):
    """A local permutation generator does not act as labelled"""


class SimulationImpossibleError(DomainError):
    pass
