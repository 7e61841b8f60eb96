"""Exception hierarchy.

``InputError`` subclasses mean the caller supplied something invalid (CLI
exit code 2); ``ComputationError`` subclasses mean a numerical failure
(exit code 1).
"""


class PtSusyError(Exception):
    pass


class InputError(PtSusyError, ValueError):
    pass


class ComputationError(PtSusyError, RuntimeError):
    pass


class MatchingConditionViolated(InputError):
    """beta is not on the branch required by the closed-form superpotential."""


class EnergyMismatch(InputError):
    """epsilon - lambda disagrees with the family's energy relation."""


class NonPositiveInput(InputError):
    pass


class NonPositiveWavenumber(NonPositiveInput):
    pass


class GridMismatch(InputError):
    pass


class AsymmetricGrid(InputError):
    pass


class UnknownFigure(InputError):
    pass


class UnknownParticle(InputError):
    pass


class DegenerateTransferMatrix(ComputationError):
    """det(M) drifted from 1: the integrator is not resolving the grating."""


class UnwritablePath(InputError):
    pass
