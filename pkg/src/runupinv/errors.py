"""Exception hierarchy.

Two families matter to callers: plain input/validation problems
(``ValueError`` or :class:`InputError`) and numerical diagnostics
(:class:`NumericalDiagnosticError`), which signal that an assumption of the
method failed on otherwise well-formed input (wave breaking, pole placement,
non-convergence).  The CLI maps them to exit codes 2 and 3 respectively.
"""


class RunupInvError(Exception):
    """Base class for all package errors."""


class InputError(RunupInvError, ValueError):
    """Malformed or inconsistent input (grids, parameters, config)."""


class GridMismatchError(InputError):
    """Two series that must share a grid do not."""


class NumericalDiagnosticError(RunupInvError):
    """A numerical validity assumption failed (exit code 3 in the CLI)."""


class BreakingAtShoreError(NumericalDiagnosticError):
    """The shoreline map t -> tau is not monotone (wave breaks at shore)."""


class DomainTooSmallError(NumericalDiagnosticError):
    """The buoy curve leaves the computed hodograph grid."""


class CompatibilityError(NumericalDiagnosticError):
    """Boundary data violates psi_b(0) = psi_b'(0) = 0."""


class LaplaceInversionError(NumericalDiagnosticError):
    """Bromwich-FFT inversion failed its imaginary-residue check."""


class CflError(InputError):
    """Requested finite-difference step violates the CFL bound."""


class QuadratureError(NumericalDiagnosticError):
    """Wavenumber quadrature did not converge (tail above tolerance)."""


class StageError(NumericalDiagnosticError):
    """Wraps a failure inside a named pipeline stage."""

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"stage '{stage}': {cause}")
        self.stage = stage
        self.cause = cause
