"""Exception and warning types shared across the package."""


class ThermalDragError(Exception):
    """Base class for all package-specific errors."""


class DerivativeUnavailable(ThermalDragError):
    """Neither an analytic nor a stable numerical derivative could be obtained."""


class ValidationFailed(ThermalDragError):
    """A scattering model violates unitarity, reality or transparency.

    Carries the full validation report in ``report``.
    """

    def __init__(self, report):
        self.report = report
        failed = [c for c in report.checks if not c.passed]
        lines = ", ".join(
            f"{c.name} (violation {c.max_violation:.3e} at omega={c.worst_omega:.6g}, "
            f"allowed {c.allowed:.1e})"
            for c in failed
        )
        super().__init__(f"model validation failed: {lines}")


class GrowthBoundExceeded(ThermalDragError):
    """Sampled integrand growth exceeds the declared polynomial majorant."""


class GridTooCoarse(ThermalDragError):
    """A sampled grid has too few points for the requested operation."""


class ExtrapolationUnstable(ThermalDragError):
    """Successive extrapolation estimates do not contract."""


class DivergentBandwidth(ThermalDragError):
    """Bandwidth integrals do not converge for a non-transparent model."""


class ConfigError(ThermalDragError):
    """Malformed or inconsistent run configuration."""


class RegimeViolation(UserWarning):
    """A quantity is evaluated outside its regime of validity (non-fatal)."""


class WindowTruncationWarning(UserWarning):
    """A finite frequency window truncates a slowly decaying integrand."""
