"""Mirror scattering models and the kernels built from their amplitudes.

A mirror is described by frequency-domain reflection and transmission
amplitudes r[omega], s[omega] constrained by unitarity of the scattering
matrix (|r|^2 + |s|^2 = 1 and r s* + s r* = 0) and by reality of the
time-domain response (r[-omega] = r[omega]*, same for s).  Those two
constraints reduce the model to a reflection probability R[omega] = |r|^2
and a total phase shift Delta[omega] with exp(i Delta) = s^2 - r^2; the
scattering delay is tau = Delta'/2.

The kernels consumed by the susceptibility and coefficient integrals are

    alpha[w, w'] = 1 + r[w] r[w'] - s[w] s[w']
    a[w] = alpha[w, -w]          (= 2 R[w] by unitarity + reality)
    b[w] = i (r'[w] r[-w] + r[w] r'[-w] - s'[w] s[-w] - s[w] s'[-w])
                                 (= 2 (1 - 2 R[w]) tau[w])

Amplitude evaluation is vectorized: ``amplitudes`` must accept numpy
arrays.  Models are immutable after construction and all operations here
are pure functions of their arguments.
"""

from __future__ import annotations

import abc
import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DerivativeUnavailable, ValidationFailed

_REF_FREQUENCY = 1.0  # derivative step scale when a model has no cutoff


class MirrorModel(abc.ABC):
    """Unitary, causal, real scattering model of a point mirror."""

    @abc.abstractmethod
    def amplitudes(self, omega):
        """Return (r, s) at ``omega`` (scalar or ndarray; complex output)."""

    def amplitude_derivatives(self, omega):
        """Return (dr/domega, ds/domega), or None if not available analytically."""
        return None

    def amplitude_second_derivatives(self, omega):
        """Return (d2r/domega2, d2s/domega2), or None."""
        return None

    @property
    @abc.abstractmethod
    def low_frequency_reflection(self) -> float:
        """R0, the omega -> 0 limit of |r|^2."""

    @property
    @abc.abstractmethod
    def low_frequency_delay(self) -> float:
        """tau0, the omega -> 0 limit of the scattering delay."""

    @property
    @abc.abstractmethod
    def cutoff_frequency(self):
        """Reflection cutoff, or None for a mirror that never turns transparent."""

    @property
    def reference_frequency(self) -> float:
        """Scale used for numerical derivative steps."""
        cut = self.cutoff_frequency
        return cut if cut else _REF_FREQUENCY


class PerfectMirror(MirrorModel):
    """Idealized mirror with r = -1, s = 0 at every frequency.

    Violates high-frequency transparency (``cutoff_frequency`` is None);
    its delay is identically zero, so it is the R0 = 1, tau0 = 0 member of
    the scattering family.
    """

    def amplitudes(self, omega):
        omega = np.asarray(omega)
        r = np.full(omega.shape, -1.0 + 0.0j)
        s = np.zeros(omega.shape, dtype=complex)
        if omega.ndim == 0:
            return complex(r), complex(s)
        return r, s

    def amplitude_derivatives(self, omega):
        omega = np.asarray(omega)
        zero = np.zeros(omega.shape, dtype=complex)
        if omega.ndim == 0:
            return 0j, 0j
        return zero, zero.copy()

    def amplitude_second_derivatives(self, omega):
        return self.amplitude_derivatives(omega)

    @property
    def low_frequency_reflection(self) -> float:
        return 1.0

    @property
    def low_frequency_delay(self) -> float:
        return 0.0

    @property
    def cutoff_frequency(self):
        return None

    def __repr__(self):
        return "PerfectMirror()"


class LorentzianMirror(MirrorModel):
    """Single-pole mirror: r = -1/(1 - i omega tau0), s = -i omega tau0 r.

    R[omega] = 1/(1 + omega^2 tau0^2) and tau[omega] = tau0/(1 + omega^2
    tau0^2); the delay parameter tau0 is also the inverse of the
    reflection cutoff.
    """

    def __init__(self, tau0: float):
        if not (tau0 > 0 and math.isfinite(tau0)):
            raise ValueError(f"tau0 must be finite and > 0, got {tau0}")
        self._tau0 = float(tau0)

    @property
    def tau0(self) -> float:
        return self._tau0

    def amplitudes(self, omega):
        omega = np.asarray(omega)
        den = 1.0 - 1j * self._tau0 * omega
        r = -1.0 / den
        s = -1j * self._tau0 * omega / den
        if omega.ndim == 0:
            return complex(r), complex(s)
        return r, s

    def amplitude_derivatives(self, omega):
        den = 1.0 - 1j * self._tau0 * np.asarray(omega)
        d = -1j * self._tau0 / den**2  # r' and s' coincide for this model
        if np.ndim(omega) == 0:
            return complex(d), complex(d)
        return d, d.copy()

    def amplitude_second_derivatives(self, omega):
        den = 1.0 - 1j * self._tau0 * np.asarray(omega)
        d2 = 2.0 * self._tau0**2 / den**3
        if np.ndim(omega) == 0:
            return complex(d2), complex(d2)
        return d2, d2.copy()

    @property
    def low_frequency_reflection(self) -> float:
        return 1.0

    @property
    def low_frequency_delay(self) -> float:
        return self._tau0

    @property
    def cutoff_frequency(self):
        return 1.0 / self._tau0

    def __repr__(self):
        return f"LorentzianMirror(tau0={self._tau0!r})"


class RationalMirror(MirrorModel):
    """Mirror with r and s given as rational functions of z = i omega.

    Coefficients are real and ascending in z, which builds in the reality
    constraint r[-omega] = r[omega]*.  Unitarity is *not* automatic:
    validate with :func:`validate_model` before use.

    Parameters
    ----------
    r_num, r_den, s_num, s_den : sequence of float
        Ascending real coefficients of the numerators/denominators in z.
    cutoff : float, optional
        Reflection cutoff.  Defaults to the largest pole magnitude of r.
    """

    def __init__(self, r_num, r_den, s_num, s_den, cutoff: float | None = None):
        self._rn = np.asarray(r_num, dtype=float)
        self._rd = np.asarray(r_den, dtype=float)
        self._sn = np.asarray(s_num, dtype=float)
        self._sd = np.asarray(s_den, dtype=float)
        for name, coeffs in (("r_num", self._rn), ("r_den", self._rd),
                             ("s_num", self._sn), ("s_den", self._sd)):
            if coeffs.ndim != 1 or coeffs.size == 0 or not np.all(np.isfinite(coeffs)):
                raise ValueError(f"{name} must be a non-empty 1-D finite coefficient list")
        if self._rd[-1] == 0 or self._sd[-1] == 0:
            raise ValueError("denominator leading coefficients must be nonzero")
        if cutoff is None:
            roots = np.roots(self._rd[::-1]) if self._rd.size > 1 else np.array([])
            cutoff = float(np.max(np.abs(roots))) if roots.size else None
        if cutoff is not None and not cutoff > 0:
            raise ValueError(f"cutoff must be > 0, got {cutoff}")
        self._cutoff = cutoff

    @staticmethod
    def _eval(coeffs, z):
        return np.polynomial.polynomial.polyval(z, coeffs)

    @staticmethod
    def _deriv(coeffs):
        return np.polynomial.polynomial.polyder(coeffs)

    def amplitudes(self, omega):
        z = 1j * np.asarray(omega)
        r = self._eval(self._rn, z) / self._eval(self._rd, z)
        s = self._eval(self._sn, z) / self._eval(self._sd, z)
        if np.ndim(omega) == 0:
            return complex(r), complex(s)
        return r, s

    def _quotient_derivative(self, num, den, z):
        # d/domega = i d/dz for functions of z = i omega
        n, d = self._eval(num, z), self._eval(den, z)
        n1, d1 = self._eval(self._deriv(num), z), self._eval(self._deriv(den), z)
        return 1j * (n1 * d - n * d1) / d**2

    def _quotient_second_derivative(self, num, den, z):
        n, d = self._eval(num, z), self._eval(den, z)
        n1, d1 = self._eval(self._deriv(num), z), self._eval(self._deriv(den), z)
        n2 = self._eval(self._deriv(self._deriv(num)), z)
        d2 = self._eval(self._deriv(self._deriv(den)), z)
        # (i)^2 d^2/dz^2 of n/d
        value = n2 / d - (n * d2 + 2.0 * n1 * d1) / d**2 + 2.0 * n * d1**2 / d**3
        return -value

    def amplitude_derivatives(self, omega):
        z = 1j * np.asarray(omega)
        dr = self._quotient_derivative(self._rn, self._rd, z)
        ds = self._quotient_derivative(self._sn, self._sd, z)
        if np.ndim(omega) == 0:
            return complex(dr), complex(ds)
        return dr, ds

    def amplitude_second_derivatives(self, omega):
        z = 1j * np.asarray(omega)
        d2r = self._quotient_second_derivative(self._rn, self._rd, z)
        d2s = self._quotient_second_derivative(self._sn, self._sd, z)
        if np.ndim(omega) == 0:
            return complex(d2r), complex(d2s)
        return d2r, d2s

    @property
    def low_frequency_reflection(self) -> float:
        r0 = self._rn[0] / self._rd[0]
        return float(r0 * r0)

    @property
    def low_frequency_delay(self) -> float:
        return scattering_delay(self, 0.0)

    @property
    def cutoff_frequency(self):
        return self._cutoff

    def __repr__(self):
        return (f"RationalMirror(r_num={self._rn.tolist()}, r_den={self._rd.tolist()}, "
                f"s_num={self._sn.tolist()}, s_den={self._sd.tolist()})")


# ---------------------------------------------------------------------------
# derived quantities

def reflection_probability(model: MirrorModel, omega):
    """Reflection probability R = |r|^2; even in omega."""
    r, _ = model.amplitudes(omega)
    out = np.abs(r) ** 2
    return float(out) if np.ndim(omega) == 0 else out


def reflection_probability_derivative(model: MirrorModel, omega):
    """dR/domega = 2 Re(r* dr/domega)."""
    derivs = model.amplitude_derivatives(omega)
    if derivs is None:
        from .quadrature import differentiate
        scale = max(abs(omega), model.reference_frequency)
        return differentiate(lambda w: reflection_probability(model, w), omega, scale)
    r, _ = model.amplitudes(omega)
    dr, _ = derivs
    out = 2.0 * np.real(np.conj(r) * dr)
    return float(out) if np.ndim(omega) == 0 else out


def scattering_determinant(model: MirrorModel, omega):
    """Determinant s^2 - r^2 of the scattering matrix; unimodular."""
    r, s = model.amplitudes(omega)
    return s * s - r * r


def scattering_delay(model: MirrorModel, omega):
    """Scattering delay tau = Delta'/2, half the phase derivative of the determinant.

    Uses analytic amplitude derivatives when the model provides them
    (tau = Im[(s^2 - r^2)' / (s^2 - r^2)] / 2, exact for unimodular
    determinants); otherwise differentiates the unwrapped phase of the
    determinant numerically.  Even in omega.

    Raises
    ------
    DerivativeUnavailable
        If the numerical path detects an unresolvable phase jump across
        the difference stencil.
    """
    derivs = model.amplitude_derivatives(omega)
    if derivs is not None:
        r, s = model.amplitudes(omega)
        dr, ds = derivs
        det = s * s - r * r
        ddet = 2.0 * (s * ds - r * dr)
        out = 0.5 * np.imag(ddet / det)
        return float(out) if np.ndim(omega) == 0 else out
    return _delay_from_phase(model, float(omega))


def _delay_from_phase(model: MirrorModel, omega: float) -> float:
    """Numerical delay: central difference of the determinant phase."""
    scale = max(abs(omega), model.reference_frequency)
    h = scale * 1e-6

    def aligned_slope(step):
        lo = cmath.phase(scattering_determinant(model, omega - step))
        hi = cmath.phase(scattering_determinant(model, omega + step))
        # nearest-branch alignment of the two samples
        hi -= 2.0 * math.pi * round((hi - lo) / (2.0 * math.pi))
        if abs(hi - lo) > 0.5 * math.pi:
            raise DerivativeUnavailable(
                f"phase jump of {hi - lo:.3f} rad across the stencil at omega={omega}"
            )
        return (hi - lo) / (2.0 * step)

    coarse = aligned_slope(h)
    fine = aligned_slope(0.5 * h)
    return 0.5 * (4.0 * fine - coarse) / 3.0


def delay_derivative(model: MirrorModel, omega):
    """dtau/domega, from second amplitude derivatives when available."""
    second = model.amplitude_second_derivatives(omega)
    first = model.amplitude_derivatives(omega)
    if second is None or first is None:
        from .quadrature import differentiate
        scale = max(abs(omega), model.reference_frequency)
        return differentiate(lambda w: scattering_delay(model, w), omega, scale)
    r, s = model.amplitudes(omega)
    dr, ds = first
    d2r, d2s = second
    det = s * s - r * r
    ddet = 2.0 * (s * ds - r * dr)
    d2det = 2.0 * (ds * ds + s * d2s - dr * dr - r * d2r)
    logslope = ddet / det
    out = 0.5 * np.imag(d2det / det - logslope * logslope)
    return float(out) if np.ndim(omega) == 0 else out


def alpha_kernel(model: MirrorModel, omega1, omega2):
    """Two-frequency kernel alpha = 1 + r[w1] r[w2] - s[w1] s[w2]; symmetric."""
    r1, s1 = model.amplitudes(omega1)
    r2, s2 = model.amplitudes(omega2)
    return 1.0 + r1 * r2 - s1 * s2


def a_function(model: MirrorModel, omega):
    """Viscosity kernel a = 2 R[omega] (the reduced form of alpha[w, -w])."""
    out = 2.0 * reflection_probability(model, omega)
    return out


def a_function_from_amplitudes(model: MirrorModel, omega):
    """a computed literally as 1 + r[w] r[-w] - s[w] s[-w] (identity test form).

    Returns the complex value; unitarity plus reality make it equal the
    real 2 R[omega].
    """
    return alpha_kernel(model, omega, -np.asarray(omega))


def a_function_derivative(model: MirrorModel, omega):
    """da/domega = 2 dR/domega."""
    return 2.0 * reflection_probability_derivative(model, omega)


def b_function(model: MirrorModel, omega):
    """Inertia kernel b = 2 (1 - 2 R[omega]) tau[omega]; even, units of time."""
    big_r = reflection_probability(model, omega)
    tau = scattering_delay(model, omega)
    return 2.0 * (1.0 - 2.0 * big_r) * tau


def b_function_from_amplitudes(model: MirrorModel, omega):
    """b from the amplitude-derivative form (identity test form).

    i (r'[w] r[-w] + r[w] r'[-w]) - i (s'[w] s[-w] + s[w] s'[-w]); needs
    analytic derivatives.
    """
    derivs_p = model.amplitude_derivatives(omega)
    derivs_m = model.amplitude_derivatives(-np.asarray(omega))
    if derivs_p is None or derivs_m is None:
        raise DerivativeUnavailable(
            "the amplitude form of b needs analytic model derivatives"
        )
    r_p, s_p = model.amplitudes(omega)
    r_m, s_m = model.amplitudes(-np.asarray(omega))
    dr_p, ds_p = derivs_p
    dr_m, ds_m = derivs_m
    return 1j * (dr_p * r_m + r_p * dr_m) - 1j * (ds_p * s_m + s_p * ds_m)


def b_function_derivative(model: MirrorModel, omega):
    """db/domega = 2 (-2 R' tau + (1 - 2 R) tau')."""
    big_r = reflection_probability(model, omega)
    d_big_r = reflection_probability_derivative(model, omega)
    tau = scattering_delay(model, omega)
    dtau = delay_derivative(model, omega)
    return 2.0 * (-2.0 * d_big_r * tau + (1.0 - 2.0 * big_r) * dtau)


# ---------------------------------------------------------------------------
# validation

@dataclass(frozen=True)
class CheckResult:
    name: str
    max_violation: float
    worst_omega: float
    allowed: float

    @property
    def passed(self) -> bool:
        return self.max_violation <= self.allowed


@dataclass(frozen=True)
class ModelValidationReport:
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def raise_for_failure(self):
        if not self.passed:
            raise ValidationFailed(self)


UNITARITY_TOL = 1e-12
TRANSPARENCY_TOL = 1e-3


def validate_model(model: MirrorModel, omegas,
                   tol: float = UNITARITY_TOL) -> ModelValidationReport:
    """Check unitarity (both relations), reality, and high-frequency transparency.

    Transparency (R -> 0 well above the cutoff) is only checked when the
    model declares a finite cutoff; the perfect mirror skips it.  Returns
    the per-check maximal violation and the frequency where it occurs; use
    ``report.raise_for_failure()`` to turn failures into
    :class:`ValidationFailed`.
    """
    omegas = np.asarray(omegas, dtype=float)
    if omegas.size == 0 or not np.all(np.isfinite(omegas)):
        raise ValueError("validation grid must be non-empty and finite")

    r, s = model.amplitudes(omegas)
    r_neg, s_neg = model.amplitudes(-omegas)

    def worst(violation):
        idx = int(np.argmax(violation))
        return float(violation[idx]), float(omegas[idx])

    checks = []
    v, w = worst(np.abs(np.abs(r) ** 2 + np.abs(s) ** 2 - 1.0))
    checks.append(CheckResult("unitarity_modulus", v, w, tol))
    v, w = worst(np.abs(s * np.conj(r) + r * np.conj(s)))
    checks.append(CheckResult("unitarity_orthogonality", v, w, tol))
    v, w = worst(np.maximum(np.abs(r_neg - np.conj(r)), np.abs(s_neg - np.conj(s))))
    checks.append(CheckResult("reality", v, w, tol))

    cutoff = model.cutoff_frequency
    if cutoff is not None:
        high = cutoff * np.array([100.0, 316.0, 1000.0])
        r_high, _ = model.amplitudes(high)
        idx = int(np.argmax(np.abs(r_high) ** 2))
        checks.append(CheckResult("transparency", float(np.abs(r_high[idx]) ** 2),
                                  float(high[idx]), TRANSPARENCY_TOL))

    return ModelValidationReport(tuple(checks))
