"""Run configuration: flat key = value text with one optional [model] section.

Example::

    temperature = 1.0
    rel_tol = 1e-10

    [model]
    kind = lorentzian
    tau0 = 1.0

Models are built in natural units; when the config declares a custom unit
system (hbar, c), model parameters given in user units are converted here,
at the I/O boundary.  Rational models are validated before use.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .core import UnitSystem
from .errors import ConfigError
from .models import (LorentzianMirror, MirrorModel, PerfectMirror,
                     RationalMirror, validate_model)
from .quadrature import QuadratureConfig

MODEL_KINDS = ("lorentzian", "perfect", "rational")


@dataclass
class RunConfig:
    """Parsed configuration: model in natural units plus raw settings."""

    model: MirrorModel
    units: UnitSystem
    quadrature: QuadratureConfig
    settings: dict = field(default_factory=dict)
    model_kind: str = "lorentzian"

    def get_float(self, key: str, default: float | None = None) -> float | None:
        raw = self.settings.get(key)
        if raw is None:
            return default
        try:
            return float(raw)
        except ValueError as exc:
            raise ConfigError(f"key '{key}' is not a number: {raw!r}") from exc

    def require_float(self, key: str) -> float:
        value = self.get_float(key)
        if value is None:
            raise ConfigError(f"missing required key '{key}'")
        return value

    def get_int(self, key: str, default: int | None = None) -> int | None:
        raw = self.settings.get(key)
        if raw is None:
            return default
        try:
            return int(raw)
        except ValueError as exc:
            raise ConfigError(f"key '{key}' is not an integer: {raw!r}") from exc

    def get_str(self, key: str, default: str | None = None) -> str | None:
        return self.settings.get(key, default)


def _parse_sections(text: str, origin: str) -> tuple[dict, dict]:
    main: dict[str, str] = {}
    model: dict[str, str] = {}
    current = main
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip().lower()
            if section != "model":
                raise ConfigError(f"{origin}:{lineno}: unknown section [{section}]")
            current = model
            continue
        if "=" not in line:
            raise ConfigError(f"{origin}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip().lower()
        value = value.strip()
        if not key:
            raise ConfigError(f"{origin}:{lineno}: empty key")
        if key in current:
            raise ConfigError(f"{origin}:{lineno}: duplicate key '{key}'")
        current[key] = value
    return main, model


def _coefficient_list(raw: str, key: str) -> list[float]:
    try:
        values = [float(part) for part in raw.replace(",", " ").split()]
    except ValueError as exc:
        raise ConfigError(f"model key '{key}' is not a number list: {raw!r}") from exc
    if not values:
        raise ConfigError(f"model key '{key}' is empty")
    return values


def _scaled_poly(coeffs: list[float], hbar: float) -> list[float]:
    # z_user^k = (z_natural / hbar)^k: rescale ascending coefficients
    return [a / hbar**k for k, a in enumerate(coeffs)]


def build_model(model_keys: dict, units: UnitSystem) -> tuple[MirrorModel, str]:
    """Construct and (for rational models) validate the configured mirror."""
    kind = model_keys.get("kind", "").lower()
    if kind not in MODEL_KINDS:
        raise ConfigError(
            f"model kind must be one of {MODEL_KINDS}, got {kind!r}"
        )
    if kind == "perfect":
        return PerfectMirror(), kind
    if kind == "lorentzian":
        raw = model_keys.get("tau0")
        if raw is None:
            raise ConfigError("lorentzian model needs tau0")
        try:
            tau0 = float(raw)
        except ValueError as exc:
            raise ConfigError(f"tau0 is not a number: {raw!r}") from exc
        if not tau0 > 0:
            raise ConfigError(f"tau0 must be > 0, got {tau0}")
        return LorentzianMirror(units.time_to_natural(tau0)), kind

    lists = {}
    for key in ("r_numerator", "r_denominator", "s_numerator", "s_denominator"):
        raw = model_keys.get(key)
        if raw is None:
            raise ConfigError(f"rational model needs '{key}'")
        lists[key] = _scaled_poly(_coefficient_list(raw, key), units.hbar)
    cutoff_raw = model_keys.get("cutoff")
    cutoff = None
    if cutoff_raw is not None:
        try:
            cutoff = units.frequency_to_natural(float(cutoff_raw))
        except ValueError as exc:
            raise ConfigError(f"cutoff is not a number: {cutoff_raw!r}") from exc
    try:
        model = RationalMirror(lists["r_numerator"], lists["r_denominator"],
                               lists["s_numerator"], lists["s_denominator"],
                               cutoff=cutoff)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    # mandatory validation before any use of a user-defined model
    scale = model.cutoff_frequency or 1.0
    grid = scale * np.logspace(-3, 3, 400)
    validate_model(model, grid).raise_for_failure()
    return model, kind


def parse_config(path) -> RunConfig:
    """Read, parse and resolve a configuration file."""
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    main, model_keys = _parse_sections(path.read_text(), str(path))
    if not model_keys:
        raise ConfigError("config needs a [model] section")

    def pop_float(key: str, default: float) -> float:
        raw = main.pop(key, None)
        if raw is None:
            return default
        try:
            return float(raw)
        except ValueError as exc:
            raise ConfigError(f"key '{key}' is not a number: {raw!r}") from exc

    try:
        units = UnitSystem(hbar=pop_float("hbar", 1.0), c=pop_float("c", 1.0))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    try:
        quadrature = QuadratureConfig(
            rel_tol=pop_float("rel_tol", 1e-10),
            abs_tol=pop_float("abs_tol", 1e-14),
            max_subdivisions=int(pop_float("max_subdivisions", 200)),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    model, kind = build_model(model_keys, units)
    return RunConfig(model=model, units=units, quadrature=quadrature,
                     settings=main, model_kind=kind)
