"""Scenario configuration: an INI-style document with one level of sections.

Grammar (keys are exact)::

    [model]
    family = dimer | pp | mf
    omega0 = <float>          ; dimer only
    m      = <float>          ; pp / mf, default 1

    [schedule.<name>]         ; dimer: g, J   pp: omega, gamma   mf: omega0, omegaB
    kind    = constant | linear-ramp | smooth-ramp
    value0  = <float>
    value_f = <float>         ; ramps only
    tau_q   = <float>         ; ramps only

    [run]
    tau_q   = <float>         ; optional, defaults to the longest ramp
    dt      = <float>         ; optional, defaults to tau_q / 1e5
    stride  = <int>           ; optional, default 1
    modes   = none, mode1_only, both
    output  = <path>
    initial = ground | vacuum ; optional, default ground
"""

from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path
from typing import Union

import numpy as np

from .dynamics import ControlMode
from .errors import ConfigError, DomainError, ValidationError
from .normal_modes import DimerParams, MFParams, PPParams
from .schedules import KINDS, Schedule, horizon

SCHEDULE_NAMES = {
    "dimer": ("g", "J"),
    "pp": ("omega", "gamma"),
    "mf": ("omega0", "omegaB"),
}
MODEL_KEYS = {"dimer": ("family", "omega0"), "pp": ("family", "m"), "mf": ("family", "m")}
RUN_KEYS = ("tau_q", "dt", "stride", "modes", "output", "initial")
VALIDATION_POINTS = 1000
DEFAULT_STEPS = 100_000
MIN_STEPS = 1000

Params = Union[DimerParams, PPParams, MFParams]


@dataclass(frozen=True)
class ScenarioConfig:
    family: str
    params: Params
    tau_q: float
    dt: float
    output_stride: int
    modes: tuple[ControlMode, ...]
    output_path: str
    initial: str = "ground"

    @property
    def schedules(self) -> dict[str, Schedule]:
        return {name: getattr(self.params, name) for name in SCHEDULE_NAMES[self.family]}


def _float(section: configparser.SectionProxy, key: str, path: str, default=None) -> float:
    if key not in section:
        if default is None:
            raise ConfigError(f"{path}.{key}", "missing required key")
        return default
    raw = section[key]
    try:
        value = float(raw)
    except ValueError:
        raise ConfigError(f"{path}.{key}", f"not a number: {raw!r}") from None
    if math.isnan(value):
        raise ConfigError(f"{path}.{key}", "NaN is not allowed")
    return value


def _check_keys(section: configparser.SectionProxy, allowed, path: str) -> None:
    for key in section:
        if key not in allowed:
            raise ConfigError(f"{path}.{key}", f"unknown key (allowed: {', '.join(allowed)})")


def _parse_schedule(section: configparser.SectionProxy, path: str) -> Schedule:
    _check_keys(section, ("kind", "value0", "value_f", "tau_q"), path)
    kind = section.get("kind", "").strip()
    if kind not in KINDS:
        raise ConfigError(f"{path}.kind", f"expected one of {KINDS}, got {kind!r}")
    value0 = _float(section, "value0", path)
    if kind == "constant":
        for key in ("value_f", "tau_q"):
            if key in section:
                raise ConfigError(f"{path}.{key}", "not allowed for a constant schedule")
        return Schedule.constant(value0)
    value_f = _float(section, "value_f", path)
    tau = _float(section, "tau_q", path)
    if not 0 < tau < math.inf:
        raise ConfigError(f"{path}.tau_q", f"must be finite and > 0, got {tau!r}")
    return Schedule(kind, value0, value_f, tau)


def _validate(family: str, model: dict, sch: dict, tau: float) -> None:
    """Check the family's model invariants on a uniform grid over ``[0, tau]``."""
    for t in np.linspace(0.0, tau, VALIDATION_POINTS):
        t = float(t)
        if family == "dimer":
            g, _ = sch["g"](t)
            j, _ = sch["J"](t)
            if g * g + j >= 1.0:
                raise ValidationError("g^2 + J < 1", t, f"g2^2 = {g * g + j!r}")
            if g * g - j >= 1.0:
                raise ValidationError("g^2 - J < 1", t, f"g1^2 = {g * g - j!r}")
        elif family == "pp":
            w, _ = sch["omega"](t)
            gam, _ = sch["gamma"](t)
            if w * w - abs(gam) / model["m"] <= 0.0:
                raise ValidationError("omega^2 - |gamma|/m > 0", t,
                                      f"omega={w!r}, gamma={gam!r}")
        else:
            w0, _ = sch["omega0"](t)
            wb, _ = sch["omegaB"](t)
            if w0 == 0.0:
                raise ValidationError("omega0 != 0", t)
            if math.sqrt(w0 * w0 + wb * wb) <= abs(wb):
                raise ValidationError("Omega - |omega_B| > 0", t, f"omega_B={wb!r}")


def parse_config(text: str) -> ScenarioConfig:
    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=(";", "#"))
    cp.optionxform = str  # keys are case-sensitive (J, omegaB)
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError("<document>", str(exc).splitlines()[0]) from None

    if "model" not in cp:
        raise ConfigError("model", "missing section")
    family = cp["model"].get("family", "").strip()
    if family not in SCHEDULE_NAMES:
        raise ConfigError("model.family", f"expected dimer, pp or mf, got {family!r}")
    _check_keys(cp["model"], MODEL_KEYS[family], "model")
    model = {}
    if family == "dimer":
        model["omega0"] = _float(cp["model"], "omega0", "model")
        if not model["omega0"] > 0:
            raise ConfigError("model.omega0", "must be > 0")
    else:
        model["m"] = _float(cp["model"], "m", "model", default=1.0)
        if not model["m"] > 0:
            raise ConfigError("model.m", "must be > 0")

    expected = {f"schedule.{name}" for name in SCHEDULE_NAMES[family]}
    for name in cp.sections():
        if name not in expected and name not in ("model", "run"):
            raise ConfigError(name, f"unknown section for family {family!r}")
    sch = {}
    for name in SCHEDULE_NAMES[family]:
        path = f"schedule.{name}"
        if path not in cp:
            raise ConfigError(path, "missing section")
        sch[name] = _parse_schedule(cp[path], path)

    run = cp["run"] if "run" in cp else cp["DEFAULT"]
    _check_keys(run, RUN_KEYS, "run")
    ramp_tau = horizon(*sch.values())
    tau = _float(run, "tau_q", "run", default=ramp_tau or None)
    if not 0 < tau < math.inf:
        raise ConfigError("run.tau_q", f"must be finite and > 0, got {tau!r}")
    for name, s in sch.items():
        if s.is_ramp and s.tau_q < tau:
            raise ConfigError(f"schedule.{name}.tau_q",
                              f"ramp ends at {s.tau_q!r}, before run.tau_q={tau!r}")
    dt = _float(run, "dt", "run", default=tau / DEFAULT_STEPS)
    if not dt > 0:
        raise ConfigError("run.dt", "must be > 0")
    if dt > tau / MIN_STEPS:
        raise ConfigError("run.dt", f"dt={dt!r} exceeds tau_q/{MIN_STEPS} = {tau / MIN_STEPS!r}")
    try:
        stride = int(run.get("stride", "1"))
    except ValueError:
        raise ConfigError("run.stride", f"not an integer: {run.get('stride')!r}") from None
    if stride < 1:
        raise ConfigError("run.stride", "must be >= 1")
    mode_names = [m.strip() for m in run.get("modes", "none, mode1_only, both").split(",") if m.strip()]
    if not mode_names:
        raise ConfigError("run.modes", "must name at least one control mode")
    try:
        modes = tuple(ControlMode(m) for m in mode_names)
    except ValueError as exc:
        raise ConfigError("run.modes", str(exc)) from None
    if len(set(modes)) != len(modes):
        raise ConfigError("run.modes", "duplicate control mode")
    output = run.get("output", f"{family}.csv").strip()
    if not output:
        raise ConfigError("run.output", "empty path")
    initial = run.get("initial", "ground").strip()
    if initial not in ("ground", "vacuum"):
        raise ConfigError("run.initial", f"expected ground or vacuum, got {initial!r}")

    _validate(family, model, sch, tau)
    try:
        if family == "dimer":
            params = DimerParams(model["omega0"], sch["g"], sch["J"])
        elif family == "pp":
            params = PPParams(model["m"], sch["omega"], sch["gamma"])
        else:
            params = MFParams(model["m"], sch["omega0"], sch["omegaB"])
    except DomainError as exc:
        raise ValidationError("model invariant", math.nan, str(exc)) from None
    return ScenarioConfig(family, params, tau, dt, stride, modes, output, initial)


def load_config(path: str | Path) -> ScenarioConfig:
    return parse_config(Path(path).read_text())


def shipped_config(name: str = "fig1") -> str:
    """Text of a configuration bundled with the package."""
    return resources.files("coupledsta").joinpath("configs", f"{name}.cfg").read_text()


def dump_config(cfg: ScenarioConfig) -> str:
    lines = ["[model]", f"family = {cfg.family}"]
    if cfg.family == "dimer":
        lines.append(f"omega0 = {cfg.params.omega0!r}")
    else:
        lines.append(f"m = {cfg.params.m!r}")
    for name, s in cfg.schedules.items():
        lines += ["", f"[schedule.{name}]", f"kind = {s.kind}", f"value0 = {s.value0!r}"]
        if s.is_ramp:
            lines += [f"value_f = {s.value_f!r}", f"tau_q = {s.tau_q!r}"]
    lines += [
        "", "[run]",
        f"tau_q = {cfg.tau_q!r}",
        f"dt = {cfg.dt!r}",
        f"stride = {cfg.output_stride}",
        "modes = " + ", ".join(m.value for m in cfg.modes),
        f"output = {cfg.output_path}",
        f"initial = {cfg.initial}",
    ]
    return "\n".join(lines) + "\n"


def with_overrides(cfg: ScenarioConfig, *, stride: int | None = None) -> ScenarioConfig:
    if stride is None:
        return cfg
    if stride < 1:
        raise ConfigError("run.stride", "must be >= 1")
    return replace(cfg, output_stride=stride)
