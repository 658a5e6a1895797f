"""Flat key-value experiment configuration.

Config documents are plain text: one `key = value` per line, full-line `#`
comments, nothing nested.  Parsing is strict: unknown keys, keys that do not
apply to the chosen metric or experiment, duplicates and malformed values are
all rejected with the offending line number.  Runs are seedless — identical
configs always produce byte-identical outputs.

Example::

    # rindler energy sweep
    experiment = energy
    metric = rindler
    J0 = 1.0
    a = 0.01
    N_list = 100:400:2
    output_path = energy_rindler.csv
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Tuple

from .errors import ConfigError
from .metrics import MetricKind, MetricSpec

__all__ = ["ExperimentConfig", "parse_config", "EXPERIMENTS"]

# canonical experiment names and their CLI aliases
EXPERIMENTS = {
    "spectrum": "spectrum",
    "energy_sweep": "energy_sweep",
    "energy": "energy_sweep",
    "entropy_profile": "entropy_profile",
    "entropy": "entropy_profile",
    "potential_scan": "potential_scan",
    "potential": "potential_scan",
    "force_sweep": "force_sweep",
    "force": "force_sweep",
    "fit": "fit",
}

_METRIC_PARAMS = {
    MetricKind.MINKOWSKI: (),
    MetricKind.RINDLER: ("a",),
    MetricKind.SINE: ("A", "k"),
    MetricKind.MODULATED_SINE: ("A", "k"),
    MetricKind.RAINBOW: ("h",),
}

_ALL_KEYS = {
    "experiment",
    "metric",
    "J0",
    "a",
    "A",
    "k",
    "h",
    "N_list",
    "gamma_list",
    "output_path",
    "input_path",
    "variant",
}


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated description of one experiment run."""

    experiment: str
    metric: MetricSpec
    N_list: Tuple[int, ...] = ()
    gamma_list: Tuple[float, ...] = ()
    output_path: Optional[str] = None
    input_path: Optional[str] = None
    variant: str = "eq19"


def _parse_int_list(value: str, line: int) -> Tuple[int, ...]:
    out = []
    for token in value.split(","):
        token = token.strip()
        if not token:
            continue
        if ":" in token:
            parts = token.split(":")
            if len(parts) not in (2, 3):
                raise ConfigError(f"bad range {token!r} (use start:stop[:step])", line)
            try:
                start, stop = int(parts[0]), int(parts[1])
                step = int(parts[2]) if len(parts) == 3 else 2
            except ValueError:
                raise ConfigError(f"bad range {token!r}", line) from None
            if step <= 0 or stop < start:
                raise ConfigError(f"bad range {token!r}", line)
            out.extend(range(start, stop + 1, step))
        else:
            try:
                out.append(int(token))
            except ValueError:
                raise ConfigError(f"bad integer {token!r}", line) from None
    return tuple(out)


def _parse_float_list(value: str, line: int) -> Tuple[float, ...]:
    out = []
    for token in value.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            out.append(float(token))
        except ValueError:
            raise ConfigError(f"bad number {token!r}", line) from None
    return tuple(out)


def parse_config(
    text: str,
    default_experiment: Optional[str] = None,
    overrides: Optional[dict] = None,
) -> ExperimentConfig:
    """Parse and validate a config document.

    `default_experiment` (a CLI subcommand) fills in a missing `experiment`
    key; when both are present they must agree.  `overrides` are command-line
    values (output_path, input_path, variant) applied on top of the document
    before validation.
    """
    raw = {}
    lines = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"expected 'key = value', got {stripped!r}", lineno)
        key, _, value = stripped.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _ALL_KEYS:
            raise ConfigError(f"unknown key {key!r}", lineno)
        if key in raw:
            raise ConfigError(f"duplicate key {key!r}", lineno)
        raw[key] = value
        lines[key] = lineno
    for key, value in (overrides or {}).items():
        if key not in _ALL_KEYS:
            raise ConfigError(f"unknown key {key!r}")
        raw[key] = value
        lines.pop(key, None)

    def err(key, message):
        raise ConfigError(message, lines.get(key))

    # experiment
    exp_raw = raw.get("experiment")
    if exp_raw is None:
        if default_experiment is None:
            raise ConfigError("missing required key 'experiment'")
        exp_raw = default_experiment
    if exp_raw not in EXPERIMENTS:
        err("experiment", f"unknown experiment {exp_raw!r}")
    experiment = EXPERIMENTS[exp_raw]
    if default_experiment is not None and EXPERIMENTS.get(default_experiment) != experiment:
        err("experiment", f"experiment {exp_raw!r} does not match the "
                          f"{default_experiment!r} subcommand")

    # metric
    if "metric" not in raw:
        raise ConfigError("missing required key 'metric'")
    try:
        kind = MetricKind(raw["metric"])
    except ValueError:
        err("metric", f"unknown metric {raw['metric']!r}")
    params = {"kind": kind}
    allowed = _METRIC_PARAMS[kind]
    for name in ("a", "A", "k", "h"):
        if name in raw:
            if name not in allowed:
                err(name, f"{name!r} is not a parameter of the {kind.value} metric")
            try:
                params[name] = float(raw[name])
            except ValueError:
                err(name, f"bad number {raw[name]!r} for {name!r}")
    if "J0" in raw:
        try:
            params["J0"] = float(raw["J0"])
        except ValueError:
            err("J0", f"bad number {raw['J0']!r} for 'J0'")
        if not params["J0"] > 0:
            err("J0", "J0 must be positive")
    if params.get("h", 0.0) < 0:
        err("h", "h must be nonnegative")
    metric = MetricSpec(**params)

    # N_list
    N_list: Tuple[int, ...] = ()
    if "N_list" in raw:
        if experiment == "fit":
            err("N_list", "'N_list' does not apply to the fit experiment")
        N_list = _parse_int_list(raw["N_list"], lines["N_list"])
        if not N_list:
            err("N_list", "N_list must not be empty")
        for n in N_list:
            if n % 2:
                err("N_list", f"N_list values must be even, got {n}")
        if list(N_list) != sorted(set(N_list)):
            err("N_list", "N_list must be strictly increasing")
    elif experiment != "fit":
        raise ConfigError(f"missing required key 'N_list' for {experiment}")

    # gamma_list
    gamma_list: Tuple[float, ...] = ()
    if "gamma_list" in raw:
        if experiment != "potential_scan":
            err("gamma_list", "'gamma_list' only applies to potential_scan")
        gamma_list = _parse_float_list(raw["gamma_list"], lines["gamma_list"])
        for g in gamma_list:
            if not 0.0 < g <= 1.0:
                err("gamma_list", f"gamma values must lie in (0, 1], got {g}")
    elif experiment == "potential_scan":
        raise ConfigError("missing required key 'gamma_list' for potential_scan")

    # input/output
    input_path = raw.get("input_path")
    if experiment == "fit":
        if input_path is None:
            raise ConfigError("missing required key 'input_path' for fit")
    elif input_path is not None:
        err("input_path", "'input_path' only applies to the fit experiment")

    variant = raw.get("variant", "eq19")
    if variant not in ("eq19", "eq20"):
        err("variant", f"variant must be eq19 or eq20, got {variant!r}")

    return ExperimentConfig(
        experiment=experiment,
        metric=metric,
        N_list=N_list,
        gamma_list=gamma_list,
        output_path=raw.get("output_path"),
        input_path=input_path,
        variant=variant,
    )
