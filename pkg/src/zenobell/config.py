"""Scenario configuration: line-oriented key = value files.

Format: one ``key = value`` pair per line, optional ``[section]``
headers (sections are grouping only; keys live in one flat, case
sensitive namespace), ``#`` starts a comment.  Unknown keys, unknown
sections and malformed numbers are hard errors so that a typo in a
physics parameter cannot silently fall back to a default.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

__all__ = ["ConfigError", "ScenarioConfig", "parse_config", "SCENARIOS"]

SCENARIOS = ("prepare_pair", "cnot", "pbg", "bell_landscape", "mermin", "trajectories")
_SECTIONS = {"run", "physics", "sampling", "output"}


class ConfigError(ValueError):
    """Invalid or incomplete scenario configuration."""


@dataclass
class ScenarioConfig:
    scenario: str
    physics: dict = field(default_factory=dict)
    seed: int | None = None
    shots: int | None = None
    out: str | None = None


def _float(key: str, raw: str) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise ConfigError(f"unparsable number for key {key!r}: {raw!r}") from None
    if not math.isfinite(value):
        raise ConfigError(f"key {key!r} must be finite, got {raw!r}")
    return value


def _int(key: str, raw: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"unparsable integer for key {key!r}: {raw!r}") from None


def _float_list(key: str, raw: str) -> list[float]:
    items = [s.strip() for s in raw.split(",") if s.strip()]
    if not items:
        raise ConfigError(f"key {key!r} must list at least one number")
    return [_float(key, s) for s in items]


def _require(table: dict, key: str) -> str:
    if key not in table:
        raise ConfigError(f"missing required key {key!r}")
    return table.pop(key)


def _rate(table: dict, key: str, positive: bool = False) -> float:
    value = _float(key, _require(table, key))
    if positive and not value > 0:
        raise ConfigError(f"key {key!r} must be > 0, got {value}")
    if not positive and value < 0:
        raise ConfigError(f"key {key!r} must be >= 0, got {value}")
    return value


def _values(table: dict, key: str, *, required: bool = True, default=None) -> list[float] | None:
    """Accept either a scalar ``key`` or a comma list ``key_values``."""
    list_key = key + "_values"
    if key in table and list_key in table:
        raise ConfigError(f"give either {key!r} or {list_key!r}, not both")
    if key in table:
        return [_float(key, table.pop(key))]
    if list_key in table:
        return _float_list(list_key, table.pop(list_key))
    if required:
        raise ConfigError(f"missing required key {key!r}")
    return default


def _n_max(table: dict) -> int:
    n = _int("n_max", table.pop("n_max", "2"))
    if n < 1:
        raise ConfigError(f"n_max must be >= 1, got {n}")
    return n


def _grid(table: dict, name: str, lo: float, hi: float, count: int) -> list[float]:
    lo = _float(name + "_min", table.pop(name + "_min", repr(lo)))
    hi = _float(name + "_max", table.pop(name + "_max", repr(hi)))
    count = _int(name + "_count", table.pop(name + "_count", str(count)))
    if count < 1:
        raise ConfigError(f"{name}_count must be >= 1, got {count}")
    if count == 1:
        return [lo]
    step = (hi - lo) / (count - 1)
    return [lo + k * step for k in range(count)]


def _nonzero(values: list[float], key: str) -> list[float]:
    for v in values:
        if v == 0:
            raise ConfigError(f"key {key!r} must be nonzero")
    return values


def _parse_prepare_pair(table: dict) -> dict:
    physics = {
        "g": _rate(table, "g", positive=True),
        "kappa": _rate(table, "kappa"),
        "gamma": _rate(table, "gamma"),
        "n_max": _n_max(table),
        "omega_values": _nonzero(_values(table, "omega_minus"), "omega_minus"),
    }
    raw_t = table.pop("T", "auto")
    if "T_values" in table:
        if raw_t != "auto":
            raise ConfigError("give either 'T' or 'T_values', not both")
        physics["t_values"] = _float_list("T_values", table.pop("T_values"))
    elif raw_t == "auto":
        # maximal-entanglement pulse length pi/|omega|, one per omega value
        omegas = physics["omega_values"]
        physics["t_values"] = [math.pi / abs(omegas[0])] if len(omegas) == 1 else None
    else:
        t = _float("T", raw_t)
        if t < 0:
            raise ConfigError(f"key 'T' must be >= 0, got {t}")
        physics["t_values"] = [t]
    return physics


def _parse_cnot(table: dict) -> dict:
    physics = {
        "g": _rate(table, "g", positive=True),
        "kappa": _rate(table, "kappa"),
        "gamma": _rate(table, "gamma"),
        "n_max": _n_max(table),
        "omega_values": _nonzero(_values(table, "omega"), "omega"),
    }
    label = table.pop("input", "all")
    if label not in ("00", "01", "10", "11", "all"):
        raise ConfigError(f"key 'input' must be 00, 01, 10, 11 or all, got {label!r}")
    physics["input"] = label
    # the pulse length is part of the gate protocol, sqrt(2) pi / |omega|
    if table.pop("T", "auto") != "auto":
        raise ConfigError("the cnot scenario only supports 'T = auto'")
    return physics


def _parse_pbg(table: dict) -> dict:
    physics = {"g": _rate(table, "g", positive=True) if "g" in table else 1.0}
    physics["gt1_values"] = _values(table, "gt1", required=False) or _grid(table, "gt1", 0.0, math.pi, 51)
    physics["gt2_values"] = _values(table, "gt2", required=False) or _grid(table, "gt2", 0.0, math.pi, 51)
    loss = _float("loss", table.pop("loss", "0"))
    if loss < 0:
        raise ConfigError(f"key 'loss' must be >= 0, got {loss}")
    physics["loss"] = loss
    return physics


def _parse_bell_landscape(table: dict) -> dict:
    physics = {
        "omega_t_values": _grid(table, "omega_t", 0.0, 2.0 * math.pi, 101),
        "vartheta_values": _grid(table, "vartheta", 0.0, math.pi, 101),
    }
    eps = _float("readout_error", table.pop("readout_error", "0"))
    if not 0.0 <= eps < 0.5:
        raise ConfigError(f"key 'readout_error' must lie in [0, 0.5), got {eps}")
    physics["readout_error"] = eps
    return physics


def _parse_mermin(table: dict) -> dict:
    raw = _values(table, "n_qubits", required=False, default=[3.0])
    ns = []
    for v in raw:
        n = int(v)
        if n != v or not 3 <= n <= 12:
            raise ConfigError(f"key 'n_qubits' entries must be integers in [3, 12], got {v}")
        ns.append(n)
    state = table.pop("state", "ghz")
    if state not in ("ghz", "zeros"):
        raise ConfigError(f"key 'state' must be ghz or zeros, got {state!r}")
    return {"n_values": ns, "state": state, "ghz_phase": _float("ghz_phase", table.pop("ghz_phase", "0"))}


def _parse_trajectories(table: dict) -> dict:
    system = _require(table, "system")
    if system not in ("pair", "cavity_decay"):
        raise ConfigError(f"key 'system' must be pair or cavity_decay, got {system!r}")
    physics = {"system": system, "kappa": _rate(table, "kappa"), "n_max": _n_max(table)}
    if system == "pair":
        physics["g"] = _rate(table, "g", positive=True)
        physics["gamma"] = _rate(table, "gamma")
        physics["omega_minus"] = _nonzero(_values(table, "omega_minus"), "omega_minus")[0]
    n_traj = _int("n_traj", table.pop("n_traj", "2000"))
    if n_traj < 1:
        raise ConfigError(f"n_traj must be >= 1, got {n_traj}")
    physics["n_traj"] = n_traj
    physics["t_end_values"] = _values(table, "t_end", required=False)
    if "dt" in table:
        dt = _float("dt", table.pop("dt"))
        if dt <= 0:
            raise ConfigError(f"dt must be > 0, got {dt}")
        physics["dt"] = dt
    else:
        physics["dt"] = None
    return physics


_PARSERS = {
    "prepare_pair": _parse_prepare_pair,
    "cnot": _parse_cnot,
    "pbg": _parse_pbg,
    "bell_landscape": _parse_bell_landscape,
    "mermin": _parse_mermin,
    "trajectories": _parse_trajectories,
}

_SAMPLED = {"bell_landscape", "trajectories"}


def parse_config(text: str) -> ScenarioConfig:
    """Parse and validate a scenario configuration; all errors name keys."""
    table: dict[str, str] = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ConfigError(f"line {lineno}: malformed section header {raw_line.strip()!r}")
            section = line[1:-1].strip()
            if section not in _SECTIONS:
                raise ConfigError(f"line {lineno}: unknown section {section!r}")
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw_line.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key or not value:
            raise ConfigError(f"line {lineno}: empty key or value")
        if key in table:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        table[key] = value

    scenario = _require(table, "scenario")
    if scenario not in SCENARIOS:
        raise ConfigError(f"unknown scenario {scenario!r} (expected one of {', '.join(SCENARIOS)})")

    out = table.pop("out", None)
    seed = _int("seed", table.pop("seed")) if "seed" in table else None
    if seed is not None and seed < 0:
        raise ConfigError(f"seed must be >= 0, got {seed}")
    shots = None
    if "shots" in table:
        if scenario != "bell_landscape":
            raise ConfigError("key 'shots' only applies to the bell_landscape scenario")
        shots = _int("shots", table.pop("shots"))
        if shots < 1:
            raise ConfigError(f"shots must be >= 1, got {shots}")

    physics = _PARSERS[scenario](table)
    if table:
        raise ConfigError(f"unknown key(s): {', '.join(sorted(table))}")
    if shots is not None and seed is None:
        raise ConfigError("sampled bell_landscape needs a 'seed'")
    if scenario == "trajectories" and seed is None:
        seed = 0
    return ScenarioConfig(scenario=scenario, physics=physics, seed=seed, shots=shots, out=out)
