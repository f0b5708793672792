"""Config-driven experiments: coupling sweeps, interference scans, dumps.

A config is a JSON object with up to four blocks::

    {
      "topology":   {"name": "ybeam", "M": 50, "N_B": 50, ...},
      "packet":     {"leg": "A", "n0": 25, "alpha": 0.3, "momentum": 1.5707963},
      "observable": {"j_nb": {"start": 0, "stop": 1.5, "step": 0.0375}, ...},
      "output":     {"path": "reflect.csv", "format": "csv"}
    }

Missing blocks fall back to the setups of the reflection, concurrence and
interference figures.  Every artifact embeds the fully resolved config.
"""

from __future__ import annotations

import copy
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any, Callable

import numpy as np

from . import __version__
from .evolution import evolve_series
from .hamiltonian import single_excitation_hamiltonian, spectral_decompose
from .network import (
    NetworkError,
    SpinNetwork,
    build_chain,
    build_interferometer,
    build_star,
    build_ybeam,
)
from .observables import (
    default_time_grid,
    interference_intensity,
    max_concurrence,
    reflection_factor,
    reflection_time,
)
from .virtual import decoupling_report
from .wavepacket import GaussianPacketSpec, gaussian_packet, packet_width


class ConfigError(ValueError):
    pass


class NumericalError(RuntimeError):
    pass


BUILDERS: dict[str, Callable[..., SpinNetwork]] = {
    "chain": build_chain,
    "star": build_star,
    "ybeam": build_ybeam,
    "interferometer": build_interferometer,
}

BUILDER_PARAMS = {
    "chain": ("n", "J"),
    "star": ("m", "M", "N", "J", "J_n"),
    "ybeam": ("M", "N_B", "N_C", "J_A", "J_B", "J_C", "J_nB", "J_nC"),
    "interferometer": ("N_A", "N_B", "delta", "N_D", "J", "J_node"),
}

MATCHED = 1 / math.sqrt(2)
DEFAULT_YBEAM = {"name": "ybeam", "M": 50, "N_B": 50, "N_C": 50, "J_A": 1.0, "J_B": 1.0, "J_C": 1.0,
             "J_nB": MATCHED, "J_nC": MATCHED}
DEFAULT_INTERFEROMETER = {"name": "interferometer", "N_A": 50, "N_B": 50, "delta": 0, "N_D": 50,
                      "J": 1.0, "J_node": MATCHED}
DEFAULT_PACKET = {"leg": "A", "n0": 25.0, "alpha": 0.3, "momentum": math.pi / 2}

DEFAULTS: dict[str, dict] = {
    "reflect-sweep": {
        "topology": DEFAULT_YBEAM,
        "observable": {"j_nb": {"start": 0.0, "stop": 1.5, "step": 0.0375},
                       "j_nc": {"start": 0.0, "stop": 1.5, "step": 0.0375}},
    },
    "concurrence-sweep": {
        "topology": DEFAULT_YBEAM,
        "observable": {"j_nb": {"start": 0.0, "stop": 1.5, "step": 0.075},
                       "j_nc": {"start": 0.0, "stop": 1.5, "step": 0.075}},
    },
    "interfere": {
        "topology": DEFAULT_INTERFEROMETER,
        "observable": {"delta": {"start": -25, "stop": 25, "step": 1}},
    },
    "transform-check": {"topology": DEFAULT_YBEAM, "observable": {}},
    "evolve-dump": {"topology": DEFAULT_YBEAM, "observable": {}},
}

OBSERVABLE_KEYS = {
    "reflect-sweep": {"j_nb", "j_nc", "t0"},
    "concurrence-sweep": {"j_nb", "j_nc", "times"},
    "interfere": {"delta", "t0", "r0"},
    "transform-check": {"theta"},
    "evolve-dump": {"times"},
}

KINDS = {
    "reflect-sweep": "reflection",
    "concurrence-sweep": "concurrence",
    "interfere": "interference",
    "transform-check": "transform-check",
    "evolve-dump": "evolve-dump",
}


@dataclass
class ExperimentConfig:
    command: str
    topology: dict
    packet: GaussianPacketSpec
    observable: dict
    output: dict = field(default_factory=dict)

    def resolved(self) -> dict:
        return {
            "command": self.command,
            "topology": self.topology,
            "packet": asdict(self.packet),
            "observable": self.observable,
            "output": {"format": self.output.get("format", "csv")},
            "version": __version__,
        }


@dataclass
class SweepGrid:
    """Named axes and one or more value arrays shaped like the axis product."""

    axes: dict[str, np.ndarray]
    values: dict[str, np.ndarray]
    metadata: dict

    def __post_init__(self):
        shape = tuple(len(v) for v in self.axes.values())
        for name, arr in self.values.items():
            if arr.shape != shape:
                raise ValueError(f"values {name!r} have shape {arr.shape}, axes give {shape}")

    @property
    def columns(self) -> list[str]:
        return list(self.axes) + list(self.values)

    def rows(self) -> list[list]:
        mesh = np.meshgrid(*self.axes.values(), indexing="ij")
        flat = [m.ravel() for m in mesh] + [v.ravel() for v in self.values.values()]
        return [list(r) for r in zip(*flat)]


# config parsing ----------------------------------------------------------


def load_config(path) -> dict:
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: top level must be an object")
    return raw


def _number(block: str, key: str, value, integer: bool = False):
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ConfigError(f"{block}.{key}: expected a finite number, got {value!r}")
    if integer:
        if int(value) != value:
            raise ConfigError(f"{block}.{key}: expected an integer, got {value!r}")
        return int(value)
    return float(value)


def _unknown(block: str, given, allowed) -> None:
    extra = sorted(set(given) - set(allowed))
    if extra:
        raise ConfigError(f"{block}.{extra[0]}: unknown key (allowed: {', '.join(sorted(allowed))})")


def parse_axis(block: str, key: str, spec, integer: bool = False) -> list:
    """Inclusive grid from {start, stop, step}, or an explicit list, or a scalar."""
    name = f"{block}.{key}"
    if isinstance(spec, (int, float)) and not isinstance(spec, bool):
        return [_number(block, key, spec, integer)]
    if isinstance(spec, list):
        if not spec:
            raise ConfigError(f"{name}: grid must be nonempty")
        return [_number(block, key, v, integer) for v in spec]
    if not isinstance(spec, dict):
        raise ConfigError(f"{name}: expected a number, list or {{start, stop, step}}")
    _unknown(name, spec, {"start", "stop", "step", "num"})
    if "start" not in spec or "stop" not in spec:
        raise ConfigError(f"{name}: grid needs 'start' and 'stop'")
    start = _number(name, "start", spec["start"], integer)
    stop = _number(name, "stop", spec["stop"], integer)
    if stop < start:
        raise ConfigError(f"{name}.stop: must be ≥ start")
    if "num" in spec:
        num = _number(name, "num", spec["num"], integer=True)
        if num < 1:
            raise ConfigError(f"{name}.num: must be ≥ 1")
        values = np.linspace(start, stop, num)
    else:
        if "step" not in spec:
            raise ConfigError(f"{name}: grid needs 'step' or 'num'")
        step = _number(name, "step", spec["step"], integer)
        if step <= 0:
            raise ConfigError(f"{name}.step: must be > 0")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        values = start + step * np.arange(count)
    if integer:
        return [int(round(v)) for v in values]
    return [float(round(v, 12)) for v in values]


def parse_topology(raw) -> dict:
    if not isinstance(raw, dict):
        raise ConfigError("topology: expected an object")
    name = raw.get("name")
    if name not in BUILDERS:
        raise ConfigError(f"topology.name: must be one of {', '.join(BUILDERS)}, got {name!r}")
    params = BUILDER_PARAMS[name]
    _unknown("topology", raw, ("name",) + params)
    missing = [p for p in params if p not in raw]
    if missing:
        raise ConfigError(f"topology.{missing[0]}: required for {name}")
    ints = {"n", "m", "M", "N", "N_A", "N_B", "N_C", "N_D", "delta"}
    out = {"name": name}
    for p in params:
        out[p] = _number("topology", p, raw[p], integer=p in ints)
    return out


def build_network(topology: dict) -> SpinNetwork:
    kwargs = {k: v for k, v in topology.items() if k != "name"}
    try:
        return BUILDERS[topology["name"]](**kwargs)
    except NetworkError as exc:
        raise ConfigError(f"topology: {exc}") from exc


def parse_packet(raw, network: SpinNetwork) -> GaussianPacketSpec:
    if not isinstance(raw, dict):
        raise ConfigError("packet: expected an object")
    _unknown("packet", raw, DEFAULT_PACKET)
    merged = {**DEFAULT_PACKET, **raw}
    if merged["leg"] not in network.leg_ids:
        raise ConfigError(f"packet.leg: unknown leg {merged['leg']!r}")
    spec = GaussianPacketSpec(
        leg=merged["leg"],
        n0=_number("packet", "n0", merged["n0"]),
        alpha=_number("packet", "alpha", merged["alpha"]),
        momentum=_number("packet", "momentum", merged["momentum"]),
    )
    if spec.alpha <= 0:
        raise ConfigError("packet.alpha: must be > 0")
    if not 1 <= spec.n0 <= network.leg(spec.leg).length:
        raise ConfigError(f"packet.n0: must lie within leg {spec.leg!r}")
    return spec


def parse_config(command: str, raw: dict | None = None) -> ExperimentConfig:
    if command not in DEFAULTS:
        raise ConfigError(f"unknown command {command!r}")
    raw = copy.deepcopy(raw or {})
    _unknown("config", raw, {"topology", "packet", "observable", "output"})
    defaults = DEFAULTS[command]
    topo_raw = raw.get("topology", defaults["topology"])
    if command in ("reflect-sweep", "concurrence-sweep") and isinstance(topo_raw, dict) and topo_raw.get("name") == "ybeam":
        # the grid supplies the node couplings; default to the matched symmetric point
        J_A = topo_raw.get("J_A")
        if isinstance(J_A, (int, float)) and not isinstance(J_A, bool):
            topo_raw = {"J_nB": J_A / math.sqrt(2), "J_nC": J_A / math.sqrt(2), **topo_raw}
    topology = parse_topology(topo_raw)
    network = build_network(topology)
    packet = parse_packet(raw.get("packet", {}), network)

    obs_raw = raw.get("observable", defaults["observable"])
    if not isinstance(obs_raw, dict):
        raise ConfigError("observable: expected an object")
    kind = obs_raw.pop("kind", KINDS[command])
    if kind != KINDS[command]:
        raise ConfigError(f"observable.kind: {kind!r} does not match command {command!r}")
    _unknown("observable", obs_raw, OBSERVABLE_KEYS[command])
    observable = _resolve_observable(command, obs_raw, topology, network, packet)

    output = raw.get("output", {})
    if not isinstance(output, dict):
        raise ConfigError("output: expected an object")
    _unknown("output", output, {"path", "format"})
    if output.get("format", "csv") not in ("csv", "json"):
        raise ConfigError(f"output.format: must be csv or json, got {output['format']!r}")
    return ExperimentConfig(command, topology, packet, observable, output)


def _resolve_observable(command, obs, topology, network, packet) -> dict:
    out: dict[str, Any] = {"kind": KINDS[command]}
    name = topology["name"]
    if command in ("reflect-sweep", "concurrence-sweep"):
        if name != "ybeam":
            raise ConfigError(f"topology.name: {command} sweeps node couplings of a ybeam, got {name!r}")
        if packet.leg != "A":
            raise ConfigError("packet.leg: sweeps launch the packet on input leg A")
        out["j_nb"] = parse_axis("observable", "j_nb", obs.get("j_nb", topology["J_nB"]))
        out["j_nc"] = parse_axis("observable", "j_nc", obs.get("j_nc", topology["J_nC"]))
        if any(v < 0 for v in out["j_nb"] + out["j_nc"]):
            raise ConfigError("observable.j_nb: node couplings must be ≥ 0")
    if command == "reflect-sweep":
        default_t0 = reflection_time(topology["M"], packet.n0, topology["N_B"], topology["J_A"])
        out["t0"] = _number("observable", "t0", obs.get("t0", default_t0))
        if out["t0"] < 0:
            raise ConfigError("observable.t0: must be ≥ 0")
    elif command == "concurrence-sweep":
        if topology["N_B"] != topology["N_C"]:
            raise ConfigError("topology.N_C: concurrence needs N_B == N_C")
        out["W"] = packet_width(packet.alpha)
        if "times" in obs:
            out["times"] = parse_axis("observable", "times", obs["times"])
        else:
            grid = default_time_grid(topology["M"], packet.n0, topology["N_B"], packet.alpha, topology["J_A"])
            out["times"] = {"start": float(grid[0]), "stop": float(grid[-1]), "num": len(grid)}
    elif command == "interfere":
        if name != "interferometer":
            raise ConfigError(f"topology.name: interfere needs an interferometer, got {name!r}")
        out["delta"] = parse_axis("observable", "delta", obs.get("delta", topology["delta"]), integer=True)
        bad = [d for d in out["delta"] if topology["N_B"] + d < 1]
        if bad:
            raise ConfigError(f"observable.delta: {bad[0]} leaves leg C empty")
        out["t0"] = _number("observable", "t0", obs.get("t0", 100.0 / topology["J"]))
        out["r0"] = _number("observable", "r0", obs.get("r0", topology["N_D"]), integer=True)
        if not 1 <= out["r0"] <= topology["N_D"]:
            raise ConfigError("observable.r0: must be a site of leg D")
    elif command == "transform-check":
        if "theta" in obs:
            out["theta"] = _number("observable", "theta", obs["theta"])
    elif command == "evolve-dump":
        if "times" in obs:
            out["times"] = parse_axis("observable", "times", obs["times"])
        else:
            J = topology.get("J_A", topology.get("J", 1.0))
            t_end = network.site_count / (2 * J)
            out["times"] = {"start": 0.0, "stop": float(round(t_end, 12)), "num": 51}
        times = _times(out["times"])
        if np.any(np.diff(times) < 0):
            raise ConfigError("observable.times: must be ascending")
    return out


def _times(spec) -> np.ndarray:
    if isinstance(spec, dict):
        return np.linspace(spec["start"], spec["stop"], spec["num"])
    return np.asarray(spec, dtype=float)


# runners -----------------------------------------------------------------


def _map(fn, items, threads: int) -> list:
    if threads <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _check_finite(name: str, arr) -> None:
    if not np.all(np.isfinite(arr)):
        raise NumericalError(f"non-finite {name} values in result")


def _ybeam_point(topology: dict, j_nb: float, j_nc: float) -> SpinNetwork:
    return build_network({**topology, "J_nB": j_nb, "J_nC": j_nc})


def reflect_sweep(cfg: ExperimentConfig, threads: int = 1) -> SweepGrid:
    obs = cfg.observable
    M = cfg.topology["M"]
    points = [(a, b) for a in obs["j_nb"] for b in obs["j_nc"]]

    def run(point):
        net = _ybeam_point(cfg.topology, *point)
        H = single_excitation_hamiltonian(net)
        return reflection_factor(H, gaussian_packet(net, cfg.packet), obs["t0"], M).R

    R = np.array(_map(run, points, threads)).reshape(len(obs["j_nb"]), len(obs["j_nc"]))
    _check_finite("R", R)
    return SweepGrid({"j_nb": np.array(obs["j_nb"]), "j_nc": np.array(obs["j_nc"])}, {"R": R}, cfg.resolved())


def concurrence_sweep(cfg: ExperimentConfig, threads: int = 1) -> SweepGrid:
    obs = cfg.observable
    times = _times(obs["times"])
    points = [(a, b) for a in obs["j_nb"] for b in obs["j_nc"]]

    def run(point):
        net = _ybeam_point(cfg.topology, *point)
        H = single_excitation_hamiltonian(net)
        res = max_concurrence(H, gaussian_packet(net, cfg.packet), net, times, obs["W"])
        return res.C_max, res.t_star

    out = np.array(_map(run, points, threads)).reshape(len(obs["j_nb"]), len(obs["j_nc"]), 2)
    _check_finite("C_max", out)
    return SweepGrid(
        {"j_nb": np.array(obs["j_nb"]), "j_nc": np.array(obs["j_nc"])},
        {"c_max": out[..., 0], "t_star": out[..., 1]},
        cfg.resolved(),
    )


def interfere(cfg: ExperimentConfig, threads: int = 1) -> SweepGrid:
    obs = cfg.observable

    def run(delta):
        net = build_network({**cfg.topology, "delta": delta})
        H = single_excitation_hamiltonian(net)
        psi0 = gaussian_packet(net, cfg.packet)
        return interference_intensity(H, psi0, net.index("D", obs["r0"]), obs["t0"], delta).intensity

    intensity = np.array(_map(run, obs["delta"], threads))
    _check_finite("intensity", intensity)
    return SweepGrid({"delta": np.array(obs["delta"])}, {"intensity": intensity}, cfg.resolved())


def transform_check(cfg: ExperimentConfig) -> dict:
    net = build_network(cfg.topology)
    try:
        report = decoupling_report(net, cfg.observable.get("theta"))
    except NetworkError as exc:
        raise ConfigError(f"topology: {exc}") from exc
    return report.to_dict()


def evolve_dump(cfg: ExperimentConfig) -> tuple[list[str], np.ndarray]:
    net = build_network(cfg.topology)
    times = _times(cfg.observable["times"])
    eig = spectral_decompose(single_excitation_hamiltonian(net))
    states = evolve_series(eig, gaussian_packet(net, cfg.packet), times)
    probs = np.abs(states) ** 2
    _check_finite("probability", probs)
    return ["t"] + net.site_labels(), np.column_stack([times, probs])


def run(cfg: ExperimentConfig, threads: int = 1):
    """Run ``cfg`` and return (columns, rows) ready for serialisation."""
    if cfg.command == "reflect-sweep":
        grid = reflect_sweep(cfg, threads)
    elif cfg.command == "concurrence-sweep":
        grid = concurrence_sweep(cfg, threads)
    elif cfg.command == "interfere":
        grid = interfere(cfg, threads)
    elif cfg.command == "transform-check":
        report = transform_check(cfg)
        return list(report), [list(report.values())]
    else:
        columns, table = evolve_dump(cfg)
        return columns, table.tolist()
    return grid.columns, grid.rows()


# serialisation -----------------------------------------------------------


def _cell(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if x is None:
        return ""
    if isinstance(x, (list, tuple)):
        return json.dumps([float(v) for v in x])
    return repr(float(x))


def _plain(x):
    if isinstance(x, np.generic):
        return x.item()
    if isinstance(x, np.ndarray):
        return x.tolist()
    return x


def format_csv(metadata: dict, columns: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    buf.write("# " + json.dumps(metadata, sort_keys=True) + "\n")
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(_cell(x) if not isinstance(x, (list, tuple)) else '"' + _cell(x) + '"' for x in row) + "\n")
    return buf.getvalue()


def format_json(metadata: dict, columns: list[str], rows: list[list]) -> str:
    body = {
        "metadata": metadata,
        "columns": columns,
        "rows": [[_plain(x) for x in row] for row in rows],
    }
    if metadata.get("command") == "transform-check":
        body["report"] = dict(zip(columns, body["rows"][0]))
    return json.dumps(body, sort_keys=True, indent=1) + "\n"


def read_csv(text: str) -> tuple[dict, list[str], np.ndarray]:
    """Parse an artifact written by :func:`format_csv` (numeric tables only)."""
    lines = text.splitlines()
    if not lines or not lines[0].startswith("# "):
        raise ValueError("missing metadata header")
    metadata = json.loads(lines[0][2:])
    columns = lines[1].split(",")
    data = np.array([[float(v) for v in ln.split(",")] for ln in lines[2:] if ln], dtype=float)
    return metadata, columns, data.reshape(-1, len(columns))
