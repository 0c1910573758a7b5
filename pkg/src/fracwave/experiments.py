"""Named experiment catalog, error computation, and convergence studies.

Every experiment is frozen here (parameters, domain, final time, step-size
policy, snapshot times, error mask), so runs are reproducible by name.  CSV
schemas:

* convergence: header ``N,l2_error,l2_order,linf_error,linf_order``, orders
  empty on the first row, floats in scientific notation with 6 significant
  digits;
* diagnostics: header ``t,mass,energy,l2,linf``;
* snapshot: header ``x,u``, one file per time, named
  ``<experiment>_t<time>_N<N>.csv``.
"""

from __future__ import annotations

import json
import math
import os
import subprocess
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, replace
from functools import lru_cache
from pathlib import Path
from typing import Callable

import numpy as np

from . import exact
from .errors import BlowUpError, ConfigError
from .grid import Domain, PhysicalField, SpectralField, to_physical
from .integrate import IntegrationConfig, integrate
from .model import Diagnostics, ModelParams

__all__ = [
    "MovingMask",
    "ConvergenceRow",
    "ExperimentSpec",
    "RunResult",
    "catalog",
    "get_spec",
    "compute_error",
    "run_single",
    "run_convergence",
    "convergence_csv",
    "diagnostics_csv",
    "snapshot_csv",
    "write_run_artifacts",
    "write_convergence_artifacts",
]

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class MovingMask:
    """Excludes the periodic interval |x - (x0 + speed*t)| <= halfwidth."""

    x0: float
    speed: float
    halfwidth: float

    def excluded(self, x: np.ndarray, t: float, length: float) -> np.ndarray:
        center = self.x0 + self.speed * t
        d = np.mod(x - center + 0.5 * length, length) - 0.5 * length
        return np.abs(d) <= self.halfwidth


@dataclass(frozen=True)
class ConvergenceRow:
    """One resolution of a convergence table; orders refer to the previous row."""

    N: int
    l2_error: float | None
    l2_order: float | None
    linf_error: float | None
    linf_order: float | None
    l2_error_unmasked: float | None = None
    linf_error_unmasked: float | None = None


@dataclass(frozen=True)
class ExperimentSpec:
    """Fully resolved definition of a catalog experiment."""

    name: str
    description: str
    params: ModelParams
    x_left: float
    length: float
    T: float
    initial: str
    ic_params: dict
    oracle: str | None
    N_list: tuple[int, ...]
    default_N: int
    dt: float | str
    snapshot_times: tuple[float, ...]
    mask: MovingMask | None = None
    alpha_sweep: tuple[float, ...] | None = None

    def __post_init__(self):
        for prev, cur in zip(self.N_list, self.N_list[1:]):
            if cur != 2 * prev:
                raise ValueError(
                    f"N_list must double at every step for order computation, got {self.N_list}"
                )

    def domain(self, N: int | None = None) -> Domain:
        return Domain.periodic(self.x_left, self.length, self.default_N if N is None else N)

    def resolve_dt(self, domain: Domain) -> float | str:
        """Concrete dt or "auto" for the given resolution.

        "cfl:<c>" scales with resolution as dt = c / k_max, the same form as
        the auto policy but with a desk-scale constant.
        """
        if isinstance(self.dt, str) and self.dt.startswith("cfl:"):
            c = float(self.dt.split(":", 1)[1])
            return c * domain.length / (2.0 * np.pi * domain.N)
        return self.dt


@dataclass(frozen=True)
class RunResult:
    """Outcome of a single integration of one experiment at one resolution."""

    name: str
    N: int
    dt: float
    n_steps: int
    params: ModelParams
    final: SpectralField
    diagnostics: Diagnostics
    snapshots: dict[float, PhysicalField]
    l2_error: float | None
    linf_error: float | None
    l2_error_unmasked: float | None
    linf_error_unmasked: float | None
    wall_time_s: float


@lru_cache(maxsize=4)
def _profile(c: float) -> exact.TravelingProfile:
    return exact.ch_smooth_profile(c)


def _build_initial(spec: ExperimentSpec, domain: Domain) -> SpectralField:
    kind, a = spec.initial, spec.ic_params
    if kind == "ch-profile-tiled":
        return exact.profile_field(domain, _profile(a["c"]), a["tiles"])
    if kind == "peakon":
        return exact.peakon_field(domain, a["c"], a["x0"])
    if kind == "multi-peakon":
        return exact.periodized_peakon_field(domain, a["amplitudes"], a["positions"])
    if kind == "bbm":
        return exact.bbm_field(domain, a["c_s"], a["x0"])
    raise ConfigError(f"unknown initial-condition selector {kind!r}")


def _build_oracle(spec: ExperimentSpec) -> Callable[[np.ndarray, float], np.ndarray] | None:
    a = spec.ic_params
    if spec.oracle is None:
        return None
    if spec.oracle == "ch-profile":
        prof = _profile(a["c"])
        return lambda x, t: prof.evaluate(np.asarray(x) - prof.speed * t)
    if spec.oracle == "peakon":
        return lambda x, t: exact.peakon(x, t, a["c"], a["x0"], spec.length)
    if spec.oracle == "bbm":
        return lambda x, t: exact.bbm_solitary(x, t, a["c_s"], a["x0"])
    raise ConfigError(f"unknown oracle selector {spec.oracle!r}")


def _catalog() -> dict[str, ExperimentSpec]:
    ch = ModelParams.camassa_holm()
    entries = [
        ExperimentSpec(
            name="ex1-smooth",
            description="Smooth CH traveling wave (c=3, tiled profile), T=1, spectral accuracy",
            params=ch,
            x_left=0.0,
            length=10.0 * _profile(3.0).period,
            T=1.0,
            initial="ch-profile-tiled",
            ic_params={"c": 3.0, "tiles": 10},
            oracle="ch-profile",
            N_list=(16, 32, 64, 128, 256),
            default_N=256,
            dt="auto",
            snapshot_times=(0.0, 1.0),
        ),
        ExperimentSpec(
            name="ex2-peakon",
            description="Single CH peakon (c=1, x0=25) on [0,50], T=10, masked error",
            params=ch,
            x_left=0.0,
            length=50.0,
            T=10.0,
            initial="peakon",
            ic_params={"c": 1.0, "x0": 25.0},
            oracle="peakon",
            N_list=(512, 1024, 2048, 4096, 8192),
            default_N=1024,
            dt="cfl:0.25",
            snapshot_times=(0.0, 10.0),
            mask=MovingMask(x0=25.0, speed=1.0, halfwidth=1.0),
        ),
        ExperimentSpec(
            name="ex3-two-peakon",
            description="Two-peakon interaction (c=2,1 at x=-5,5) on length-30 torus, T=20",
            params=ch,
            x_left=-15.0,
            length=30.0,
            T=20.0,
            initial="multi-peakon",
            ic_params={"amplitudes": (2.0, 1.0), "positions": (-5.0, 5.0)},
            oracle=None,
            N_list=(),
            default_N=1024,
            dt=5.0e-3,
            snapshot_times=(0.0, 5.0, 12.0, 20.0),
        ),
        ExperimentSpec(
            name="ex3-three-peakon",
            description="Three-peakon interaction (c=2,1,0.8 at x=-5,-3,-1), T=3",
            params=ch,
            x_left=-15.0,
            length=30.0,
            T=3.0,
            initial="multi-peakon",
            ic_params={"amplitudes": (2.0, 1.0, 0.8), "positions": (-5.0, -3.0, -1.0)},
            oracle=None,
            N_list=(),
            default_N=1024,
            dt=5.0e-3,
            snapshot_times=(0.0, 1.0, 2.0, 3.0),
        ),
        ExperimentSpec(
            name="ex4-alpha-sweep",
            description="Peakon under fractional dispersion, alpha in {1.0,1.4,1.7,2.0}, T=10",
            params=ch,
            x_left=0.0,
            length=50.0,
            T=10.0,
            initial="peakon",
            ic_params={"c": 1.0, "x0": 25.0},
            oracle=None,
            N_list=(),
            default_N=4096,
            dt=1.0e-4,
            snapshot_times=(0.0, 10.0),
            alpha_sweep=(1.0, 1.4, 1.7, 2.0),
        ),
        ExperimentSpec(
            name="ex5-bbm",
            description="BBM solitary wave (c_s=2, x0=-60) on [-100,100], T=50, spectral accuracy",
            params=ModelParams.fbbm(2.0),
            x_left=-100.0,
            length=200.0,
            T=50.0,
            initial="bbm",
            ic_params={"c_s": 2.0, "x0": -60.0},
            oracle="bbm",
            N_list=(32, 64, 128, 256, 512),
            default_N=512,
            dt="cfl:0.02",
            snapshot_times=(0.0, 50.0),
        ),
    ]
    return {e.name: e for e in entries}


_CATALOG_CACHE: dict[str, ExperimentSpec] | None = None


def catalog() -> dict[str, ExperimentSpec]:
    """The built-in experiment catalog (profile-dependent entries resolved lazily)."""
    global _CATALOG_CACHE
    if _CATALOG_CACHE is None:
        _CATALOG_CACHE = _catalog()
    return _CATALOG_CACHE


def get_spec(name: str) -> ExperimentSpec:
    try:
        return catalog()[name]
    except KeyError:
        raise ConfigError(
            f"unknown experiment {name!r}; known: {', '.join(sorted(catalog()))}"
        ) from None


def compute_error(
    U: SpectralField,
    oracle: Callable[[np.ndarray, float], np.ndarray],
    t: float,
    mask: MovingMask | None = None,
) -> tuple[float, float]:
    """(L2, Linf) error against the oracle on the padded physical grid.

    Masked points are excluded from both norms; the L2 norm uses the grid
    quadrature weight L/M over the kept points.
    """
    u = to_physical(U)
    x = u.grid
    diff = np.abs(u.samples - oracle(x, t))
    if mask is not None:
        keep = ~mask.excluded(x, t, U.domain.length)
        if not np.any(keep):
            raise ConfigError("error mask excludes every grid point")
        diff = diff[keep]
    L, M = U.domain.length, x.size
    return float(np.sqrt(np.sum(diff**2) * L / M)), float(np.max(diff))


def run_single(
    spec: ExperimentSpec,
    N: int | None = None,
    dt: float | str | None = None,
    alpha: float | None = None,
    sample_every: int | None = None,
    spectral_filter: bool = False,
    snapshots: bool = True,
) -> RunResult:
    """Integrate one experiment to T, collecting snapshots, diagnostics, errors.

    Snapshot times are hit exactly by integrating segment by segment (each
    segment shrinks dt uniformly so its steps are equal).
    """
    N = spec.default_N if N is None else N
    domain = spec.domain(N)
    params = spec.params if alpha is None else replace(spec.params, alpha=alpha)
    dt_policy = spec.resolve_dt(domain) if dt is None else dt
    U = _build_initial(spec, domain)

    times = sorted({float(t) for t in spec.snapshot_times if 0.0 < t <= spec.T}) if snapshots else []
    if not times or times[-1] < spec.T:
        times = times + [spec.T]

    snaps: dict[float, PhysicalField] = {}
    if snapshots and any(abs(t) < 1e-12 for t in spec.snapshot_times):
        snaps[0.0] = to_physical(U)

    t_start = time.perf_counter()
    diag_parts: list[Diagnostics] = []
    dt_used, n_steps = None, 0
    t_prev = 0.0
    for t_snap in times:
        seg = t_snap - t_prev
        seg_dt = min(dt_policy, seg) if not isinstance(dt_policy, str) else dt_policy
        cfg = IntegrationConfig(t_end=seg, dt=seg_dt, sample_every=sample_every)
        seg_dt, seg_n, _ = cfg.resolve(domain)
        U, diag = integrate(U, cfg, params, spectral_filter=spectral_filter, t0=t_prev)
        diag_parts.append(diag)
        dt_used = seg_dt if dt_used is None else dt_used
        n_steps += seg_n
        t_prev = t_snap
        if snapshots:
            snaps[t_snap] = to_physical(U)
    wall = time.perf_counter() - t_start

    diagnostics = _concat_diagnostics(diag_parts)
    l2 = linf = l2u = linfu = None
    oracle = _build_oracle(spec)
    if oracle is not None and alpha is None:
        l2, linf = compute_error(U, oracle, spec.T, spec.mask)
        if spec.mask is not None:
            l2u, linfu = compute_error(U, oracle, spec.T, None)
        else:
            l2u, linfu = l2, linf
    return RunResult(
        name=spec.name, N=N, dt=float(dt_used), n_steps=n_steps, params=params,
        final=U, diagnostics=diagnostics, snapshots=snaps,
        l2_error=l2, linf_error=linf, l2_error_unmasked=l2u, linf_error_unmasked=linfu,
        wall_time_s=wall,
    )


def _concat_diagnostics(parts: list[Diagnostics]) -> Diagnostics:
    if len(parts) == 1:
        return parts[0]
    cols = {name: [getattr(parts[0], name)] for name in ("times", "mass", "energy", "l2", "linf")}
    for p in parts[1:]:
        for name in cols:
            cols[name].append(getattr(p, name)[1:])  # drop duplicated segment boundary
    return Diagnostics(**{name: np.concatenate(v) for name, v in cols.items()})


def _convergence_point(spec: ExperimentSpec, N: int) -> tuple[int, tuple | None]:
    try:
        r = run_single(spec, N=N, snapshots=False)
    except BlowUpError:
        return N, None
    return N, (r.l2_error, r.linf_error, r.l2_error_unmasked, r.linf_error_unmasked)


def run_convergence(
    spec: ExperimentSpec,
    N_list: tuple[int, ...] | None = None,
    workers: int | None = None,
) -> list[ConvergenceRow]:
    """Errors and observed orders over a doubling sequence of resolutions."""
    Ns = tuple(spec.N_list if N_list is None else N_list)
    if not Ns:
        raise ConfigError(f"experiment {spec.name!r} defines no convergence resolutions")
    if spec.oracle is None:
        raise ConfigError(f"experiment {spec.name!r} has no exact-solution oracle")
    workers = 1 if workers is None else max(1, workers)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(Ns))) as pool:
            points = dict(pool.map(_convergence_point, [spec] * len(Ns), Ns))
    else:
        points = dict(_convergence_point(spec, N) for N in Ns)

    rows: list[ConvergenceRow] = []
    prev: tuple[float, float] | None = None
    for N in Ns:
        p = points[N]
        if p is None:
            rows.append(ConvergenceRow(N, None, None, None, None))
            prev = None
            continue
        l2, linf, l2u, linfu = p
        l2_order = math.log2(prev[0] / l2) if prev and l2 > 0 else None
        linf_order = math.log2(prev[1] / linf) if prev and linf > 0 else None
        rows.append(ConvergenceRow(N, l2, l2_order, linf, linf_order, l2u, linfu))
        prev = (l2, linf)
    return rows


# ----------------------------------------------------------------------------
# Artifact emission


def _fmt(v: float | None) -> str:
    return "" if v is None else f"{v:.5e}"


def convergence_csv(rows: list[ConvergenceRow], unmasked: bool = False) -> str:
    lines = ["N,l2_error,l2_order,linf_error,linf_order"]
    prev: tuple[float, float] | None = None
    for r in rows:
        if not unmasked:
            lines.append(f"{r.N},{_fmt(r.l2_error)},{_fmt(r.l2_order)},{_fmt(r.linf_error)},{_fmt(r.linf_order)}")
            continue
        l2, linf = r.l2_error_unmasked, r.linf_error_unmasked
        l2o = math.log2(prev[0] / l2) if prev and l2 else None
        linfo = math.log2(prev[1] / linf) if prev and linf else None
        lines.append(f"{r.N},{_fmt(l2)},{_fmt(l2o)},{_fmt(linf)},{_fmt(linfo)}")
        prev = (l2, linf) if l2 and linf else None
    return "\n".join(lines) + "\n"


def diagnostics_csv(d: Diagnostics) -> str:
    lines = ["t,mass,energy,l2,linf"]
    for i in range(len(d)):
        lines.append(
            f"{d.times[i]:.9g},{d.mass[i]:.16e},{d.energy[i]:.16e},{d.l2[i]:.16e},{d.linf[i]:.16e}"
        )
    return "\n".join(lines) + "\n"


def snapshot_csv(u: PhysicalField) -> str:
    lines = ["x,u"]
    for x, v in zip(u.grid, u.samples):
        lines.append(f"{x:.9g},{v:.12e}")
    return "\n".join(lines) + "\n"


def write_atomic(path: Path, text: str) -> None:
    """Write via temp-then-rename so partial runs never leave truncated files."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _git_describe() -> str:
    try:
        out = subprocess.run(
            ["git", "describe", "--always", "--dirty"],
            cwd=Path(__file__).resolve().parent,
            capture_output=True, text=True, timeout=10,
        )
        if out.returncode == 0:
            return out.stdout.strip()
    except OSError:
        pass
    return "unknown"


def _spec_manifest(spec: ExperimentSpec) -> dict:
    d = asdict(spec)
    d["params"] = asdict(spec.params)
    return d


def _manifest(spec: ExperimentSpec, body: dict, outputs: list[str]) -> str:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "experiment": spec.name,
        "spec": _spec_manifest(spec),
        "git_describe": _git_describe(),
        "outputs": sorted(outputs),
    }
    doc.update(body)
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _time_tag(t: float) -> str:
    return f"{t:g}"


def write_run_artifacts(spec: ExperimentSpec, result: RunResult, out_dir: Path,
                        label: str | None = None) -> list[Path]:
    """Snapshot CSVs, diagnostics CSV, and a JSON manifest for one run."""
    out_dir = Path(out_dir)
    label = label or spec.name
    paths = []
    for t, u in sorted(result.snapshots.items()):
        p = out_dir / f"{label}_t{_time_tag(t)}_N{result.N}.csv"
        write_atomic(p, snapshot_csv(u))
        paths.append(p)
    pdiag = out_dir / f"{label}_diagnostics_N{result.N}.csv"
    write_atomic(pdiag, diagnostics_csv(result.diagnostics))
    paths.append(pdiag)
    body = {
        "N": result.N,
        "dt": result.dt,
        "n_steps": result.n_steps,
        "alpha": result.params.alpha,
        "wall_time_s": result.wall_time_s,
        "errors": {
            "l2": result.l2_error,
            "linf": result.linf_error,
            "l2_unmasked": result.l2_error_unmasked,
            "linf_unmasked": result.linf_error_unmasked,
        },
    }
    pman = out_dir / f"{label}_manifest_N{result.N}.json"
    write_atomic(pman, _manifest(spec, body, [p.name for p in paths]))
    paths.append(pman)
    return paths


def write_convergence_artifacts(spec: ExperimentSpec, rows: list[ConvergenceRow],
                                out_dir: Path, wall_time_s: float) -> list[Path]:
    """Convergence CSV (plus the unmasked twin when a mask exists) and manifest."""
    out_dir = Path(out_dir)
    paths = [out_dir / f"{spec.name}_convergence.csv"]
    write_atomic(paths[0], convergence_csv(rows))
    if spec.mask is not None:
        p = out_dir / f"{spec.name}_convergence_unmasked.csv"
        write_atomic(p, convergence_csv(rows, unmasked=True))
        paths.append(p)
    body = {"N_list": [r.N for r in rows], "wall_time_s": wall_time_s}
    pman = out_dir / f"{spec.name}_convergence_manifest.json"
    write_atomic(pman, _manifest(spec, body, [p.name for p in paths]))
    paths.append(pman)
    return paths
