"""Campaign runner: parse flat key=value configs, sweep models over sizes and
initial states, collect per-point diagnostics, fit scaling laws, and persist
everything as CSV/JSON.

Artifacts written to the output directory:

- ``sweep.csv``        one diagnostics row per (size, init, observable)
- ``dynamics_<N>.csv`` columns t,obs,p0 (first init, sigma_z observable)
- ``otoc_<N>.csv``     columns t,f_re,f_im_resid (first init, sigma_z pair)
- ``ansatz_<N>.json`` / ``profile_<N>.csv``  (ansatz mode)
- ``summary.json``     fitted slopes with confidence intervals, acceptance
  flags, error log, full config echo, and the tool version

Numbers are formatted with 17 significant digits so CSV round-trips are
exact; reruns with the same config and seed reproduce every column except
the wall-clock timing one.  Sweep points are independent jobs executed on a
bounded worker pool; results are written by a single serializer in the
order declared by the config, so worker count never changes the numbers.
"""

from __future__ import annotations

import dataclasses
import json
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy import stats

from . import __version__
from .ansatz import ansatz_residual, default_shell, offdiagonal_profile
from .basis import SpinConfiguration, enumerate_sector
from .errors import ConfigError, EmptyWindowError, ParameterError, QuenchLabError
from .models import (
    MixedFieldChainParams,
    NnXxxParams,
    SpinBosonParams,
    build_mixed_field_bath,
    build_mixed_field_chain,
    build_nn_xxx,
    build_spin_boson,
    embed_bath_vector,
    sigma_z_system_diag,
)
from .otoc import (
    PauliObservablePair,
    otoc_series,
    otoc_theory,
    otoc_time_average_ed,
    survival_pair,
)
from .quench import (
    de_average,
    de_fluctuations,
    expectation_series,
    ipr,
    moments,
    prepare_quench,
    survival_probability_series,
    two_time_average,
)
from .spectral import (
    detect_degeneracies,
    diagonalize,
    microcanonical_average,
    rotate_observable,
)

_MODELS = ("nn_xxx", "mixed_field", "spin_boson")
_INITS = ("correlated", "neel", "bath_ground")
_OBSERVABLES = ("sigma_z", "survival")

#: sweep.csv column schema, version-stable.
SWEEP_COLUMNS = (
    "model,n_sites,sector_dim,seed,init,observable,ipr,i8,delta2,de_avg,"
    "two_time_avg,mc_avg,mc_window,fbar_ed,fbar_theory,n_degenerate_groups,wall_ms"
)


@dataclass(frozen=True)
class CampaignConfig:
    """Fully resolved campaign description (see parse_config)."""

    model: str
    sizes: tuple[int, ...]
    inits: tuple[str, ...]
    sector: str
    observables: tuple[str, ...]
    t_max: float
    n_points: int
    grid: str
    dynamics: bool
    otoc: bool
    mc_window_frac: float
    seed: int
    workers: int
    out: str
    # nn_xxx / mixed_field shared
    bz_system: float | None = None
    # nn_xxx
    j: float | None = None
    j_prime: float | None = None
    # mixed_field
    bx_bath: float | None = None
    bz_bath: float | None = None
    jx: float | None = None
    jz: float | None = None
    jx_sb: float | None = None
    attach_site: int = 5
    # spin_boson
    omega_z: float | None = None
    gamma_sb: float | None = None
    coupling: str = "constant"
    omega0: str = "auto"


@dataclass(frozen=True)
class DiagnosticsRecord:
    """One sweep point's scalar diagnostics."""

    model: str
    n_sites: int
    sector_dim: int
    seed: int
    init: str
    observable: str
    ipr: float
    i8: float
    delta2: float
    de_avg: float
    two_time_avg: float
    mc_avg: float
    mc_window: float
    fbar_ed: float
    fbar_theory: float
    n_degenerate_groups: int
    wall_ms: int

    def csv_row(self) -> str:
        def fmt(x):
            if isinstance(x, float):
                return f"{x:.17g}"
            return str(x)

        return ",".join(
            fmt(getattr(self, name)) for name in SWEEP_COLUMNS.split(",")
        )


# ---------------------------------------------------------------------------
# configuration parsing
# ---------------------------------------------------------------------------

_GENERIC_KEYS = {
    "model", "sizes", "init", "sector", "observables", "t_max", "n_points",
    "grid", "dynamics", "otoc", "mc_window_frac", "seed", "workers", "out",
}
_MODEL_KEYS = {
    "nn_xxx": {"bz_system", "j", "j_prime"},
    "mixed_field": {"bz_system", "bx_bath", "bz_bath", "jx", "jz", "jx_sb", "attach_site"},
    "spin_boson": {"omega_z", "gamma_sb", "coupling", "omega0"},
}
_REQUIRED_MODEL_KEYS = {
    "nn_xxx": {"bz_system", "j"},
    "mixed_field": {"bz_system", "bx_bath", "bz_bath", "jx", "jz", "jx_sb"},
    "spin_boson": {"omega_z", "gamma_sb"},
}
_ALL_KEYS = _GENERIC_KEYS | set().union(*_MODEL_KEYS.values())


def _parse_bool(value: str, key: str, line: int) -> bool:
    low = value.lower()
    if low in ("true", "yes", "1"):
        return True
    if low in ("false", "no", "0"):
        return False
    raise ConfigError(f"line {line}: key '{key}' expects a boolean, got '{value}'")


def _parse_float(value: str, key: str, line: int) -> float:
    try:
        return float(value)
    except ValueError:
        raise ConfigError(f"line {line}: key '{key}' expects a number, got '{value}'") from None


def _parse_int(value: str, key: str, line: int) -> int:
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"line {line}: key '{key}' expects an integer, got '{value}'") from None


def parse_config(text: str) -> CampaignConfig:
    """Parse and validate a flat key = value config; unknown keys are errors."""
    raw: dict[str, tuple[str, int]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected 'key = value', got '{stripped}'")
        key, value = (part.strip() for part in stripped.split("=", 1))
        if key not in _ALL_KEYS:
            raise ConfigError(f"line {lineno}: unknown key '{key}'")
        if key in raw:
            raise ConfigError(f"line {lineno}: duplicate key '{key}'")
        raw[key] = (value, lineno)

    def take(key: str, default=None):
        return raw.pop(key, (default, 0))

    model, line = take("model")
    if model is None:
        raise ConfigError("missing required key 'model'")
    if model not in _MODELS:
        raise ConfigError(f"line {line}: model must be one of {_MODELS}, got '{model}'")

    sizes_str, line = take("sizes")
    if sizes_str is None:
        raise ConfigError("missing required key 'sizes'")
    try:
        sizes = tuple(int(tok) for tok in sizes_str.split(",") if tok.strip())
    except ValueError:
        raise ConfigError(f"line {line}: 'sizes' must be comma-separated integers") from None
    if not sizes:
        raise ConfigError(f"line {line}: 'sizes' is empty")

    init_str, line = take("init", "correlated")
    inits = tuple(tok.strip() for tok in init_str.split(",") if tok.strip())
    for init in inits:
        base = init.split(":", 1)[0]
        if base not in _INITS and base != "eigenstate_index":
            raise ConfigError(
                f"line {line}: init '{init}' not in {_INITS + ('eigenstate_index:<m>',)}"
            )
        if base == "eigenstate_index":
            _parse_int(init.split(":", 1)[1], "init", line)

    sector, line = take("sector", "auto")
    if sector not in ("auto", "full") and not sector.isdigit():
        raise ConfigError(
            f"line {line}: sector must be 'auto', 'full', or an excitation count"
        )

    obs_str, line = take("observables", "sigma_z")
    observables = tuple(tok.strip() for tok in obs_str.split(",") if tok.strip())
    for obs in observables:
        if obs not in _OBSERVABLES:
            raise ConfigError(f"line {line}: observable '{obs}' not in {_OBSERVABLES}")

    t_max_s, line = take("t_max", "200")
    t_max = _parse_float(t_max_s, "t_max", line)
    if t_max <= 0:
        raise ConfigError(f"line {line}: t_max must be positive")
    n_points_s, line = take("n_points", "2000")
    n_points = _parse_int(n_points_s, "n_points", line)
    if n_points < 2:
        raise ConfigError(f"line {line}: n_points must be >= 2")
    grid, line = take("grid", "linear")
    if grid not in ("linear", "log"):
        raise ConfigError(f"line {line}: grid must be 'linear' or 'log'")

    dynamics_s, line = take("dynamics", "false")
    dynamics = _parse_bool(dynamics_s, "dynamics", line)
    otoc_s, line = take("otoc", "false")
    otoc_on = _parse_bool(otoc_s, "otoc", line)
    mcw_s, line = take("mc_window_frac", "0.02")
    mc_window_frac = _parse_float(mcw_s, "mc_window_frac", line)
    if mc_window_frac <= 0:
        raise ConfigError(f"line {line}: mc_window_frac must be positive")
    seed_s, line = take("seed", "0")
    seed = _parse_int(seed_s, "seed", line)
    workers_s, line = take("workers", "1")
    workers = _parse_int(workers_s, "workers", line)
    if workers < 1:
        raise ConfigError(f"line {line}: workers must be >= 1")
    out, _ = take("out", "runs/campaign")

    allowed = _MODEL_KEYS[model]
    for key, (_, lineno) in raw.items():
        if key not in allowed:
            raise ConfigError(
                f"line {lineno}: key '{key}' is not used by model '{model}'"
            )
    missing = _REQUIRED_MODEL_KEYS[model] - set(raw)
    if missing:
        raise ConfigError(
            f"model '{model}' requires keys: {', '.join(sorted(missing))}"
        )

    fields: dict = {}
    for key in ("bz_system", "j", "j_prime", "bx_bath", "bz_bath", "jx", "jz", "jx_sb",
                "omega_z", "gamma_sb"):
        if key in raw:
            value, lineno = raw[key]
            fields[key] = _parse_float(value, key, lineno)
    if "attach_site" in raw:
        value, lineno = raw["attach_site"]
        fields["attach_site"] = _parse_int(value, "attach_site", lineno)
    if "coupling" in raw:
        value, lineno = raw["coupling"]
        if value not in ("constant", "random"):
            raise ConfigError(f"line {lineno}: coupling must be 'constant' or 'random'")
        fields["coupling"] = value
    if "omega0" in raw:
        value, lineno = raw["omega0"]
        if value != "auto":
            _parse_float(value, "omega0", lineno)
        fields["omega0"] = value
    if model == "nn_xxx":
        fields.setdefault("j_prime", 0.0)

    config = CampaignConfig(
        model=model,
        sizes=sizes,
        inits=inits,
        sector=sector,
        observables=observables,
        t_max=t_max,
        n_points=n_points,
        grid=grid,
        dynamics=dynamics,
        otoc=otoc_on,
        mc_window_frac=mc_window_frac,
        seed=seed,
        workers=workers,
        out=out,
        **fields,
    )
    _validate_semantics(config)
    return config


def _validate_semantics(config: CampaignConfig) -> None:
    for init in config.inits:
        base = init.split(":", 1)[0]
        if base in ("bath_ground", "eigenstate_index") and config.model != "mixed_field":
            raise ConfigError(
                f"init '{init}' is only supported for the mixed_field model"
            )
        if base == "neel" and config.model == "spin_boson":
            raise ConfigError("init 'neel' is not defined for the spin_boson model")
    if config.model == "mixed_field" and config.sector not in ("auto", "full"):
        raise ConfigError("mixed_field runs on the full space; sector must be auto/full")
    if config.model != "spin_boson":
        for n in config.sizes:
            for init in config.inits:
                k = _sector_of(config, n, init)
                if k != "all" and not 0 <= k <= n:
                    raise ConfigError(f"sector {k} incompatible with size {n}")


def load_config(path: str | Path) -> CampaignConfig:
    return parse_config(Path(path).read_text())


# ---------------------------------------------------------------------------
# sweep-point evaluation
# ---------------------------------------------------------------------------

def neel_bits(n_sites: int) -> int:
    """System spin up, bath sites 1..N-1 alternating starting up.

    The excitation count is floor(N/2) + 1, placing the state mid-spectrum
    in a high-dimensional sector.  The alternative alternation (bath
    starting down) sits in an accidentally symmetric configuration whose
    long-time OTOC collapses to zero at even N instead of decreasing
    smoothly, so this convention is the one that exhibits the scrambling
    size trend.
    """
    bits = 1
    for site in range(1, n_sites, 2):
        bits |= 1 << site
    return bits


def _sector_of(config: CampaignConfig, n: int, init: str) -> int | str:
    if config.sector == "full":
        return "all"
    if config.sector.isdigit():
        return int(config.sector)
    base = init.split(":", 1)[0]
    if config.model == "mixed_field" or base in ("bath_ground", "eigenstate_index"):
        return "all"
    if base == "correlated":
        return 1
    if base == "neel":
        return neel_bits(n).bit_count()
    return "all"


def _time_grid(config: CampaignConfig) -> np.ndarray:
    if config.grid == "log":
        return np.logspace(
            np.log10(config.t_max / 1000.0), np.log10(config.t_max), config.n_points
        )
    return np.linspace(0.0, config.t_max, config.n_points)


def _mc_average_widening(obs, eigensystem, center: float, window: float):
    """Microcanonical average, doubling the window until it holds a level."""
    while True:
        try:
            return microcanonical_average(obs, eigensystem, center, window), window
        except EmptyWindowError:
            window *= 2.0


@dataclass
class PointResult:
    records: list[DiagnosticsRecord]
    dynamics: tuple[np.ndarray, np.ndarray, np.ndarray] | None
    otoc: tuple[np.ndarray, np.ndarray, np.ndarray] | None
    ansatz: dict | None
    profile: dict | None
    ww: dict | None
    error: str | None = None


def _build_point(config: CampaignConfig, n: int, init: str):
    """Hamiltonian, eigensystem and quench state for one sweep point."""
    base = init.split(":", 1)[0]
    if config.model == "spin_boson":
        omega0 = 1.0 / n if config.omega0 == "auto" else float(config.omega0)
        g = float(np.sqrt(config.gamma_sb * omega0 / (2.0 * np.pi)))
        params = SpinBosonParams(
            n_modes=n,
            omega_z=config.omega_z,
            omega_0=omega0,
            g=g,
            random_couplings=(config.coupling == "random"),
            seed=config.seed,
        )
        ham = build_spin_boson(params)
        eig = diagonalize(ham)
        state = prepare_quench(eig, 0)
        return ham, eig, state
    if config.model == "nn_xxx":
        sector = enumerate_sector(n, _sector_of(config, n, init))
        params = NnXxxParams(
            n_sites=n, b_z_system=config.bz_system, j=config.j, j_prime=config.j_prime
        )
        ham = build_nn_xxx(params, sector)
        eig = diagonalize(ham)
        bits = 1 if base == "correlated" else neel_bits(n)
        state = prepare_quench(eig, SpinConfiguration(bits, n))
        return ham, eig, state
    # mixed_field
    params = MixedFieldChainParams(
        n_sites=n,
        b_z_system=config.bz_system,
        b_x_bath=config.bx_bath,
        b_z_bath=config.bz_bath,
        j_x=config.jx,
        j_z=config.jz,
        j_x_sb=config.jx_sb,
        attach_site=config.attach_site,
    )
    ham = build_mixed_field_chain(params)
    eig = diagonalize(ham)
    if base == "correlated":
        state = prepare_quench(eig, SpinConfiguration(1, n))
    elif base == "neel":
        state = prepare_quench(eig, SpinConfiguration(neel_bits(n), n))
    else:
        index = 0 if base == "bath_ground" else int(init.split(":", 1)[1])
        bath_eig = diagonalize(build_mixed_field_bath(params))
        vector = embed_bath_vector(bath_eig.vectors[:, index], n)
        state = prepare_quench(eig, vector)
    return ham, eig, state


def evaluate_point(config: CampaignConfig, n: int, init: str, first: bool) -> PointResult:
    """Run one sweep point: build, diagonalize, and compute all diagnostics."""
    started = time.perf_counter()
    ham, eig, state = _build_point(config, n, init)
    mom = moments(state)
    report = detect_degeneracies(eig.energies)
    window = config.mc_window_frac * max(eig.spectral_width, 1e-12)
    records = []
    sigma_obs = rotate_observable(sigma_z_system_diag(eig.basis), eig)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for name in config.observables:
            if name == "sigma_z":
                obs = sigma_obs
                pair = PauliObservablePair(obs, obs, -1.0, 2.0, -1.0, 2.0)
            else:
                pair = survival_pair(state)
                obs = pair.w
            mc_avg, used_window = _mc_average_widening(
                obs, eig, state.mean_energy, window
            )
            records.append(
                DiagnosticsRecord(
                    model=config.model,
                    n_sites=n,
                    sector_dim=eig.dimension,
                    seed=config.seed,
                    init=init,
                    observable=name,
                    ipr=ipr(state),
                    i8=mom.i8,
                    delta2=de_fluctuations(state, obs, report),
                    de_avg=de_average(state, obs),
                    two_time_avg=two_time_average(state, obs, report),
                    mc_avg=mc_avg,
                    mc_window=used_window,
                    fbar_ed=otoc_time_average_ed(state, pair, report),
                    fbar_theory=otoc_theory(
                        pair.w_down, pair.delta_w, pair.v_down, pair.delta_v, mom
                    ),
                    n_degenerate_groups=len(report.groups),
                    wall_ms=0,
                )
            )
    dynamics_payload = None
    otoc_payload = None
    ansatz_payload = None
    profile_payload = None
    ww_payload = None
    if first:
        times = _time_grid(config)
        if config.dynamics:
            series = expectation_series(state, sigma_obs, eig.energies, times)
            p0 = survival_probability_series(state, eig.energies, times)
            dynamics_payload = (times, series.values, p0.values)
        if config.otoc:
            pair = PauliObservablePair(sigma_obs, sigma_obs, -1.0, 2.0, -1.0, 2.0)
            fs = otoc_series(state, pair, eig, times)
            otoc_payload = (times, fs.values, fs.imag_residual)
    if config.model == "spin_boson" and config.coupling == "constant":
        omega0 = 1.0 / n if config.omega0 == "auto" else float(config.omega0)
        from .wigner_weisskopf import ww_fluctuations, ww_ipr

        ww_payload = {
            "n_modes": n,
            "ipr_numeric": ipr(state),
            "ipr_theory": ww_ipr(omega0, config.gamma_sb),
            "delta2_numeric": de_fluctuations(state, sigma_obs),
            "delta2_theory": ww_fluctuations(omega0, config.gamma_sb),
        }
    elapsed_ms = int(round(1000.0 * (time.perf_counter() - started)))
    records = [dataclasses.replace(r, wall_ms=elapsed_ms) for r in records]
    return PointResult(
        records, dynamics_payload, otoc_payload, ansatz_payload, profile_payload, ww_payload
    )


def evaluate_ansatz_point(config: CampaignConfig, n: int, init: str) -> PointResult:
    """Ansatz diagnostics for one point (sigma_z observable)."""
    started = time.perf_counter()
    ham, eig, state = _build_point(config, n, init)
    sigma_obs = rotate_observable(sigma_z_system_diag(eig.basis), eig)
    report = ansatz_residual(sigma_obs, state, eig, delta_o=2.0, o_down=-1.0)
    shell = default_shell(state, eig.energies)
    profile = offdiagonal_profile(sigma_obs, eig, shell)
    elapsed_ms = int(round(1000.0 * (time.perf_counter() - started)))
    ansatz_payload = {
        "n_sites": n,
        "init": init,
        "delta_o": 2.0,
        "o_down": -1.0,
        "residual_fro": report.residual_fro,
        "max_abs_residual": report.max_abs_residual,
        "eta_max_offblock": report.eta_max_offblock,
        "completeness_max_dev": report.completeness_max_dev,
        "shell": list(shell),
        "wall_ms": elapsed_ms,
    }
    profile_payload = {
        "omega": profile.omega_bin_centers.tolist(),
        "mean_sq": [None if np.isnan(v) else v for v in profile.mean_sq],
        "count": profile.pair_counts.tolist(),
    }
    return PointResult([], None, None, ansatz_payload, profile_payload, None)


def _point_job(args) -> PointResult:
    config, n, init, first, mode = args
    try:
        if mode == "ansatz":
            return evaluate_ansatz_point(config, n, init)
        return evaluate_point(config, n, init, first)
    except QuenchLabError as exc:  # numerical / parameter failure at one point
        return PointResult([], None, None, None, None, None, error=f"{type(exc).__name__}: {exc}")


# ---------------------------------------------------------------------------
# fits and artifact writing
# ---------------------------------------------------------------------------

def fit_loglog_slope(points) -> tuple[float, float, float]:
    """Ordinary least squares on (log x, log y); returns slope, intercept, r^2."""
    points = np.asarray(points, dtype=float)
    if points.ndim != 2 or points.shape[1] != 2 or points.shape[0] < 3:
        raise ParameterError("need at least 3 (x, y) points")
    if np.any(points <= 0):
        raise ParameterError("all points must be positive for a log-log fit")
    result = stats.linregress(np.log(points[:, 0]), np.log(points[:, 1]))
    return float(result.slope), float(result.intercept), float(result.rvalue**2)


def _fit_with_ci(points) -> dict:
    points = np.asarray(points, dtype=float)
    result = stats.linregress(np.log(points[:, 0]), np.log(points[:, 1]))
    half = 1.96 * result.stderr if np.isfinite(result.stderr) else 0.0
    slope = float(result.slope)
    return {
        "slope": slope,
        "intercept": float(result.intercept),
        "r_squared": float(result.rvalue**2),
        "slope_ci95": [slope - half, slope + half],
        "n_points": int(points.shape[0]),
        "non_ergodic_quadratic": bool(1.8 <= slope <= 2.2),
        "ergodic_linear": bool(0.7 <= slope <= 1.3),
    }


def _write_csv(path: Path, header: str, rows) -> None:
    with path.open("w") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(row + "\n")


def _series_rows(columns) -> list[str]:
    arrays = [np.asarray(col, dtype=float) for col in columns]
    return [
        ",".join(f"{a[i]:.17g}" for a in arrays) for i in range(arrays[0].size)
    ]


def run_campaign(config: CampaignConfig, mode: str = "sweep") -> dict:
    """Execute a campaign and write its artifact set; returns the summary.

    ``mode`` is one of sweep / dynamics / otoc / spinboson / ansatz; the
    dynamics and otoc modes force the corresponding series artifacts, the
    spinboson mode requires the spin_boson model, ansatz replaces the sweep
    diagnostics with ansatz/profile artifacts.
    """
    if mode not in ("sweep", "dynamics", "otoc", "spinboson", "ansatz"):
        raise ConfigError(f"unknown campaign mode '{mode}'")
    if mode == "dynamics":
        config = dataclasses.replace(config, dynamics=True)
    if mode == "otoc":
        config = dataclasses.replace(config, otoc=True)
    if mode == "spinboson" and config.model != "spin_boson":
        raise ConfigError("spinboson mode requires model = spin_boson")

    out = Path(config.out)
    out.mkdir(parents=True, exist_ok=True)

    jobs = []
    for n in config.sizes:
        for idx, init in enumerate(config.inits):
            jobs.append((config, n, init, idx == 0, mode))

    if config.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(_point_job, jobs))
    else:
        results = [_point_job(job) for job in jobs]

    records: list[DiagnosticsRecord] = []
    errors: list[dict] = []
    ww_rows: list[dict] = []
    for (cfg, n, init, first, _), result in zip(jobs, results):
        if result.error is not None:
            errors.append({"n_sites": n, "init": init, "error": result.error})
            continue
        records.extend(result.records)
        if result.dynamics is not None:
            _write_csv(
                out / f"dynamics_{n}.csv", "t,obs,p0", _series_rows(result.dynamics)
            )
        if result.otoc is not None:
            _write_csv(
                out / f"otoc_{n}.csv", "t,f_re,f_im_resid", _series_rows(result.otoc)
            )
        if result.ansatz is not None:
            (out / f"ansatz_{n}.json").write_text(
                json.dumps(result.ansatz, indent=2, sort_keys=True) + "\n"
            )
        if result.profile is not None:
            rows = [
                f"{o:.17g},{'' if m is None else format(m, '.17g')},{c}"
                for o, m, c in zip(
                    result.profile["omega"], result.profile["mean_sq"], result.profile["count"]
                )
            ]
            _write_csv(out / f"profile_{n}.csv", "omega,mean_sq,count", rows)
        if result.ww is not None:
            ww_rows.append(result.ww)

    if mode != "ansatz":
        _write_csv(out / "sweep.csv", SWEEP_COLUMNS, [r.csv_row() for r in records])

    fits: dict[str, dict] = {}
    for init in config.inits:
        for name in config.observables:
            group = [
                (r.ipr, r.delta2)
                for r in records
                if r.init == init and r.observable == name
            ]
            if len(group) >= 3 and all(x > 0 and y > 0 for x, y in group):
                fits[f"{init}:{name}"] = _fit_with_ci(group)

    summary = {
        "version": __version__,
        "mode": mode,
        "config": dataclasses.asdict(config),
        "fits": fits,
        "errors": errors,
        "acceptance": {
            "all_points_finite": bool(
                records
                and all(
                    np.isfinite(
                        [r.ipr, r.i8, r.delta2, r.de_avg, r.two_time_avg,
                         r.mc_avg, r.fbar_ed, r.fbar_theory]
                    ).all()
                    for r in records
                )
            ),
            "no_point_errors": not errors,
            **{
                f"fit[{key}]": value["non_ergodic_quadratic"] or value["ergodic_linear"]
                for key, value in fits.items()
            },
        },
    }
    if ww_rows:
        summary["spinboson_theory"] = ww_rows
    (out / "summary.json").write_text(
        json.dumps(summary, indent=2, sort_keys=True) + "\n"
    )
    return summary
