"""Numerical verification sweeps for every identity the library implements.

Each suite compares two independent evaluation routes over a fixed grid and
returns a :class:`VerificationReport`. Inputs, grids and summation orders are
fixed, so repeated runs produce identical reports (timing is opt-in).
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .coherent import (CoherentParams, coherent_coefficients, coherent_eval_compact,
                       coherent_eval_series, coherent_norm_check, identity_moment_check,
                       measure_density, normalization_k0, phase_overlap)
from .errors import NonConvergenceError
from .genfun import (GenFunQuery, genfun_even_closed, genfun_even_series,
                     genfun_fixed_m_closed, genfun_fixed_m_series, genfun_odd_closed,
                     genfun_odd_series)
from .harmonics import gram_matrix, spherical_harmonic
from .legendre import assoc_legendre, negate_m
from .quadrature import AngularGrid

__all__ = ["VerifyConfig", "VerificationReport", "SUITES", "run_suite", "run_all",
           "DEFAULT_TOLERANCES"]

DEFAULT_TOLERANCES = {
    "legendre_symmetry": 1e-10,
    "legendre_parity": 1e-10,
    "legendre_m0_recurrence": 1e-11,
    "genfun_even_cross_form": 1e-9,
    "genfun_odd_cross_form": 1e-9,
    "genfun_fixed_m_cross_form": 1e-9,
    "genfun_m0_classical": 1e-10,
    "harmonics_orthonormality": 1e-11,
    "harmonics_grid_refinement": 1e-12,
    "harmonics_conjugation": 1e-11,
    "coherent_series_compact": 1e-8,
    "coherent_coefficient_norm": 1e-10,
    "coherent_norm_k0": 1e-9,
    "coherent_norm_k_positive": 1e-9,
    "identity_moments": 1e-8,
    "identity_phase_offdiagonal": 1e-12,
    "measure_positivity": 0.0,
}


@dataclass(frozen=True)
class VerifyConfig:
    n_theta: int = 32
    n_phi: int = 64
    truncation: int = 600
    m_max: int | None = None
    tolerance: float | None = None
    seed: int = 0

    def tolerance_for(self, name: str) -> float:
        if self.tolerance is None or name == "measure_positivity":
            return DEFAULT_TOLERANCES[name]
        return self.tolerance


@dataclass
class VerificationReport:
    identity: str
    grid: str
    tolerance: float
    n_points: int
    max_abs_err: float
    max_rel_err: float
    worst_case: dict
    passed: bool
    converged: bool = True
    diagnostics: str = ""
    wall_time: float | None = field(default=None)

    def to_dict(self, timing: bool = False) -> dict:
        d = asdict(self)
        if not timing:
            d.pop("wall_time")
        return d


class _Tracker:
    """Running worst-case bookkeeping for one suite."""

    def __init__(self):
        self.n = 0
        self.max_abs = 0.0
        self.max_rel = 0.0
        self.worst = {}
        self.converged = True
        self.notes = []

    def add(self, inputs: dict, value, reference, scale=None):
        err = abs(value - reference)
        if scale is None:
            scale = abs(reference)
        rel = err / scale if scale > 0 else (0.0 if err == 0 else math.inf)
        self.n += 1
        self.max_abs = max(self.max_abs, float(err))
        if rel > self.max_rel or not self.worst:
            self.max_rel = max(self.max_rel, float(rel))
            self.worst = dict(inputs)

    def flag(self, ok: bool, note: str):
        if not ok:
            self.converged = False
            if len(self.notes) < 5:
                self.notes.append(note)

    def report(self, name, grid, tol) -> VerificationReport:
        passed = self.converged and self.max_rel <= tol
        return VerificationReport(name, grid, tol, self.n, self.max_abs, self.max_rel,
                                  _plain(self.worst), passed, self.converged,
                                  "; ".join(self.notes))


def _plain(d):
    out = {}
    for k, v in d.items():
        if isinstance(v, complex):
            out[k] = [v.real, v.imag]
        elif isinstance(v, (np.floating, np.integer)):
            out[k] = v.item()
        else:
            out[k] = v
    return out


def _xgrid(n=21, edge=0.99):
    return [float(x) for x in np.linspace(-edge, edge, n)]


def _legendre_symmetry(cfg, tr):
    for l in range(21):
        for m in range(l + 1):
            for x in _xgrid():
                tr.add({"l": l, "m": m, "x": x}, assoc_legendre((l, -m), x), negate_m((l, m), x))
    return "l<=20, 21 x in [-0.99, 0.99]"


def _legendre_parity(cfg, tr):
    for l in range(21):
        for m in range(-l, l + 1):
            for x in _xgrid():
                ref = (-1) ** (l - m) * assoc_legendre((l, m), x)
                tr.add({"l": l, "m": m, "x": x}, assoc_legendre((l, m), -x), ref)
    return "l<=20, 21 x in [-0.99, 0.99]"


def _legendre_m0(cfg, tr):
    for x in _xgrid():
        p_prev, p = 1.0, x
        for l in range(26):
            if l == 0:
                ref = 1.0
            elif l == 1:
                ref = x
            else:
                p_prev, p = p, ((2 * l - 1) * x * p - (l - 1) * p_prev) / l
                ref = p
            tr.add({"l": l, "x": x}, assoc_legendre((l, 0), x), ref)
    return "l<=25, 21 x in [-0.99, 0.99]"


_T_EXP = (0.25, -0.25, 1.0, -1.0, 3.0, -3.0)
_T_FIXED = (0.1, -0.1, 0.5, -0.5, 0.9, -0.9)


def _genfun_cross(series, closed, cfg, tr):
    for k in range(6):
        for x in _xgrid(11, 0.95):
            for t in _T_EXP:
                q = GenFunQuery(x, t, k, truncation=cfg.truncation)
                s = series(q)
                c = closed(q)
                tr.flag(s.converged, f"k={k} x={x} t={t}: {s.terms} terms, tail {s.tail:.3g}")
                tr.add({"k": k, "x": x, "t": t}, s.value, c, max(1.0, abs(c)))
    return f"k<=5, 11 x in [-0.95, 0.95], t in {list(_T_EXP)}, M={cfg.truncation}"


def _genfun_even(cfg, tr):
    return _genfun_cross(genfun_even_series, genfun_even_closed, cfg, tr)


def _genfun_odd(cfg, tr):
    return _genfun_cross(genfun_odd_series, genfun_odd_closed, cfg, tr)


def _genfun_fixed_m(cfg, tr):
    for m in range(9):
        for x in _xgrid(11, 0.95):
            for t in _T_FIXED:
                q = GenFunQuery(x, t, m, truncation=cfg.truncation)
                s = genfun_fixed_m_series(q)
                c = genfun_fixed_m_closed(q)
                tr.flag(s.converged, f"m={m} x={x} t={t}: {s.terms} terms, tail {s.tail:.3g}")
                tr.add({"m": m, "x": x, "t": t}, s.value, c, max(1.0, abs(c)))
    return f"m<=8, 11 x in [-0.95, 0.95], t in {list(_T_FIXED)}, M={cfg.truncation}"


def _genfun_m0_classical(cfg, tr):
    for x in _xgrid(11, 0.95):
        for t in _T_FIXED:
            # sum_l (-t)^l P_l(x) with P_l from the three-term recurrence
            total, p_prev, p, l = 1.0 + (-t) * x, 1.0, x, 1
            while True:
                l += 1
                p_prev, p = p, ((2 * l - 1) * x * p - (l - 1) * p_prev) / l
                term = (-t) ** l * p
                total += term
                if abs(t) ** l < 1e-18 or l > 2000:
                    break
            c = genfun_fixed_m_closed(GenFunQuery(x, t, 0))
            tr.add({"x": x, "t": t}, c, total)
    return "11 x in [-0.95, 0.95], t in {+-0.1, +-0.5, +-0.9}"


def _orthonormality(cfg, tr):
    grid = AngularGrid(cfg.n_theta, cfg.n_phi)
    idx, gram = gram_matrix(12, grid)
    eye = np.eye(len(idx))
    for a, ia in enumerate(idx):
        for b, ib in enumerate(idx):
            tr.add({"l": ia.l, "m": ia.m, "lp": ib.l, "mp": ib.m}, gram[a, b], eye[a, b], 1.0)
    return f"l<=12, {grid.describe()}"


def _refinement(cfg, tr):
    g1 = AngularGrid(cfg.n_theta, cfg.n_phi)
    g2 = AngularGrid(2 * cfg.n_theta, 2 * cfg.n_phi)
    idx, a = gram_matrix(12, g1)
    _, b = gram_matrix(12, g2)
    for i, ii in enumerate(idx):
        for j, jj in enumerate(idx):
            tr.add({"l": ii.l, "m": ii.m, "lp": jj.l, "mp": jj.m}, a[i, j], b[i, j], 1.0)
    return f"l<=12, {g1.describe()} vs {g2.describe()}"


def _angles(seed, n):
    rng = np.random.default_rng(seed)
    return [(float(rng.uniform(0, math.pi)), float(rng.uniform(0, 2 * math.pi)))
            for _ in range(n)]


def _conjugation(cfg, tr):
    for theta, phi in _angles(cfg.seed, 16):
        for l in range(13):
            for m in range(1, l + 1):
                ref = (-1) ** m * np.conj(spherical_harmonic((l, m), theta, phi))
                tr.add({"l": l, "m": m, "theta": theta, "phi": phi},
                       spherical_harmonic((l, -m), theta, phi), ref)
    return f"l<=12, 16 random angles (seed {cfg.seed})"


_R_EQUIV = (0.5, 1.0, 2.0, 4.0)
_PHASES = (0.0, math.pi / 3)


def _coherent_equivalence(cfg, tr):
    pts = _angles(cfg.seed, 8)
    for k in (0, 1, 2):
        for r in _R_EQUIV:
            for ph in _PHASES:
                p = CoherentParams(k, r * complex(math.cos(ph), math.sin(ph)))
                seq = coherent_coefficients(p, cfg.m_max)
                tr.flag(seq.converged, f"k={k} r={r}: m_max cap reached")
                for theta, phi in pts:
                    s = coherent_eval_series(p, theta, phi, cfg.m_max)
                    c = coherent_eval_compact(p, theta, phi)
                    tr.add({"k": k, "r": r, "phase": ph, "theta": theta, "phi": phi}, s, c)
    return f"k in {{0,1,2}}, r in {list(_R_EQUIV)}, 8 random angles (seed {cfg.seed})"


def _coefficient_norm(cfg, tr):
    for k in (0, 1, 2, 3):
        for r in (0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0):
            if k > 0 and r == 0:
                continue
            p = CoherentParams(k, r)
            seq = coherent_coefficients(p, cfg.m_max)
            tr.flag(seq.converged, f"k={k} r={r}: m_max cap reached")
            tr.add({"k": k, "r": r}, seq.norm_squared(), 1.0, 1.0)
            if k == 0:
                # closed-form normalization against the numerically summed one
                tr.add({"k": 0, "r": r, "check": "N(r)"}, seq.normalization,
                       normalization_k0(r), 1.0)
    return "k<=3, r in [0, 16]"


def _norm_grid(r, cfg):
    # modes up to ~ r e/2 + 30 must be resolved in phi; degree doubles in theta
    need = int(math.ceil(r * 1.4 + 30))
    n_theta = max(cfg.n_theta, need)
    n_phi = max(cfg.n_phi, 2 * need)
    return AngularGrid(n_theta, n_phi)


def _coherent_norm_k0(cfg, tr):
    grids = set()
    for r in (0.0, 0.5, 1.0, 2.0, 3.0, 4.0, 6.0, 8.0):
        for ph in (0.0, math.pi / 3, 2.0):
            grid = _norm_grid(r, cfg)
            grids.add(grid.describe())
            p = CoherentParams(0, r * complex(math.cos(ph), math.sin(ph)))
            tr.add({"r": r, "phase": ph, "grid": grid.describe()},
                   coherent_norm_check(p, grid), 1.0, 1.0)
    return "r<=8; grids " + ",".join(sorted(grids))


def _coherent_norm_k(cfg, tr):
    grid = AngularGrid(cfg.n_theta, cfg.n_phi)
    for k in (1, 2):
        for r in (0.5, 1.0, 2.0):
            p = CoherentParams(k, r * complex(math.cos(1.0), math.sin(1.0)))
            tr.add({"k": k, "r": r}, coherent_norm_check(p, grid), 1.0, 1.0)
    return f"k in {{1,2}}, r<=2, {grid.describe()}"


def _moments(cfg, tr):
    for m in range(11):
        try:
            v = identity_moment_check(m)
        except NonConvergenceError as exc:
            tr.flag(False, str(exc))
            continue
        tr.add({"m": m}, v, 1.0, 1.0)
    return "m=0..10, adaptive quadrature on [0, inf)"


def _phase_offdiagonal(cfg, tr):
    for m in range(11):
        for mp in range(11):
            ref = 2 * math.pi if m == mp else 0.0
            tr.add({"m": m, "mp": mp}, phase_overlap(m, mp, cfg.n_phi), ref, 1.0)
    return f"m, m' <= 10, uniform rule n_phi={cfg.n_phi}"


def _positivity(cfg, tr):
    rs = [0.0] + [float(r) for r in np.logspace(-6, math.log10(50), 200)]
    for r in rs:
        k = measure_density(r)
        # error is the amount by which K fails to be strictly positive
        tr.add({"r": r, "K": k}, 0.0 if k > 0 else 1.0, 0.0, 1.0)
    return "r = 0 and 200 log-spaced in [1e-6, 50]"


SUITES = {
    "legendre_symmetry": _legendre_symmetry,
    "legendre_parity": _legendre_parity,
    "legendre_m0_recurrence": _legendre_m0,
    "genfun_even_cross_form": _genfun_even,
    "genfun_odd_cross_form": _genfun_odd,
    "genfun_fixed_m_cross_form": _genfun_fixed_m,
    "genfun_m0_classical": _genfun_m0_classical,
    "harmonics_orthonormality": _orthonormality,
    "harmonics_grid_refinement": _refinement,
    "harmonics_conjugation": _conjugation,
    "coherent_series_compact": _coherent_equivalence,
    "coherent_coefficient_norm": _coefficient_norm,
    "coherent_norm_k0": _coherent_norm_k0,
    "coherent_norm_k_positive": _coherent_norm_k,
    "identity_moments": _moments,
    "identity_phase_offdiagonal": _phase_offdiagonal,
    "measure_positivity": _positivity,
}


def run_suite(name: str, cfg: VerifyConfig | None = None) -> VerificationReport:
    cfg = cfg or VerifyConfig()
    tr = _Tracker()
    start = time.perf_counter()
    grid = SUITES[name](cfg, tr)
    report = tr.report(name, grid, cfg.tolerance_for(name))
    report.wall_time = time.perf_counter() - start
    return report


def run_all(cfg: VerifyConfig | None = None, names=None) -> list:
    cfg = cfg or VerifyConfig()
    return [run_suite(n, cfg) for n in (names or SUITES)]
