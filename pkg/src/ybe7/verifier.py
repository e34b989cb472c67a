"""Numerical verification of the coloured Yang-Baxter equation and its corollaries."""

from __future__ import annotations

import cmath
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .algebra import embed12, embed23, max_abs
from .families import BAXTER_FAMILIES, WeightFunction, eval_weights
from .weights import DomainError, WeightVector

# Matrix position (0-based) of each weight a1..a7.  The two middle diagonal
# entries and the off-diagonal pair are ordered so that the 8x8 equation
# R12 R23 R12 = R23 R12 R23 with R12 = R (x) E reproduces the nineteen
# component equations entry by entry.
LAYOUT = ((0, 0), (2, 2), (1, 1), (3, 3), (1, 2), (2, 1), (0, 3))
NONZERO_POSITIONS = frozenset(LAYOUT)


def assemble(w: WeightVector) -> np.ndarray:
    m = np.zeros((4, 4), dtype=complex)
    for value, pos in zip(w, LAYOUT):
        m[pos] = value
    return m


@dataclass(frozen=True)
class SamplePoint:
    u: complex
    v: complex
    xi: complex
    eta: complex
    lam: complex

    def to_json(self) -> dict:
        return {k: [complex(getattr(self, a)).real, complex(getattr(self, a)).imag]
                for k, a in (("u", "u"), ("v", "v"), ("xi", "xi"), ("eta", "eta"), ("lambda", "lam"))}


@dataclass(frozen=True)
class SamplingRegion:
    spectral_re: tuple = (-1.0, 1.0)
    spectral_im: tuple = (-0.3, 0.3)
    colour_re: tuple = (-1.0, 1.0)
    colour_im: tuple = (0.0, 0.0)
    samples: int = 200
    seed: int = 42

    def __post_init__(self):
        for name in ("spectral_re", "spectral_im", "colour_re", "colour_im"):
            lo, hi = (float(x) for x in getattr(self, name))
            if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
                raise ValueError(f"interval {name} must satisfy lo <= hi, got {(lo, hi)}")
            object.__setattr__(self, name, (lo, hi))
        if int(self.samples) < 1:
            raise ValueError("sample count must be at least 1")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")

    def points(self) -> list:
        """Draw the sample points; the order is fixed by the seed."""
        rng = np.random.default_rng(int(self.seed))
        n = int(self.samples)

        def draw(re, im, size):
            return rng.uniform(re[0], re[1], size) + 1j * rng.uniform(im[0], im[1], size)

        spec = draw(self.spectral_re, self.spectral_im, (n, 2))
        col = draw(self.colour_re, self.colour_im, (n, 3))
        return [SamplePoint(complex(spec[i, 0]), complex(spec[i, 1]), complex(col[i, 0]),
                            complex(col[i, 1]), complex(col[i, 2])) for i in range(n)]

    def with_(self, **changes) -> "SamplingRegion":
        vals = dict(spectral_re=self.spectral_re, spectral_im=self.spectral_im, colour_re=self.colour_re,
                    colour_im=self.colour_im, samples=self.samples, seed=self.seed)
        vals.update(changes)
        return SamplingRegion(**vals)


def _triple(wf, p: SamplePoint):
    uw = eval_weights(wf, p.u, p.xi, p.eta)
    vw = eval_weights(wf, p.v, p.eta, p.lam)
    ww = eval_weights(wf, p.u + p.v, p.xi, p.lam)
    return uw, vw, ww


def _cube_scale(*ws) -> float:
    return max(1.0, max(w.max_modulus() for w in ws) ** 3)


def ybe_residual(wf, p: SamplePoint):
    """Scaled max-entry residual of the 8x8 equation and the raw difference."""
    uw, vw, ww = _triple(wf, p)
    ru, rv, rw = assemble(uw), assemble(vw), assemble(ww)
    lhs = embed12(ru) @ embed23(rw) @ embed12(rv)
    rhs = embed23(rv) @ embed12(rw) @ embed23(ru)
    diff = lhs - rhs
    return max_abs(diff) / _cube_scale(uw, vw, ww), diff


def component_equations(u: WeightVector, v: WeightVector, w: WeightVector) -> list:
    """The nineteen scalar equations, with u, v, w the weights at
    (u, xi, eta), (v, eta, lambda) and (u+v, xi, lambda)."""
    u1, u2, u3, u4, u5, u6, u7 = u
    v1, v2, v3, v4, v5, v6, v7 = v
    w1, w2, w3, w4, w5, w6, w7 = w
    return [
        u2 * w3 * v2 - u3 * w2 * v3,
        u1 * w5 * v2 - u5 * w1 * v2 - u3 * w2 * v5,
        u2 * w6 * v1 - u2 * w1 * v6 - u6 * w2 * v3,
        u1 * w2 * v1 - u2 * w1 * v2 - u6 * w2 * v5,
        u4 * w6 * v2 - u6 * w4 * v2 - u3 * w2 * v6,
        u2 * w5 * v4 - u2 * w4 * v5 - u5 * w2 * v3,
        u4 * w2 * v4 - u2 * w4 * v2 - u5 * w2 * v6,
        u1 * w5 * v3 - u5 * w1 * v3 - u2 * w3 * v5,
        u3 * w6 * v1 - u3 * w1 * v6 - u6 * w3 * v2,
        u1 * w3 * v1 - u3 * w1 * v3 - u6 * w3 * v5,
        u1 * w1 * v7 + u7 * w2 * v4 - u5 * w5 * v7 - u2 * w7 * v1,
        u1 * w7 * v5 + u7 * w6 * v2 - u3 * w5 * v7 - u6 * w7 * v1,
        u1 * w7 * v3 + u7 * w6 * v6 - u7 * w1 * v1 - u4 * w3 * v7,
        u4 * w6 * v3 - u6 * w4 * v3 - u2 * w3 * v6,
        u3 * w5 * v4 - u3 * w4 * v5 - u5 * w3 * v2,
        u4 * w3 * v4 - u3 * w4 * v3 - u5 * w3 * v6,
        u4 * w4 * v7 + u7 * w2 * v1 - u6 * w6 * v7 - u2 * w7 * v4,
        u4 * w7 * v6 + u7 * w5 * v2 - u3 * w6 * v7 - u5 * w7 * v4,
        u4 * w7 * v3 + u7 * w5 * v5 - u7 * w4 * v4 - u1 * w3 * v7,
    ]


def component_residuals(wf, p: SamplePoint) -> list:
    uw, vw, ww = _triple(wf, p)
    s = _cube_scale(uw, vw, ww)
    return [abs(e) / s for e in component_equations(uw, vw, ww)]


@dataclass
class CheckReport:
    max_residual: float
    values: list
    domain_errors: int = 0

    def passes(self, tol: float) -> bool:
        return self.max_residual <= tol and not self.domain_errors


def check_initial_conditions(wf, xi_samples) -> CheckReport:
    """Max deviation of R(0, xi, xi) from the identity pattern per sample."""
    ref = (1, 1, 1, 1, 0, 0, 0)
    values, errors = [], 0
    for xi in xi_samples:
        try:
            w = eval_weights(wf, 0, xi, xi)
        except DomainError:
            errors += 1
            continue
        values.append(max(abs(a - b) for a, b in zip(w, ref)))
    return CheckReport(max(values, default=math.inf if errors else 0.0), values, errors)


def _exp_ku(wf, u) -> complex:
    k = wf.k_effective if isinstance(wf, WeightFunction) else wf.k
    return cmath.exp(k * u)


def check_reflection(wf, p: SamplePoint) -> list:
    """Scaled residuals of the four u -> -u, xi <-> eta relations at (p.u, p.xi, p.eta)."""
    u, xi, eta = p.u, p.xi, p.eta
    a = eval_weights(wf, u, xi, eta)
    b = eval_weights(wf, -u, eta, xi)
    q = _exp_ku(wf, u)
    s = max(1.0, max(a.max_modulus(), b.max_modulus()) ** 2)
    return [
        abs(a.a5 + b.a5 * q) / s,
        abs(a.a6 + b.a6 * q) / s,
        abs(a.a4 * b.a4 - a.a1 * b.a1) / s,
        abs(a.a7 * b.a1 + b.a7 * a.a4) / s,
    ]


def free_fermion_residual(w: WeightVector, rhs: complex) -> float:
    return abs(w.a1 * w.a4 + w.a5 * w.a6 - rhs) / max(1.0, w.max_modulus() ** 2)


def check_free_fermion(wf, p: SamplePoint, k=None) -> float:
    """|a1 a4 + a5 a6 - exp(k u)|, scaled.

    Without ``k`` the right-hand side is a2 a3, which equals exp(k u) in the
    standard gauge and stays correct under every solution transformation.
    """
    w = eval_weights(wf, p.u, p.xi, p.eta)
    rhs = w.a2 * w.a3 if k is None else cmath.exp(complex(k) * p.u)
    return free_fermion_residual(w, rhs)


@dataclass
class Classification:
    free_fermion: bool
    baxter: bool
    samples: int
    domain_errors: int

    @property
    def tag(self) -> str:
        if self.free_fermion and self.baxter:
            return "FreeFermion+Baxter"
        if self.free_fermion:
            return "FreeFermion"
        if self.baxter:
            return "Baxter"
        return "Neither"


def classify(wf, region: SamplingRegion, tol: float = 1e-9) -> Classification:
    ff = bax = True
    evaluated = errors = 0
    for p in region.points():
        try:
            w = eval_weights(wf, p.u, p.xi, p.eta)
        except DomainError:
            errors += 1
            continue
        evaluated += 1
        scale = max(1.0, w.max_modulus())
        ff = ff and free_fermion_residual(w, w.a2 * w.a3) <= tol
        bax = bax and abs(w.a1 - w.a4) <= tol * scale and abs(w.a5 - w.a6) <= tol * scale
    if evaluated == 0:
        ff = bax = False
    return Classification(ff, bax, evaluated, errors)


@dataclass(frozen=True)
class Coefficients:
    m1: complex
    m2: complex
    m3: complex
    m4: complex
    m5: complex
    m6: complex
    m7: complex
    mode: str = "spectral"

    def as_tuple(self) -> tuple:
        return (self.m1, self.m2, self.m3, self.m4, self.m5, self.m6, self.m7)

    def __getitem__(self, i: int) -> complex:
        return self.as_tuple()[i - 1]

    def replace(self, **changes) -> "Coefficients":
        vals = dict(zip(("m1", "m2", "m3", "m4", "m5", "m6", "m7"), self.as_tuple()), mode=self.mode)
        vals.update(changes)
        return Coefficients(**vals)


MODES = ("spectral", "colour_eta", "colour_xi")


def _central(f, x: complex, h: float) -> np.ndarray:
    return (np.array(f(x + h)) - np.array(f(x - h))) / (2 * h)


def _richardson(f, x: complex, h: float) -> np.ndarray:
    return (4 * _central(f, x, h / 2) - _central(f, x, h)) / 3


def hamiltonian_coeffs(wf, xi, step: float = 1e-5, mode: str = "spectral",
                       richardson: bool = False) -> Coefficients:
    if step <= 0:
        raise ValueError("step must be positive")
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    xi = complex(xi)
    if mode == "spectral":
        def f(t):
            return eval_weights(wf, t, xi, xi).as_tuple()
        at = 0j
    elif mode == "colour_eta":
        def f(t):
            return eval_weights(wf, 0, xi, t).as_tuple()
        at = xi
    else:
        def f(t):
            return eval_weights(wf, 0, t, xi).as_tuple()
        at = xi
    d = (_richardson if richardson else _central)(f, at, step)
    return Coefficients(*(complex(x) for x in d), mode=mode)


def _derivative_equations(u, du, m, q: complex, k: complex, which: str) -> list:
    # u, du, m are 7-tuples; q = exp(k u)
    u1, _, _, u4, u5, u6, u7 = u
    d1, _, _, _, d5, d6, d7 = du
    m1, _, _, m4, m5, m6, m7 = m
    kk = k if which == "spectral" else 0
    return [
        u1 * d5 - u5 * d1 - m5 * q,
        d6 + u6 * m1 - u1 * m6 - kk * u6,
        u1 * m1 - d1 - u6 * m5,
        u1 * u7 * m5 + u7 * d6 - u5 * m7 * q - u6 * u7 * m1 - u6 * d7,
        kk * u1 * u7 + u1 * d7 + u6 * u7 * m6 - u1 * u7 * m1 - u7 * d1 - u4 * m7 * q,
        (u1 * u1 - u5 * u5) * m7 + (m4 - m1) * u7 - d7,
    ]


DERIVATIVE_SYSTEMS = ("spectral", "colour")


def check_derivative_system(wf, p: SamplePoint, which: str = "spectral", step: float = 1e-5,
                            coeffs: Coefficients | None = None) -> list:
    """Scaled residuals of the six spectral (``which="spectral"``) or colour (``"colour"``)
    derivative relations at (p.u, p.xi, p.eta), using finite differences with
    one Richardson refinement.  ``coeffs`` overrides the coefficients at eta."""
    if which not in DERIVATIVE_SYSTEMS:
        raise ValueError(f"derivative system must be one of {DERIVATIVE_SYSTEMS}")
    u, xi, eta = p.u, p.xi, p.eta
    k = wf.k_effective if isinstance(wf, WeightFunction) else wf.k
    w = eval_weights(wf, u, xi, eta).as_tuple()
    if which == "spectral":
        du = _richardson(lambda t: eval_weights(wf, t, xi, eta).as_tuple(), u, step)
        mode = "spectral"
    else:
        du = _richardson(lambda t: eval_weights(wf, u, xi, t).as_tuple(), eta, step)
        mode = "colour_eta"
    if coeffs is None:
        coeffs = hamiltonian_coeffs(wf, eta, step, mode, richardson=True)
    m = coeffs.as_tuple()
    eqs = _derivative_equations(w, du, m, cmath.exp(k * u), k, which)
    scale = max(1.0, max(max(abs(x) for x in w), max(abs(x) for x in du), max(abs(x) for x in m)) ** 3)
    return [abs(e) / scale for e in eqs]


@dataclass
class SampleRow:
    index: int
    point: SamplePoint
    residual: float | None
    per_equation: list | None
    error: str | None = None


@dataclass
class VerificationReport:
    max_residual: float
    per_equation: list
    worst_point: SamplePoint | None
    samples_evaluated: int
    domain_error_points: int
    seed: int
    tolerance: float
    passed: bool
    rows: list = field(default_factory=list, repr=False)

    def to_json(self) -> dict:
        return {
            "max_residual": self.max_residual,
            "per_equation": list(self.per_equation),
            "worst_point": self.worst_point.to_json() if self.worst_point else None,
            "samples_evaluated": self.samples_evaluated,
            "domain_error_points": self.domain_error_points,
            "seed": self.seed,
            "tol": self.tolerance,
            "pass": self.passed,
        }


def _evaluate_sample(wf, index: int, p: SamplePoint) -> SampleRow:
    try:
        r, _ = ybe_residual(wf, p)
        comps = component_residuals(wf, p)
    except DomainError as exc:
        return SampleRow(index, p, None, None, str(exc))
    return SampleRow(index, p, r, comps)


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("YBE7_THREADS", "1")))
    except ValueError:
        return 1


def scan(wf, region: SamplingRegion | None = None, tol: float = 1e-9,
         threads: int | None = None) -> VerificationReport:
    region = region or SamplingRegion()
    points = region.points()
    threads = default_threads() if threads is None else max(1, threads)
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            rows = list(pool.map(lambda ip: _evaluate_sample(wf, *ip), enumerate(points)))
    else:
        rows = [_evaluate_sample(wf, i, p) for i, p in enumerate(points)]
    ok = [r for r in rows if r.error is None]
    errors = len(rows) - len(ok)
    max_res, worst = -1.0, None
    per_eq = [0.0] * 19
    for r in ok:  # index order, strict '>' keeps the earliest worst point
        if r.residual > max_res:
            max_res, worst = r.residual, r.point
        per_eq = [max(a, b) for a, b in zip(per_eq, r.per_equation)]
    if not ok:
        max_res = math.inf
    passed = max_res <= tol and errors < len(points) / 10
    return VerificationReport(max_res, per_eq, worst, len(ok), errors, int(region.seed), tol, passed, rows)


def is_baxter_family(wf) -> bool:
    base = wf.base if isinstance(wf, WeightFunction) else wf
    return base.family in BAXTER_FAMILIES
