"""Constructors for the printed seven-vertex solution families.

Every constructor maps ``(u, xi, eta)`` to a :class:`WeightVector` in the gauge
``a2 = 1``, ``a3 = exp(k u)`` (``a3 = 1`` for the k = 0 families).  Colour
functions are one-variable expressions in ``xi``; at evaluation time ``xi`` is
bound to whichever colour argument is needed.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from typing import Mapping

from .colour_expr import ColourExpr, EvalError, parse
from .transforms import SpectralScale, evaluate_stack
from .weights import DomainError, FamilyError, WeightVector

FAMILIES = (
    "FF_K_GENERAL",
    "FF_K_SPECIAL",
    "BAXTER_K0_LINEAR",
    "BAXTER_K0_TRIG",
    "FF_K0_HYPERBOLIC",
    "FF_K0_DELTA0",
    "FF_K0_TRIG",
    "PURE_SPECTRAL_7V",
)
FREE_FERMION_FAMILIES = tuple(f for f in FAMILIES if f.startswith("FF_") or f == "PURE_SPECTRAL_7V")
BAXTER_FAMILIES = ("BAXTER_K0_LINEAR", "BAXTER_K0_TRIG")
K_ZERO_FAMILIES = ("BAXTER_K0_LINEAR", "BAXTER_K0_TRIG", "FF_K0_HYPERBOLIC", "FF_K0_DELTA0", "FF_K0_TRIG")
VARIANTS = ("derived", "printed")

CONSTANT_NAMES = ("k", "alpha", "beta", "gamma", "delta")
COLOUR_NAMES = ("F", "F7", "G", "H", "m1")

DEFAULT_CONSTANTS = {"k": 0.6, "alpha": 0.7, "beta": 1.3, "gamma": 0.5, "delta": 0.8}
DEFAULT_COLOUR_FNS = {"F": "xi", "F7": "xi", "G": "1+xi/4", "H": "xi/3", "m1": "1/10+xi/10"}

# constants and colour functions each family reads
USES = {
    "FF_K_GENERAL": (("k",), ("H", "m1")),
    "FF_K_SPECIAL": (("k", "beta"), ("F", "F7")),
    "BAXTER_K0_LINEAR": (("alpha", "beta"), ("F",)),
    "BAXTER_K0_TRIG": (("alpha", "beta", "gamma"), ("F",)),
    "FF_K0_HYPERBOLIC": (("alpha", "beta"), ("F",)),
    "FF_K0_DELTA0": (("alpha",), ("F", "G")),
    "FF_K0_TRIG": (("alpha", "delta"), ("F", "H")),
    "PURE_SPECTRAL_7V": (("k", "alpha", "beta"), ()),
}


@dataclass(frozen=True)
class FamilySpec:
    """A family tag with its constants, colour functions and variant flag.

    Missing constants and colour functions are filled from the defaults.
    """

    family: str
    constants: Mapping[str, complex] = field(default_factory=dict)
    colour_fns: Mapping[str, ColourExpr] = field(default_factory=dict)
    variant: str = "derived"

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise FamilyError(f"unknown family {self.family!r}")
        if self.variant not in VARIANTS:
            raise FamilyError(f"variant must be one of {VARIANTS}, got {self.variant!r}")
        consts = {}
        for name, value in dict(self.constants).items():
            if name not in CONSTANT_NAMES:
                raise FamilyError(f"unknown constant {name!r}")
            value = complex(value)
            if not cmath.isfinite(value):
                raise FamilyError(f"constant {name} must be finite")
            consts[name] = value
        fns = {}
        for name, src in dict(self.colour_fns).items():
            if name not in COLOUR_NAMES:
                raise FamilyError(f"unknown colour function {name!r}")
            e = src if isinstance(src, ColourExpr) else parse(str(src))
            if not e.free_vars() <= {"xi"}:
                raise FamilyError(f"colour function {name} may only depend on xi")
            fns[name] = e
        if self.family == "FF_K0_TRIG" and "G" in fns:
            raise FamilyError("FF_K0_TRIG derives G from H and delta (G^2 - H^2 = delta^2/4); give H only")
        used_c, used_f = USES[self.family]
        for name in used_c:
            consts.setdefault(name, complex(DEFAULT_CONSTANTS[name]))
        for name in used_f:
            fns.setdefault(name, parse(DEFAULT_COLOUR_FNS[name]))
        if self.family in K_ZERO_FAMILIES:
            if consts.get("k", 0) != 0:
                raise FamilyError(f"{self.family} is a k = 0 family")
            consts["k"] = 0j
        object.__setattr__(self, "constants", consts)
        object.__setattr__(self, "colour_fns", fns)
        self._validate()

    def _validate(self):
        c = self.constants
        fam = self.family
        if fam in ("FF_K_GENERAL", "FF_K_SPECIAL") and c["k"] == 0:
            raise FamilyError(f"{fam} requires k != 0")
        if fam == "BAXTER_K0_LINEAR" and c["beta"] == 0:
            raise FamilyError("BAXTER_K0_LINEAR requires beta != 0")
        if fam == "BAXTER_K0_TRIG":
            if c["beta"] == 0:
                raise FamilyError("BAXTER_K0_TRIG requires beta != 0")
            if c["beta"] ** 2 == c["gamma"] ** 2:
                raise FamilyError("BAXTER_K0_TRIG requires beta^2 != gamma^2 (use BAXTER_K0_LINEAR)")
        if fam == "FF_K0_TRIG" and (c["delta"] == 0 or c["alpha"] == 0):
            raise FamilyError("FF_K0_TRIG requires delta != 0 and alpha != 0")
        if fam == "FF_K0_DELTA0" and c["alpha"] == 0:
            raise FamilyError("FF_K0_DELTA0 requires alpha != 0")

    def const(self, name: str) -> complex:
        return self.constants[name]

    def fn(self, name: str, x) -> complex:
        try:
            return self.colour_fns[name](xi=x)
        except EvalError as exc:
            raise DomainError(f"colour function {name}: {exc}") from None

    @property
    def k(self) -> complex:
        return self.constants.get("k", 0j)


def _guard(fn):
    """Turn arithmetic failures inside a constructor into DomainError."""

    def wrapped(spec, *args):
        try:
            return fn(spec, *args)
        except (ZeroDivisionError, OverflowError, ValueError) as exc:
            if isinstance(exc, FamilyError):
                raise
            raise DomainError(f"{spec.family}: {exc}") from None

    wrapped.__name__ = fn.__name__
    wrapped.__doc__ = fn.__doc__
    return wrapped


def _require(spec: FamilySpec, family: str):
    if spec.family != family:
        raise FamilyError(f"expected a {family} spec, got {spec.family}")


def ff_k_general_parts(spec: FamilySpec, u, xi, eta) -> dict:
    """Intermediate quantities of the general k != 0 free-fermion family.

    Returns the four H-polynomials for the chosen variant, the a7 weight and
    the squared normalisations X^2, Y^2 obtained from the printed ratio
    formulas with those polynomials.
    """
    k = spec.const("k")
    hx, he = spec.fn("H", xi), spec.fn("H", eta)
    mx, me = spec.fn("m1", xi), spec.fn("m1", eta)
    q = cmath.exp(k * u)
    ex, ee = cmath.exp(hx), cmath.exp(he)
    u7 = ee * q - ex
    du7 = k * ee * q
    m7x, m7e = k * ex, k * ee
    base = 2 * k * (mx + me) * ex - 2 * k * k * ex
    h1 = base - 2 * u7 * me * (k - 2 * mx)
    if spec.variant == "printed":
        h4 = base - 2 * u7 * (k - 2 * mx) * (k - 2 * me)
    else:
        h4 = base - 2 * u7 * (k - 2 * mx) * (k - me)
    h5 = 2 * k * (mx - me) * ex - 2 * me * u7 * (k - 2 * mx)
    h6 = 2 * k * (me - mx) * ex + 2 * u7 * (k - me) * (k - 2 * mx)
    x_num = (du7 + (2 * me - k) * u7) / m7e - (du7 - 2 * mx * u7) / m7x * q
    y_num = (du7 - (k - 2 * me) * u7) / m7e - (du7 - 2 * (k - mx) * u7) / m7x * q
    return {
        "H1": h1, "H4": h4, "H5": h5, "H6": h6, "a7": u7, "q": q,
        "X2_num": x_num, "X2_den": h1 * h1 - h4 * h4,
        "Y2_num": y_num, "Y2_den": h6 * h6 - h5 * h5,
        "X_closed": -1 / (2 * k * cmath.exp((hx + he) / 2) * cmath.sqrt(k - 2 * mx) * cmath.sqrt(k - 2 * me)),
    }


def _aligned_sqrt(z: complex, ref: complex) -> complex:
    r = cmath.sqrt(z)
    return -r if (r * ref.conjugate()).real < 0 else r


@_guard
def eval_ff_k_general(spec: FamilySpec, u, xi, eta) -> WeightVector:
    _require(spec, "FF_K_GENERAL")
    p = ff_k_general_parts(spec, u, xi, eta)
    x_ref = p["X_closed"]
    if spec.variant == "derived":
        x = y = x_ref
    else:
        if p["X2_den"] == 0 or p["Y2_den"] == 0:
            raise DomainError("FF_K_GENERAL (printed): indeterminate X or Y")
        x = _aligned_sqrt(p["X2_num"] / p["X2_den"], x_ref)
        y = _aligned_sqrt(p["Y2_num"] / p["Y2_den"], x_ref)
    k = spec.const("k")
    return WeightVector(p["H1"] * x, 1, cmath.exp(k * u), p["H4"] * x, p["H5"] * y, p["H6"] * y, p["a7"])


@_guard
def eval_ff_k_special(spec: FamilySpec, u, xi, eta) -> WeightVector:
    _require(spec, "FF_K_SPECIAL")
    k, beta = spec.const("k"), spec.const("beta")
    w = beta * u + spec.fn("F", xi) - spec.fn("F", eta)
    half = cmath.exp(k * u / 2)
    a1 = half * cmath.cosh(w)
    a5 = half * cmath.sinh(w)
    a7 = spec.fn("F7", eta) * cmath.exp(k * u) - spec.fn("F7", xi)
    return WeightVector(a1, 1, cmath.exp(k * u), a1, a5, -a5, a7)


@_guard
def eval_baxter_k0_linear(spec: FamilySpec, u, xi, eta) -> WeightVector:
    _require(spec, "BAXTER_K0_LINEAR")
    alpha, beta = spec.const("alpha"), spec.const("beta")
    w = beta * u + spec.fn("F", xi) - spec.fn("F", eta)
    return WeightVector(w + 1, 1, 1, w + 1, w, w, alpha / beta * (w + 1) * w)


def baxter_theta(beta: complex, gamma: complex) -> tuple:
    """Return ``(sqrt(beta^2 - gamma^2), theta, cos theta)`` with matching branches."""
    root = cmath.sqrt(beta * beta - gamma * gamma)
    cos_t = root / beta
    sin_t = gamma / beta
    theta = -1j * cmath.log(cos_t + 1j * sin_t)
    return root, theta, cos_t


@_guard
def eval_baxter_k0_trig(spec: FamilySpec, u, xi, eta) -> WeightVector:
    _require(spec, "BAXTER_K0_TRIG")
    alpha, beta, gamma = spec.const("alpha"), spec.const("beta"), spec.const("gamma")
    root, theta, cos_t = baxter_theta(beta, gamma)
    p = root * u + spec.fn("F", xi) - spec.fn("F", eta)
    a1 = cmath.cos(p - theta) / cos_t
    a5 = cmath.sin(p) / cos_t
    a7 = alpha / (beta * cos_t * cos_t) * cmath.cos(p - theta) * cmath.sin(p)
    return WeightVector(a1, 1, 1, a1, a5, a5, a7)


@_guard
def eval_ff_k0_hyperbolic(spec: FamilySpec, u, xi, eta) -> WeightVector:
    _require(spec, "FF_K0_HYPERBOLIC")
    alpha, beta = spec.const("alpha"), spec.const("beta")
    dF = spec.fn("F", xi) - spec.fn("F", eta)
    w = beta * u + dF
    a1, a5 = cmath.cosh(w), cmath.sinh(w)
    return WeightVector(a1, 1, 1, a1, a5, -a5, alpha * u + dF)


@_guard
def eval_ff_k0_delta0(spec: FamilySpec, u, xi, eta) -> WeightVector:
    _require(spec, "FF_K0_DELTA0")
    alpha = spec.const("alpha")
    gx, ge = spec.fn("G", xi), spec.fn("G", eta)
    if gx == 0 or ge == 0:
        raise DomainError("FF_K0_DELTA0: G vanishes at the point")
    p = alpha * u + spec.fn("F", xi) - spec.fn("F", eta)
    d = 2 * alpha * gx * ge
    g4 = 2 * gx * gx * ge * ge * p
    plus, minus = alpha * (gx * gx + ge * ge), alpha * (gx * gx - ge * ge)
    return WeightVector((plus + g4) / d, 1, 1, (plus - g4) / d, (minus + g4) / d, (-minus + g4) / d, p)


def ff_k0_trig_parts(spec: FamilySpec, u, xi, eta) -> dict:
    """H-polynomials, colour data and closed-form X, Y of the trigonometric family.

    ``G`` (the a5 coefficient) is tied to ``H`` (the a1 coefficient) by
    ``G^2 - H^2 = delta^2/4``.  Writing ``2H/delta = sinh(r)`` and
    ``2G/delta = cosh(r)`` turns both square roots into exact squares:
    ``X = 1/(delta^2 (cos(p/2) cosh(s) - sin(p/2) sinh(d)))`` and
    ``Y = -1/(delta^2 (sin(p/2) cosh(d) + cos(p/2) sinh(s)))`` with
    ``s, d`` the half sum and half difference of the two rapidities.
    """
    delta, alpha = spec.const("delta"), spec.const("alpha")
    p = delta * u + spec.fn("F", xi) - spec.fn("F", eta)
    s, c = cmath.sin(p), cmath.cos(p)
    hx, he = spec.fn("H", xi), spec.fn("H", eta)
    rx, re_ = cmath.asinh(2 * hx / delta), cmath.asinh(2 * he / delta)
    gx, ge = delta / 2 * cmath.cosh(rx), delta / 2 * cmath.cosh(re_)
    h1 = delta * ge + delta * gx * c + 2 * gx * he * s
    h4 = delta * gx + delta * ge * c - 2 * hx * ge * s
    h5 = -delta * gx + delta * ge * c - 2 * hx * ge * s
    h6 = -delta * ge + delta * gx * c - 2 * gx * he * s
    half_s, half_c = cmath.sin(p / 2), cmath.cos(p / 2)
    sig, dif = (rx + re_) / 2, (rx - re_) / 2
    x_den = delta * delta * (half_c * cmath.cosh(sig) - half_s * cmath.sinh(dif))
    y_den = delta * delta * (half_s * cmath.cosh(dif) + half_c * cmath.sinh(sig))
    return {
        "phase": p, "sigma": sig, "diff": dif, "sin": s, "cos": c, "G_xi": gx, "G_eta": ge, "H_xi": hx, "H_eta": he,
        "H1": h1, "H4": h4, "H5": h5, "H6": h6,
        "H4_printed": delta * gx + delta * ge * c - 2 * ge * he * s,
        "X_den": x_den, "Y_den": y_den,
        "X2_printed": 2 * (hx + he) * s / (delta * (h1 * h1 - h4 * h4)) if h1 * h1 != h4 * h4 else None,
        "Y2_printed": 2 * (hx - he) * s / (delta * (h5 * h5 - h6 * h6)) if h5 * h5 != h6 * h6 else None,
        "a7": alpha / delta * s,
    }


@_guard
def eval_ff_k0_trig(spec: FamilySpec, u, xi, eta) -> WeightVector:
    """Trigonometric k = 0 free-fermion family.

    The normalisation denominators divide the H-polynomials exactly, which
    leaves a1 = cos(p/2) cosh(d) + sin(p/2) sinh(s), a5 = sin(p/2) cosh(s) +
    cos(p/2) sinh(d) and their partners with the second term negated.  These
    have no poles, so the removable singularities of H X and H Y never show.
    """
    _require(spec, "FF_K0_TRIG")
    p = ff_k0_trig_parts(spec, u, xi, eta)
    if spec.variant == "printed":
        if p["X_den"] == 0 or p["Y_den"] == 0:
            raise DomainError("FF_K0_TRIG (printed): normalisation pole")
        x, y = 1 / p["X_den"], -1 / p["Y_den"]
        return WeightVector(p["H1"] * x, 1, 1, p["H4_printed"] * x, p["H5"] * y, p["H6"] * y, p["a7"])
    hs, hc = cmath.sin(p["phase"] / 2), cmath.cos(p["phase"] / 2)
    sig, dif = p["sigma"], p["diff"]
    a1, a1b = hc * cmath.cosh(dif), hs * cmath.sinh(sig)
    a5, a5b = hs * cmath.cosh(sig), hc * cmath.sinh(dif)
    return WeightVector(a1 + a1b, 1, 1, a1 - a1b, a5 + a5b, a5 - a5b, p["a7"])


@_guard
def eval_pure_spectral_7v(spec: FamilySpec, u) -> WeightVector:
    _require(spec, "PURE_SPECTRAL_7V")
    k, alpha, beta = spec.const("k"), spec.const("alpha"), spec.const("beta")
    q = cmath.exp(k * u)
    e = q - 1
    return WeightVector(alpha * e + 1, 1, q, 1 - (alpha - 1) * e, alpha * e, (alpha - 1) * e, beta * e)


_DISPATCH = {
    "FF_K_GENERAL": eval_ff_k_general,
    "FF_K_SPECIAL": eval_ff_k_special,
    "BAXTER_K0_LINEAR": eval_baxter_k0_linear,
    "BAXTER_K0_TRIG": eval_baxter_k0_trig,
    "FF_K0_HYPERBOLIC": eval_ff_k0_hyperbolic,
    "FF_K0_DELTA0": eval_ff_k0_delta0,
    "FF_K0_TRIG": eval_ff_k0_trig,
    "PURE_SPECTRAL_7V": lambda spec, u, xi, eta: eval_pure_spectral_7v(spec, u),
}


def eval_family(spec: FamilySpec, u, xi, eta) -> WeightVector:
    return _DISPATCH[spec.family](spec, complex(u), complex(xi), complex(eta))


@dataclass(frozen=True)
class WeightFunction:
    """A base family plus an ordered stack of solution transformations."""

    base: FamilySpec
    transforms: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "transforms", tuple(self.transforms))

    def __call__(self, u, xi, eta) -> WeightVector:
        return eval_weights(self, u, xi, eta)

    def with_transform(self, t) -> "WeightFunction":
        return WeightFunction(self.base, self.transforms + (t,))

    @property
    def k_effective(self) -> complex:
        """Exponent of a3/a2 in u after spectral rescalings."""
        k = self.base.k
        for t in self.transforms:
            if isinstance(t, SpectralScale):
                k *= t.mu
        return k


def eval_weights(wf: WeightFunction, u, xi, eta) -> WeightVector:
    """Evaluate a WeightFunction, a bare FamilySpec or any callable ``(u, xi, eta) -> WeightVector``."""
    if isinstance(wf, FamilySpec):
        wf = WeightFunction(wf)
    if not isinstance(wf, WeightFunction):
        return wf(complex(u), complex(xi), complex(eta))
    return evaluate_stack(lambda uu, x, e: eval_family(wf.base, uu, x, e), wf.transforms,
                          complex(u), complex(xi), complex(eta))


def default_family(name: str, **kwargs) -> WeightFunction:
    return WeightFunction(FamilySpec(name, **kwargs))
