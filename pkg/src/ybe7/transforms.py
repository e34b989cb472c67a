"""The five solution transformations, as vector rewrites and stack entries.

A, B and C act on the weight vector produced at a point; D and E act on the
point before the inner function is evaluated.  A stack ``[t1, ..., tn]`` means
``tn(...t2(t1(base)))``: ``t1`` is applied to the bare family first.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Callable, Sequence

from .colour_expr import ColourExpr, EvalError, parse
from .weights import DomainError, FamilyError, WeightVector

Evaluator = Callable[[complex, complex, complex], WeightVector]


def apply_index_swap(w: WeightVector) -> WeightVector:
    return WeightVector(w.a4, w.a2, w.a3, w.a1, w.a6, w.a5, w.a7)


def apply_scale(w: WeightVector, value: complex) -> WeightVector:
    value = complex(value)
    return WeightVector(*(value * a for a in w))


def apply_weight_rescale(w: WeightVector, n_xi: complex, n_eta: complex, s: complex = 1,
                         negate567: bool = False) -> WeightVector:
    if negate567:
        return w.replace(a5=-w.a5, a6=-w.a6, a7=-w.a7)
    if n_xi == 0 or n_eta == 0:
        raise DomainError("rescale function N vanishes at the point")
    if s == 0:
        raise FamilyError("rescale constant s must be nonzero")
    return w.replace(
        a2=n_xi / n_eta * w.a2,
        a3=n_eta / n_xi * w.a3,
        a7=w.a7 / (s * n_xi * n_eta),
    )


def _expr(value, allowed: set, what: str) -> ColourExpr:
    e = value if isinstance(value, ColourExpr) else parse(str(value))
    extra = e.free_vars() - allowed
    if extra:
        raise FamilyError(f"{what} may only use {sorted(allowed)}, found {sorted(extra)}")
    return e


def _at(e: ColourExpr, **env) -> complex:
    try:
        return e(**env)
    except EvalError as exc:
        raise DomainError(str(exc)) from None


@dataclass(frozen=True)
class IndexSwap:
    kind = "A"

    def apply(self, inner: Evaluator, u, xi, eta) -> WeightVector:
        return apply_index_swap(inner(u, xi, eta))

    def to_json(self) -> dict:
        return {"kind": "A"}


@dataclass(frozen=True)
class Scale:
    scale: ColourExpr
    kind = "B"

    def __post_init__(self):
        object.__setattr__(self, "scale", _expr(self.scale, {"u", "xi", "eta"}, "scale function"))

    def apply(self, inner: Evaluator, u, xi, eta) -> WeightVector:
        return apply_scale(inner(u, xi, eta), _at(self.scale, u=u, xi=xi, eta=eta))

    def to_json(self) -> dict:
        return {"kind": "B", "scale": self.scale.source}


@dataclass(frozen=True)
class WeightRescale:
    N: ColourExpr = "1"
    s: complex = 1
    negate567: bool = False
    kind = "C"

    def __post_init__(self):
        object.__setattr__(self, "N", _expr(self.N, {"xi"}, "rescale function N"))
        object.__setattr__(self, "s", complex(self.s))
        if self.s == 0 or not cmath.isfinite(self.s):
            raise FamilyError("rescale constant s must be finite and nonzero")

    def apply(self, inner: Evaluator, u, xi, eta) -> WeightVector:
        w = inner(u, xi, eta)
        if self.negate567:
            return apply_weight_rescale(w, 1, 1, 1, True)
        return apply_weight_rescale(w, _at(self.N, xi=xi), _at(self.N, xi=eta), self.s)

    def to_json(self) -> dict:
        return {"kind": "C", "N": self.N.source, "s": [self.s.real, self.s.imag],
                "negate567": self.negate567}


@dataclass(frozen=True)
class SpectralScale:
    mu: complex
    kind = "D"

    def __post_init__(self):
        object.__setattr__(self, "mu", complex(self.mu))
        if not cmath.isfinite(self.mu):
            raise FamilyError("spectral scale mu must be finite")

    def apply(self, inner: Evaluator, u, xi, eta) -> WeightVector:
        return inner(self.mu * u, xi, eta)

    def to_json(self) -> dict:
        return {"kind": "D", "mu": [self.mu.real, self.mu.imag]}


@dataclass(frozen=True)
class ColourReparam:
    f: ColourExpr
    kind = "E"

    def __post_init__(self):
        object.__setattr__(self, "f", _expr(self.f, {"xi"}, "colour map f"))

    def apply(self, inner: Evaluator, u, xi, eta) -> WeightVector:
        return inner(u, _at(self.f, xi=xi), _at(self.f, xi=eta))

    def to_json(self) -> dict:
        return {"kind": "E", "f": self.f.source}


TransformSpec = IndexSwap | Scale | WeightRescale | SpectralScale | ColourReparam


def apply_spectral_scale(transforms: Sequence, mu) -> tuple:
    return tuple(transforms) + (SpectralScale(mu),)


def apply_colour_reparam(transforms: Sequence, f) -> tuple:
    return tuple(transforms) + (ColourReparam(f),)


def evaluate_stack(base: Evaluator, transforms: Sequence, u, xi, eta) -> WeightVector:
    if not transforms:
        return base(u, xi, eta)
    *inner, last = transforms
    return last.apply(lambda uu, x, e: evaluate_stack(base, inner, uu, x, e), u, xi, eta)
