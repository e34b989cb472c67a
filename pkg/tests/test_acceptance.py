"""Acceptance criteria, one check per criterion.

Each check returns ``(ok, detail)``.  Under pytest every criterion is its own
test and prints a single PASS/FAIL line; run this file directly to get just
the summary lines.
"""

from __future__ import annotations

import cmath
import dataclasses
import io
import json
import math
import os
import sys
import tempfile
import time

import numpy as np
import pytest

from ybe7.cli import run
from ybe7.families import (BAXTER_FAMILIES, FAMILIES, FamilySpec, WeightFunction, default_family,
                           eval_family, eval_weights)
from ybe7.hamiltonian import check_coefficient_symmetry
from ybe7.transforms import ColourReparam, IndexSwap, Scale, SpectralScale, WeightRescale
from ybe7.verifier import (SamplePoint, SamplingRegion, check_derivative_system,
                           check_initial_conditions, check_reflection, classify, hamiltonian_coeffs,
                           scan, ybe_residual)
from ybe7.weights import WeightVector

RESIDUAL_FAMILIES = ("FF_K_SPECIAL", "BAXTER_K0_LINEAR", "BAXTER_K0_TRIG", "FF_K0_HYPERBOLIC",
                     "FF_K0_DELTA0", "FF_K0_TRIG", "PURE_SPECTRAL_7V")
REGION = SamplingRegion(samples=200, seed=42)


def _cli(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out, err)
    return code, out.getvalue()


def _spec_path(tmp, obj, name):
    path = os.path.join(tmp, name)
    with open(path, "w") as fh:
        json.dump(obj, fh)
    return path


def _points(n, seed):
    return SamplingRegion(samples=n, seed=seed).points()


def criterion_1():
    worst, slow, failed = 0.0, 0.0, []
    with tempfile.TemporaryDirectory() as tmp:
        for fam in RESIDUAL_FAMILIES:
            path = _spec_path(tmp, {"family": fam, "variant": "derived"}, f"{fam}.json")
            t0 = time.perf_counter()
            code, out = _cli(["verify", "--spec", path, "--samples", "200", "--seed", "42"])
            dt = time.perf_counter() - t0
            rep = json.loads(out)
            worst, slow = max(worst, rep["max_residual"]), max(slow, dt)
            if code != 0 or not rep["pass"] or rep["max_residual"] > 1e-9 or dt > 5:
                failed.append(fam)
    return not failed, f"max residual {worst:.2e}, slowest {slow:.2f}s, failing {failed or 'none'}"


def criterion_2():
    reports = {}
    for variant in ("derived", "printed"):
        reports[variant] = scan(default_family("FF_K_GENERAL", variant=variant), REGION)
    chosen = next((v for v in ("derived", "printed") if reports[v].passed), "derived")
    wf = default_family("FF_K_GENERAL", variant=chosen)
    k = wf.base.k
    worst = 0.0
    for p in _points(100, 42):
        w = eval_weights(wf, p.u, p.xi, p.eta)
        worst = max(worst, abs(w.a1 - (w.a4 + w.a5 + w.a6)),
                    abs(w.a1 * w.a4 + w.a5 * w.a6 - cmath.exp(k * p.u)))
    summary = ", ".join(f"{v} YBE {r.max_residual:.1e}" for v, r in reports.items())
    return worst <= 1e-9, f"variant {chosen}: sub-identities {worst:.1e}; {summary}"


def criterion_3():
    xs = np.random.default_rng(3).uniform(-1, 1, 20)
    worst, bad = 0.0, []
    for fam in FAMILIES:
        rep = check_initial_conditions(default_family(fam), xs)
        worst = max(worst, rep.max_residual)
        if not rep.passes(1e-12):
            bad.append(fam)
    return not bad, f"max deviation {worst:.1e}, failing {bad or 'none'}"


def criterion_4():
    worst, bad = 0.0, []
    pts = _points(100, 4)
    for fam in FAMILIES:
        wf = default_family(fam)
        r = max(max(check_reflection(wf, p)) for p in pts)
        worst = max(worst, r)
        if r > 1e-9:
            bad.append(fam)
    return not bad, f"max scaled residual {worst:.1e}, failing {bad or 'none'}"


def criterion_5():
    region = SamplingRegion(samples=100, seed=5)
    wrong = []
    for fam in FAMILIES:
        if not (fam.startswith("FF_") or fam in BAXTER_FAMILIES):
            continue
        want = "Baxter" if fam in BAXTER_FAMILIES else "FreeFermion"
        got = classify(default_family(fam), region).tag
        if got != want:
            wrong.append(f"{fam}->{got}")
    return not wrong, f"misclassified {wrong or 'none'}"


def criterion_6():
    wf = default_family("FF_K0_HYPERBOLIC")
    a, b = wf.base.const("alpha"), wf.base.const("beta")
    ref = (0, 0, 0, 0, b, -b, a)
    err = 0.0
    for xi in (-0.5, 0.0, 0.7):
        c = hamiltonian_coeffs(wf, xi)
        err = max(err, max(abs(x - y) for x, y in zip(c.as_tuple(), ref)))
    gauge = 0.0
    for fam in FAMILIES:
        f = default_family(fam)
        c = hamiltonian_coeffs(f, 0.3)
        gauge = max(gauge, abs(c.m2), abs(c.m3 - f.base.k))
    return err <= 1e-6 and gauge <= 1e-6, f"hyperbolic error {err:.1e}, gauge error {gauge:.1e}"


def criterion_7():
    xs = np.random.default_rng(7).uniform(-1, 1, 10)
    bad = []
    for fam in FAMILIES:
        if fam == "FF_K_GENERAL":
            continue
        wf = default_family(fam)
        if not all(check_coefficient_symmetry(hamiltonian_coeffs(wf, x, richardson=True)) for x in xs):
            bad.append(fam)
    gen = default_family("FF_K_GENERAL")
    gen_sym = all(check_coefficient_symmetry(hamiltonian_coeffs(gen, x)) for x in xs)
    return not bad and not gen_sym, f"symmetry fails for {bad or 'none'}; FF_K_GENERAL symmetric: {gen_sym}"


def criterion_8():
    worst = 0.0
    pts = _points(20, 8)
    for fam in ("FF_K_SPECIAL", "FF_K0_HYPERBOLIC"):
        wf = default_family(fam)
        for which in ("spectral", "colour"):
            worst = max(worst, max(max(check_derivative_system(wf, p, which)) for p in pts))
    return worst <= 1e-6, f"max residual {worst:.1e}"


GENERIC_TRANSFORMS = {
    "A": IndexSwap(),
    "B": Scale("exp(u/3+xi/5)"),
    "C": WeightRescale("exp(xi)", 2),
    "C(negate)": WeightRescale(negate567=True),
    "D": SpectralScale(1.7),
    "E": ColourReparam("xi^2+1"),
}


def criterion_9():
    base = default_family("FF_K0_HYPERBOLIC")
    res, bad = {}, []
    for name, t in GENERIC_TRANSFORMS.items():
        rep = scan(base.with_transform(t), REGION)
        res[name] = rep.max_residual
        if not rep.passed:
            bad.append(name)
    return not bad, "residuals " + ", ".join(f"{k} {v:.1e}" for k, v in res.items())


def criterion_10():
    pts = [dataclasses.replace(p, eta=p.xi, lam=p.xi) for p in REGION.points()]
    worst, bad = 0.0, []
    for fam in FAMILIES:
        wf = default_family(fam)
        r = max(ybe_residual(wf, p)[0] for p in pts)
        worst = max(worst, r)
        if r > 1e-9:
            bad.append(fam)
    spec = FamilySpec("FF_K0_TRIG")
    delta, alpha = spec.const("delta"), spec.const("alpha")
    block = 0.0
    for i, u in enumerate(np.linspace(-1, 1, 50)):
        xi = -0.9 + 1.8 * i / 49
        m1 = spec.fn("H", xi)
        m5 = cmath.sqrt(m1 * m1 + delta * delta / 4)
        c, s = cmath.cos(delta * u / 2), cmath.sin(delta * u / 2)
        want = ((delta * c + 2 * m1 * s) / delta, 1, 1, (delta * c - 2 * m1 * s) / delta,
                2 * m5 * s / delta, 2 * m5 * s / delta, alpha / delta * cmath.sin(delta * u))
        got = eval_family(spec, u, xi, xi)
        block = max(block, max(abs(a - b) for a, b in zip(got, want)))
    ok = not bad and block <= 1e-9
    return ok, f"equal-colour residual {worst:.1e} (failing {bad or 'none'}), printed block error {block:.1e}"


class _Corrupt:
    def __init__(self, wf, index, factor):
        self.wf, self.index, self.factor = wf, index, factor

    def __call__(self, u, xi, eta):
        w = list(eval_weights(self.wf, u, xi, eta))
        w[self.index - 1] *= self.factor
        return WeightVector(*w)


def criterion_11():
    wf = default_family("FF_K0_HYPERBOLIC")
    res = {}
    for i in range(1, 8):
        res[f"a{i}"] = scan(_Corrupt(wf, i, 1 + 1e-3), REGION).max_residual
    missed = [k for k, v in res.items() if not v > 1e-5]
    return not missed, "residuals " + ", ".join(f"{k} {v:.1e}" for k, v in res.items()) + \
        f"; undetected {missed or 'none'}"


def criterion_12():
    outs = []
    with tempfile.TemporaryDirectory() as tmp:
        path = _spec_path(tmp, {"family": "FF_K0_TRIG"}, "trig.json")
        argv = ["verify", "--spec", path, "--samples", "200", "--seed", "42"]
        for _ in range(3):
            outs.append(_cli(argv)[1])
        csv = [_cli(argv + ["--format", "csv"])[1] for _ in range(2)]
    ok = len(set(outs)) == 1 and len(set(csv)) == 1
    return ok, f"{len(outs)} json runs, {len(csv)} csv runs, identical: {ok}"


CRITERIA = [
    (1, "family residual suite", criterion_1),
    (2, "general free-fermion sub-identities", criterion_2),
    (3, "initial conditions", criterion_3),
    (4, "reflection relations", criterion_4),
    (5, "classification", criterion_5),
    (6, "Hamiltonian coefficients", criterion_6),
    (7, "coefficient symmetry", criterion_7),
    (8, "derivative systems", criterion_8),
    (9, "transform closure", criterion_9),
    (10, "equal-colour degeneration", criterion_10),
    (11, "detector sensitivity", criterion_11),
    (12, "determinism", criterion_12),
]


def _line(num, name, ok, detail):
    return f"criterion {num:2d} {'PASS' if ok else 'FAIL'}  {name}: {detail}"


@pytest.mark.parametrize("num, name, check", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(num, name, check, capsys):
    ok, detail = check()
    with capsys.disabled():
        print("\n" + _line(num, name, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = []
    for num, name, check in CRITERIA:
        ok, detail = check()
        results.append(ok)
        print(_line(num, name, ok, detail))
    sys.exit(0 if all(results) else 1)
