"""Command-line front end: ``ybe7 <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import sys

from .families import eval_weights
from .hamiltonian import chain_hamiltonian, couplings, spectrum
from .specio import (SpecError, complex_from_flag, dumps, fmt_float, load_json, region_from_json,
                     spec_from_json, spec_to_json, transform_from_json)
from .verifier import MODES, SamplingRegion, assemble, classify, hamiltonian_coeffs, scan
from .weights import DomainError

WEIGHT_NAMES = ("a1", "a2", "a3", "a4", "a5", "a6", "a7")
COEFF_NAMES = ("m1", "m2", "m3", "m4", "m5", "m6", "m7")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _complex_arg(text: str) -> complex:
    try:
        return complex_from_flag(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v > 0 or v == float("inf"):
        raise argparse.ArgumentTypeError("must be a positive finite number")
    return v


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _seed(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ybe7", description="Seven-vertex coloured Yang-Baxter solutions: evaluate and verify.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def common(sp):
        sp.add_argument("--spec", required=True, help="family spec JSON file")
        sp.add_argument("--format", choices=("json", "csv"), default="json")

    e = sub.add_parser("eval", help="weights and R-matrix at one point")
    common(e)
    e.add_argument("-u", type=_complex_arg, required=True, metavar="RE[,IM]")
    e.add_argument("--xi", type=_complex_arg, required=True, metavar="RE[,IM]")
    e.add_argument("--eta", type=_complex_arg, required=True, metavar="RE[,IM]")

    v = sub.add_parser("verify", help="sampled Yang-Baxter residual scan")
    common(v)
    v.add_argument("--samples", type=_positive_int, default=200)
    v.add_argument("--seed", type=_seed, default=42)
    v.add_argument("--tol", type=_positive_float, default=1e-9)
    v.add_argument("--region", help="sampling region JSON file")

    c = sub.add_parser("classify", help="free-fermion / Baxter classification")
    common(c)
    c.add_argument("--samples", type=_positive_int, default=100)
    c.add_argument("--seed", type=_seed, default=42)
    c.add_argument("--tol", type=_positive_float, default=1e-9)

    m = sub.add_parser("coeffs", help="Hamiltonian coefficients by finite differences")
    common(m)
    m.add_argument("--xi", type=_complex_arg, required=True, metavar="RE[,IM]")
    m.add_argument("--mode", choices=MODES, default="spectral")
    m.add_argument("--step", type=_positive_float, default=1e-5)

    k = sub.add_parser("couplings", help="spin-chain couplings and optional chain spectrum")
    common(k)
    k.add_argument("--xi", type=_complex_arg, required=True, metavar="RE[,IM]")
    k.add_argument("--step", type=_positive_float, default=1e-5)
    k.add_argument("--sites", type=int)
    k.add_argument("--no-field", action="store_true", help="drop the h field term")

    t = sub.add_parser("transform", help="append a transform to a spec")
    t.add_argument("--spec", required=True)
    t.add_argument("--apply", required=True, help="transform JSON (object or list of objects)")
    t.add_argument("--out", required=True)
    return p


def _load_spec(path: str):
    try:
        obj = load_json(path)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read spec {path}: {exc}") from None
    try:
        return spec_from_json(obj)
    except SpecError as exc:
        raise UsageError(f"cannot read spec {path}: {exc}") from None


def _csv(rows) -> str:
    return "\n".join(",".join(str(x) for x in r) for r in rows) + "\n"


def _cx_cells(z) -> list:
    z = complex(z)
    return [fmt_float(z.real), fmt_float(z.imag)]


def cmd_eval(args, wf) -> tuple:
    w = eval_weights(wf, args.u, args.xi, args.eta)
    r = assemble(w)
    if args.format == "csv":
        rows = [["name", "re", "im"]] + [[n, *_cx_cells(a)] for n, a in zip(WEIGHT_NAMES, w)]
        return _csv(rows), 0
    return dumps({"weights": dict(zip(WEIGHT_NAMES, w)), "matrix": r.tolist()}) + "\n", 0


def cmd_verify(args, wf) -> tuple:
    region = SamplingRegion(samples=args.samples, seed=args.seed)
    if args.region:
        try:
            region = region_from_json(load_json(args.region), region)
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read region {args.region}: {exc}") from None
        region = region.with_(samples=args.samples, seed=args.seed)
    report = scan(wf, region, args.tol)
    code = 0 if report.passed else 1
    if args.format == "csv":
        head = ["index"] + [f"{n}_{part}" for n in ("u", "v", "xi", "eta", "lambda") for part in ("re", "im")]
        head += ["residual"] + [f"eq{i}" for i in range(1, 20)] + ["error"]
        rows = [head]
        for r in report.rows:
            cells = [r.index]
            for z in (r.point.u, r.point.v, r.point.xi, r.point.eta, r.point.lam):
                cells += _cx_cells(z)
            if r.error is None:
                cells += [fmt_float(r.residual)] + [fmt_float(x) for x in r.per_equation] + [""]
            else:
                cells += [""] * 20 + [json.dumps(r.error)]
            rows.append(cells)
        return _csv(rows), code
    return dumps(report.to_json()) + "\n", code


def cmd_classify(args, wf) -> tuple:
    c = classify(wf, SamplingRegion(samples=args.samples, seed=args.seed), args.tol)
    if args.format == "csv":
        return _csv([["tag", "free_fermion", "baxter", "samples", "domain_errors"],
                      [c.tag, str(c.free_fermion).lower(), str(c.baxter).lower(), c.samples, c.domain_errors]]), 0
    return dumps({"tag": c.tag, "free_fermion": c.free_fermion, "baxter": c.baxter,
                  "samples": c.samples, "domain_errors": c.domain_errors}) + "\n", 0


def cmd_coeffs(args, wf) -> tuple:
    c = hamiltonian_coeffs(wf, args.xi, args.step, args.mode)
    if args.format == "csv":
        rows = [["name", "re", "im"]] + [[n, *_cx_cells(m)] for n, m in zip(COEFF_NAMES, c.as_tuple())]
        return _csv(rows), 0
    return dumps({"mode": c.mode, **dict(zip(COEFF_NAMES, c.as_tuple()))}) + "\n", 0


def cmd_couplings(args, wf) -> tuple:
    cpl = couplings(hamiltonian_coeffs(wf, args.xi, args.step, "spectral"))
    spec = None
    if args.sites is not None:
        try:
            spec = spectrum(chain_hamiltonian(cpl, args.sites, not args.no_field))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    names = ("Jx", "Jy", "Jz", "h")
    if args.format == "csv":
        rows = [["name", "re", "im"]] + [[n, *_cx_cells(v)] for n, v in zip(names, cpl.as_tuple())]
        if spec is not None:
            rows += [[f"E{i}", *_cx_cells(z)] for i, z in enumerate(spec)]
        return _csv(rows), 0
    out = dict(zip(names, cpl.as_tuple()))
    if spec is not None:
        out["spectrum"] = spec
    return dumps(out) + "\n", 0


def cmd_transform(args, wf) -> tuple:
    try:
        obj = load_json(args.apply)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read transform {args.apply}: {exc}") from None
    try:
        ts = [transform_from_json(t) for t in (obj if isinstance(obj, list) else [obj])]
    except SpecError as exc:
        raise UsageError(str(exc)) from None
    for t in ts:
        wf = wf.with_transform(t)
    text = dumps(spec_to_json(wf)) + "\n"
    try:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {args.out}: {exc}") from None
    return "", 0


COMMANDS = {
    "eval": cmd_eval,
    "verify": cmd_verify,
    "classify": cmd_classify,
    "coeffs": cmd_coeffs,
    "couplings": cmd_couplings,
    "transform": cmd_transform,
}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        wf = _load_spec(args.spec)
        text, code = COMMANDS[args.command](args, wf)
    except UsageError as exc:
        print(f"ybe7: {exc}", file=stderr)
        return 2
    except DomainError as exc:
        print(f"ybe7: evaluation failed: {exc}", file=stderr)
        return 2
    stdout.write(text)
    return code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
