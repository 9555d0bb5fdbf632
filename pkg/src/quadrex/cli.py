"""Command-line surface: one subcommand per subsystem, JSON by default,
CSV for sweeps, deterministic under a fixed --seed."""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
from fractions import Fraction

import numpy as np

from . import analytic, density, forms, progressions, randomness, reciprocity
from . import roots, symbols, weil, zkp
from .arith import primes_up_to
from .errors import QuadrexError


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems with exit code 1."""

    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


def _jsonable(value):
    if isinstance(value, Fraction):
        return {"num": value.numerator, "den": value.denominator}
    if isinstance(value, (frozenset, set)):
        return sorted(value)
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    return value


def _emit(payload, args):
    if getattr(args, "csv", False) and isinstance(payload, list):
        rows = [",".join(str(v) for v in row) for row in payload]
        print("\n".join(rows))
    else:
        print(json.dumps(payload, default=_jsonable, sort_keys=True))


def _cmd_symbol(args):
    if args.fast:
        return symbols.legendre_fast(args.a, args.n)
    if args.jacobi:
        return symbols.jacobi(args.a, args.n)
    return symbols.legendre_euler(args.a, args.n)


def _cmd_sqrt(args):
    sols = roots.sqrt_mod_composite(args.z, args.n)
    return {"z": args.z, "n": args.n, "solutions": sorted(sols)}


def _cmd_solve(args):
    sols = roots.solve_quadratic_mod_m(args.a, args.b, args.c, args.m)
    return {
        "a": args.a, "b": args.b, "c": args.c, "m": args.m,
        "solutions": sorted(sols),
    }


def _cmd_xset(args):
    plus, minus = reciprocity.basic_problem(args.d)
    out = {"d": args.d, "plus": plus.to_json(), "minus": minus.to_json()}
    if args.verify_bound:
        report = reciprocity.verify_class_set(plus, args.d, args.verify_bound, 1)
        out["verified_primes"] = report.checked
        out["counterexamples"] = sorted(report.counterexamples)
    return out


def _cmd_density(args):
    S = args.elements
    theoretical = (
        density.density_residue_set(S)
        if args.sign == 1
        else density.density_nonresidue_set(S)
    )
    if isinstance(theoretical, density.Obstructed):
        value = 0.0
        label = "obstructed"
    else:
        value = float(theoretical)
        label = str(theoretical)
    rows = [("prime_bound", "theoretical", "empirical", "abs_error")]
    for bound in args.prime_bound:
        emp = float(density.empirical_density(S, args.sign, bound, jobs=args.jobs))
        rows.append((bound, value, emp, abs(emp - value)))
    if args.csv:
        return rows
    return {
        "S": list(S),
        "sign": args.sign,
        "theoretical": label,
        "scan": [
            {"prime_bound": b, "empirical": e, "abs_error": d}
            for b, _, e, d in rows[1:]
        ],
    }


def _cmd_forms(args):
    out = []
    for d in args.discriminants:
        if not forms.is_fundamental(d):
            raise QuadrexError(f"{d} is not a fundamental discriminant")
        h = forms.class_number(d, terms=args.terms)
        chi = analytic.RealPrimitiveCharacter.from_discriminant(d)
        value, tail = analytic.L1_truncated(chi, max(args.terms, abs(d)))
        if d < 0:
            w = forms.automorph_count(d)
            predicted = 2 * math.pi * h / (w * math.sqrt(abs(d)))
        else:
            w = 1
            eps = forms.pell_min(d).epsilon
            predicted = h * math.log(eps) / math.sqrt(d)
        out.append(
            {
                "d": d,
                "h": h,
                "w": w,
                "L1_estimate": value,
                "formula_residual": abs(value - predicted),
                "tail_bound": tail,
            }
        )
    if args.csv:
        rows = [("d", "h", "w", "L1_estimate", "formula_residual")]
        rows += [
            (o["d"], o["h"], o["w"], o["L1_estimate"], o["formula_residual"])
            for o in out
        ]
        return rows
    return out


def _cmd_excess(args):
    rows = [("p", "label", "exact", "formula", "residual", "bound")]
    payload = []
    for p in primes_up_to(args.prime_bound):
        if p <= 3:
            continue
        for rep in analytic.excess_via_L(p, terms=args.terms):
            rows.append(
                (p, rep.label, rep.exact, rep.formula,
                 abs(rep.exact - rep.formula), rep.bound)
            )
            payload.append(
                {"p": p, "label": rep.label, "exact": rep.exact,
                 "formula": rep.formula, "bound": rep.bound, "ok": rep.ok}
            )
    return rows if args.csv else payload


def _cmd_gauss_sum(args):
    value = analytic.gauss_sum(args.n, args.p)
    return {"n": args.n, "p": args.p, "re": value.real, "im": value.imag}


def _cmd_weil(args):
    f = weil.WeilPoly(args.p, tuple(args.roots))
    total = weil.complete_weil_sum(f)
    bound = f.degree * args.p**0.5
    points = weil.point_count(f)
    if args.csv:
        return [
            ("p", "degree", "sum", "bound", "points"),
            (args.p, f.degree, total, bound, points),
        ]
    return {
        "p": args.p,
        "roots": list(f.roots),
        "sum": total,
        "bound": bound,
        "points": points,
    }


def _cmd_ap(args):
    spec_data = json.loads(args.spec)
    if "a" in spec_data:
        t = progressions.StandardTuple(
            tuple(spec_data["a"]), tuple(spec_data["b"])
        )
        spec = t.family(spec_data["s"])
    else:
        spec = progressions.APFamilySpec(
            tuple(spec_data["B"]),
            tuple(frozenset(s) for s in spec_data["S"]),
        )
    params = progressions.compute_parameters(spec)
    out = {
        "B": list(spec.B),
        "S": [sorted(s) for s in spec.S],
        "alpha": params.alpha,
        "e": params.e,
        "b_max": params.b_max,
        "lambda": sorted(sorted(i) for i in params.Lambda),
    }
    if args.count_primes:
        rows = [("p", "class", "q_plus", "ratio_plus")]
        scale = params.b_max * 2 ** (params.alpha - params.e)
        for p in args.count_primes:
            cls = progressions.classify(p, spec, params)
            q_plus = progressions.count_q_epsilon(p, spec, 1)
            rows.append((p, cls.value, q_plus, q_plus * scale / p))
        if args.csv:
            return rows
        out["counts"] = [
            {"p": p, "class": c, "q_plus": q, "ratio_plus": r}
            for p, c, q, r in rows[1:]
        ]
    return out


def _cmd_clt(args):
    h = args.window
    rows = [("bin", "empirical_mass", "normal_mass")]
    ens = randomness.excess_ensemble(args.p, h)
    scale = h**0.5
    edges = [args.lo + i * (args.hi - args.lo) / args.bins for i in range(args.bins + 1)]
    for lo, hi in zip(edges, edges[1:]):
        mass = float(np.mean((ens > lo * scale) & (ens <= hi * scale)))
        normal = randomness.normal_cdf(hi) - randomness.normal_cdf(lo)
        rows.append((f"({lo:.2f},{hi:.2f}]", mass, normal))
    moments = randomness.empirical_moments(args.p, h, 4)
    if args.csv:
        return rows
    return {
        "p": args.p,
        "h": h,
        "m2": float(moments[2]),
        "m4": float(moments[4]),
        "bins": [
            {"bin": b, "empirical": e, "normal": n} for b, e, n in rows[1:]
        ],
    }


def _cmd_zkp(args):
    rng = random.Random(args.seed)
    keys = zkp.keygen(args.prime_bits, args.identity, rng)
    session = zkp.honest_session(keys, args.rounds, rng)
    lines = session.transcript_lines()
    return {
        "n": keys.n,
        "w": keys.w,
        "rounds": args.rounds,
        "status": session.status,
        "transcript": lines,
    }


def _common_flags(parser, suppress: bool):
    # the same flags parse in front of or behind the subcommand; SUPPRESS
    # keeps the subparser from clobbering values given up front
    kw = {"default": argparse.SUPPRESS} if suppress else {}
    parser.add_argument(
        "--csv", action="store_true", help="CSV output for sweeps", **kw
    )
    parser.add_argument("--seed", type=int, help="RNG seed",
                        **(kw if suppress else {"default": 0}))
    parser.add_argument("--jobs", type=int, help="worker count for sweeps",
                        **(kw if suppress else {"default": 1}))


def build_parser() -> _Parser:
    parser = _Parser(prog="quadrex")
    _common_flags(parser, suppress=False)
    subparsers = parser.add_subparsers(dest="command", required=True)

    class _Sub:
        def add_parser(self, name, **kw):
            s = subparsers.add_parser(name, **kw)
            _common_flags(s, suppress=True)
            return s

    sub = _Sub()

    s = sub.add_parser("symbol", help="Legendre/Jacobi symbol")
    s.add_argument("--fast", action="store_true", help="factoring-free evaluator")
    s.add_argument("--jacobi", action="store_true", help="Jacobi symbol of odd n")
    s.add_argument("a", type=int)
    s.add_argument("n", type=int)
    s.set_defaults(func=_cmd_symbol)

    s = sub.add_parser("sqrt", help="all solutions of x^2 = z mod n")
    s.add_argument("z", type=int)
    s.add_argument("n", type=int)
    s.set_defaults(func=_cmd_sqrt)

    s = sub.add_parser("solve", help="all solutions of a x^2 + b x + c = 0 mod m")
    s.add_argument("a", type=int)
    s.add_argument("b", type=int)
    s.add_argument("c", type=int)
    s.add_argument("m", type=int)
    s.set_defaults(func=_cmd_solve)

    s = sub.add_parser("xset", help="congruence classes of X+-(d)")
    s.add_argument("d", type=int)
    s.add_argument("--verify-bound", type=int, default=0)
    s.set_defaults(func=_cmd_xset)

    s = sub.add_parser("density", help="residue-set density, theory vs scan")
    s.add_argument("elements", type=int, nargs="+")
    s.add_argument("--sign", type=int, choices=(-1, 1), default=1)
    s.add_argument("--prime-bound", type=int, nargs="+", default=[100_000])
    s.set_defaults(func=_cmd_density)

    s = sub.add_parser("forms", help="class numbers and the class-number formula")
    s.add_argument("discriminants", type=int, nargs="+")
    s.add_argument("--terms", type=int, default=100_000)
    s.set_defaults(func=_cmd_forms)

    s = sub.add_parser("excess", help="quadratic excess vs L-function formulas")
    s.add_argument("--prime-bound", type=int, default=50)
    s.add_argument("--terms", type=int, default=50_000)
    s.set_defaults(func=_cmd_excess)

    s = sub.add_parser("gauss-sum", help="G(n, p) in double precision")
    s.add_argument("n", type=int)
    s.add_argument("p", type=int)
    s.set_defaults(func=_cmd_gauss_sum)

    s = sub.add_parser("weil", help="complete Weil sum and point count")
    s.add_argument("p", type=int)
    s.add_argument("roots", type=int, nargs="+")
    s.set_defaults(func=_cmd_weil)

    s = sub.add_parser("ap", help="AP(B, S) parameters and prime counts")
    s.add_argument("spec", help='JSON like {"B":[...],"S":[[...]]} or {"a":[...],"b":[...],"s":n}')
    s.add_argument("--count-primes", type=int, nargs="*", default=[])
    s.set_defaults(func=_cmd_ap)

    s = sub.add_parser("clt", help="normalized excess-sum distribution")
    s.add_argument("p", type=int)
    s.add_argument("--window", type=int, default=0)
    s.add_argument("--bins", type=int, default=20)
    s.add_argument("--lo", type=float, default=-4.0)
    s.add_argument("--hi", type=float, default=4.0)
    s.set_defaults(func=_cmd_clt)

    s = sub.add_parser("zkp", help="Shamir identification demo")
    s.add_argument("mode", choices=["demo"])
    s.add_argument("--rounds", type=int, default=30)
    s.add_argument("--prime-bits", type=int, default=32)
    s.add_argument("--identity", type=int, default=3141519)
    s.set_defaults(func=_cmd_zkp)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    if getattr(args, "command", None) == "clt" and args.window == 0:
        args.window = int(math.log(args.p) ** 2)
    try:
        payload = args.func(args)
    except QuadrexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(payload, args)
    return 0


if __name__ == "__main__":
    sys.exit(main())
