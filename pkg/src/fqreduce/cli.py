"""Command-line entry point.

Exit status: 0 pass, 1 property violation or evidence against, 2 usage or
input error (including unmet hypotheses), 3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from sympy import isprime

from . import BudgetExceeded, DEFAULT_BUDGET
from .actions import (ActionSpec, PreconditionError, check_injective_bijective,
                      check_pgroup_congruence, check_two_actions, fixed_points,
                      orbit_decomposition, validate_action)
from .bounds import (divides_check, lie_bound, minkowski_bound,
                     minkowski_exponent, quadratic_factor, quadratic_field_bound,
                     sum_characterization)
from .fields import FqContext, PolynomialMap
from .lie import LieTypeData, builtin_type
from .nullstellensatz import (EVIDENCE_AGAINST, Certificate, IntPolySystem,
                              certificate_char_report, certificate_search,
                              prime_survey)
from .smith import combinatorial as comb
from .smith.complexes import ComplexSES, check_h0_transfer, check_vanishing_transfer
from .smith.modules import (HypothesisViolation, ShortExactSeq, TruncModule,
                            TruncRing, check_free_constant_lemma, check_hexagon,
                            classify, jordan_blocks, random_general_ses,
                            random_lemma_ses)
from .valuation import Factorization

PASS, FAIL, USAGE, BUDGET = 0, 1, 2, 3


class InputError(ValueError):
    pass


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def load_json(path: str):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise InputError(f"{path}: no such file") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno}, "
                         f"column {exc.colno}: {exc.msg}") from exc


def _parse(path: str, build):
    rec = load_json(path)
    try:
        return build(rec)
    except (ValueError, KeyError, TypeError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) else exc
        raise InputError(f"{path}: {msg}") from exc


def factorization_from_record(rec) -> Factorization:
    """Accepts {"factors": {p: e}}, {"value": n} or a bound report record."""
    if isinstance(rec, int):
        return Factorization.of(rec)
    if not isinstance(rec, dict):
        raise ValueError("expected an object with field 'factors' or 'value'")
    if "factors" in rec:
        return Factorization(rec["factors"])
    if "total" in rec:
        return Factorization(rec["total"])
    if "value" in rec:
        return Factorization.of(int(rec["value"]))
    raise ValueError("missing field 'factors' (or 'value')")


def map_from_record(rec) -> PolynomialMap:
    for key in ("p", "n", "map"):
        if key not in rec:
            raise ValueError(f"missing field '{key}'")
    ctx = FqContext(int(rec["p"]), int(rec.get("k", 1)), rec.get("modulus"))
    return PolynomialMap.from_record(ctx, int(rec["n"]), rec["map"])


def lie_from_args(args) -> LieTypeData:
    if args.file:
        return _parse(args.file, LieTypeData.from_record)
    if not args.type:
        raise InputError("one of --type or --file is required")
    try:
        return builtin_type(args.type)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


class Out:
    """Collects text lines or line-delimited JSON records."""

    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def text(self, line: str = "") -> None:
        if self.fmt == "text":
            print(line, file=self.stream)

    def record(self, rec: dict) -> None:
        if self.fmt == "record":
            print(json.dumps(rec, sort_keys=True, separators=(",", ":")),
                  file=self.stream)


def _verdict(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


# -- bound / check -----------------------------------------------------------

def cmd_bound(args, out: Out) -> int:
    if args.what == "minkowski":
        if args.ell is not None:
            m = minkowski_exponent(args.n, args.ell)
            rec = {"check": "Minkowski exponent", "n": args.n, "ell": args.ell,
                   "exponent": m}
            if args.ell != 2:
                rec["sum_characterization"] = sum_characterization(args.n, args.ell)
            out.text(f"Minkowski exponent M({args.n}, {args.ell}) = {m}")
            out.record(rec)
        else:
            f = minkowski_bound(args.n)
            out.text(f"Minkowski bound for GL_{args.n}(Q): {f}")
            out.text(f"  = {f.value}")
            out.record({"check": "Minkowski bound", "n": args.n,
                        "total": f.to_record(), "value": str(f.value)})
        return PASS
    if args.what == "lietype":
        t = lie_from_args(args)
        rep = lie_bound(t, args.ceiling)
        out.text(f"Minkowski-type bound via reduction mod p for {t.label} "
                 f"(degrees {', '.join(map(str, t.degrees))}; primes p <= {args.ceiling})")
        out.text(f"{'ell':>5} {'exp':>5} {'witness':>8}  valuations")
        for row in rep.rows.values():
            flag = "  (upper bound only)" if row.upper_bound_only else ""
            vals = ",".join(map(str, row.valuations))
            out.text(f"{row.ell:>5} {row.exponent:>5} {row.witness:>8}  {vals}"
                     f"  sum {sum(row.valuations)}{flag}")
        out.text(f"total: {rep.total}")
        out.text(f"     = {rep.total.value}")
        out.record({"check": "Minkowski-type bound", **rep.to_record()})
        return PASS
    # quadratic
    try:
        c = quadratic_factor(args.d)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    total = quadratic_field_bound(args.d, args.ceiling)
    out.text(f"E8 bound over the quadratic field of discriminant {args.d}")
    out.text(f"  c(d) = {c}")
    out.text(f"  bound = {total}")
    out.record({"check": "quadratic E8 bound", "d": args.d,
                "factor": c.to_record(), "total": total.to_record(),
                "value": str(total.value)})
    return PASS


def cmd_check(args, out: Out) -> int:
    order = _parse(args.order, factorization_from_record)
    bound = _parse(args.bound, factorization_from_record)
    res = divides_check(order, bound)
    out.text(f"divisibility of {order} by bound {bound}: {_verdict(res.ok)}")
    if not res.ok:
        out.text(f"  offending primes: {', '.join(map(str, res.offending))}")
    out.record({"check": "divides", "order": order.to_record(),
                "bound": bound.to_record(), "passed": res.ok,
                "offending": res.offending})
    return PASS if res.ok else FAIL


# -- action ------------------------------------------------------------------

def _load_action(path: str) -> ActionSpec:
    return _parse(path, ActionSpec.from_record)


def _load_pair(args) -> tuple[ActionSpec, ActionSpec]:
    if args.other:
        return _load_action(args.file), _load_action(args.other)
    rec = load_json(args.file)
    if not isinstance(rec, dict) or "first" not in rec or "second" not in rec:
        raise InputError(f"{args.file}: expected fields 'first' and 'second' "
                         "(or pass --other)")
    out = []
    for key in ("first", "second"):
        try:
            out.append(ActionSpec.from_record(rec[key]))
        except (ValueError, KeyError, TypeError) as exc:
            raise InputError(f"{args.file}: field '{key}': {exc}") from exc
    return out[0], out[1]


def _report_violation(out: Out, bad: dict) -> None:
    out.text(f"not a group action: {bad['kind']} fails "
             + ", ".join(f"{k}={bad[k]}" for k in sorted(bad) if k != "kind"))


def cmd_action(args, out: Out) -> int:
    budget = args.budget
    if args.what == "injective":
        f = _parse(args.file, map_from_record)
        rep = check_injective_bijective(f, args.max_ext, budget)
        out.text("Ax-Grothendieck check (injective implies surjective) over F_q^k")
        for lv in rep.levels:
            out.text(f"  k={lv.k}: points {lv.size}, image {lv.image_size}, "
                     f"injective {lv.injective}, surjective {lv.surjective}")
        out.text(_verdict(not rep.violation))
        out.record(rep.to_record())
        return FAIL if rep.violation else PASS
    if args.what == "compare":
        a1, a2 = _load_pair(args)
        for a in (a1, a2):
            bad = validate_action(a, budget)
            if bad:
                _report_violation(out, bad)
                out.record({"check": "action axioms", "valid": False, **bad})
                return FAIL
        rep = check_two_actions(a1, a2, budget)
        out.text(f"fixed-point congruence for two actions of a group of order {rep.m}")
        out.text(f"  |Fix| = {rep.a} and {rep.a_prime}; q^n = {rep.q}^{rep.n}; "
                 f"residues mod {rep.m}: {rep.a % rep.m}, {rep.a_prime % rep.m}, "
                 f"{pow(rep.q, rep.n, rep.m)}")
        out.text(_verdict(rep.passed))
        out.record(rep.to_record())
        return PASS if rep.passed else FAIL
    a = _load_action(args.file)
    bad = validate_action(a, budget)
    if args.what == "validate" or bad:
        if bad:
            _report_violation(out, bad)
        else:
            out.text(f"valid action of a group of order {a.group.order} on "
                     f"F_{a.ctx.q}^{a.n}")
        out.record({"check": "action axioms", "valid": bad is None, **(bad or {})})
        return FAIL if bad else PASS
    if args.what == "fixed":
        pts = fixed_points(a, budget)
        out.text(f"{len(pts)} fixed points")
        for x in pts:
            out.text(f"  {x}")
        out.record({"check": "fixed points", "count": len(pts), "points": pts})
        return PASS
    if args.what == "orbits":
        sizes = orbit_decomposition(a, budget)
        out.text(f"{len(sizes)} orbits; sizes {sizes}")
        out.record({"check": "orbits", "count": len(sizes), "sizes": sizes})
        return PASS
    rep = check_pgroup_congruence(a, budget)
    out.text(f"Smith-type fixed-point congruence: p-group of order "
             f"{rep.group_order} on F_{rep.q}^{rep.n}")
    out.text(f"  |Fix| = {rep.fixed_count} = {rep.fixed_count % rep.prime} mod "
             f"{rep.prime}; q^n = {pow(rep.q, rep.n, rep.prime)} mod {rep.prime}")
    out.text(f"  has a fixed point: {rep.has_fixed_point}")
    out.text(_verdict(rep.passed))
    out.record(rep.to_record())
    return PASS if rep.passed else FAIL


# -- zeros -------------------------------------------------------------------

def cmd_zeros(args, out: Out) -> int:
    if args.what == "charset":
        cert = _parse(args.cert, Certificate.from_record)
        bad = certificate_char_report(cert)
        out.text(f"verified certificate of degree {cert.degree}; "
                 f"denominator {cert.denominator}")
        out.text(f"excluded characteristics: {bad or 'none'}")
        out.record({"check": "certificate characteristics", "degree": cert.degree,
                    "denominator": str(cert.denominator), "excluded": bad})
        return PASS
    s = _parse(args.file, IntPolySystem.from_record)
    if args.what == "cert":
        cert = None
        for d in range(args.degree + 1):
            cert = certificate_search(s, d)
            if cert is not None:
                break
        if cert is None:
            out.text(f"Nullstellensatz certificate: none of degree <= {args.degree}")
            out.record({"check": "Nullstellensatz certificate", "found": False,
                        "degree": args.degree})
            return PASS
        out.text(f"Nullstellensatz certificate of degree {cert.degree} "
                 "(sum of P_j Q_j = 1 verified exactly)")
        for j, q in enumerate(cert.to_record()["cofactors"]):
            out.text(f"  Q_{j} = {q}")
        out.text(f"excluded characteristics: {certificate_char_report(cert) or 'none'}")
        out.record({"check": "Nullstellensatz certificate", "found": True,
                    **cert.to_record()})
        return FAIL
    rep = prime_survey(s, args.ceiling, args.max_ext, args.degree, args.budget)
    out.text(f"common zero survey over F_(p^k), p <= {args.ceiling}, k <= {args.max_ext}")
    for p in rep.primes:
        k = rep.solvable[p]
        out.text(f"  p={p}: " + ("no zero" if k is None else f"zero over F_{p}^{k}"))
    if rep.skipped:
        out.text(f"  skipped (budget): {rep.skipped}")
    out.text(f"verdict: {rep.verdict}: {rep.summary()}")
    if rep.duality_violations:
        out.text(f"duality violated at {rep.duality_violations}")
    out.record(rep.to_record())
    if rep.verdict == EVIDENCE_AGAINST or rep.duality_violations:
        return FAIL
    return PASS


# -- smith -------------------------------------------------------------------

def _load_module(path: str) -> TruncModule:
    return _parse(path, TruncModule.from_record)


def _load_ses(path: str) -> ShortExactSeq:
    return _parse(path, ShortExactSeq.from_record)


def _load_complex_ses(path: str) -> ComplexSES:
    def build(rec):
        if isinstance(rec, dict) and "perm" in rec:
            return comb.smith_triple(comb.GComplex.from_record(rec))
        return ComplexSES.from_record(rec)
    return _parse(path, build)


def cmd_smith(args, out: Out) -> int:
    w = args.what
    if w in ("blocks", "classify"):
        m = _load_module(args.file)
        info = classify(m)
        if w == "blocks":
            out.text(f"Jordan blocks of t: {jordan_blocks(m)}")
            out.record({"check": "Jordan blocks", "p": m.p, "n": m.n,
                        "dim": m.dim, "blocks": info["blocks"]})
        else:
            out.text(f"dim {m.dim}, blocks {info['blocks']}: free {info['free']}, "
                     f"constant {info['constant']}")
            out.record({"check": "classify", "p": m.p, "n": m.n, **info})
        return PASS
    if w == "lemma":
        s = _load_ses(args.file)
        try:
            levels = check_free_constant_lemma(s)
        except HypothesisViolation as exc:
            out.text(f"free/constant lemma: hypothesis violation: {exc}")
            out.record({"check": "free/constant lemma", "applicable": False,
                        "reason": str(exc)})
            return USAGE
        ok = all(lv.passed for lv in levels)
        out.text("free/constant lemma for 0 -> I -> A -> B -> 0 (I free, B constant)")
        for lv in levels:
            out.text(f"  i={lv.i}: A_(t^i)/t^(n-i)A -> B {lv.kernel_side[0]}->"
                     f"{lv.kernel_side[1]} iso {lv.kernel_iso}; "
                     f"A/t^iA -> B + t^(n-i)A {lv.quotient_side[0]}->"
                     f"{lv.quotient_side[1]} iso {lv.quotient_iso}")
        out.text(_verdict(ok))
        out.record({"check": "free/constant lemma", "applicable": True,
                    "passed": ok, "levels": [lv.to_record() for lv in levels]})
        return PASS if ok else FAIL
    if w == "hexagon":
        s = _load_ses(args.file)
        n = s.ring.n
        if args.i is not None and not 1 <= args.i <= n - 1:
            raise InputError(f"--i must lie in 1..{n - 1}")
        ok = True
        out.text("hexagonal exact sequence of h_i for 0 -> Y' -> Y -> Y'' -> 0")
        for i in ([args.i] if args.i is not None else range(1, n)):
            rep = check_hexagon(s, i)
            ok &= rep.passed
            out.text(f"  i={i}: dims {rep.dims}, exact at nodes {rep.exact_at}")
            out.record({"check": "hexagon", "passed": rep.passed, **rep.to_record()})
        out.text(_verdict(ok))
        return PASS if ok else FAIL
    if w in ("prop833", "prop834"):
        cs = _load_complex_ses(args.file)
        if w == "prop833":
            rep = check_vanishing_transfer(cs, args.N)
            name = f"vanishing transfer from A to B in degrees >= {args.N}"
        else:
            rep = check_h0_transfer(cs)
            name = "H^0 transfer (higher vanishing, constant H^0)"
        out.record({"check": w, **rep.to_record()})
        if not rep.applicable:
            out.text(f"{name}: not applicable: {rep.reason}")
            return USAGE
        out.text(name)
        tr = rep if w == "prop833" else rep.transfer
        if w == "prop834":
            out.text(f"  dim H^0(A) = {rep.h0_dims[0]}, dim H^0(B) = {rep.h0_dims[1]}, "
                     f"H^0(B) constant {rep.h0_B_constant}, iso {rep.iso}")
        out.text(f"  H^j(B) nonzero at j = {tr.nonzero_B or 'none'}")
        for i in sorted(tr.nonzero_image):
            out.text(f"  i={i}: H^j(t^iA) nonzero at {tr.nonzero_image[i] or 'none'}, "
                     f"H^j(A_(t^i)) nonzero at {tr.nonzero_kernel[i] or 'none'}")
        out.text(_verdict(rep.passed))
        return PASS if rep.passed else FAIL
    # random
    p = args.p if args.p is not None else (args.n if isprime(args.n) else None)
    if p is None:
        raise InputError("--p is required when --n is not prime")
    if args.kind == "complex":
        if p != args.n:
            raise InputError("complex instances need --p equal to --n")
        gc = comb.random_contractible(p, args.seed, max(args.max_dim, 1))
        out.text(json.dumps(gc.to_record(), sort_keys=True))
        out.record(gc.to_record())
        return PASS
    ring = TruncRing(p, args.n)
    make = random_lemma_ses if args.kind == "lemma" else random_general_ses
    s = make(ring, args.max_dim, args.seed)
    out.text(json.dumps(s.to_record(), sort_keys=True))
    out.record(s.to_record())
    return PASS


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET,
                        help="maximum number of points to enumerate")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("text", "record"), default="text")
    common.add_argument("--ceiling", type=_positive, default=None,
                        help="prime window")

    top = argparse.ArgumentParser(prog="fqreduce",
                                  description="Reduction-mod-p computations.")
    sub = top.add_subparsers(dest="cmd", required=True)

    bound = sub.add_parser("bound").add_subparsers(dest="what", required=True)
    b = bound.add_parser("minkowski", parents=[common])
    b.add_argument("--n", type=_positive, required=True)
    b.add_argument("--ell", type=int)
    b = bound.add_parser("lietype", parents=[common])
    b.add_argument("--type")
    b.add_argument("--file")
    b = bound.add_parser("quadratic", parents=[common])
    b.add_argument("--d", type=int, required=True)

    check = sub.add_parser("check").add_subparsers(dest="what", required=True)
    c = check.add_parser("divides", parents=[common])
    c.add_argument("--order", required=True)
    c.add_argument("--bound", required=True)

    action = sub.add_parser("action").add_subparsers(dest="what", required=True)
    for name in ("validate", "fixed", "orbits", "congruence", "compare", "injective"):
        a = action.add_parser(name, parents=[common])
        a.add_argument("--file", required=True)
        if name == "compare":
            a.add_argument("--other")
        if name == "injective":
            a.add_argument("--max-ext", type=_positive, default=1)

    zeros = sub.add_parser("zeros").add_subparsers(dest="what", required=True)
    z = zeros.add_parser("survey", parents=[common])
    z.add_argument("--file", required=True)
    z.add_argument("--max-ext", type=_positive, default=1)
    z.add_argument("--degree", type=int, default=2,
                   help="certificate degree tried alongside the survey")
    z = zeros.add_parser("cert", parents=[common])
    z.add_argument("--file", required=True)
    z.add_argument("--degree", type=int, required=True)
    z = zeros.add_parser("charset", parents=[common])
    z.add_argument("--cert", required=True)

    smith = sub.add_parser("smith").add_subparsers(dest="what", required=True)
    for name in ("blocks", "classify", "lemma", "hexagon", "prop833", "prop834"):
        s = smith.add_parser(name, parents=[common])
        s.add_argument("--file", required=True)
        if name == "hexagon":
            s.add_argument("--i", type=int)
        if name == "prop833":
            s.add_argument("--N", type=_positive, default=1)
    s = smith.add_parser("random", parents=[common])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--p", type=int)
    s.add_argument("--kind", choices=("lemma", "general", "complex"), default="lemma")
    s.add_argument("--max-dim", type=_positive, default=12)
    return top


HANDLERS = {"bound": cmd_bound, "check": cmd_check, "action": cmd_action,
            "zeros": cmd_zeros, "smith": cmd_smith}


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else PASS
    if args.ceiling is None:
        args.ceiling = 10 ** 4 if args.cmd == "bound" else 100
    out = Out(args.format, stdout)
    try:
        return HANDLERS[args.cmd](args, out)
    except BudgetExceeded as exc:
        print(f"error: budget exceeded: {exc}", file=stderr)
        return BUDGET
    except (InputError, PreconditionError, ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
