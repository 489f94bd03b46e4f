"""Batch command surface: compute operators, run the verification matrix, emit tables.

Exit codes: 0 all checks pass, 1 a verification failed, 2 usage error.
All numeric output is exact rational text ("p/q"); nothing is ever a float.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from fractions import Fraction
from math import factorial

from .ambient import (
    GjmsPolynomial,
    ObstructedWeight,
    check_k_restriction,
    check_k_restriction_dm,
    critical_weight,
    gjms_iterated,
    gjms_recursion,
    harmonic_extension,
    iterate_at_weight,
    obstruction,
    iterated_vs_obstruction_constant,
    random_admissible_perturbation,
    RestrictionError,
    ambient_laplacian,
)
from .backgrounds import Background, verify_spaceform_conditions
from .core import AlgebraError, SigmaPoly, rat, rat_str
from .factorization import CSV_HEADER, cross_route_report, factorization_product
from .scattering import (
    gjms_route_scattering,
    greens_log_coefficient,
    log_normalization,
    scattering_solve,
)
from .series import RHO, TruncatedSeries
from .sl2 import NcPoly, extract_Zk, falling_h_product, jacobi_defect, verify_commutator_identity

ROUTE_CHOICES = ("factorization", "iterated", "recursion", "obstruction", "scattering", "all")

# Fixed matrix the verify command sweeps; chosen to cover both background
# kinds, fractional m, lambda of both signs, the flat case, and an even d+m.
VERIFY_MATRIX = (
    Background.quasi_einstein(3, 2, 1),
    Background.quasi_einstein(2, 2, Fraction(1, 6)),
    Background.quasi_einstein(4, Fraction(1, 2), -1),
    Background.quasi_einstein(3, 2, 0),
    Background.gover_leitner(3, 2),
    Background.gover_leitner(2, Fraction(1, 2)),
)

GREEN_MATRIX = (
    Background.quasi_einstein(3, 2, 1),
    Background.quasi_einstein(2, 2, Fraction(1, 6)),
    Background.gover_leitner(3, 2),
)


def _order_override(default: int) -> int:
    env = os.environ.get("GJMS_ORDER")
    if env is None:
        return default
    try:
        return max(default, int(env))
    except ValueError as exc:
        raise AlgebraError(f"GJMS_ORDER must be an integer, got {env!r}") from exc


def _restricted(bg: Background, k: int) -> bool:
    try:
        check_k_restriction(bg, k)
    except RestrictionError:
        return True
    return False


def _parse_background(args: argparse.Namespace) -> Background:
    if args.kind == "qe":
        if args.lam is None:
            raise AlgebraError("quasi-Einstein backgrounds require --lambda")
        return Background.quasi_einstein(args.d, rat(args.m), rat(args.lam))
    if args.lam is not None:
        raise AlgebraError("Gover-Leitner backgrounds take no --lambda")
    return Background.gover_leitner(args.d, rat(args.m))


def _route_poly(bg: Background, k: int, route: str, override: bool) -> GjmsPolynomial:
    if route == "factorization":
        return factorization_product(bg, k)
    if route == "iterated":
        order = _order_override(k)
        pert = TruncatedSeries.zero(RHO, order)
        return gjms_iterated(bg, k, pert, override=override)
    if route == "recursion":
        return gjms_recursion(bg, k, override=override)
    if route == "obstruction":
        return obstruction(bg, k, override=override)
    if route == "scattering":
        return gjms_route_scattering(bg, k, override=override)
    raise AlgebraError(f"unknown route {route!r}")


def cmd_compute(args: argparse.Namespace) -> int:
    ks = list(range(1, args.kmax + 1)) if args.kmax else [args.k]
    # Restriction is a function of (d, m, k) alone; report it before any
    # complaint about missing background parameters.
    for k in sorted(ks):
        check_k_restriction_dm(args.d + rat(args.m), k, args.override)
    bg = _parse_background(args)
    routes = list(ROUTE_CHOICES[:-1]) if args.route == "all" else [args.route]
    results = []
    for k in sorted(ks):
        for route in sorted(routes):
            results.append(_route_poly(bg, k, route, args.override))
    out = sys.stdout
    if args.format == "json":
        payload = results[0].to_json() if len(results) == 1 else [g.to_json() for g in results]
        out.write(json.dumps(payload) + "\n")
    elif args.format == "csv":
        writer = csv.writer(out)
        writer.writerow(["k", "route", "poly_sigma"])
        for g in results:
            writer.writerow([g.k, g.route, " ".join(g.poly.to_strings())])
    else:
        if len(results) == 1:
            out.write(f"{results[0].poly}\n")
        else:
            for g in results:
                out.write(f"k={g.k} {g.route}: {g.poly}\n")
    return 0


def cmd_spaceform(args: argparse.Namespace) -> int:
    report = verify_spaceform_conditions(
        args.d, rat(args.m), rat(args.mu), rat(args.kappa), rat(args.f0)
    )
    if args.format == "json":
        sys.stdout.write(json.dumps(report.to_json()) + "\n")
    else:
        for key, value in report.to_json().items():
            sys.stdout.write(f"{key}: {value}\n")
    return 0


def cmd_table(args: argparse.Namespace) -> int:
    ds = _int_list(args.d)
    ms = _rat_list(args.m)
    ks = _int_list(args.k)
    lams = _rat_list(args.lam) if args.kind == "qe" else [None]
    cells = []
    for d in ds:
        for m in ms:
            for lam in lams:
                try:
                    bg = (
                        Background.quasi_einstein(d, m, lam)
                        if args.kind == "qe"
                        else Background.gover_leitner(d, m)
                    )
                except AlgebraError:
                    continue
                for k in ks:
                    if _restricted(bg, k):
                        continue
                    cells.append(cross_route_report(bg, k))
    if args.format == "json":
        sys.stdout.write(json.dumps([c.to_json() for c in cells]) + "\n")
        return 0
    route_names = ("factorization", "iterated", "recursion", "obstruction", "scattering")
    writer = csv.writer(sys.stdout)
    writer.writerow(["kind", "d", "m", "lambda", "k", *route_names, "all_agree"])
    for cell in cells:
        bg = cell.background
        row = [
            bg.kind,
            bg.d,
            rat_str(bg.m),
            "" if bg.lam is None else rat_str(bg.lam),
            cell.k,
        ]
        for name in route_names:
            if name in cell.routes:
                row.append(" ".join(cell.routes[name].poly.to_strings()))
            else:
                row.append(f"error: {cell.errors.get(name, 'unavailable')}")
        row.append(str(cell.all_agree()).lower())
        writer.writerow(row)
    return 0


def _int_list(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part.strip()]


def _rat_list(text: str) -> list[Fraction]:
    return [rat(part) for part in text.split(",") if part.strip()]


# -- verification suites -----------------------------------------------------


class Checker:
    def __init__(self, out=None):
        self.out = out or sys.stdout
        self.failures = 0

    def check(self, description: str, ok: bool, detail: str = "") -> None:
        mark = "ok  " if ok else "FAIL"
        self.out.write(f"{mark} {description}\n")
        if not ok:
            self.failures += 1
            if detail:
                self.out.write(f"     {detail}\n")


def verify_sl2(chk: Checker, kmax: int) -> None:
    for k in range(1, kmax + 1):
        for kind, label in (("yk_x", "[y^k,x] = -k y^(k-1)(h-k+1)"), ("xk_y", "[x^k,y] = k x^(k-1)(h+k-1)")):
            ok, witness = verify_commutator_identity(kind, k)
            chk.check(f"sl2 {label} at k={k}", ok, f"witness {witness}")
    chk.check("sl2 Jacobi identity reduces to 0", jacobi_defect().is_zero())
    x, y = NcPoly.x(), NcPoly.y()
    for k in range(1, kmax + 1):
        zk = extract_Zk(k)
        lead = Fraction(-1) ** (k - 1) * factorial(k - 1) * falling_h_product(k)
        defect = (y ** (k - 1) * x ** (k - 1) - lead - x * zk).normal_form()
        chk.check(
            f"sl2 y^(k-1)x^(k-1) = (-1)^(k-1)(k-1)! h(h+1)..(h+k-2) + x Z_k at k={k}",
            defect.is_zero(),
        )
        # h evaluated at -(k-1) turns the product into the iterated/obstruction ratio
        prod_val = falling_h_product(k).substitute_h(-(k - 1)).terms.get((), Fraction(0))
        chk.check(
            f"sl2 h-product at h=-(k-1) reproduces the route ratio at k={k}",
            prod_val == Fraction(-1) ** (k - 1) * factorial(k - 1)
            and 4 ** (k - 1) * factorial(k - 1) * prod_val == iterated_vs_obstruction_constant(k),
        )


def verify_ambient(chk: Checker, kmax: int, inject_fault: bool = False) -> None:
    rng = random.Random(20240229)
    first = True
    for bg in VERIFY_MATRIX:
        for k in range(1, kmax + 1):
            if _restricted(bg, k):
                continue
            report = cross_route_report(bg, k)
            iterated = report.routes["iterated"].poly
            if inject_fault and first:
                iterated = iterated + 1  # deliberate harness self-test corruption
                first = False
            agree = all(
                iterated == report.routes[name].poly
                for name in ("factorization", "recursion", "obstruction")
            )
            chk.check(
                f"routes agree on {bg.label()} k={k}",
                agree and report.constant_check is True,
                detail="; ".join(f"{n}: {g.poly}" for n, g in sorted(report.routes.items())),
            )
            base = report.routes["iterated"].poly
            stable = all(
                gjms_iterated(bg, k, random_admissible_perturbation(rng, k + 2)).poly == base
                for _ in range(3)
            )
            chk.check(f"extension independence on {bg.label()} k={k}", stable)
        w = critical_weight(bg, 1) + Fraction(1, 3)
        ext = harmonic_extension(bg, w, 4)
        image = ambient_laplacian(bg, ext)
        chk.check(
            f"harmonic extension closes to order 3 on {bg.label()}",
            all(image.profile.coeff(j).is_zero() for j in range(4)),
        )


def verify_scattering(chk: Checker, kmax: int) -> None:
    for bg in VERIFY_MATRIX:
        for k in range(1, min(kmax, 3) + 1):
            if _restricted(bg, k):
                continue
            sol = scattering_solve(bg, k)
            odd_ok = all(
                sol.v_coeffs[j].is_zero()
                for j in range(1, 2 * k, 2)
                if j < bg.dm
            )
            chk.check(f"odd radial coefficients vanish on {bg.label()} k={k}", odd_ok)
            scat = gjms_route_scattering(bg, k).poly
            iterated = gjms_iterated(bg, k).poly
            chk.check(
                f"scattering route equals iterated on {bg.label()} k={k}",
                scat == iterated,
                detail=f"scattering: {scat}; iterated: {iterated}",
            )
            normalized = sol.log_coeff / log_normalization(k)
            chk.check(
                f"log coefficient over d_k is +/-monic degree {k} on {bg.label()}",
                normalized.degree == k and abs(normalized.coeffs[-1]) == 1,
            )


def verify_green(chk: Checker, kmax: int) -> None:
    for bg in GREEN_MATRIX:
        for k in range(1, min(kmax, 2) + 1):
            if _restricted(bg, k):
                continue
            report = greens_log_coefficient(bg, k)
            chk.check(
                f"log-coefficient pairing is symmetric on {bg.label()} k={k}",
                report.match,
                detail=f"lp: {report.lp}; rhs: {report.rhs}",
            )


def cmd_verify(args: argparse.Namespace) -> int:
    chk = Checker()
    kmax = args.kmax
    if args.suite in ("all", "sl2"):
        verify_sl2(chk, kmax if args.suite == "sl2" else min(kmax, 6))
    if args.suite in ("all", "ambient"):
        verify_ambient(chk, kmax, inject_fault=args.inject_fault)
    if args.suite in ("all", "scattering"):
        verify_scattering(chk, kmax)
    if args.suite in ("all", "green"):
        verify_green(chk, kmax)
    if args.inject_fault and args.suite not in ("all", "ambient"):
        chk.check("fault-injection self-test hook", False, "fault injected by request")
    total = "all checks passed" if chk.failures == 0 else f"{chk.failures} check(s) FAILED"
    chk.out.write(f"summary: {total}\n")
    return 0 if chk.failures == 0 else 1


# -- argument parsing ---------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gjms",
        description="Exact construction and cross-verification of weighted GJMS operators "
        "on the quasi-Einstein and Gover-Leitner model backgrounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    comp = sub.add_parser("compute", help="compute operator polynomials for one background")
    comp.add_argument("kind", choices=("qe", "gl"))
    comp.add_argument("--d", type=int, required=True)
    comp.add_argument("--m", required=True)
    comp.add_argument("--lambda", dest="lam", default=None)
    group = comp.add_mutually_exclusive_group(required=True)
    group.add_argument("--k", type=int)
    group.add_argument("--kmax", type=int)
    comp.add_argument("--route", choices=ROUTE_CHOICES, default="factorization")
    comp.add_argument("--format", choices=("json", "csv", "text"), default="text")
    comp.add_argument("--override", action="store_true", help="allow k beyond (d+m)/2 for even d+m")
    comp.set_defaults(func=cmd_compute)

    ver = sub.add_parser("verify", help="run a verification suite; exit 0 iff all pass")
    ver.add_argument("suite", choices=("all", "sl2", "ambient", "scattering", "green"))
    ver.add_argument("--kmax", type=int, default=3)
    ver.add_argument("--inject-fault", action="store_true", help="self-test hook: corrupt one check")
    ver.set_defaults(func=cmd_verify)

    tab = sub.add_parser("table", help="route-comparison table over a parameter grid")
    tab.add_argument("kind", choices=("qe", "gl"))
    tab.add_argument("--d", required=True, help="comma-separated integers")
    tab.add_argument("--m", required=True, help="comma-separated rationals")
    tab.add_argument("--lambda", dest="lam", default="", help="comma-separated rationals (qe only)")
    tab.add_argument("--k", required=True, help="comma-separated positive integers")
    tab.add_argument("--format", choices=("json", "csv"), default="csv")
    tab.set_defaults(func=cmd_table)

    space = sub.add_parser("spaceform", help="weighted curvature scalars of a spaceform")
    space.add_argument("--d", type=int, required=True)
    space.add_argument("--m", required=True)
    space.add_argument("--mu", required=True)
    space.add_argument("--kappa", required=True)
    space.add_argument("--f0", required=True)
    space.add_argument("--format", choices=("json", "text"), default="text")
    space.set_defaults(func=cmd_spaceform)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "table" and args.kind == "qe" and not args.lam:
        parser.error("qe tables require --lambda")
    if args.command == "table" and args.kind == "gl" and args.lam:
        parser.error("gl tables take no --lambda")
    try:
        return args.func(args)
    except (RestrictionError, ObstructedWeight, AlgebraError, ZeroDivisionError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
