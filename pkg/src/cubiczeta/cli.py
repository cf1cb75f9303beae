"""Command line driver: orbit enumeration, identity verification, and
class-group / coefficient tables, all in exact arithmetic.

Exit codes: 0 on success (verification passed), 1 when a verification
found mismatches, 2 on bad flags or invalid input.

Output is deterministic: repeated runs and any --threads value produce
byte-identical bytes.  --threads parallelizes independent verification
subtasks (series builds, the appendix order grid); results are reassembled
in a fixed order.
"""

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor

from .arith import primes_up_to
from .characters import all_characters, get_class_group
from .cubic import enumerate_orbits
from .dirichlet import (
    Series,
    euler_factor_sides,
    l_coeffs,
    l_series_direct,
    l_star_coeffs,
    l_star_from_l,
    series_add,
    series_mismatches,
    values_equal,
    verify_conductor_sum,
    verify_unit_count_series,
)
from .eisenstein import param_count_mismatches, xi_dual_rhs
from .quadorders import form_from_ideal
from .reports import (
    VerifyReport,
    mismatch_rows,
    table_to_csv,
    table_to_json,
    value_to_string,
)
from .shintani import VARIANTS, xi_coeffs, xi_rhs_primitive
from .splitorders import (
    SplitOrder,
    inversion_mismatches,
    level_identity_mismatches,
    product_identity_mismatches,
    rep_isomorphism_errors,
    unit_weight_mismatches,
)

IDENTITIES = (
    "on1",
    "on2",
    "thm31",
    "thm33",
    "thm44",
    "thm51",
    "thm54",
    "lemma56",
    "lemma57",
    "appendix",
)


# ---------------------------------------------------------------------------
# worker tasks (top level so process pools can import them)


def _series_task(args):
    kind, variant, N = args
    if kind == "plain":
        return xi_coeffs(variant, N)
    if kind == "dual_rhs":
        return xi_dual_rhs(variant, N)
    if kind == "prim_rhs":
        return xi_rhs_primitive(variant, N)
    raise ValueError(f"unknown series task {kind!r}")


def _appendix_cell(args):
    n, m, wi, N = args
    order = SplitOrder(n, m, with_infinity=wi)
    rows = []
    for err in rep_isomorphism_errors(order):
        rows.append((0, "class-map:" + repr(err), ""))
    for chis, j, a, b in product_identity_mismatches(order, N):
        rows.append((j, value_to_string(a), value_to_string(b)))
    for chis, j, a, b in level_identity_mismatches(order, N):
        rows.append((j, value_to_string(a), value_to_string(b)))
    for chis, j, a, b in inversion_mismatches(order, N):
        rows.append((j, value_to_string(a), value_to_string(b)))
    return rows


def _map_tasks(fn, tasks, threads):
    if threads <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=min(threads, len(tasks))) as pool:
        return list(pool.map(fn, tasks))


# ---------------------------------------------------------------------------
# identity runners: each returns (effective bound, mismatch rows)


def _run_on(which, args):
    N = args.bound
    lhs_variant, rhs_variant, scale = {
        "on1": ("xi1_dual", "xi2", 1),
        "on2": ("xi2_dual", "xi1", 3),
    }[which]
    lhs, rhs = _map_tasks(
        _series_task,
        [("plain", lhs_variant, N), ("plain", rhs_variant, N)],
        args.threads,
    )
    if scale != 1:
        rhs = series_add(Series(N, {}), rhs, scale=scale)
    return N, mismatch_rows(series_mismatches(lhs, rhs))


def _run_thm31(args):
    return args.bound, mismatch_rows(
        (n, lhs, rhs) for n, lhs, rhs in param_count_mismatches(args.bound)
    )


def _run_xi_pair(kinds, variants, args):
    N = args.bound
    tasks = []
    for v in variants:
        tasks.append((kinds, v, N))
        tasks.append(("plain", v, N))
    series = _map_tasks(_series_task, tasks, args.threads)
    rows = []
    for i in range(0, len(series), 2):
        rows.extend(mismatch_rows(series_mismatches(series[i], series[i + 1])))
    return N, rows


def _character_from_args(args):
    group = get_class_group(args.delta, args.f)
    chars = all_characters(group)
    if not 0 <= args.char < len(chars):
        raise ValueError(
            f"--char must index the character list (0..{len(chars) - 1} here)"
        )
    return chars[args.char]


def _run_thm51(args):
    chi = _character_from_args(args)
    return args.terms, mismatch_rows(verify_conductor_sum(chi, args.terms))


def _run_thm54(args):
    group = get_class_group(args.delta, args.f)
    chi = all_characters(group)[0]  # the trivial character
    N = args.terms
    rows = mismatch_rows(series_mismatches(l_coeffs(chi, N), l_series_direct(chi, N)))
    rows += mismatch_rows(series_mismatches(l_star_from_l(chi, N), l_star_coeffs(chi, N)))
    return N, rows


def _run_lemma56(args):
    return args.terms, mismatch_rows(
        verify_unit_count_series(args.delta, args.d, args.terms)
    )


def _poly_str(coeffs):
    return ";".join(value_to_string(c) for c in coeffs)


def _run_lemma57(args):
    chi = _character_from_args(args)
    rows = []
    for p in primes_up_to(args.bound - 1):
        if args.f % p == 0:
            continue
        lhs, rhs = euler_factor_sides(chi, p)
        width = max(len(lhs), len(rhs))
        lhs = lhs + [0] * (width - len(lhs))
        rhs = rhs + [0] * (width - len(rhs))
        if not all(values_equal(a, b) for a, b in zip(lhs, rhs)):
            rows.append((p, _poly_str(lhs), _poly_str(rhs)))
    return args.bound, rows


def _run_appendix(args):
    N = args.bound
    if N > 60:
        raise ValueError("the lattice oracle is guarded at bound 60")
    cells = [
        (n, m, wi, N)
        for n in (1, 2)
        for m in range(1, 7)
        for wi in (True, False)
    ]
    rows = []
    for cell_rows in _map_tasks(_appendix_cell, cells, args.threads):
        rows.extend(cell_rows)
    for n in (1, 2):
        for m in range(1, 7):
            for bad in unit_weight_mismatches(n, m):
                rows.append((0, "unit-weight:" + repr(bad), ""))
    return N, rows


def _run_verify(args):
    if args.identity in ("on1", "on2"):
        N, rows = _run_on(args.identity, args)
    elif args.identity == "thm31":
        N, rows = _run_thm31(args)
    elif args.identity == "thm33":
        N, rows = _run_xi_pair("dual_rhs", ("xi1_dual", "xi2_dual"), args)
    elif args.identity == "thm44":
        N, rows = _run_xi_pair("prim_rhs", ("xi1", "xi2"), args)
    elif args.identity == "thm51":
        N, rows = _run_thm51(args)
    elif args.identity == "thm54":
        N, rows = _run_thm54(args)
    elif args.identity == "lemma56":
        N, rows = _run_lemma56(args)
    elif args.identity == "lemma57":
        N, rows = _run_lemma57(args)
    else:
        N, rows = _run_appendix(args)
    report = VerifyReport(args.identity, N, rows, workers=args.threads)
    _emit(args, report.to_json() if args.format == "json" else report.to_csv())
    return 0 if report.status == "pass" else 1


# ---------------------------------------------------------------------------
# table subcommands


def _cmd_enumerate(args):
    sign = 1 if args.sign == "pos" else -1
    records = enumerate_orbits(args.lattice, sign, args.bound)
    if args.format == "json":
        payload = {
            "lattice": args.lattice,
            "sign": args.sign,
            "bound": args.bound,
            "orbits": [
                {"form": list(r.form), "disc": r.disc, "stab": r.stab}
                for r in records
            ],
        }
        _emit(args, table_to_json(payload))
    else:
        rows = [(*r.form, r.disc, r.stab) for r in records]
        _emit(args, table_to_csv(("x0", "x1", "x2", "x3", "disc", "stab"), rows))
    return 0


def _cmd_classgroup(args):
    group = get_class_group(args.delta, args.f)
    classes = []
    for coords in group.elements():
        form = form_from_ideal(group.order, group.rep(coords))
        classes.append((coords, form))
    if args.format == "json":
        payload = {
            "delta": args.delta,
            "f": args.f,
            "invariants": list(group.invariants),
            "classes": [
                {"coords": list(coords), "form": list(form)}
                for coords, form in classes
            ],
        }
        _emit(args, table_to_json(payload))
    else:
        rows = [
            ("-".join(str(c) for c in coords), *form) for coords, form in classes
        ]
        _emit(args, table_to_csv(("coords", "a", "b", "c"), rows))
    return 0


def _cmd_xi(args):
    series = xi_coeffs(args.variant, args.bound)
    items = series.items()
    if args.format == "json":
        payload = {
            "variant": args.variant,
            "N": args.bound,
            "coefficients": [
                {"n": n, "value": value_to_string(v)} for n, v in items
            ],
        }
        _emit(args, table_to_json(payload))
    else:
        rows = [(n, value_to_string(v)) for n, v in items]
        _emit(args, table_to_csv(("n", "value"), rows))
    return 0


def _emit(args, text):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# argument parsing


def _add_common(sub):
    sub.add_argument("--format", choices=("json", "csv"), default="json")
    sub.add_argument("--threads", type=int, default=1)
    sub.add_argument("--out", default=None)


def _positive(value):
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cubiczeta",
        description="Exact verification of cubic-form orbit and L-series identities.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    enum = subs.add_parser("enumerate", help="orbit representatives by |disc|")
    enum.add_argument("--lattice", choices=("L", "Ldual"), default="L")
    enum.add_argument("--sign", choices=("pos", "neg"), default="pos")
    enum.add_argument("--bound", type=_positive, required=True)
    _add_common(enum)
    enum.set_defaults(func=_cmd_enumerate)

    ver = subs.add_parser("verify", help="run one identity check")
    ver.add_argument("identity", choices=IDENTITIES)
    ver.add_argument("--bound", type=_positive, default=None)
    ver.add_argument("--terms", type=_positive, default=None)
    ver.add_argument("--delta", type=int, default=None)
    ver.add_argument("--f", type=_positive, default=1)
    ver.add_argument("--d", type=_positive, default=1)
    ver.add_argument(
        "--char",
        type=int,
        default=0,
        help="index into the character list of the class group of the "
        "conductor-f order (lexicographic exponent order; 0 is trivial)",
    )
    _add_common(ver)
    ver.set_defaults(func=_run_verify)

    cg = subs.add_parser("classgroup", help="class group table of one order")
    cg.add_argument("--delta", type=int, required=True)
    cg.add_argument("--f", type=_positive, default=1)
    _add_common(cg)
    cg.set_defaults(func=_cmd_classgroup)

    xi = subs.add_parser("xi", help="orbit zeta coefficient table")
    xi.add_argument("--variant", choices=tuple(VARIANTS), required=True)
    xi.add_argument("--bound", type=_positive, required=True)
    _add_common(xi)
    xi.set_defaults(func=_cmd_xi)

    return parser


_BOUND_DEFAULTS = {
    "on1": 100,
    "on2": 100,
    "thm31": 50,
    "thm33": 60,
    "thm44": 60,
    "lemma57": 50,
    "appendix": 40,
}

_TERMS_DEFAULTS = {"thm51": 60, "thm54": 60, "lemma56": 100}

_NEEDS_DELTA = ("thm51", "thm54", "lemma56", "lemma57")


def _fill_verify_defaults(args):
    if args.command != "verify":
        return
    if args.bound is None:
        args.bound = _BOUND_DEFAULTS.get(args.identity, 60)
    if args.terms is None:
        args.terms = _TERMS_DEFAULTS.get(args.identity, 60)
    if args.identity in _NEEDS_DELTA and args.delta is None:
        raise ValueError(f"verify {args.identity} needs --delta")


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _fill_verify_defaults(args)
        return args.func(args)
    except (ValueError, IndexError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
