"""Command-line driver: generators, searches, measures and lemma checks.

Reports are deterministic for fixed inputs and seed and carry a schema
version; see the README for the JSON layout.  Exit codes: 0 success/PASS,
3 satisfiable instance, 4 cap exceeded, 5 FAIL, 1 unexpected error
(argparse itself exits 2 on usage errors).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import boolcube, dimension, instances, measures, nullsatz, symmetric
from .boolcube import SatisfiablePointError
from .field import QQ, field_from_tag
from .linalg import CapExceededError
from .ring import Polynomial, make_mono, parse_polynomial, poly_to_text

SCHEMA = "proofbench-report/v1"

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_FAIL = 5
EXIT_SATISFIABLE = 3
EXIT_CAP = 4


def _parse_beta(text):
    if "/" in text:
        num, den = text.split("/")
        return Fraction(int(num), int(den))
    return int(text)


def parse_instance_spec(spec: str, fld):
    """Mini-language name:params mirroring the generator signatures."""
    name, _, params = spec.partition(":")
    args = [p for p in params.split(",") if p] if params else []
    if name == "subset-sum":
        n, beta = int(args[0]), _parse_beta(args[1])
        return instances.subset_sum(n, beta, fld)
    if name == "q":
        n, beta = int(args[0]), _parse_beta(args[1])
        return instances.invariant_Q(n, beta, fld)
    if name == "p":
        n, beta = int(args[0]), _parse_beta(args[1])
        return instances.lifted_P(n, beta, fld)
    if name == "ks-word":
        h, d, k = int(args[0]), int(args[1]), int(args[2])
        beta = _parse_beta(args[3]) if len(args) > 3 else 3
        word = instances.word_from_params(h, d, k)
        return instances.knapsack_word(word, beta, fld)
    if name == "star":
        d, n, beta = int(args[0]), int(args[1]), _parse_beta(args[2])
        f = symmetric.elementary(d, n, fld)
        return instances.lifted_symmetric_star(f, beta, fld)
    raise ValueError(f"unknown instance spec {spec!r}")


def emit_report(payload, args, start_time):
    payload = dict(payload)
    payload["schema"] = SCHEMA
    payload["command"] = " ".join(sys.argv[1:])
    payload["field"] = getattr(args, "field", "q")
    payload["caps"] = {
        "cube": args.cap_cube,
        "entries": args.cap_entries,
        "partials": args.cap_partials,
        "terms": args.cap_terms,
    }
    payload["seconds"] = round(time.time() - start_time, 3)
    out = getattr(args, "out", "json")
    if out == "json":
        print(json.dumps(payload, indent=2, default=str))
    elif out == "csv":
        for key, value in _flatten(payload):
            print(f"{key},{value}")
    else:
        for key, value in _flatten(payload):
            print(f"{key}: {value}")


def _flatten(obj, prefix=""):
    rows = []
    if isinstance(obj, dict):
        for key, value in obj.items():
            rows.extend(_flatten(value, f"{prefix}{key}." if prefix else f"{key}."))
    elif isinstance(obj, (list, tuple)):
        for i, value in enumerate(obj):
            rows.extend(_flatten(value, f"{prefix}{i}."))
    else:
        rows.append((prefix[:-1], obj))
    return rows


def _load_poly(args, fld):
    if getattr(args, "poly_file", None):
        with open(args.poly_file) as fh:
            return parse_polynomial(fh.read(), fld)
    if getattr(args, "instance", None):
        inst = parse_instance_spec(args.instance, fld)
        return inst.axiom if inst.axiom is not None else inst.expanded_axiom()
    raise ValueError("need --instance or --poly-file")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_gen_instance(args, fld, start):
    if args.generator == "ks-word":
        if None in (args.h, args.d, args.k):
            raise ValueError("ks-word needs --h --d --k")
        word = instances.word_from_params(args.h, args.d, args.k)
        inst = instances.knapsack_word(word, _parse_beta(args.beta), fld)
    elif args.generator == "star":
        if None in (args.d, args.n):
            raise ValueError("star needs --d --n")
        f = symmetric.elementary(args.d, args.n, fld)
        inst = instances.lifted_symmetric_star(f, _parse_beta(args.beta), fld)
    elif args.n is None:
        raise ValueError(f"{args.generator} needs --n")
    else:
        gen = {
            "subset-sum": instances.subset_sum,
            "q": instances.invariant_Q,
            "p": instances.lifted_P,
        }[args.generator]
        inst = gen(args.n, _parse_beta(args.beta), fld)
    header = {
        "schema": "proofbench-instance/v1",
        "generator": inst.metadata.get("generator"),
        "params": inst.metadata,
        "beta": str(inst.beta),
        "field": fld.tag,
        "var_groups": {k: list(v) for k, v in inst.var_groups.items()},
        "factored": inst.core_factors is not None,
        "unsat_verified": inst.unsat_verified,
    }
    lines = [json.dumps(header)]
    if inst.core_factors is not None:
        lines.extend(poly_to_text(factor) for factor in inst.core_factors)
    else:
        lines.append(poly_to_text(inst.axiom))
    text = "\n".join(lines) + "\n"
    if args.out_file:
        with open(args.out_file, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_interp_inverse(args, fld, start):
    f = _load_poly(args, fld)
    g = boolcube.inverse_on_cube(f, cap=args.cap_cube)
    if args.table:
        cube = boolcube.CubeFunction.of_polynomial(g, cap=args.cap_cube)
        with open(args.table, "w", newline="") as fh:
            cube.dump_csv(fh)
    payload = {
        "inverse": poly_to_text(g),
        "degree": g.degree(),
        "terms": g.num_terms(),
        "check_ml_product_is_one": boolcube.multilinearize(g * f)
        == Polynomial.constant(1, fld),
    }
    emit_report(payload, args, start)
    return EXIT_OK


def cmd_ns_search(args, fld, start):
    inst = parse_instance_spec(args.instance, fld)
    axiom = inst.axiom if inst.axiom is not None else inst.expanded_axiom()
    reports = nullsatz.search_min_degree(
        [axiom], args.max_degree, args.multilinear, nnz_cap=args.cap_entries
    )
    found = [r.degree for r in reports if r.found]
    payload = {
        "instance": args.instance,
        "outcomes": [
            {"degree": r.degree, "found": r.found, "rows": r.rows, "cols": r.cols, "nnz": r.nnz}
            for r in reports
        ],
        "min_found_degree": found[0] if found else None,
    }
    if found and args.certificate_file:
        best = next(r for r in reports if r.found)
        with open(args.certificate_file, "w") as fh:
            fh.write(nullsatz.certificate_to_json([axiom], best.certificate))
    emit_report(payload, args, start)
    return EXIT_OK


def _partition_from_args(args, f):
    def expand(side):
        names = []
        for token in side.split(","):
            token = token.strip()
            if not token:
                continue
            matches = [v for v in f.vars if v == token or v.split("_")[0] == token]
            names.extend(matches if matches else [token])
        return tuple(dict.fromkeys(names))

    return dimension.VarPartition(expand(args.left), expand(args.right))


def cmd_coeff_dim(args, fld, start):
    if args.instance:
        inst = parse_instance_spec(args.instance, fld)
        f = inst.axiom if inst.axiom is not None else inst.expanded_axiom()
        if args.of == "inverse":
            f = boolcube.inverse_on_cube(f, cap=args.cap_cube)
    else:
        f = _load_poly(args, fld)
        if args.of == "inverse":
            f = boolcube.inverse_on_cube(f, cap=args.cap_cube)
    if args.slice is not None:
        f = f.degree_slice(args.slice)
    payload = {"of": args.of, "slice": args.slice}
    if args.order:
        order = [v.strip() for v in args.order.split(",") if v.strip()]
        cuts = []
        for i in range(1, len(order)):
            part = dimension.VarPartition(tuple(order[:i]), tuple(order[i:]))
            cuts.append({"cut": i, "rank": dimension.coeff_dim(f, part)})
        payload["cuts"] = cuts
        payload["width_bound"] = max((c["rank"] for c in cuts), default=1)
    else:
        part = _partition_from_args(args, f)
        payload["left"] = list(part.left)
        payload["right"] = list(part.right)
        payload["rank"] = dimension.coeff_dim(f, part)
    emit_report(payload, args, start)
    return EXIT_OK


def cmd_measure(args, fld, start):
    if args.measure_kind == "residue":
        degrees = [int(t) for t in args.degrees.split(",") if t]
        value = measures.residue(args.k, degrees)
        emit_report({"residue": str(value), "k": args.k, "degrees": degrees}, args, start)
        return EXIT_OK
    # app
    f = _load_poly(args, fld)
    if args.projection == "preset:knapsack":
        pos = [v for v in f.vars if v.split("_")[0] == args.positive_prefix]
        neg = [v for v in f.vars if v.split("_")[0] == args.negative_prefix]
        L = measures.knapsack_projection(pos, neg, fld)
    else:
        with open(args.projection) as fh:
            data = json.load(fh)
        L = measures.projection(
            {v: parse_polynomial(s, fld) for v, s in data.items()}, fld
        )
    value = measures.app_dim(f, args.k, L, cap=args.cap_partials)
    emit_report({"app_dim": value, "k": args.k}, args, start)
    return EXIT_OK


def cmd_roabp(args, fld, start):
    with open(args.program) as fh:
        data = json.load(fh)
    layers = [
        [[parse_polynomial(entry, fld) for entry in row] for row in matrix]
        for matrix in data["layers"]
    ]
    program = dimension.Roabp(data["order"], layers)
    payload = {"order": list(program.order), "width": program.width}
    if args.eval:
        point = {}
        for piece in args.eval.split(","):
            name, _, value = piece.partition("=")
            point[name.strip()] = fld.from_fraction(Fraction(value))
        payload["value"] = str(program.eval(point))
    else:
        expanded = program.expand(term_cap=args.cap_terms)
        payload["polynomial"] = poly_to_text(expanded)
        payload["degree"] = expanded.degree()
        if args.width_bound:
            payload["width_bound"] = dimension.roabp_width_bound(expanded, program.order)
    emit_report(payload, args, start)
    return EXIT_OK


# ---------------------------------------------------------------------------
# lemma checks
# ---------------------------------------------------------------------------


def _lemma_xsyt(args, fld):
    n, beta = args.n, _parse_beta(args.beta)
    inst = instances.invariant_Q(n, beta, fld)
    g = boolcube.inverse_on_cube(inst.axiom)
    exps = {f"x_{i}": 1 for i in range(1, 2 * n + 1, 2)}
    exps.update({f"y_{i}": 1 for i in range(2, 2 * n + 1, 2)})
    got = g.coeff(make_mono(exps))
    b = fld.from_fraction(Fraction(beta))
    expected = fld.inv(fld.mul(b, fld.sub(fld.one, b)))
    return got == expected, {"coefficient": str(got), "expected": str(expected)}


def _lemma_sym_degree(args, fld):
    n, d, beta = args.n, args.d, _parse_beta(args.beta)
    f = symmetric.elementary(d, n, fld) - Polynomial.constant(beta, fld)
    g = boolcube.inverse_on_cube(f)
    bound = n - d + 1
    ok = g.degree() >= bound and (d != 1 or g.degree() == n)
    return ok, {"observed_degree": g.degree(), "bound": bound}


def _lemma_q_slice_dim(args, fld):
    n, beta = args.n, _parse_beta(args.beta)
    inst = instances.invariant_Q(n, beta, fld)
    g = boolcube.inverse_on_cube(inst.axiom)
    part = dimension.VarPartition(inst.var_groups["x"], inst.var_groups["y"])
    got = dimension.coeff_dim(g.degree_slice(2 * n), part)
    return got == 1 << n, {"rank": got, "expected": 1 << n}


def _lemma_plant(args, fld):
    import random

    n = args.n
    unames = [f"u_{i}" for i in range(1, 4 * n + 1)]
    inst = instances.lifted_P(n, _parse_beta(args.beta), fld)
    rng = random.Random(args.seed)
    if args.partition:
        left, _, right = args.partition.partition("|")
        parts = [tuple(t.strip() for t in left.split(",")), tuple(t.strip() for t in right.split(","))]
        partitions = [parts]
    else:
        partitions = []
        for _ in range(args.trials):
            shuffled = unames[:]
            rng.shuffle(shuffled)
            partitions.append((tuple(shuffled[: 2 * n]), tuple(shuffled[2 * n :])))
    results = []
    all_ok = True
    for v_part, w_part in partitions:
        try:
            planting = instances.plant_Q((v_part, w_part), fld)
            planted = inst.core_substitute(planting.assignment)
            ok = planted == planting.target(fld)
            results.append({"partition": [list(v_part), list(w_part)], "identity": ok})
        except instances.PlantingError as exc:
            ok = False
            results.append({"partition": [list(v_part), list(w_part)], "error": str(exc)})
        all_ok = all_ok and ok
    return all_ok, {"plantings": results}


def _lemma_fphp(args, fld):
    report = nullsatz.fphp_knapsack_identity(args.n)
    ok = report.identity_ok and report.substituted_individual_degree <= 2
    return ok, {
        "identity": report.identity_ok,
        "substituted_individual_degree": report.substituted_individual_degree,
    }


def _lemma_product_slice(args, fld):
    c, remainder = symmetric.product_leading_slice(args.d, args.k, args.n, fld)
    return True, {
        "constant": str(c),
        "remainder_degree": remainder.degree(),
        "stated_constant": str(2 ** (args.d + args.k)),
    }


LEMMAS = {
    "xsyt": _lemma_xsyt,
    "sym-degree": _lemma_sym_degree,
    "q-slice-dim": _lemma_q_slice_dim,
    "plant": _lemma_plant,
    "fphp": _lemma_fphp,
    "product-slice": _lemma_product_slice,
}


def cmd_verify_lemma(args, fld, start):
    checker = LEMMAS.get(args.id)
    if checker is None:
        raise ValueError(f"unknown lemma id {args.id!r}; known: {sorted(LEMMAS)}")
    ok, witness = checker(args, fld)
    payload = {"lemma": args.id, "result": "PASS" if ok else "FAIL", "witness": witness}
    emit_report(payload, args, start)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _add_global_options(parser, suppress=False):
    # When attached to a subparser the defaults are suppressed so they do
    # not clobber values parsed at the top level.
    dflt = (lambda v: argparse.SUPPRESS if suppress else v)
    parser.add_argument("--field", default=dflt("q"), help="q or fp:<prime>")
    parser.add_argument("--out", default=dflt("json"), choices=["json", "csv", "text"])
    parser.add_argument("--cap-cube", type=int, default=dflt(boolcube.DEFAULT_CUBE_CAP))
    parser.add_argument("--cap-entries", type=int, default=dflt(nullsatz.DEFAULT_NNZ_CAP))
    parser.add_argument("--cap-partials", type=int, default=dflt(measures.DEFAULT_PARTIALS_CAP))
    parser.add_argument("--cap-terms", type=int, default=dflt(dimension.DEFAULT_TERM_CAP))


def build_parser():
    parser = argparse.ArgumentParser(prog="proofbench")
    _add_global_options(parser)
    sub = parser.add_subparsers(dest="cmd", required=True)

    def add_parser(name, **kw):
        p = sub.add_parser(name, **kw)
        _add_global_options(p, suppress=True)
        return p

    p = add_parser("gen-instance", help="emit an instance file")
    p.add_argument("generator", choices=["subset-sum", "q", "p", "ks-word", "star"])
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--h", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--beta", default="3")
    p.add_argument("--out-file")
    p.set_defaults(func=cmd_gen_instance)

    p = add_parser("interp-inverse", help="multilinear inverse over the cube")
    p.add_argument("--instance")
    p.add_argument("--poly-file")
    p.add_argument("--table", help="write the value table CSV here")
    p.set_defaults(func=cmd_interp_inverse)

    p = add_parser("ns-search", help="degree-bounded certificate search")
    p.add_argument("--instance", required=True)
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--multilinear", action="store_true")
    p.add_argument("--certificate-file")
    p.set_defaults(func=cmd_ns_search)

    p = add_parser("coeff-dim", help="coefficient dimension under a partition")
    p.add_argument("--instance")
    p.add_argument("--poly-file")
    p.add_argument("--of", default="inverse", choices=["inverse", "axiom"])
    p.add_argument("--slice", type=int)
    p.add_argument("--left")
    p.add_argument("--right")
    p.add_argument("--order")
    p.add_argument("--all-cuts", action="store_true")
    p.set_defaults(func=cmd_coeff_dim)

    p = add_parser("measure", help="residue and APP measures")
    msub = p.add_subparsers(dest="measure_kind", required=True)
    pr = msub.add_parser("residue")
    _add_global_options(pr, suppress=True)
    pr.add_argument("--k", type=int, required=True)
    pr.add_argument("--degrees", required=True)
    pr.set_defaults(func=cmd_measure)
    pa = msub.add_parser("app")
    _add_global_options(pa, suppress=True)
    pa.add_argument("--k", type=int, required=True)
    pa.add_argument("--projection", default="preset:knapsack")
    pa.add_argument("--instance")
    pa.add_argument("--poly-file")
    pa.add_argument("--positive-prefix", default="x")
    pa.add_argument("--negative-prefix", default="y")
    pa.set_defaults(func=cmd_measure)

    p = add_parser("verify-lemma", help="PASS/FAIL check of an anchored identity")
    p.add_argument("id")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--beta", default="3")
    p.add_argument("--partition", help="plant: 'u_1,u_2|u_3,u_4'")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=20)
    p.set_defaults(func=cmd_verify_lemma)

    p = add_parser("roabp", help="evaluate/expand a matrix program")
    p.add_argument("--program", required=True)
    p.add_argument("--eval")
    p.add_argument("--width-bound", action="store_true")
    p.set_defaults(func=cmd_roabp)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.time()
    try:
        fld = field_from_tag(args.field)
        return args.func(args, fld, start)
    except SatisfiablePointError as exc:
        print(f"satisfiable: {exc}", file=sys.stderr)
        return EXIT_SATISFIABLE
    except CapExceededError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ValueError, ArithmeticError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
