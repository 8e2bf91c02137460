"""Command-line interface.

Exit codes: 0 success, 1 verification failed, 2 input error, 3 search
budget exceeded.  Tables go to standard output; ``-o/--out`` writes JSON.
"""

from __future__ import annotations

import argparse
import sys

from . import kernels
from .errors import NotDecodable, PfanoError, SearchSpaceTooLarge
from .gf import field_new
from .indexcoding import (
    Encoder,
    broadcast_rate_report,
    build_instance,
    check_decoding,
    encoder_h_p,
    mais,
    simulate_round,
)
from .io import InputError, load_instance, load_matrix, save_json
from .matrix import BlockMatrix
from .matroid import check_representation, h_p_matrix
from .search import DEFAULT_BUDGET, decide_family_optimality, family_constraints, search_scalar_representation

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3
FAMILY_CHOICES = ("p-fano", "p-nonfano")


def format_matrix(h: BlockMatrix) -> str:
    """Rows of entries under a header of block labels, like the encoder figures."""
    width = max(len(str(h.n)), len(str(h.q - 1)))
    labels = [str(i) for i in range(1, h.n + 1) for _ in range(h.t)]
    lines = [" ".join(s.rjust(width) for s in labels), " ".join("-" * width for _ in labels)]
    for row in h.entries.tolist():
        lines.append(" ".join(str(x).rjust(width) for x in row))
    return "\n".join(lines)


def _emit(args, data: dict):
    if args.out:
        save_json(data, args.out)
        print(f"wrote {args.out}")


def cmd_gen(args) -> int:
    inst = build_instance(args.family, args.p)
    print(f"{args.family} instance, p={args.p}: m={inst.m}")
    for i in inst.users:
        print(f"  B_{i} = {sorted(inst.B(i))}")
    _emit(args, inst.to_dict())
    return EXIT_OK


def cmd_encoder(args) -> int:
    enc = encoder_h_p(args.p, field_new(args.q))
    print(f"encoder for p={args.p} over GF({args.q}), rate {enc.rate}")
    print(format_matrix(enc.matrix))
    _emit(args, enc.matrix.to_dict())
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = load_instance(args.instance)
    h = load_matrix(args.matrix)
    if args.t is not None and args.t != h.t:
        raise InputError(f"matrix has block width {h.t}, expected {args.t}")
    report = check_decoding(Encoder(h), inst)
    print(f"{'user':>5} {'rank(B+i)':>10} {'rank(B)':>8}  ok")
    for u in report.users:
        print(f"{u.user:>5} {u.rank_with:>10} {u.rank_without:>8}  {'yes' if u.ok else 'NO'}")
    out = report.to_dict()
    if report.passed:
        print(f"all {inst.m} users decode; rate {Encoder(h).rate}")
    else:
        print(f"decoding fails for users {report.failing}")
    if args.mais:
        rate = broadcast_rate_report(inst, Encoder(h) if report.passed else None)
        out["rate"] = rate.to_dict()
        print(f"MAIS lower bound {rate.mais_lower}; achieved {rate.achieved}; optimal {rate.optimal}")
    _emit(args, out)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_mais(args) -> int:
    inst = load_instance(args.instance)
    res = mais(inst, workers=args.workers)
    print(f"MAIS = {res.size}; witness {list(res.witness)}")
    _emit(args, {"size": res.size, "witness": list(res.witness)})
    return EXIT_OK


def cmd_search(args) -> int:
    c = family_constraints(args.family, args.p)
    outcome = search_scalar_representation(c, field_new(args.q), budget=args.budget, workers=args.workers)
    print(f"{args.family} p={args.p} over GF({args.q}): {outcome.verdict} "
          f"({outcome.candidates} candidates, {outcome.elapsed_ms} ms)")
    if outcome.matrix is not None:
        print(format_matrix(outcome.matrix))
    _emit(args, outcome.to_dict())
    return EXIT_OK


def cmd_decide(args) -> int:
    res = decide_family_optimality(args.family, args.p, field_new(args.q), budget=args.budget, workers=args.workers)
    print(f"{args.family} p={args.p} over GF({args.q}): {res.verdict}")
    if res.verdict == "achievable":
        print(f"rate {res.rate} equals the MAIS bound {res.report.mais_lower}")
    else:
        print(res.certificate)
    _emit(args, res.to_dict())
    return EXIT_OK


def cmd_simulate(args) -> int:
    inst = load_instance(args.instance)
    h = load_matrix(args.matrix)
    try:
        res = simulate_round(Encoder(h), inst, seed=args.seed)
    except NotDecodable as exc:
        print(f"rejected: {exc}")
        _emit(args, {"ok": False, "failing": exc.users})
        return EXIT_FAILED
    print(f"seed {args.seed}: transmitted {res.transmitted.tolist()}")
    print(f"{'user':>5}  {'message':>12}  {'decoded':>12}")
    for i in inst.users:
        print(f"{i:>5}  {str(res.messages[i - 1].tolist()):>12}  {str(res.decoded[i].tolist()):>12}")
    print("exact recovery" if res.exact else "RECOVERY MISMATCH")
    _emit(args, {
        "ok": res.exact,
        "seed": args.seed,
        "q": h.q,
        "t": h.t,
        "messages": res.messages.tolist(),
        "transmitted": res.transmitted.tolist(),
        "decoded": {str(i): v.tolist() for i, v in res.decoded.items()},
    })
    return EXIT_OK if res.exact else EXIT_FAILED


def cmd_table(args) -> int:
    """Characteristic table: does ``H_p`` over GF(q) represent each family."""
    rows = []
    print(f"{'p':>3} {'q':>3}  {'p-fano':>8}  {'p-nonfano':>9}")
    for p in args.p:
        for q in args.q:
            h = h_p_matrix(p, field_new(q))
            fano = check_representation(h, family_constraints("p-fano", p)).passed
            nonfano = check_representation(h, family_constraints("p-nonfano", p)).passed
            rows.append({"p": p, "q": q, "p-fano": fano, "p-nonfano": nonfano})
            print(f"{p:>3} {q:>3}  {'yes' if fano else 'no':>8}  {'yes' if nonfano else 'no':>9}")
    _emit(args, {"rows": rows})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pfano", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s 0.1.0 ({kernels.BACKEND} kernels)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("-o", "--out", help="write JSON output to this path")
        sp.set_defaults(func=fn)
        return sp

    def family(sp):
        sp.add_argument("--family", choices=FAMILY_CHOICES, required=True)
        sp.add_argument("-p", type=int, required=True, help="prime family parameter")

    def search_opts(sp):
        sp.add_argument("-q", type=int, required=True, help="prime field size")
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="maximum visited assignments")
        sp.add_argument("--workers", type=int, default=1)

    sp = add("gen", cmd_gen, "build a family instance")
    family(sp)

    sp = add("encoder", cmd_encoder, "build the rate p+1 encoder")
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("-q", type=int, required=True)

    sp = add("verify", cmd_verify, "check the decoding condition for every user")
    sp.add_argument("instance")
    sp.add_argument("matrix")
    sp.add_argument("-t", type=int, default=None, help="expected block width")
    sp.add_argument("--mais", action="store_true", help="compare the rate with the MAIS bound")

    sp = add("mais", cmd_mais, "maximum acyclic induced subset")
    sp.add_argument("instance")
    sp.add_argument("--workers", type=int, default=1)

    sp = add("search", cmd_search, "normalized search for a scalar representation")
    family(sp)
    search_opts(sp)

    sp = add("decide", cmd_decide, "decide scalar linear optimality for a family instance")
    family(sp)
    search_opts(sp)

    sp = add("simulate", cmd_simulate, "encode random messages and decode at every user")
    sp.add_argument("instance")
    sp.add_argument("matrix")
    sp.add_argument("--seed", type=int, default=0)

    sp = add("table", cmd_table, "characteristic table of H_p against both families")
    sp.add_argument("-p", type=int, nargs="+", default=[2, 3, 5])
    sp.add_argument("-q", type=int, nargs="+", default=[2, 3, 5, 7])
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    for name in ("q",):
        value = getattr(args, name, None)
        try:
            for v in value if isinstance(value, list) else [value] if value is not None else []:
                field_new(v)
        except PfanoError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT
    try:
        return args.func(args)
    except SearchSpaceTooLarge as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InputError, PfanoError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
