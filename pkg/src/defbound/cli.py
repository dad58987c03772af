"""Command-line interface.

Exit codes: 0 on success, 1 when the answer to a yes/no query is negative
(no embedding, not isometric, a failed verification), 2 on bad input.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import io
from .charvec import min_char_norm
from .embedding import find_embedding
from .enumeration import (
    BoundedSetQuery,
    admissible_determinants,
    enumerate_bounded_set,
    enumerate_definite,
    unimodular_stable_classes,
)
from .errors import BadInput, DefboundError
from .isometry import is_isometric
from .lattice import (
    GramLattice,
    determinant,
    is_negative_definite,
    reduce_stable,
    shortest_vectors,
)
from .seifert import (
    classify_spherical,
    euler_number,
    normalize,
    obstruction_report,
    plumbing_gram,
    reverse_orientation,
)
from .verify import verify_paper_examples


class _Exit(Exception):
    def __init__(self, code):
        self.code = code


def _emit(args, payload, text: str):
    if args.json:
        print(io.dumps(payload))
    else:
        print(text)


def _fmt_gram(lat: GramLattice) -> str:
    if lat.rank == 0:
        return "[] (empty lattice)"
    return "\n".join(" ".join(f"{x:>4}" for x in row) for row in lat.gram)


def _target(text: str) -> GramLattice:
    if text.startswith("diag:"):
        try:
            n = int(text[5:])
        except ValueError:
            raise BadInput(f"bad target {text!r}") from None
        if n < 0:
            raise BadInput("diagonal rank must be non-negative")
        return GramLattice.standard(n)
    return io.load_lattice(text)


# lattice commands

def _lattice(args):
    lat = io.load_lattice(args.file)
    cmd = args.lcmd
    if cmd == "det":
        d = determinant(lat)
        _emit(args, {"det": d}, str(d))
    elif cmd == "definite":
        ok = is_negative_definite(lat)
        _emit(args, {"negative_definite": ok}, "negative definite" if ok else "not negative definite")
    elif cmd == "delta":
        r = min_char_norm(lat)
        _emit(args, {"delta": r.delta, "minimizer": r.minimizer, "min_norm": r.min_norm}, str(r.delta))
    elif cmd == "reduce":
        sub, m = reduce_stable(lat)
        _emit(args, {"reduced": sub, "unit_summands": m}, f"<-1>^{m} plus\n{_fmt_gram(sub)}")
    elif cmd == "shortvecs":
        vs = shortest_vectors(lat, args.bound)
        _emit(args, {"vectors": vs, "norms": [lat.norm(v) for v in vs]},
              "\n".join(f"{v}  norm {lat.norm(v)}" for v in vs) or "(none)")
    elif cmd == "isometric":
        other = io.load_lattice(args.other)
        w = is_isometric(lat, other)
        _emit(args, {"isometric": w is not None, "map": None if w is None else w.map},
              "isometric" if w else "not isometric")
        if w is None:
            raise _Exit(1)
    elif cmd == "embed":
        target = _target(args.target)
        e = find_embedding(lat, target, max_nodes=args.max_nodes)
        _emit(args, {"embeds": e is not None, "images": None if e is None else e.images()},
              "no embedding" if e is None else "\n".join(str(v) for v in e.images()))
        if e is None:
            raise _Exit(1)


# seifert commands

def _seifert(args):
    f = io.load_seifert(args.file)
    cmd = args.scmd
    if cmd == "normalize":
        g = normalize(f)
        _emit(args, g, str(g))
    elif cmd == "euler":
        e = euler_number(f)
        _emit(args, {"euler": e}, str(e))
    elif cmd == "gram":
        lat = plumbing_gram(normalize(f))
        _emit(args, lat, _fmt_gram(lat))
    elif cmd == "reverse":
        g = reverse_orientation(normalize(f))
        _emit(args, g, str(g))
    elif cmd == "classify":
        t = classify_spherical(normalize(f))
        if t is None:
            _emit(args, {"type": None}, "not spherical")
        else:
            _emit(args, {"type": t.family, "reversed": t.reversed, "form": t.form},
                  f"{t.family}{' (reversed orientation)' if t.reversed else ''}: {t.form}")
    elif cmd == "report":
        dy = None if args.dY is None else io.parse_rational(args.dY)
        r = obstruction_report(f, dY=dy, slack=args.slack, max_nodes=args.max_nodes)
        payload = {
            "normal_form": r.normal_form, "euler": r.euler, "h1_order": r.h1_order,
            "gram": r.gram, "delta": r.delta, "delta_bound_used": r.delta_bound_used,
            "delta_ok": r.delta_ok, "donaldson_positive_side": r.donaldson_positive_side,
            "donaldson_ranks": r.donaldson_ranks,
            "both_definite_sufficient": r.both_definite_sufficient,
        }
        lines = [
            f"normal form      {r.normal_form}",
            f"euler number     {r.euler}",
            f"|H_1|            {r.h1_order}",
            f"delta            {r.delta}" + ("" if dy is None else f"  (d(Y) = {dy}: {'ok' if r.delta_ok else 'violated'})"),
            f"positive side    {r.donaldson_positive_side} (ranks {', '.join(map(str, r.donaldson_ranks))})",
            f"e0 + k <= 0      {r.both_definite_sufficient}",
        ]
        _emit(args, payload, "\n".join(lines))


# enumeration commands

def _class_lines(classes) -> str:
    return "\n\n".join(_fmt_gram(c) for c in classes) if classes else "(none)"


def _enumerate(args):
    cmd = args.ecmd
    if cmd == "lattices":
        res = enumerate_definite(args.rank, args.det, max_rank=args.cap)
        _emit(args, {"classes": res.classes}, f"{len(res)} classes\n\n{_class_lines(res.classes)}")
    elif cmd == "dets":
        ds = admissible_determinants(args.h)
        _emit(args, {"determinants": ds}, " ".join(map(str, ds)))
    elif cmd == "unimodular":
        c = None if args.C is None else io.parse_rational(args.C)
        res = unimodular_stable_classes(args.cap, c)
        _emit(args, {"classes": res.classes, "audit": res.audit},
              f"{len(res)} stable classes\n\n{_class_lines(res.classes)}")
    elif cmd == "bounded":
        g1 = io.load_lattice(args.gamma1) if args.gamma1 else GramLattice.empty()
        g2 = io.load_lattice(args.gamma2) if args.gamma2 else GramLattice.empty()
        q = BoundedSetQuery(g1, g2, io.parse_rational(args.C), args.D, args.cap)
        res = enumerate_bounded_set(q, workers=args.threads)
        audit = [{k: v for k, v in rec.items() if k != "embedding"} for rec in res.audit]
        _emit(args, {"classes": res.classes, "audit": audit},
              f"{len(res)} stable classes\n\n{_class_lines(res.classes)}")


def _verify(args):
    recs = verify_paper_examples()
    _emit(args, {"records": recs},
          "\n".join(f"{r.status:<5} {r.case_name}: expected {r.expected}, observed {r.observed}" for r in recs))
    if any(r.status == "fail" for r in recs):
        raise _Exit(1)


def build_parser() -> argparse.ArgumentParser:
    def flags(suppress):
        # global flags are accepted before or after the subcommand; the copies
        # on subcommands must not overwrite values given earlier
        d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        f = argparse.ArgumentParser(add_help=False)
        f.add_argument("--json", action="store_true", default=d(False), help="machine-readable output")
        f.add_argument("--cap", type=int, default=d(8), help="rank cap for enumerations (default 8)")
        f.add_argument("--threads", type=int, default=d(1), help="worker processes")
        f.add_argument("--max-nodes", type=int, default=d(None), help="node budget for searches")
        return f

    common = flags(True)
    p = argparse.ArgumentParser(prog="defbound", parents=[flags(False)],
                                description="Definite lattices bounded by rational homology spheres.")
    sub = p.add_subparsers(dest="group", required=True)

    lat = sub.add_parser("lattice", parents=[common], help="lattice operations on a Gram JSON file")
    lsub = lat.add_subparsers(dest="lcmd", required=True)
    for name in ("det", "definite", "delta", "reduce"):
        lsub.add_parser(name, parents=[common]).add_argument("file")
    sv = lsub.add_parser("shortvecs", parents=[common])
    sv.add_argument("file")
    sv.add_argument("--bound", type=int, default=2)
    iso = lsub.add_parser("isometric", parents=[common])
    iso.add_argument("file")
    iso.add_argument("other")
    emb = lsub.add_parser("embed", parents=[common])
    emb.add_argument("file")
    emb.add_argument("--target", required=True, help="diag:N or a Gram JSON file")

    sf = sub.add_parser("seifert", parents=[common], help="Seifert form operations")
    ssub = sf.add_subparsers(dest="scmd", required=True)
    for name in ("normalize", "euler", "gram", "classify", "reverse"):
        ssub.add_parser(name, parents=[common]).add_argument("file")
    rep = ssub.add_parser("report", parents=[common])
    rep.add_argument("file")
    rep.add_argument("--dY", default=None, help="correction term d(Y), e.g. 2 or 1/2")
    rep.add_argument("--slack", type=int, default=4)

    en = sub.add_parser("enumerate", parents=[common], help="finite enumerations")
    esub = en.add_subparsers(dest="ecmd", required=True)
    el = esub.add_parser("lattices", parents=[common])
    el.add_argument("--rank", type=int, required=True)
    el.add_argument("--det", type=int, required=True)
    ed = esub.add_parser("dets", parents=[common])
    ed.add_argument("h", type=int)
    eu = esub.add_parser("unimodular", parents=[common])
    eu.add_argument("--C", default=None, help="delta bound (default: none)")
    eb = esub.add_parser("bounded", parents=[common])
    eb.add_argument("--gamma1", default=None)
    eb.add_argument("--gamma2", default=None)
    eb.add_argument("--C", required=True)
    eb.add_argument("--D", type=int, required=True)

    vf = sub.add_parser("verify", parents=[common], help="reference examples")
    vsub = vf.add_subparsers(dest="vcmd", required=True)
    vsub.add_parser("paper", parents=[common])
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    handlers = {"lattice": _lattice, "seifert": _seifert, "enumerate": _enumerate, "verify": _verify}
    try:
        handlers[args.group](args)
    except _Exit as exc:
        return exc.code
    except (DefboundError, ValueError) as exc:
        print(f"defbound: error: {exc}", file=sys.stderr)
        return 2
    return 0


def run() -> None:
    sys.exit(main())
