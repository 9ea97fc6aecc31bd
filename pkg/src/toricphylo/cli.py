"""Command-line front end.

Exit status: 0 when every requested check holds, 1 when one is falsified
(the JSON then carries a witness), 2 on bad input or an exceeded limit.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import model
from .errors import ToricPhyloError
from .groups import AbelianGroup
from .lattice import INFINITE
from .model import build_polytope, enumerate_sockets, socket_index
from .trees import claw_tree, parse_tree
from .verify import faces, fibers, kernels, kimura


def _positive(text):
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _group(text):
    try:
        return AbelianGroup.parse(text)
    except ToricPhyloError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--output", "-o", help="write the report here instead of stdout")
    common.add_argument("--max-sockets", type=_positive, default=None,
                        help="socket-count limit (default $TORICPHYLO_MAX_SOCKETS or 1024)")
    common.add_argument("--jobs", type=_positive, default=1, help="worker processes")
    common.add_argument("--timing", action="store_true",
                        help="report wall time in elapsed_ms (otherwise 0, keeping output reproducible)")

    parser = argparse.ArgumentParser(prog="toricphylo", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("polytope", parents=[common], help="vertex matrix of the model polytope")
    p.add_argument("--tree", required=True)
    p.add_argument("--group", type=_group, required=True)

    p = sub.add_parser("kernel", parents=[common], help="kernel lattice of the vertex matrix")
    p.add_argument("--tree", required=True)
    p.add_argument("--group", type=_group, required=True)

    p = sub.add_parser("dims", parents=[common], help="affine and projective dimension")
    p.add_argument("--tree", required=True)
    p.add_argument("--group", type=_group, required=True)

    p = sub.add_parser("fiber", parents=[common], help="all monomials in one fiber")
    p.add_argument("--tree", required=True)
    p.add_argument("--group", type=_group, required=True)
    p.add_argument("--sockets", required=True,
                   help='JSON list of sockets fixing the fiber, e.g. "[[0,0,0,0],[1,1,1,1]]"')

    p = sub.add_parser("fiber-cardinality", parents=[common], help="generic fiber size")
    p.add_argument("--tree", required=True)
    p.add_argument("--group", type=_group, required=True)

    verify = sub.add_parser("verify", help="theorem-level checks")
    vsub = verify.add_subparsers(dest="check", required=True)

    p = vsub.add_parser("main", parents=[common])
    p.add_argument("--leaves", type=int, required=True)
    p.add_argument("--group", type=_group, required=True)
    p.add_argument("--mode", choices=("scheme", "set"), default="scheme")
    p.add_argument("--sources", nargs="+", help="default: every non-claw topology")

    p = vsub.add_parser("exactseq", parents=[common])
    p.add_argument("--leaves", type=int, required=True)

    p = vsub.add_parser("kernel-in-image", parents=[common])
    p.add_argument("--tree", required=True)

    p = vsub.add_parser("index", parents=[common])
    p.add_argument("--tree", required=True)

    p = vsub.add_parser("inclusion", parents=[common])
    p.add_argument("--tree", required=True, help="the coarser tree")
    p.add_argument("--finer", required=True, help="a tree contracting onto --tree")
    p.add_argument("--group", type=_group, required=True)

    p = vsub.add_parser("generation", parents=[common])
    p.add_argument("--target", required=True)
    p.add_argument("--group", type=_group, required=True)
    p.add_argument("--sources", nargs="+", required=True)
    p.add_argument("--move-degree", type=_positive, default=2)
    p.add_argument("--test-degree", type=_positive, default=3)
    p.add_argument("--max-fiber", type=_positive, default=fibers.DEFAULT_MAX_MONOMIALS,
                   help="limit on monomials enumerated up to the test degree")

    p = vsub.add_parser("faces", parents=[common])
    p.add_argument("--tree", required=True)
    p.add_argument("--group", type=_group, required=True)

    p = vsub.add_parser("orbit", parents=[common])
    p.add_argument("--leaves", type=int, required=True)
    p.add_argument("--group", type=_group, required=True)
    p.add_argument("--support", type=int, nargs="+", help="socket indices (default: all)")
    p.add_argument("--trees", nargs="+", help="default: every non-claw topology")
    return parser


def _index(x):
    return "INFINITE" if x == INFINITE else x


def _polytope(args):
    P = build_polytope(parse_tree(args.tree), args.group, args.max_sockets)
    return None, P.to_json()


def _kernel(args):
    r = kernels.kernel_lattice(parse_tree(args.tree), args.group, args.max_sockets)
    return True, {"result": r.as_dict(), "indices": {"saturation_index": r.saturation_index}}


def _dims(args):
    r = kernels.dimension_report(parse_tree(args.tree), args.group, args.max_sockets)
    return r.holds, {"result": r.as_dict()}


def _parse_sockets(G, text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ToricPhyloError(f"--sockets is not valid JSON: {exc}") from exc
    return [socket_index(G, s) for s in data]


def _fiber(args):
    T = parse_tree(args.tree)
    model.check_size(args.group, T.n_leaves, args.max_sockets)
    spec = fibers.FiberSpec.from_sockets(T, args.group, _parse_sockets(args.group, args.sockets))
    found = fibers.enumerate_fiber_indices(spec)
    socks = enumerate_sockets(args.group, T.n_leaves)
    networks = [[[list(a) for a in model.network_of_socket(T, args.group, socks[i])] for i in m]
                for m in found]
    return True, {"result": {"degree": spec.degree, "target": list(spec.target),
                             "monomials": [list(m) for m in found], "networks": networks}}


def _fiber_cardinality(args):
    n = kernels.fiber_cardinality(parse_tree(args.tree), args.group, args.max_sockets)
    return True, {"indices": {"fiber_cardinality": _index(n)}}


def _main(args):
    r = kernels.check_main_theorem(args.leaves, args.group, args.sources, args.mode,
                                   args.jobs, args.max_sockets)
    out = {"result": r.as_dict(),
           "indices": {"saturation_index": _index(r.saturation_index),
                       "index_in_claw": _index(r.index_in_claw)}}
    if r.witness is not None:
        out["witness"] = {"claw_kernel_vector": list(r.witness)}
    return r.verdict, out


def _exactseq(args):
    r = kimura.check_exact_sequence(args.leaves)
    return r.verdict, {"result": r.as_dict(), "indices": {"cokernel_index": _index(r.index)}}


def _kernel_in_image(args):
    r = kimura.check_kernel_in_image(parse_tree(args.tree))
    out = {"result": r.as_dict()}
    if r.witness is not None:
        out["witness"] = {"kernel_vector": list(r.witness)}
    return r.verdict, out


def _index_eq(args):
    r = kimura.check_index_equality(parse_tree(args.tree), args.max_sockets)
    return r.verdict, {"result": r.as_dict(),
                       "indices": {"socket_side": _index(r.socket_index),
                                   "vertex_side": _index(r.vertex_index)}}


def _inclusion(args):
    ok = kernels.check_inclusion(parse_tree(args.tree), parse_tree(args.finer), args.group,
                                 args.max_sockets)
    return ok, {}


def _generation(args):
    target = parse_tree(args.target)
    r = fibers.check_generation(target, args.group, [parse_tree(s) for s in args.sources],
                                args.move_degree, args.test_degree, args.max_sockets,
                                args.max_fiber)
    out = {"result": r.as_dict()}
    if r.witness is not None:
        socks = enumerate_sockets(args.group, target.n_leaves)
        out["witness"] = {
            "fiber": r.witness.as_dict(socks),
            "socket_indices": [[list(m) for m in c] for c in r.witness.components],
        }
    return r.verdict, out


def _faces(args):
    T = parse_tree(args.tree)
    model.check_size(args.group, T.n_leaves, args.max_sockets)
    rows = [faces.face_type1(T, args.group, e, g).as_dict()
            for e in T.pendant_edges for g in args.group.elements]
    bad = [r for r in rows if r["restricted_kernels_equal"] is False]
    out = {"result": {"faces": rows}}
    if bad:
        out["witness"] = {"face": bad[0]}
    return not bad, out


def _orbit(args):
    l = args.leaves
    model.check_size(args.group, l, args.max_sockets)
    support = args.support if args.support else range(args.group.order ** (l - 1))
    trees = [parse_tree(t) for t in args.trees] if args.trees else kernels.non_claw_topologies(l)
    r = faces.orbit_component_count(faces.OrbitSpec(tuple(support)), args.group, trees)
    out = {"result": r.as_dict()}
    if r.empty:
        return "EMPTY", out
    claw = kernels.kernel_lattice(claw_tree(l), args.group, args.max_sockets).kernel \
        if not args.support else None
    if claw is not None:
        out["result"]["kernel_sum_equals_claw_kernel"] = r.kernel_sum == claw
    out["indices"] = {"components": r.components}
    return r.components == 1, out


_DISPATCH = {
    "polytope": _polytope,
    "kernel": _kernel,
    "dims": _dims,
    "fiber": _fiber,
    "fiber-cardinality": _fiber_cardinality,
    ("verify", "main"): _main,
    ("verify", "exactseq"): _exactseq,
    ("verify", "kernel-in-image"): _kernel_in_image,
    ("verify", "index"): _index_eq,
    ("verify", "inclusion"): _inclusion,
    ("verify", "generation"): _generation,
    ("verify", "faces"): _faces,
    ("verify", "orbit"): _orbit,
}


def _inputs(args) -> dict:
    skip = {"command", "check", "format", "output", "timing", "jobs"}
    out = {}
    for k, v in sorted(vars(args).items()):
        if k in skip or v is None:
            continue
        out[k] = str(v) if isinstance(v, AbelianGroup) else v
    return out


def _render_text(doc: dict) -> str:
    lines = []

    def walk(prefix, value):
        if isinstance(value, dict):
            for k in sorted(value):
                walk(f"{prefix}{k}." if prefix or k else k, value[k])
        else:
            lines.append(f"{prefix.rstrip('.')}: {json.dumps(value)}")

    walk("", doc)
    return "\n".join(lines) + "\n"


def run(args) -> int:
    key = ("verify", args.check) if args.command == "verify" else args.command
    start = time.perf_counter()
    verdict, body = _DISPATCH[key](args)
    elapsed = int((time.perf_counter() - start) * 1000) if args.timing else 0
    if key == "polytope":
        doc = body
        code = 0
    else:
        name = args.check if args.command == "verify" else args.command
        doc = {"check": name, "inputs": _inputs(args), "verdict": verdict, "elapsed_ms": elapsed}
        doc.update(body)
        code = 0 if verdict in (True, "EMPTY") else 1
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n" if args.format == "json" \
        else _render_text(doc)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return run(args)
    except ToricPhyloError as exc:
        print(f"toricphylo: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"toricphylo: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
