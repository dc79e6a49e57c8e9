"""Command-line frontend.

Every subcommand prints one document (JSON by default, ``--format text`` for
a readable tree) and exits 0 when all checks pass, 1 when a verification
fails and 2 on bad arguments.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Sequence

from . import cache
from .report import Report

log = logging.getLogger("ospq")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _weight(text: str, n: int):
    from .rootdata import parse_weight

    try:
        return parse_weight(text, n)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad weight {text!r}: {exc}") from None


def _theta(text: str, n: int) -> frozenset:
    try:
        out = frozenset(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"bad theta {text!r}") from None
    if any(not 1 <= j <= n for j in out):
        raise UsageError(f"theta {sorted(out)} out of range for n={n}")
    return out


def _dominant(text: str, n: int):
    from .rootdata import build_root_datum, is_dominant

    lam = _weight(text, n)
    if not is_dominant(build_root_datum(n), lam):
        raise UsageError(f"lambda {text!r} is not dominant integral")
    return lam


def _conventions(n: int) -> dict:
    from .suite import conventions

    return conventions(n)


def _report_doc(rpt: Report, n: int | None) -> dict:
    doc = rpt.to_json()
    if n is not None:
        doc["conventions"] = _conventions(n)
    return doc


# -- subcommands --------------------------------------------------------------------
# Each returns (document, ok); text rendering falls back to JSON for plain data.


def cmd_check(args) -> tuple[Any, bool]:
    from .repcore import self_duality_report, vector_module
    from .uqalg import check_hopf, check_relations, check_s_squared

    n = args.n
    if args.what == "relations":
        rpt = check_relations(vector_module(n))
    elif args.what == "hopf":
        rpt = check_hopf(n)
        rpt.add(check_s_squared(vector_module(n)))
    else:
        rpt = self_duality_report(n)
    return rpt, rpt.ok


def cmd_irrep(args) -> tuple[Any, bool]:
    from .repcore import irreducible, irreducible_words
    from .uqalg import check_relations, word_str

    lam = _dominant(args.lam, args.n)
    w = irreducible(args.n, lam)
    doc = w.to_json()
    doc["lambda"] = [str(x) for x in lam]
    doc["basis words"] = [word_str(x) for x in irreducible_words(args.n, lam)]
    ok = True
    if args.verify:
        rpt = check_relations(w)
        doc["relations"] = rpt.to_json()
        ok = rpt.ok
    return doc, ok


def cmd_decompose(args) -> tuple[Any, bool]:
    from .repcore import decompose, tensor_power, vector_module
    from .rootdata import weight_str

    if args.power < 1:
        raise UsageError("--power must be positive")
    m = tensor_power(vector_module(args.n), args.power)
    dec = decompose(m)
    rpt = dec.check()
    rpt.data["dim"] = m.dim
    rpt.data["summands"] = [
        {"highest weight": weight_str(s.highest_weight), "dim": s.module.dim, "inclusion parity": s.parity}
        for s in dec.summands
    ]
    return rpt, rpt.ok


def cmd_superdim(args) -> tuple[Any, bool]:
    from .coordring import superdimension

    lam = _dominant(args.lam, args.n)
    return {"sd": str(superdimension(args.n, lam))}, True


def cmd_orthogonality(args) -> tuple[Any, bool]:
    from .coordring import orthogonality_check

    rpt = orthogonality_check(args.n, _dominant(args.lam, args.n), _dominant(args.mu, args.n))
    return rpt, rpt.ok


def cmd_evaluate(args) -> tuple[Any, bool]:
    from .coordring import evaluate, parse_pw_expression
    from .uqalg import parse_word

    try:
        f = parse_pw_expression(args.element, args.n)
        x = parse_word(args.word, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    val = evaluate(f, x)
    return {"element": str(f), "word": args.word, "value": str(val), "json": val.to_json()}, True


def _load_module(spec: str, n: int, theta: frozenset):
    from .homogeneous import reductive_module
    from .repcore import Module, Scope

    path = Path(spec)
    if path.suffix == ".json" or path.exists():
        try:
            m = Module.from_json(json.loads(path.read_text()))
        except (OSError, ValueError, KeyError) as exc:
            raise UsageError(f"cannot read module {spec!r}: {exc}") from None
        if m.n != n:
            raise UsageError(f"module file has n={m.n}, expected {n}")
        if m.scope.flavor == "full":
            m = m.with_scope(Scope(n, "reductive", theta))
        return m
    try:
        return reductive_module(n, theta, _weight(spec, n))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_sections(args) -> tuple[Any, bool]:
    from .homogeneous import holomorphic_sections, sections
    from .repcore import extend_to_parabolic

    theta = _theta(args.theta, args.n)
    V = _load_module(args.module, args.n, theta)
    try:
        if args.holomorphic:
            space = holomorphic_sections(extend_to_parabolic(V), args.cutoff)
        else:
            space = sections(V, args.cutoff)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    doc = space.to_json()
    doc["module"] = V.name
    doc["block dims"] = space.block_dims()
    if args.expand:
        doc["expansions"] = [
            [[v, [str(x) for x in key[0]], key[1], key[2], c.to_json()] for (v, key), c in sorted(z.items(), key=_term_order)]
            for z in space.basis()
        ]
    doc["conventions"] = _conventions(args.n)
    return doc, True


def _term_order(item):
    (v, (lam, i, j)), _ = item
    return (v, lam, i, j)


def cmd_invariants(args) -> tuple[Any, bool]:
    from .homogeneous import invariant_functions

    theta = _theta(args.theta, args.n)
    dims = [invariant_functions(args.n, theta, k).dim for k in range(args.cutoff + 1)]
    return {"n": args.n, "theta": sorted(theta), "cutoff": args.cutoff, "dims by cutoff": dims, "dim": dims[-1]}, True


def cmd_borel_weil(args) -> tuple[Any, bool]:
    from .homogeneous import borel_weil_check

    theta = _theta(args.theta, args.n)
    try:
        rpt = borel_weil_check(args.n, theta, _weight(args.mu, args.n), args.cutoff)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return rpt, rpt.ok


def cmd_frobenius(args) -> tuple[Any, bool]:
    from .homogeneous import frobenius_check
    from .repcore import irreducible

    theta = _theta(args.theta, args.n)
    W = irreducible(args.n, _dominant(args.w_lambda, args.n))
    V = _load_module(args.v_weight, args.n, theta)
    rpt = frobenius_check(W, V, args.cutoff)
    return rpt, rpt.ok


def cmd_suite(args) -> tuple[Any, bool]:
    from .suite import battery, run_acceptance

    if args.acceptance:
        rpt = run_acceptance()
    else:
        rpt = battery(args.n, args.cutoff, args.seed)
    return rpt, rpt.ok


# -- plumbing -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled identities (default 0)")
    common.add_argument("--cache-dir", default=None, help="persistent cache (default $OSPQ_CACHE_DIR)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="ospq", description="Exact computations for the quantum supergroup OSP_q(1|2n).")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, fn, help_: str, n_default: int | None = 1):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("--n", type=int, default=n_default)
        p.set_defaults(fn=fn)
        return p

    p = add("check", cmd_check, "defining relations, Hopf axioms, self-duality")
    p.add_argument("what", choices=("relations", "hopf", "self-duality"))
    p = add("irrep", cmd_irrep, "irreducible module W(lambda) as JSON")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--verify", action="store_true", help="also check the relations")
    p = add("decompose", cmd_decompose, "decompose a tensor power of the vector module")
    p.add_argument("--power", type=int, default=2)
    p = add("superdim", cmd_superdim, "quantum superdimension of W(lambda)")
    p.add_argument("--lambda", dest="lam", required=True)
    p = add("haar-orthogonality", cmd_orthogonality, "orthogonality relations for two blocks")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--mu", required=True)
    p = add("evaluate", cmd_evaluate, "pair a coordinate-ring element with a word")
    p.add_argument("--element", required=True, help='e.g. "2*t(1;0,0) + t(0;0,0)"')
    p.add_argument("--word", required=True, help='e.g. "e1 f1 k1^-1"')
    p = add("sections", cmd_sections, "sections of a homogeneous vector bundle")
    p.add_argument("--theta", default="")
    p.add_argument("--module", required=True, help="module JSON file or highest weight")
    p.add_argument("--cutoff", type=int, default=2)
    p.add_argument("--holomorphic", action="store_true", help="parabolic scope (holomorphic sections)")
    p.add_argument("--expand", action="store_true", help="include expansions in V (x) T_q")
    p = add("invariants", cmd_invariants, "dimensions of the truncated homogeneous superspace")
    p.add_argument("--theta", default="")
    p.add_argument("--cutoff", type=int, default=2)
    p = add("borel-weil", cmd_borel_weil, "holomorphic sections of an irreducible parabolic module")
    p.add_argument("--theta", default="")
    p.add_argument("--mu", required=True)
    p.add_argument("--cutoff", type=int, default=3)
    p = add("frobenius", cmd_frobenius, "Frobenius reciprocity for W(lambda) and a reductive module")
    p.add_argument("--theta", default="")
    p.add_argument("--w-lambda", required=True)
    p.add_argument("--v-weight", required=True, help="highest weight or module JSON file")
    p.add_argument("--cutoff", type=int, default=3)
    p = add("suite", cmd_suite, "run the verification battery")
    p.add_argument("--cutoff", type=int, default=2)
    p.add_argument("--acceptance", action="store_true", help="run the fixed acceptance criteria instead")
    return parser


def _render(doc: Any, fmt: str) -> str:
    if fmt == "text" and isinstance(doc, Report):
        return str(doc)
    if isinstance(doc, Report):
        doc = doc.to_json()
    if fmt == "text":
        return "\n".join(f"{k}: {json.dumps(v)}" for k, v in doc.items())
    return json.dumps(doc, indent=2)


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    if args.n is None or args.n < 1:
        print("error: --n must be a positive integer", file=sys.stderr)
        return EXIT_USAGE
    if args.cache_dir is not None:
        cache.set_cache_dir(args.cache_dir)
    try:
        doc, ok = args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if isinstance(doc, Report) and args.format == "json":
        doc = _report_doc(doc, args.n)
    print(_render(doc, args.format))
    return EXIT_OK if ok else EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
