"""Command-line interface.

Every command prints ``key=value`` lines (or one JSON object with
``--json``); randomized commands also print the repetition counts they
used.  Invalid input exits with status 2.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import formats, gf2, seeding
from .evencut import (
    MAX_T,
    dim_feasible,
    repetitions_for,
    set_feasible,
    set_min_even_cut,
    solve_evencut,
)
from .generate import (
    perturbed_instance,
    random_dim_evencut,
    random_matching_instance,
    random_multigraph,
    random_parities,
    random_set_evencut,
    random_skew_matrix,
)
from .parityjoin import parity_cycle, parity_join, parity_walk
from .pfaffian import DagRules, pfaffian_dag, pfaffian_naive
from .pfaffian.matching import parity_matching, reps_for
from .pipeline import SolverConfig, cogirth_perturbed, girth_perturbed
from .selftest import SUITES, run_selftest


class UsageError(ValueError):
    pass


def _fmt(v) -> str:
    if v == gf2.INFINITY:
        return "inf"
    if isinstance(v, (set, frozenset, list, tuple)):
        return ",".join(str(x) for x in sorted(v))
    return str(v)


def _emit(args, fields: list[tuple[str, object]]) -> None:
    if args.json:
        out = {}
        for k, v in fields:
            if v == gf2.INFINITY:
                v = "inf"
            elif isinstance(v, (set, frozenset, tuple)):
                v = sorted(v)
            out[k] = v
        print(json.dumps(out, sort_keys=True))
    else:
        for k, v in fields:
            print(f"{k}={_fmt(v)}")


def _rng(args, *path):
    return seeding.generator(seeding.child(seeding.root(args.seed), *path))


def _matching_reps(args, share: int = 1) -> int:
    if args.reps is not None:
        return args.reps
    return reps_for(args.epsilon / share, args.confidence)


def _load_pair(args):
    a = formats.parse_instance(args.A, "gf2matrix")
    p = formats.parse_instance(args.P, "gf2matrix")
    return a, p


def _config(args) -> SolverConfig:
    return SolverConfig(
        epsilon=args.epsilon,
        seed=args.seed,
        t_cap=args.t_cap,
        matching_c=args.confidence,
        matching_reps=args.reps,
        contraction_c=args.c,
    )


# commands ----------------------------------------------------------------


def cmd_girth(args) -> int:
    a, p = _load_pair(args)
    cfg = _config(args)
    t = gf2.rank(p)
    value = girth_perturbed(a, p, cfg)
    _emit(args, [("value", value), ("c", cfg.matching_c), ("reps", cfg.reps_for_branch(1 << t))])
    return 0


def cmd_cogirth(args) -> int:
    a, p = _load_pair(args)
    cfg = _config(args)
    t = gf2.rank(p)
    res = cogirth_perturbed(a, p, cfg)
    _emit(args, [("value", res.value), ("witness", res.witness), ("c", cfg.contraction_for_branch(4**t))])
    return 0


def cmd_evencut_set(args) -> int:
    inst = formats.parse_instance(args.file, "evencut-set")
    c = args.c if args.c is not None else repetitions_for(args.epsilon)
    if not set_feasible(inst):
        _emit(args, [("value", gf2.INFINITY), ("witness", ()), ("c", c)])
        return 0
    res = set_min_even_cut(inst, c, _rng(args, 0), args.t_cap)
    _emit(args, [("value", res.size), ("witness", res.witness), ("X", res.X), ("c", c)])
    return 0


def cmd_evencut_dim(args) -> int:
    inst = formats.parse_instance(args.file, "evencut-dim")
    c = args.c if args.c is not None else repetitions_for(args.epsilon / (1 << inst.t))
    res = solve_evencut(inst, c, seeding.root(args.seed), args.t_cap) if dim_feasible(inst) else None
    if res is None:
        _emit(args, [("value", gf2.INFINITY), ("witness", ()), ("c", c)])
    else:
        _emit(
            args,
            [("value", res.size), ("witness", res.witness), ("X", res.X), ("sigma", int(bool(res.uses_sigma))), ("c", c)],
        )
    return 0


def cmd_paritymatch(args) -> int:
    inst = formats.parse_instance(args.file, "matching")
    reps = _matching_reps(args)
    value = parity_matching(inst, args.confidence, reps, _rng(args, 0))
    _emit(args, [("value", value), ("c", args.confidence), ("reps", reps)])
    return 0


def cmd_parityjoin(args) -> int:
    inst = formats.parse_instance(args.file, "parity")
    terms = inst.terminals or ()
    reps = _matching_reps(args)
    value = parity_join(inst.graph, inst.gamma, inst.t, terms, inst.alpha, args.confidence, reps, _rng(args, 0))
    _emit(args, [("value", value), ("c", args.confidence), ("reps", reps)])
    return 0


def _vertex(g, v: int, flag: str) -> int:
    if not 1 <= v <= g.n:
        raise UsageError(f"{flag} must be a vertex in 1..{g.n}")
    return v


def cmd_paritywalk(args) -> int:
    inst = formats.parse_instance(args.file, "parity")
    u = _vertex(inst.graph, args.u, "--u")
    v = _vertex(inst.graph, args.v, "--v")
    _emit(args, [("value", parity_walk(inst.graph, inst.gamma, inst.t, inst.alpha, u, v))])
    return 0


def cmd_paritycycle(args) -> int:
    inst = formats.parse_instance(args.file, "parity")
    _emit(args, [("value", parity_cycle(inst.graph, inst.gamma, inst.t, inst.alpha))])
    return 0


def cmd_pfaffian(args) -> int:
    d = formats.parse_instance(args.file, "skewmatrix")
    pf = pfaffian_naive(d) if args.method == "naive" else pfaffian_dag(d)
    _emit(args, [("pf", formats.format_poly_terms(pf))])
    return 0


def cmd_oracle(args) -> int:
    a, p = _load_pair(args)
    if a.shape != p.shape:
        raise UsageError(f"A is {a.nrows}x{a.ncols} but P is {p.nrows}x{p.ncols}")
    if args.quantity == "girth":
        _emit(args, [("value", gf2.girth_oracle(a + p))])
    else:
        size, mask = gf2.min_cocycle(a + p)
        _emit(args, [("value", size), ("witness", gf2.mask_to_indices(mask))])
    return 0


def _write(args, text: str, suffix: str = "") -> None:
    if args.out:
        path = Path(args.out + suffix)
        path.write_text(text)
        print(f"wrote {path}")
    else:
        sys.stdout.write(text)


def cmd_gen(args) -> int:
    rng = _rng(args, 0)
    kind = args.kind
    if kind == "perturbed":
        if args.t > min(args.r, args.n):
            raise UsageError(f"rank {args.t} impossible for a {args.r}x{args.n} matrix")
        a, p = perturbed_instance(rng, args.r, args.n, args.t)
        if args.out:
            _write(args, formats.format_gf2matrix(a), ".A")
            _write(args, formats.format_gf2matrix(p), ".P")
        else:
            sys.stdout.write(formats.format_gf2matrix(a))
            sys.stdout.write(formats.format_gf2matrix(p))
        return 0
    n, m, t = args.n, args.m, args.t
    if m is None:
        m = 2 * n
    if t > MAX_T:
        raise UsageError(f"t is limited to {MAX_T}")
    if kind == "evencut-set":
        text = formats.format_evencut_set(random_set_evencut(rng, n, m, t))
    elif kind == "evencut-dim":
        text = formats.format_evencut_dim(random_dim_evencut(rng, n, m, t))
    elif kind == "matching":
        text = formats.format_matching(random_matching_instance(rng, n, m, t, args.wmax))
    elif kind == "parity":
        g = random_multigraph(rng, n, m)
        k = min(args.k, n - n % 2)
        terms = tuple(sorted(int(v) + 1 for v in rng.choice(n, size=k, replace=False)))
        inst = formats.ParityInstance(g, t, random_parities(rng, g, t), terms, int(rng.integers(0, 1 << t)))
        text = formats.format_parity(inst)
    elif kind == "skewmatrix":
        text = formats.format_skewmatrix(random_skew_matrix(rng, n, t))
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown kind {kind}")
    _write(args, text)
    return 0


def cmd_selftest(args) -> int:
    rules = DagRules(d_step_parity=0) if args.corrupt_dag else DagRules()
    report = run_selftest(args.trials, args.seed, rules, args.suite)
    if args.json:
        print(json.dumps([{"suite": r.name, "passed": r.passed, "total": r.total} for r in report]))
    else:
        for r in report:
            print(r.line())
    return 0 if all(r.ok for r in report) else 1


# parser ------------------------------------------------------------------


def _seed(text: str) -> int:
    v = int(text)
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _epsilon(text: str) -> float:
    v = float(text)
    if not 0 < v < 1:
        raise argparse.ArgumentTypeError("epsilon must lie in (0, 1)")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _natural(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be a non-negative integer")
    return v


def _common(defaults: bool) -> argparse.ArgumentParser:
    kw = {} if defaults else {"argument_default": argparse.SUPPRESS}
    p = argparse.ArgumentParser(add_help=False, **kw)
    d = (lambda v: {"default": v}) if defaults else (lambda v: {})
    p.add_argument("--seed", type=_seed, help="random seed (default 0)", **d(0))
    p.add_argument("--epsilon", type=_epsilon, help="error budget (default 1e-6)", **d(1e-6))
    p.add_argument("--json", action="store_true", help="print one JSON object", **d(False))
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pgmatroid",
        description="Girth and cogirth of low-rank perturbed graphic matroids, and the parity problems behind them.",
        parents=[_common(True)],
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common(False)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_, parents=[common])
        sp.set_defaults(func=func)
        return sp

    def randomized(sp, contraction=False, matching=False):
        if matching:
            sp.add_argument("--confidence", type=_positive, default=2, help="sample range factor c (default 2)")
            sp.add_argument("--reps", type=_natural, default=None, help="evaluation runs (default from epsilon)")
        if contraction:
            sp.add_argument("--c", type=_positive, default=None, help="contraction repetition factor")
        sp.add_argument("--t-cap", type=_natural, default=MAX_T, help="largest supported t")

    for name, func, help_ in (
        ("girth", cmd_girth, "girth of M(A + P)"),
        ("cogirth", cmd_cogirth, "cogirth of M(A + P) with a witness cocycle"),
    ):
        sp = add(name, func, help_)
        sp.add_argument("--A", required=True, help="gf2matrix file: graph incidence matrix")
        sp.add_argument("--P", required=True, help="gf2matrix file: perturbation")
        randomized(sp, contraction=True, matching=True)

    sp = add("evencut-set", cmd_evencut_set, "minimum (T_1..T_t)-even cut")
    sp.add_argument("file")
    randomized(sp, contraction=True)
    sp = add("evencut-dim", cmd_evencut_dim, "minimum cocycle of a dimensional even-cut instance")
    sp.add_argument("file")
    randomized(sp, contraction=True)

    sp = add("paritymatch", cmd_paritymatch, "minimum-weight perfect matching of given parity")
    sp.add_argument("file")
    randomized(sp, matching=True)
    sp = add("parityjoin", cmd_parityjoin, "minimum T-join of given parity")
    sp.add_argument("file")
    randomized(sp, matching=True)
    sp = add("paritywalk", cmd_paritywalk, "shortest walk of given parity")
    sp.add_argument("file")
    sp.add_argument("--u", type=int, required=True)
    sp.add_argument("--v", type=int, required=True)
    sp = add("paritycycle", cmd_paritycycle, "smallest cycle of given parity")
    sp.add_argument("file")

    sp = add("pfaffian", cmd_pfaffian, "Pfaffian of a skew matrix over the group ring")
    sp.add_argument("file")
    sp.add_argument("--method", choices=["dag", "naive"], default="dag")

    sp = add("oracle", cmd_oracle, "exhaustive girth or cogirth of A + P")
    sp.add_argument("quantity", choices=["girth", "cogirth"])
    sp.add_argument("--A", required=True)
    sp.add_argument("--P", required=True)

    sp = add("gen", cmd_gen, "write a random instance")
    sp.add_argument("kind", choices=["perturbed", "evencut-set", "evencut-dim", "matching", "parity", "skewmatrix"])
    sp.add_argument("--r", type=_positive, default=6, help="rows / vertices (perturbed)")
    sp.add_argument("--n", type=_natural, default=8, help="columns (perturbed) or vertices (others)")
    sp.add_argument("--m", type=_natural, default=None, help="edges (default 2n)")
    sp.add_argument("--t", type=_natural, default=1)
    sp.add_argument("--k", type=_natural, default=2, help="terminals (parity)")
    sp.add_argument("--wmax", type=_natural, default=5, help="largest weight (matching)")
    sp.add_argument("--out", default=None, help="output path (perturbed writes <out>.A and <out>.P)")

    sp = add("selftest", cmd_selftest, "compare every algorithm with its reference")
    sp.add_argument("--trials", type=_natural, default=20)
    sp.add_argument("--suite", action="append", choices=list(SUITES), default=None)
    sp.add_argument("--corrupt-dag", action="store_true", help="use a deliberately wrong Pfaffian digraph")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, gf2.OracleSizeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
