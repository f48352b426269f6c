"""Randomized agreement checks between the algorithms and the slow references."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import gf2, oracles, seeding
from .evencut import evencut_matroid, set_min_even_cut, solve_evencut
from .generate import (
    perturbed_instance,
    random_dim_evencut,
    random_matching_instance,
    random_multigraph,
    random_parities,
    random_scalar_skew,
    random_set_evencut,
    random_skew_matrix,
)
from .parityjoin import parity_cycle, parity_join, parity_walk
from .pfaffian import DEFAULT_RULES, DagRules, SkewRingMatrix, build_dag, pfaffian_dag, pfaffian_naive
from .pfaffian.matching import brute_force_matching, parity_matching
from .pfaffian.ring import GroupRingPoly
from .pipeline import SolverConfig, cogirth_perturbed, girth_perturbed, validate_cocycle


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: int
    total: int

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    def line(self) -> str:
        return f"suite {self.name}: {self.passed}/{self.total} {'PASS' if self.ok else 'FAIL'}"


def _girth(rng: np.random.Generator, seed: int, _rules) -> bool:
    r = int(rng.integers(2, 9))
    m = int(rng.integers(max(r - 1, 1), 13))
    t = min(int(rng.integers(0, 3)), r, m)
    a, p = perturbed_instance(rng, r, m, t)
    return girth_perturbed(a, p, SolverConfig(seed=seed)) == gf2.girth_oracle(a + p)


def _cogirth(rng: np.random.Generator, seed: int, _rules) -> bool:
    r = int(rng.integers(2, 9))
    m = int(rng.integers(max(r - 1, 1), 13))
    t = min(int(rng.integers(0, 3)), r, m)
    a, p = perturbed_instance(rng, r, m, t)
    res = cogirth_perturbed(a, p, SolverConfig(seed=seed))
    if res.value != gf2.cogirth_oracle(a + p):
        return False
    return res.value == gf2.INFINITY or validate_cocycle(a, p, res.witness, res.value)


def _pfaffian(rng: np.random.Generator, _seed: int, rules: DagRules) -> bool:
    n = int(rng.choice([2, 4, 6, 8]))
    t = int(rng.integers(0, 3))
    d = random_skew_matrix(rng, n, t)
    if pfaffian_dag(d, rules) != pfaffian_naive(d):
        return False
    rows = random_scalar_skew(rng, n)
    sd = SkewRingMatrix.from_rows(rows)
    pf = pfaffian_dag(sd, rules)
    return pf * pf == GroupRingPoly.scalar(0, oracles.integer_determinant(rows))


def _dag_structure(rng: np.random.Generator, _seed: int, rules: DagRules) -> bool:
    n = int(rng.choice([2, 4, 6, 8]))
    dag = build_dag(n, rules)
    return (
        dag.num_vertices == 2 * n**3 + 3
        and dag.max_in_degree() <= n
        and dag.is_acyclic()
        and dag.longest_path() <= n + 1
        and dag.weights_valid()
    )


def _matching(rng: np.random.Generator, _seed: int, _rules) -> bool:
    n = 2 * int(rng.integers(1, 5))
    inst = random_matching_instance(rng, n, int(rng.integers(n // 2, 3 * n)), int(rng.integers(0, 3)))
    return parity_matching(inst, 2, 20, rng) == brute_force_matching(inst)


def _evencut(rng: np.random.Generator, _seed: int, _rules) -> bool:
    n = int(rng.integers(2, 9))
    t = int(rng.integers(0, 3))
    inst = random_dim_evencut(rng, n, int(rng.integers(n - 1, 2 * n + 2)), t, connected=bool(rng.random() < 0.7))
    res = solve_evencut(inst, 1, seeding.root(int(rng.integers(1 << 32))))
    expect = gf2.cogirth_oracle(evencut_matroid(inst))
    if (res.size if res is not None else gf2.INFINITY) != expect:
        return False
    sinst = random_set_evencut(rng, n, int(rng.integers(n - 1, 2 * n + 2)), t)
    want = oracles.min_even_cut_set(sinst.graph, sinst.terminals)
    if want == gf2.INFINITY:
        return True
    got = set_min_even_cut(sinst, 1, rng)
    return got.size == want


def _join(rng: np.random.Generator, _seed: int, _rules) -> bool:
    n = int(rng.integers(2, 9))
    g = random_multigraph(rng, n, int(rng.integers(n - 1, 17)), connected=bool(rng.random() < 0.7))
    t = int(rng.integers(0, 3))
    gamma = random_parities(rng, g, t)
    k = int(rng.choice([0, 2, 4, 6]))
    k = min(k, n - n % 2)
    terms = [int(v) + 1 for v in rng.choice(n, size=k, replace=False)]
    alpha = int(rng.integers(0, 1 << t))
    got = parity_join(g, gamma, t, terms, alpha, 2, 20, rng)
    want = oracles.min_join(g, gamma, terms, alpha)
    return got == want and (got == gf2.INFINITY or got <= (1 << t) * n)


def _walk_cycle(rng: np.random.Generator, _seed: int, _rules) -> bool:
    n = int(rng.integers(1, 9))
    g = random_multigraph(rng, n, int(rng.integers(max(n - 1, 0), 15)), connected=bool(rng.random() < 0.7))
    t = int(rng.integers(0, 3))
    gamma = random_parities(rng, g, t)
    alpha = int(rng.integers(0, 1 << t))
    u, v = (int(x) for x in rng.integers(1, n + 1, size=2))
    if parity_walk(g, gamma, t, alpha, u, v) != oracles.walk_lengths_by_layers(g, gamma, t, alpha, u, v):
        return False
    return parity_cycle(g, gamma, t, alpha) == oracles.min_parity_cycle(g, gamma, alpha)


SUITES: dict[str, Callable] = {
    "girth": _girth,
    "cogirth": _cogirth,
    "pfaffian": _pfaffian,
    "dag-structure": _dag_structure,
    "matching": _matching,
    "evencut": _evencut,
    "join": _join,
    "walk-cycle": _walk_cycle,
}


def run_selftest(
    trials: int, seed: int = 0, rules: DagRules = DEFAULT_RULES, suites: list[str] | None = None
) -> list[SuiteResult]:
    """Run ``trials`` random checks per suite; ``trials == 0`` gives an empty report."""
    if trials < 0:
        raise ValueError("trials must be non-negative")
    if trials == 0:
        return []
    names = list(SUITES) if suites is None else suites
    root = seeding.root(seed)
    report = []
    for k, name in enumerate(SUITES):
        if name not in names:
            continue
        check = SUITES[name]
        passed = 0
        for i in range(trials):
            ss = seeding.child(root, k, i)
            rng = seeding.generator(ss)
            sub_seed = int(ss.generate_state(1, dtype=np.uint64)[0])
            if check(rng, sub_seed, rules):
                passed += 1
        report.append(SuiteResult(name, passed, trials))
    return report


__all__ = ["SUITES", "SuiteResult", "run_selftest"]
