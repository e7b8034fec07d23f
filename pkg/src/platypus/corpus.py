"""Exhaustive and random generators of formulas, sequents and 3-CNF instances."""

from __future__ import annotations

import itertools
import random
from collections.abc import Iterator, Sequence

from .formula import App, Formula, Signature, Var, sort_formulas
from .nmatrix import Sequent
from .sat import Cnf

__all__ = [
    "formulas_up_to_depth",
    "subsets_up_to",
    "sequents",
    "random_formula",
    "random_sequent",
    "random_cnf",
]


def formulas_up_to_depth(sig: Signature, names: Sequence[str], depth: int) -> list[Formula]:
    """Every formula over ``names`` of depth at most ``depth``, canonically sorted."""
    level: set[Formula] = {Var(n) for n in names}
    level |= {App(c) for c, k in sig.connectives.items() if k == 0}
    for _ in range(depth):
        pool = list(level)
        nxt = set(level)
        for c, k in sig.connectives.items():
            if k:
                nxt.update(App(c, args) for args in itertools.product(pool, repeat=k))
        level = nxt
    return sort_formulas(level)


def subsets_up_to(fs: Sequence[Formula], k: int) -> list[frozenset[Formula]]:
    return [frozenset(c) for r in range(k + 1) for c in itertools.combinations(fs, r)]


def sequents(
    left: Sequence[Formula],
    max_left: int,
    max_right: int,
    right: Sequence[Formula] | None = None,
) -> Iterator[Sequent]:
    rights = subsets_up_to(left if right is None else right, max_right)
    for g in subsets_up_to(left, max_left):
        for d in rights:
            yield Sequent(g, d)


def random_formula(
    rng: random.Random, sig: Signature, names: Sequence[str], max_depth: int
) -> Formula:
    conns = [c for c, k in sig.connectives.items() if k]
    if max_depth == 0 or not conns or rng.random() < 0.3:
        return Var(rng.choice(names))
    c = rng.choice(conns)
    return App(c, [random_formula(rng, sig, names, max_depth - 1) for _ in range(sig.arity(c))])


def random_sequent(
    rng: random.Random,
    sig: Signature,
    names: Sequence[str],
    max_depth: int,
    max_left: int,
    max_right: int,
) -> Sequent:
    g = [random_formula(rng, sig, names, max_depth) for _ in range(rng.randint(0, max_left))]
    d = [random_formula(rng, sig, names, max_depth) for _ in range(rng.randint(0, max_right))]
    return Sequent(g, d)


def random_cnf(rng: random.Random, num_vars: int, num_clauses: int) -> Cnf:
    clauses = []
    for _ in range(num_clauses):
        clauses.append(
            tuple(rng.randint(1, num_vars) * rng.choice((1, -1)) for _ in range(3))
        )
    return Cnf(num_vars, tuple(clauses))
