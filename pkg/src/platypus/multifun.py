"""Boolean multi-functions and their two composition notions."""

from __future__ import annotations

import itertools
from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass

__all__ = [
    "MultiFunction",
    "platypus_mf",
    "conjunction_mf",
    "disjunction_mf",
    "identity_mf",
    "compose_liberal",
    "compose_synchronized",
    "decompose_platypus",
    "recompose",
    "all_multifunctions",
    "all_boolean_functions",
]

OUTPUTS = (frozenset({0}), frozenset({1}), frozenset({0, 1}))


def _inputs(k: int) -> list[tuple[int, ...]]:
    return list(itertools.product((0, 1), repeat=k))


@dataclass(frozen=True)
class MultiFunction:
    """A total map from ``{0,1}^arity`` to nonempty subsets of ``{0,1}``."""

    arity: int
    table: Mapping[tuple[int, ...], frozenset[int]]

    def __post_init__(self):
        table = {tuple(x): frozenset(ys) for x, ys in self.table.items()}
        for x in _inputs(self.arity):
            ys = table.get(x)
            if ys is None:
                raise ValueError(f"table missing input {x}")
            if not ys or not ys <= {0, 1}:
                raise ValueError(f"bad output {set(ys)} at {x}")
        if len(table) != 2**self.arity:
            raise ValueError("table has inputs of the wrong arity")
        object.__setattr__(self, "table", table)

    def __call__(self, *xs: int) -> frozenset[int]:
        return self.table[xs]

    def __hash__(self) -> int:
        return hash((self.arity, tuple(sorted(self.table.items()))))

    @property
    def is_function(self) -> bool:
        return all(len(ys) == 1 for ys in self.table.values())

    @classmethod
    def from_callable(cls, arity: int, fn) -> MultiFunction:
        return cls(arity, {x: frozenset(fn(*x)) for x in _inputs(arity)})

    @classmethod
    def from_function(cls, arity: int, fn) -> MultiFunction:
        """Lift a Boolean function returning 0/1."""
        return cls(arity, {x: frozenset({fn(*x)}) for x in _inputs(arity)})


def platypus_mf() -> MultiFunction:
    return MultiFunction.from_callable(2, lambda x, y: {x & y, x | y})


def conjunction_mf() -> MultiFunction:
    return MultiFunction.from_function(2, lambda x, y: x & y)


def disjunction_mf() -> MultiFunction:
    return MultiFunction.from_function(2, lambda x, y: x | y)


def identity_mf() -> MultiFunction:
    return MultiFunction.from_function(1, lambda x: x)


def _check_wiring(
    f: MultiFunction,
    gs: Sequence[MultiFunction],
    wiring: Sequence[Sequence[int]],
    arity: int | None,
) -> int:
    if len(gs) != f.arity:
        raise ValueError(f"outer arity {f.arity} but {len(gs)} inner functions")
    if len(wiring) != len(gs):
        raise ValueError("one wiring entry is needed per inner function")
    for g, slots in zip(gs, wiring):
        if len(slots) != g.arity:
            raise ValueError(f"inner function of arity {g.arity} wired to {len(slots)} slots")
    used = [i for slots in wiring for i in slots]
    if arity is None:
        arity = max(used, default=-1) + 1
    if any(i < 0 or i >= arity for i in used):
        raise ValueError("wiring refers to a slot outside the input range")
    return arity


def compose_liberal(
    f: MultiFunction,
    gs: Sequence[MultiFunction],
    wiring: Sequence[Sequence[int]],
    arity: int | None = None,
) -> MultiFunction:
    """Relational composition: every choice of inner outputs is fed to ``f``.

    ``wiring[i]`` lists the global input slots read by ``gs[i]``; ``arity``
    defaults to one past the largest slot used.
    """
    n = _check_wiring(f, gs, wiring, arity)
    table = {}
    for x in _inputs(n):
        choices = [g.table[tuple(x[j] for j in slots)] for g, slots in zip(gs, wiring)]
        out: set[int] = set()
        for ys in itertools.product(*choices):
            out |= f.table[ys]
        table[x] = frozenset(out)
    return MultiFunction(n, table)


def compose_synchronized(
    f: MultiFunction,
    gs: Sequence[MultiFunction],
    wiring: Sequence[Sequence[int]],
    arity: int | None = None,
) -> MultiFunction:
    """Like :func:`compose_liberal`, but slots fed by the same inner term agree.

    Two slots hold the same term when they use the very same inner object
    (identity, not table equality) over the same input slots.
    """
    n = _check_wiring(f, gs, wiring, arity)
    classes: list[int] = []
    reps: list[int] = []
    for i, (g, slots) in enumerate(zip(gs, wiring)):
        for c, r in enumerate(reps):
            if gs[r] is g and tuple(wiring[r]) == tuple(slots):
                classes.append(c)
                break
        else:
            classes.append(len(reps))
            reps.append(i)
    table = {}
    for x in _inputs(n):
        choices = [gs[r].table[tuple(x[j] for j in wiring[r])] for r in reps]
        out: set[int] = set()
        for picked in itertools.product(*choices):
            out |= f.table[tuple(picked[c] for c in classes)]
        table[x] = frozenset(out)
    return MultiFunction(n, table)


def decompose_platypus(f: MultiFunction) -> tuple[MultiFunction, MultiFunction]:
    """Boolean functions ``(g0, g1)`` with ``f`` equal to platypus of the pair.

    Where ``f`` is non-deterministic, ``g_i`` answers ``i``; elsewhere both
    copy ``f``.
    """
    halves = []
    for i in (0, 1):
        halves.append(
            MultiFunction(
                f.arity,
                {x: (frozenset({i}) if len(ys) == 2 else ys) for x, ys in f.table.items()},
            )
        )
    return halves[0], halves[1]


def recompose(g0: MultiFunction, g1: MultiFunction) -> MultiFunction:
    if g0.arity != g1.arity:
        raise ValueError(f"arity mismatch: {g0.arity} vs {g1.arity}")
    return MultiFunction(g0.arity, {x: g0.table[x] | g1.table[x] for x in g0.table})


def all_multifunctions(arity: int) -> Iterator[MultiFunction]:
    xs = _inputs(arity)
    for outs in itertools.product(OUTPUTS, repeat=len(xs)):
        yield MultiFunction(arity, dict(zip(xs, outs)))


def all_boolean_functions(arity: int) -> Iterator[MultiFunction]:
    xs = _inputs(arity)
    for outs in itertools.product(OUTPUTS[:2], repeat=len(xs)):
        yield MultiFunction(arity, dict(zip(xs, outs)))
