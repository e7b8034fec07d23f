"""Polynomial decision of the single-conclusion platypus logic.

In the two-valued platypus matrix ``pl`` always takes the value of one of
its arguments.  A countermodel to ``G |- f`` therefore comes with a
descending path from ``f`` to a variable along which every formula is 0,
and every formula built with ``pl`` from that path is 0 as well.  Labelling
everything else 1 is always legal, so ``G`` derives ``f`` exactly when every
such path builds some premise.  A path is one variable occurrence of ``f``,
so the check is polynomial in the written size of the input.

Being built with ``pl`` from the normal forms of ``G`` is sufficient but
not necessary: ``pl(p,pl(p,q)), q`` derives ``pl(p,q)`` without it.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator

from .formula import App, Formula, Var

__all__ = [
    "ForeignConnectiveError",
    "nf",
    "in_language_of",
    "decide_sc",
    "tower",
    "phi_family",
]

PL = "pl"


class ForeignConnectiveError(ValueError):
    pass


def _check(f: Formula) -> None:
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, App):
            if g.conn != PL or len(g.args) != 2:
                raise ForeignConnectiveError(f"{g} is not in the pl-only language")
            stack.extend(g.args)


def nf(f: Formula) -> Formula:
    """Smallest subformula from which ``f`` is built using ``pl`` alone."""
    _check(f)
    memo: dict[Formula, Formula] = {}

    def go(g: Formula) -> Formula:
        if isinstance(g, Var):
            return g
        hit = memo.get(g)
        if hit is None:
            a, b = (go(x) for x in g.args)
            hit = memo[g] = a if a == b else g
        return hit

    return go(f)


def _member(f: Formula, base: set[Formula], memo: dict[Formula, bool]) -> bool:
    if f in base:
        return True
    if isinstance(f, Var):
        return False
    hit = memo.get(f)
    if hit is None:
        hit = memo[f] = _member(f.args[0], base, memo) and _member(f.args[1], base, memo)
    return hit


def in_language_of(f: Formula, S: Iterable[Formula]) -> bool:
    """Whether ``f`` belongs to the closure of ``S`` under ``pl``."""
    _check(f)
    base = set(S)
    for g in base:
        _check(g)
    return _member(f, base, {})


def _children(g: Formula) -> tuple[Formula, ...]:
    if isinstance(g, Var):
        return ()
    a, b = g.args
    return (a,) if a == b else (a, b)


def _descents(f: Formula) -> Iterator[list[Formula]]:
    """Every path from ``f`` down to a variable occurrence."""
    path = [f]
    stack = [iter(_children(f))]
    while stack:
        if isinstance(path[-1], Var):
            yield path
        nxt = next(stack[-1], None)
        if nxt is None:
            stack.pop()
            path.pop()
        else:
            path.append(nxt)
            stack.append(iter(_children(nxt)))


def decide_sc(gamma: Iterable[Formula], f: Formula) -> bool:
    """Whether ``gamma`` derives ``f`` in the single-conclusion logic."""
    _check(f)
    premises = set(gamma)
    for g in premises:
        _check(g)
    if _member(f, {nf(g) for g in premises}, {}):
        return True
    for path in _descents(f):
        base = set(path)
        memo: dict[Formula, bool] = {}
        if not any(_member(g, base, memo) for g in premises):
            return False
    return True


def tower(n: int, f: Formula) -> Formula:
    """``f`` for ``n = 0``, else ``pl(tower(n-1, f), f)``."""
    if n < 0:
        raise ValueError("tower height must be non-negative")
    out = f
    for _ in range(n):
        out = App(PL, (out, f))
    return out


def phi_family(n: int) -> Formula:
    return App(PL, (tower(n, Var("p")), Var("q")))
