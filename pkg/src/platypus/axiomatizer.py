"""Rule synthesis for two-valued Nmatrices.

Each deterministic cell ``c(x1..xk) = {b}`` yields one rule.  Its premises
are the ``p_i`` with ``x_i = 1`` and its conclusions the ``p_i`` with
``x_i = 0``.  The formula ``c(p1..pk)`` joins the premises when ``b = 0``
and the conclusions when ``b = 1``.  Cells equal to ``{0,1}`` say nothing
and yield no rule.
"""

from __future__ import annotations

import itertools

from .calculus import Rule, RuleSet
from .formula import App, Var
from .nmatrix import MatrixError, Nmatrix

__all__ = ["axiomatize_boolean", "NotBooleanError"]


class NotBooleanError(MatrixError):
    pass


def axiomatize_boolean(M: Nmatrix) -> RuleSet:
    if set(M.values) != {"0", "1"}:
        raise NotBooleanError("matrix is not two-valued over {0, 1}")
    if M.designated != {"1"}:
        raise NotBooleanError("designated set must be {1}")
    if M.partial:
        raise NotBooleanError("partial matrices are not supported")
    rules = []
    for conn, arity in M.signature.connectives.items():
        ps = [Var(f"p{i}") for i in range(1, arity + 1)]
        head = App(conn, ps)
        for xs in itertools.product("01", repeat=arity):
            out = M.tables[conn][xs]
            if len(out) != 1:
                continue
            ones = {p for p, x in zip(ps, xs) if x == "1"}
            zeros = {p for p, x in zip(ps, xs) if x == "0"}
            if out == {"0"}:
                ones.add(head)
            else:
                zeros.add(head)
            rules.append(Rule(f"{conn}_{''.join(xs)}", ones, zeros))
    return RuleSet(tuple(rules), M.signature)
