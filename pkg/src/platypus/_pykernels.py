"""Pure-Python kernels; the reference the compiled twin in ``_kernels.pyx`` must match.

Both kernels work on integer encodings prepared by :mod:`platypus.nmatrix`
and :mod:`platypus.calculus`:

``first_valuation``
    Formulas ``0..n-1`` in topological order.  ``conn[i]`` is ``-1`` for a
    variable, otherwise an index into ``tab_off``; the children of formula
    ``i`` are ``args[arg_off[i]:arg_off[i+1]]`` (all ``< i``).  A table cell
    is ``tabs[tab_off[c] + sum(v_k * nvals**(arity-1-k))]``, a bitmask of
    allowed values.  ``allowed[i]`` restricts formula ``i`` further.  Returns
    the lexicographically first legal value vector (value indices tried in
    increasing order) or ``None``.

``derivable``
    Rule instances ``0..m-1`` in priority order over a universe of formula
    bits.  ``prem[k]`` and ``cmask[k]`` are premise and conclusion masks;
    the conclusion bits are listed in ``concl[c_off[k]:c_off[k+1]]``.
    Expands the branch state ``start`` by always applying the first
    applicable instance and reports whether every branch reaches ``delta``
    or is discontinued.
"""

from __future__ import annotations

__all__ = ["first_valuation", "derivable", "first_applicable"]


def first_valuation(nvals, conn, arg_off, args, tab_off, tabs, allowed):
    n = len(conn)
    if n == 0:
        return []
    vals = [0] * n
    cand = [0] * n

    def domain(i):
        c = conn[i]
        if c < 0:
            return allowed[i]
        cell = 0
        for j in range(arg_off[i], arg_off[i + 1]):
            cell = cell * nvals + vals[args[j]]
        return allowed[i] & tabs[tab_off[c] + cell]

    i = 0
    cand[0] = domain(0)
    while True:
        m = cand[i]
        if m == 0:
            i -= 1
            if i < 0:
                return None
            continue
        low = m & -m
        cand[i] = m ^ low
        vals[i] = low.bit_length() - 1
        i += 1
        if i == n:
            return vals
        cand[i] = domain(i)


def first_applicable(state, prem, cmask):
    """Index of the instance applied at ``state``, or ``-1``.

    An instance applies when its premises are all on the branch and none of
    its conclusions is (an instance adding nothing new never helps).
    """
    for k in range(len(prem)):
        if prem[k] & ~state:
            continue
        cm = cmask[k]
        if cm and cm & state:
            continue
        return k
    return -1


def derivable(prem, cmask, c_off, concl, delta, start):
    memo: dict[int, bool] = {}

    def expand(state):
        if state & delta:
            return True
        hit = memo.get(state)
        if hit is not None:
            return hit
        k = first_applicable(state, prem, cmask)
        if k < 0:
            ok = False
        else:
            ok = all(expand(state | (1 << concl[j])) for j in range(c_off[k], c_off[k + 1]))
        memo[state] = ok
        return ok

    return expand(start)
