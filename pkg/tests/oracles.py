"""Independent brute-force oracles.

The oracles here never call the search code in ``platypus.nmatrix``: they
enumerate the full cartesian product of values over a subformula-closed
domain and filter by the table condition.
"""

import itertools

from platypus.calculus import Derivation, Node
from platypus.formula import App, Signature, Var, closure, parse_formula
from platypus.nmatrix import parse_sequent

SIG = Signature({"pl": 2, "and": 2, "or": 2, "imp": 2, "dot": 2})
PL = Signature({"pl": 2})


def F(text, sig=SIG):
    return parse_formula(text, sig)


def S(text, sig=SIG):
    return parse_sequent(text, sig)


def brute_valuations(M, domain):
    """All legal valuations over ``domain`` as dicts, by full product."""
    dom = sorted(closure(domain))
    out = []
    for vals in itertools.product(M.values, repeat=len(dom)):
        v = dict(zip(dom, vals))
        if all(
            v[f] in M.tables[f.conn][tuple(v[a] for a in f.args)]
            for f in dom
            if isinstance(f, App)
        ):
            out.append(v)
    return out


def brute_entails(M, s):
    for v in brute_valuations(M, s.formulas()):
        if all(v[g] in M.designated for g in s.premises) and not any(
            v[d] in M.designated for d in s.conclusions
        ):
            return False
    return True


_CLASSICAL = {
    "and": lambda x, y: x and y,
    "or": lambda x, y: x or y,
}


def classical_value(f, env):
    if isinstance(f, Var):
        return env[f.name]
    return _CLASSICAL[f.conn](*(classical_value(a, env) for a in f.args))


def classical_entails(s):
    """Truth-table consequence for and/or formulas, evaluated recursively."""
    names = sorted({v for f in s.formulas() for v in _vars(f)})
    for bits in itertools.product((False, True), repeat=len(names)):
        env = dict(zip(names, bits))
        if all(classical_value(g, env) for g in s.premises) and not any(
            classical_value(d, env) for d in s.conclusions
        ):
            return False
    return True


def _vars(f):
    if isinstance(f, Var):
        return {f.name}
    return set().union(*(_vars(a) for a in f.args))


# hand-built trees for the three worked derivations
p = Var("p")


def sub(**kw):
    return tuple((k, F(v)) for k, v in sorted(kw.items()))


def leaf(text):
    return Node(F(text))


LEFT = Derivation(
    frozenset({p}),
    Node(
        None,
        "r_sc",
        sub(p="p", q="p"),
        (Node(F("pl(p,p)"), "r_sc", sub(p="pl(p,p)", q="p"), (leaf("pl(pl(p,p),p)"),)),),
    ),
)

MIDDLE = Derivation(
    frozenset({F("pl(pl(p,p),p)")}),
    Node(
        None,
        "r_mc",
        sub(p="pl(p,p)", q="p"),
        (
            Node(F("pl(p,p)"), "r_mc", sub(p="p", q="p"), (leaf("p"),)),
            leaf("p"),
        ),
    ),
)

RIGHT = Derivation(
    frozenset({F("pl(and(p,q),and(q,p))")}),
    Node(
        None,
        "r_mc",
        sub(p="and(p,q)", q="and(q,p)"),
        (
            leaf("and(p,q)"),
            Node(
                F("and(q,p)"),
                "r_and1",
                sub(p="q", q="p"),
                (
                    Node(
                        F("q"),
                        "r_and2",
                        sub(p="q", q="p"),
                        (Node(F("p"), "r_and3", sub(p="p", q="q"), (leaf("and(p,q)"),)),),
                    ),
                ),
            ),
        ),
    ),
)
