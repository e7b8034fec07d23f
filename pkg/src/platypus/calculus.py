"""Multiple-conclusion Hilbert calculi: rules, derivation trees and proof search.

A derivation starts from the premise set.  Applying a rule instance at a node
gives one child per instantiated conclusion, and each child extends the
branch by that formula.  An instance with no conclusions closes its branch
(the single child is marked discontinued).  A derivation proves ``G |- D``
when every branch that is not discontinued contains a member of ``D``.

Proof search stays inside the universe ``U`` of subformulas of the sequent
(plus optional generators).  A rule set may also name one-variable analytic
schemas such as ``dot(p,p)``; then ``U`` additionally holds every instance
``dot(f,f)`` for ``f`` a subformula.  Calculi synthesized through a separating
set are analytic only in this widened sense.  Whether a branch state can be closed is
monotone in the state.  So at every state any applicable instance can be
applied without losing completeness.  The search applies the first one in a
fixed priority order and never backtracks over that choice.
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field

from . import kernels
from .formula import (
    App,
    Formula,
    Signature,
    closure,
    formula_key,
    match_schema,
    parse_formula_list,
    sort_formulas,
    substitute,
    variables,
)
from .nmatrix import Entailment, Nmatrix, Sequent, entails, format_sequent

__all__ = [
    "RuleError",
    "DerivationError",
    "Rule",
    "RuleSet",
    "Instance",
    "Node",
    "Derivation",
    "CheckResult",
    "parse_rules",
    "format_rules",
    "builtin_rules",
    "BUILTIN_RULESETS",
    "check_soundness",
    "instances",
    "analytic_universe",
    "check_derivation",
    "prove",
    "decide_mc",
    "format_derivation",
]


class RuleError(ValueError):
    pass


class DerivationError(ValueError):
    pass


@dataclass(frozen=True)
class Rule:
    name: str
    premises: frozenset[Formula]
    conclusions: frozenset[Formula] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "premises", frozenset(self.premises))
        object.__setattr__(self, "conclusions", frozenset(self.conclusions))

    @property
    def variables(self) -> frozenset[str]:
        return frozenset().union(*(variables(f) for f in self.premises | self.conclusions))

    def __str__(self) -> str:
        return f"rule {self.name} : {format_sequent(Sequent(self.premises, self.conclusions))}"


@dataclass(frozen=True)
class RuleSet:
    rules: tuple[Rule, ...]
    signature: Signature = field(default_factory=Signature)
    analytic: tuple[Formula, ...] = ()

    def __post_init__(self):
        analytic = tuple(sort_formulas(set(self.analytic)))
        for f in analytic:
            if not variables(f) <= {"p"}:
                raise RuleError(f"analytic schema {f} must use the variable p only")
        object.__setattr__(self, "analytic", analytic)
        rules = tuple(self.rules)
        names = [r.name for r in rules]
        dup = {n for n in names if names.count(n) > 1}
        if dup:
            raise RuleError(f"duplicate rule name {sorted(dup)[0]!r}")
        object.__setattr__(self, "rules", rules)

    def __iter__(self) -> Iterator[Rule]:
        return iter(self.rules)

    def __len__(self) -> int:
        return len(self.rules)

    def __getitem__(self, name: str) -> Rule:
        for r in self.rules:
            if r.name == name:
                return r
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(r.name == name for r in self.rules)

    def __or__(self, other: RuleSet) -> RuleSet:
        return RuleSet(
            self.rules + other.rules,
            self.signature.union(other.signature),
            self.analytic + other.analytic,
        )

    def __str__(self) -> str:
        return format_rules(self)


def parse_rules(text: str, sig: Signature) -> RuleSet:
    """Read lines ``rule NAME : f1, f2 |- g1, g2``; ``#`` starts a comment.

    An optional line ``analytic: dot(p,p), ...`` declares analytic schemas.
    """
    rules = []
    analytic: list[Formula] = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, colon, body = line.partition(":")
        parts = head.split()
        if colon and parts == ["analytic"]:
            try:
                analytic += parse_formula_list(body, sig)
            except ValueError as exc:
                raise RuleError(f"line {lineno}: {exc}") from exc
            continue
        if not colon or len(parts) != 2 or parts[0] != "rule":
            raise RuleError(f"line {lineno}: expected 'rule NAME : premises |- conclusions'")
        name = parts[1]
        if name in seen:
            raise RuleError(f"line {lineno}: duplicate rule name {name!r}")
        seen.add(name)
        left, sep, right = body.partition("|-")
        if not sep:
            raise RuleError(f"line {lineno}: missing '|-'")
        try:
            prem = parse_formula_list(left, sig)
            concl = parse_formula_list(right, sig)
        except ValueError as exc:
            raise RuleError(f"line {lineno}: {exc}") from exc
        rules.append(Rule(name, prem, concl))
    return RuleSet(tuple(rules), sig, tuple(analytic))


def format_rules(R: RuleSet) -> str:
    head = f"analytic: {', '.join(map(str, R.analytic))}\n" if R.analytic else ""
    return head + "".join(f"{r}\n" for r in R)


# -- bundled calculi -------------------------------------------------------

_BINARY = Signature({"pl": 2, "and": 2, "or": 2, "imp": 2, "dot": 2})

_R_PL = """
rule r_sc : p, q |- pl(p,q)
rule r_mc : pl(p,q) |- p, q
"""
_R_SC_AND = """
rule r_and1 : and(p,q) |- p
rule r_and2 : and(p,q) |- q
rule r_and3 : p, q |- and(p,q)
"""
_R_SC_OR = """
rule r_or1 : p |- or(p,q)
rule r_or2 : or(p,p) |- p
rule r_or3 : or(p,q) |- or(q,p)
rule r_or4 : or(p,or(q,r)) |- or(or(p,q),r)
"""
_R_SC_AND_OR_MIX = """
rule r_dist1 : or(p,q), or(p,r) |- or(p,and(q,r))
rule r_dist2 : or(p,and(q,r)) |- or(p,q)
rule r_dist3 : or(p,and(q,r)) |- or(p,r)
"""
_R_MC_OR = """
rule r_or_l : p |- or(p,q)
rule r_or_r : q |- or(p,q)
rule r_or_mc : or(p,q) |- p, q
"""
_R_MP = """
rule mp : p, imp(p,q) |- q
"""
_R_WRONSKI6 = """
analytic: dot(p,p)
rule w1 : |- dot(dot(p,q),dot(p,q))
rule w2 : q |- dot(p,q)
rule w3 : dot(q,q) |- q, dot(p,q)
rule w4 : dot(p,p) |- p, dot(p,q)
rule w5 : p, dot(p,q) |- dot(q,q)
rule w6 : dot(p,q) |- dot(p,p), dot(q,q)
"""


def _rs(*texts: str, conns: Iterable[str]) -> RuleSet:
    sig = _BINARY.restrict(conns)
    parsed = [parse_rules(t, sig) for t in texts]
    return RuleSet(
        tuple(r for R in parsed for r in R),
        sig,
        tuple(f for R in parsed for f in R.analytic),
    )


BUILTIN_RULESETS = {
    "R_pl": lambda: _rs(_R_PL, conns=["pl"]),
    "R_sc_and": lambda: _rs(_R_SC_AND, conns=["and"]),
    "R_sc_or": lambda: _rs(_R_SC_OR, conns=["or"]),
    "R_sc_and_or": lambda: _rs(_R_SC_AND, _R_SC_OR, _R_SC_AND_OR_MIX, conns=["and", "or"]),
    "R_mc_or": lambda: _rs(_R_MC_OR, conns=["or"]),
    "R_mp": lambda: _rs(_R_MP, conns=["imp"]),
    "R_wronski6": lambda: _rs(_R_WRONSKI6, conns=["dot"]),
    "R_and_pl": lambda: _rs(_R_SC_AND, _R_PL, conns=["and", "pl"]),
    "R_or_pl": lambda: _rs(_R_MC_OR, _R_PL, conns=["or", "pl"]),
    "R_and_or_pl": lambda: _rs(_R_SC_AND, _R_MC_OR, _R_PL, conns=["and", "or", "pl"]),
}


def builtin_rules(name: str) -> RuleSet:
    try:
        return BUILTIN_RULESETS[name]()
    except KeyError:
        raise RuleError(f"unknown builtin rule set {name!r}") from None


def check_soundness(M: Nmatrix, r: Rule) -> Entailment:
    """A schematic rule is sound iff its own premises entail its conclusions."""
    return entails(M, Sequent(r.premises, r.conclusions))


# -- instances -------------------------------------------------------------


@dataclass(frozen=True)
class Instance:
    rule: str
    substitution: tuple[tuple[str, Formula], ...]
    premises: frozenset[Formula]
    conclusions: tuple[Formula, ...]

    @property
    def priority(self) -> int:
        return min(len(self.conclusions), 2)


def _rule_instances(rule: Rule, universe: frozenset[Formula], by_conn) -> list[Instance]:
    schemas = sorted(rule.premises | rule.conclusions, key=lambda f: (-f.size, str(f)))
    svars = [variables(s) for s in schemas]
    rvars = sorted(rule.variables)
    found: list[dict[str, Formula]] = []

    def rec(i: int, binding: dict[str, Formula]) -> None:
        if i == len(schemas):
            found.append(binding)
            return
        pat = schemas[i]
        if svars[i] <= binding.keys():
            if substitute(pat, binding) in universe:
                rec(i + 1, binding)
            return
        pool = by_conn[pat.conn] if isinstance(pat, App) else universe
        for target in pool:
            m = match_schema(pat, target, binding)
            if m is not None:
                rec(i + 1, m)

    rec(0, {})
    found.sort(key=lambda b: [formula_key(b[v]) for v in rvars])
    out, seen = [], set()
    for b in found:
        prem = frozenset(substitute(f, b) for f in rule.premises)
        concl = tuple(sort_formulas({substitute(f, b) for f in rule.conclusions}))
        if (prem, concl) in seen:
            continue
        seen.add((prem, concl))
        out.append(Instance(rule.name, tuple((v, b[v]) for v in rvars), prem, concl))
    return out


def instances(R: RuleSet, universe: Iterable[Formula]) -> list[Instance]:
    """All instances with every premise and conclusion inside ``universe``.

    Order: closing instances (no conclusions) first, then single-conclusion
    ones, then branching ones; ties by rule declaration order and then by
    the canonical order of the substitution.
    """
    universe = frozenset(universe)
    by_conn: dict[str, list[Formula]] = defaultdict(list)
    for f in sort_formulas(universe):
        if isinstance(f, App):
            by_conn[f.conn].append(f)
    per_rule = [_rule_instances(r, universe, by_conn) for r in R]
    ordered = []
    for prio in (0, 1, 2):
        for insts in per_rule:
            ordered.extend(i for i in insts if i.priority == prio)
    return ordered


def analytic_universe(
    R: RuleSet, s: Sequent, generators: Iterable[Formula] = ()
) -> frozenset[Formula]:
    """Formulas a derivation of ``s`` may use: subformulas, generators and
    the analytic schemas of ``R`` applied to each of them."""
    base = closure(s.formulas() | frozenset(generators))
    extra = {substitute(t, {"p": f}) for t in R.analytic for f in base}
    return closure(base | extra)


class _Problem:
    """Bit encoding of a search problem over the universe."""

    def __init__(self, R: RuleSet, s: Sequent, generators: Iterable[Formula] = ()):
        self.universe = sort_formulas(analytic_universe(R, s, generators))
        self.bit = {f: i for i, f in enumerate(self.universe)}
        self.insts = instances(R, self.universe)
        self.prem, self.cmask, self.c_off, self.concl = [], [], [0], []
        for inst in self.insts:
            self.prem.append(self.mask(inst.premises))
            self.cmask.append(self.mask(inst.conclusions))
            self.concl.extend(self.bit[c] for c in inst.conclusions)
            self.c_off.append(len(self.concl))
        self.delta = self.mask(s.conclusions)
        self.start = self.mask(s.premises)

    def mask(self, fs: Iterable[Formula]) -> int:
        m = 0
        for f in fs:
            m |= 1 << self.bit[f]
        return m

    def derivable(self) -> bool:
        return kernels.derivable(
            self.prem, self.cmask, self.c_off, self.concl, self.delta, self.start,
            len(self.universe),
        )


# -- derivations -----------------------------------------------------------


@dataclass(frozen=True)
class Node:
    """``label`` is ``None`` at the root and at discontinued markers."""

    label: Formula | None = None
    rule: str | None = None
    substitution: tuple[tuple[str, Formula], ...] = ()
    children: tuple[Node, ...] = ()
    discontinued: bool = False


@dataclass(frozen=True)
class Derivation:
    premises: frozenset[Formula]
    root: Node

    def __str__(self) -> str:
        return format_derivation(self)

    def nodes(self) -> Iterator[Node]:
        stack = [self.root]
        while stack:
            n = stack.pop()
            yield n
            stack.extend(reversed(n.children))

    @property
    def applications(self) -> int:
        return sum(1 for n in self.nodes() if n.rule is not None)


def prove(R: RuleSet, s: Sequent, generators: Iterable[Formula] = ()) -> Derivation | None:
    """First derivation of ``s`` found inside the analytic universe, or ``None``.

    ``None`` means no derivation exists whose formulas all lie in
    :func:`analytic_universe`.
    """
    prob = _Problem(R, s, generators)
    if not prob.derivable():
        return None

    def build(state: int, label: Formula | None) -> Node:
        if state & prob.delta:
            return Node(label)
        k = kernels.first_applicable(state, prob.prem, prob.cmask)
        inst = prob.insts[k]
        if inst.conclusions:
            kids = tuple(build(state | (1 << prob.bit[c]), c) for c in inst.conclusions)
        else:
            kids = (Node(discontinued=True),)
        return Node(label, inst.rule, inst.substitution, kids)

    return Derivation(s.premises, build(prob.start, None))


def decide_mc(R: RuleSet, s: Sequent, generators: Iterable[Formula] = ()) -> bool:
    if s.premises & s.conclusions:
        return True
    return _Problem(R, s, generators).derivable()


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    violation: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_derivation(R: RuleSet, s: Sequent, d: Derivation) -> CheckResult:
    """Validate ``d`` as a derivation of ``s`` in ``R``.

    Returns the first violated derivation condition.  Raises
    :class:`DerivationError` for a rule name missing from ``R`` or a node
    whose children do not match its instantiated conclusions.
    """
    if not d.premises <= s.premises:
        extra = sort_formulas(d.premises - s.premises)
        return CheckResult(False, f"derivation starts from {extra[0]}, not a premise")
    if d.root.label is not None or d.root.discontinued:
        raise DerivationError("the root must be an unlabeled node")
    stack: list[tuple[Node, frozenset[Formula], str]] = [(d.root, d.premises, "root")]
    while stack:
        node, branch, where = stack.pop()
        if node.rule is None:
            if node.children:
                raise DerivationError(f"{where}: children without a rule application")
            if node.discontinued:
                continue
            if not branch & s.conclusions:
                return CheckResult(False, f"{where}: branch ends without reaching a conclusion")
            continue
        if node.rule not in R:
            raise DerivationError(f"{where}: unknown rule {node.rule!r}")
        rule = R[node.rule]
        sub = dict(node.substitution)
        for f in sort_formulas(rule.premises):
            g = substitute(f, sub)
            if g not in branch:
                return CheckResult(
                    False, f"{where}: premise {g} of {rule.name} is not on the branch"
                )
        concl = {substitute(f, sub) for f in rule.conclusions}
        if not concl:
            if len(node.children) != 1 or not node.children[0].discontinued:
                raise DerivationError(f"{where}: {rule.name} has no conclusions; expected one discontinued child")
            continue
        labels = [c.label for c in node.children]
        if len(labels) != len(concl) or set(labels) != concl:
            raise DerivationError(
                f"{where}: children {[str(x) for x in labels]} do not match the "
                f"conclusions {[str(x) for x in sort_formulas(concl)]} of {rule.name}"
            )
        for c in reversed(node.children):
            stack.append((c, branch | {c.label}, f"node {c.label}"))
    return CheckResult(True)


def _subst_text(sub: Iterable[tuple[str, Formula]]) -> str:
    return ", ".join(f"{v}:={f}" for v, f in sub)


def format_derivation(d: Derivation) -> str:
    lines = []

    def emit(node: Node, depth: int) -> None:
        pad = "  " * depth
        if node.discontinued:
            lines.append(f"{pad}* discontinued")
            return
        if node.label is None:
            text = "premises: " + ", ".join(map(str, sort_formulas(d.premises)))
        else:
            text = str(node.label)
        if node.rule is not None:
            text += f"  [{node.rule} @ {_subst_text(node.substitution)}]"
        lines.append(pad + text)
        for c in node.children:
            emit(c, depth + 1)

    emit(d.root, 0)
    return "\n".join(lines) + "\n"
