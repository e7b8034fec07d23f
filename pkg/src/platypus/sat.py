"""3-CNF instances and their reduction to platypus non-entailment."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .formula import App, Formula, Var
from .nmatrix import Sequent

__all__ = ["DimacsError", "Cnf", "parse_dimacs", "format_dimacs", "sat_to_sequent", "sat_oracle"]

ORACLE_LIMIT = 24


class DimacsError(ValueError):
    pass


@dataclass(frozen=True)
class Cnf:
    num_vars: int
    clauses: tuple[tuple[int, int, int], ...] = ()

    def __post_init__(self):
        if self.num_vars < 1:
            raise DimacsError("variable count must be positive")
        clauses = tuple(tuple(c) for c in self.clauses)
        for c in clauses:
            if len(c) != 3:
                raise DimacsError(f"clause {c} does not have exactly 3 literals")
            for lit in c:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise DimacsError(f"literal {lit} out of range 1..{self.num_vars}")
        object.__setattr__(self, "clauses", clauses)

    @property
    def variables(self) -> list[int]:
        return sorted({abs(lit) for c in self.clauses for lit in c})


def parse_dimacs(text: str) -> Cnf:
    """Read DIMACS CNF; clauses shorter than 3 repeat their last literal."""
    header = None
    clauses: list[tuple[int, int, int]] = []
    pending: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if header is not None or len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"line {lineno}: malformed header {line!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise DimacsError(f"line {lineno}: malformed header {line!r}") from None
            continue
        if header is None:
            raise DimacsError(f"line {lineno}: clause before 'p cnf' header")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(f"line {lineno}: bad literal {tok!r}") from None
            if lit == 0:
                if not pending:
                    raise DimacsError(f"line {lineno}: empty clause")
                if len(pending) > 3:
                    raise DimacsError(f"line {lineno}: clause longer than 3 literals")
                pending += [pending[-1]] * (3 - len(pending))
                clauses.append(tuple(pending))
                pending = []
            elif abs(lit) > header[0]:
                raise DimacsError(f"line {lineno}: literal {lit} out of range")
            else:
                pending.append(lit)
    if header is None:
        raise DimacsError("missing 'p cnf' header")
    if pending:
        raise DimacsError("last clause is not terminated by 0")
    return Cnf(header[0], tuple(clauses))


def format_dimacs(c: Cnf) -> str:
    lines = [f"p cnf {c.num_vars} {len(c.clauses)}"]
    lines += [" ".join(map(str, cl)) + " 0" for cl in c.clauses]
    return "\n".join(lines) + "\n"


def _q(lit: int) -> Formula:
    return Var(f"q_p_{lit}" if lit > 0 else f"q_np_{-lit}")


def _pl(a: Formula, b: Formula) -> Formula:
    return App("pl", (a, b))


def _tautology(clause: tuple[int, int, int]) -> bool:
    return any(-lit in clause for lit in clause)


def sat_to_sequent(c: Cnf) -> Sequent:
    """Sequent that is invalid in BM_pl exactly when ``c`` is satisfiable.

    Clauses holding a literal and its negation are dropped first.  They are
    always true, and kept verbatim a clause such as ``(a, -v, v)`` would
    contain ``pl(q_np_v,q_p_v)``, the very formula required to be
    undesignated on the right.
    """
    kept = [cl for cl in c.clauses if not _tautology(cl)]
    clauses = {_pl(_q(x), _pl(_q(y), _q(z))) for x, y, z in kept}
    vs = sorted({abs(lit) for cl in kept for lit in cl})
    gamma_neg = {_pl(_q(v), _q(-v)) for v in vs}
    delta_neg = {_pl(_q(-v), _q(v)) for v in vs}
    return Sequent(clauses | gamma_neg, delta_neg)


def sat_oracle(c: Cnf) -> bool:
    """Exhaustive satisfiability check over all ``2**num_vars`` assignments."""
    if c.num_vars > ORACLE_LIMIT:
        raise DimacsError(f"oracle limited to {ORACLE_LIMIT} variables")
    for bits in itertools.product((False, True), repeat=c.num_vars):
        if all(any(bits[abs(l) - 1] == (l > 0) for l in cl) for cl in c.clauses):
            return True
    return False
