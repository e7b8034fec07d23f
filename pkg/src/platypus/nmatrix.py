"""Finite (partial) non-deterministic matrices and their consequence relations."""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from functools import cached_property

from . import kernels
from .formula import (
    App,
    Formula,
    Signature,
    Var,
    closure,
    parse_formula_list,
    sort_formulas,
    variables,
)

__all__ = [
    "MatrixError",
    "Nmatrix",
    "Sequent",
    "Valuation",
    "Entailment",
    "Separation",
    "Isomorphism",
    "parse_matrix",
    "format_matrix",
    "parse_sequent",
    "format_sequent",
    "builtin",
    "BUILTIN_MATRICES",
    "enumerate_valuations",
    "extend_valuation",
    "is_legal",
    "entails",
    "formula_multifunction",
    "separates",
    "strict_product",
    "rename_values",
    "is_isomorphic",
    "build_Mn",
    "is_deterministic",
]


class MatrixError(ValueError):
    pass


Cell = tuple[str, ...]


@dataclass(frozen=True)
class Nmatrix:
    """``values`` keep declaration order; it fixes every enumeration order."""

    signature: Signature
    values: tuple[str, ...]
    designated: frozenset[str]
    tables: Mapping[str, Mapping[Cell, frozenset[str]]]
    partial: bool = False

    def __post_init__(self):
        values = tuple(self.values)
        if len(set(values)) != len(values):
            raise MatrixError("duplicate value token")
        if not values:
            raise MatrixError("a matrix needs at least one value")
        designated = frozenset(self.designated)
        if not designated <= set(values):
            raise MatrixError(f"designated value not in values: {sorted(designated - set(values))}")
        tables = {}
        for conn, arity in self.signature.connectives.items():
            if conn not in self.tables:
                raise MatrixError(f"no table for connective {conn!r}")
            raw = self.tables[conn]
            table = {}
            for cell in itertools.product(values, repeat=arity):
                if cell not in raw:
                    raise MatrixError(f"missing table row {' '.join(cell)} for {conn!r}")
                out = frozenset(raw[cell])
                if not out <= set(values):
                    raise MatrixError(f"unknown value in {conn!r} row {' '.join(cell)}")
                if not out and not self.partial:
                    raise MatrixError(
                        f"empty cell {' '.join(cell)} for {conn!r} in a non-partial matrix"
                    )
                table[cell] = out
            if len(raw) != len(table):
                raise MatrixError(f"table for {conn!r} has rows outside the value set")
            tables[conn] = table
        extra = set(self.tables) - set(self.signature)
        if extra:
            raise MatrixError(f"tables for undeclared connectives: {sorted(extra)}")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "designated", designated)
        object.__setattr__(self, "tables", tables)

    def __hash__(self):
        return hash((self.values, self.designated, self.signature))

    def __call__(self, conn: str, *xs: str) -> frozenset[str]:
        return self.tables[conn][xs]

    @property
    def undesignated(self) -> frozenset[str]:
        return frozenset(self.values) - self.designated

    @cached_property
    def _index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.values)}

    @cached_property
    def _codes(self):
        """Connective ids, table offsets and flattened bitmask tables."""
        idx = self._index
        conn_id, tab_off, tabs = {}, [], []
        for conn, arity in self.signature.connectives.items():
            conn_id[conn] = len(tab_off)
            tab_off.append(len(tabs))
            for cell in itertools.product(self.values, repeat=arity):
                tabs.append(sum(1 << idx[v] for v in self.tables[conn][cell]))
        return conn_id, tab_off, tabs

    def mask(self, vals: Iterable[str]) -> int:
        return sum(1 << self._index[v] for v in set(vals))


# -- sequents and valuations -----------------------------------------------


@dataclass(frozen=True)
class Sequent:
    premises: frozenset[Formula] = frozenset()
    conclusions: frozenset[Formula] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "premises", frozenset(self.premises))
        object.__setattr__(self, "conclusions", frozenset(self.conclusions))

    def formulas(self) -> frozenset[Formula]:
        return self.premises | self.conclusions

    def __str__(self) -> str:
        return format_sequent(self)


def parse_sequent(text: str, sig: Signature) -> Sequent:
    """Parse ``f1, f2 |- g1, g2``; either side may be empty."""
    left, sep, right = text.partition("|-")
    if not sep:
        raise MatrixError("sequent needs a '|-' separator")
    return Sequent(parse_formula_list(left, sig), parse_formula_list(right, sig))


def format_sequent(s: Sequent) -> str:
    left = ", ".join(map(str, sort_formulas(s.premises)))
    right = ", ".join(map(str, sort_formulas(s.conclusions)))
    return f"{left} |- {right}".strip()


@dataclass(frozen=True)
class Valuation:
    """Values of a subformula-closed domain, listed in canonical formula order."""

    domain: tuple[Formula, ...]
    assignment: Mapping[Formula, str]

    def __getitem__(self, f: Formula) -> str:
        return self.assignment[f]

    def __contains__(self, f: Formula) -> bool:
        return f in self.assignment

    def __len__(self) -> int:
        return len(self.domain)

    def lines(self) -> list[str]:
        return [f"{f} = {self.assignment[f]}" for f in self.domain]

    def __str__(self) -> str:
        return "\n".join(self.lines())


@dataclass(frozen=True)
class Entailment:
    valid: bool
    countervaluation: Valuation | None = None

    def __bool__(self) -> bool:
        return self.valid


def _is_closed(domain: Iterable[Formula]) -> bool:
    dom = set(domain)
    return all(a in dom for f in dom if isinstance(f, App) for a in f.args)


def _encode(M: Nmatrix, order: list[Formula], allowed: list[int]):
    conn_id, tab_off, tabs = M._codes
    pos = {f: i for i, f in enumerate(order)}
    conn, arg_off, args = [], [0], []
    for f in order:
        if isinstance(f, Var):
            conn.append(-1)
        else:
            if f.conn not in conn_id:
                raise MatrixError(f"connective {f.conn!r} not interpreted by the matrix")
            conn.append(conn_id[f.conn])
            args.extend(pos[a] for a in f.args)
        arg_off.append(len(args))
    return (len(M.values), conn, arg_off, args, tab_off, tabs, allowed)


def _postorder(roots: Iterable[Formula]) -> list[Formula]:
    """Children-first order that finishes each root before starting the next."""
    seen: set[Formula] = set()
    out: list[Formula] = []
    for root in roots:
        stack = [(root, False)]
        while stack:
            f, done = stack.pop()
            if done:
                out.append(f)
                continue
            if f in seen:
                continue
            seen.add(f)
            stack.append((f, True))
            if isinstance(f, App):
                stack.extend((a, False) for a in reversed(f.args))
    return out


def _make_valuation(M: Nmatrix, order: list[Formula], vals: list[int]) -> Valuation:
    assignment = {f: M.values[v] for f, v in zip(order, vals)}
    return Valuation(tuple(sort_formulas(assignment)), assignment)


def enumerate_valuations(M: Nmatrix, domain: Iterable[Formula]) -> Iterator[Valuation]:
    """Every legal valuation of ``domain``, each once.

    Formulas are assigned smallest first, values in declaration order, so the
    stream is deterministic.
    """
    order = sort_formulas(set(domain))
    if not _is_closed(order):
        raise MatrixError("domain is not closed under subformulas")
    full = (1 << len(M.values)) - 1
    nvals, conn, arg_off, args, tab_off, tabs, _ = _encode(M, order, [])
    n = len(order)
    vals = [0] * n

    def rec(i):
        if i == n:
            yield _make_valuation(M, order, vals)
            return
        if conn[i] < 0:
            m = full
        else:
            cell = 0
            for j in range(arg_off[i], arg_off[i + 1]):
                cell = cell * nvals + vals[args[j]]
            m = tabs[tab_off[conn[i]] + cell]
        for v in range(nvals):
            if m >> v & 1:
                vals[i] = v
                yield from rec(i + 1)

    yield from rec(0)


def _first(M: Nmatrix, order: list[Formula], allowed: list[int]) -> Valuation | None:
    vals = kernels.first_valuation(*_encode(M, order, allowed))
    return None if vals is None else _make_valuation(M, order, vals)


def extend_valuation(
    M: Nmatrix, partial: Mapping[Formula, str], domain: Iterable[Formula]
) -> Valuation | None:
    """A legal valuation of ``closure(domain)`` agreeing with ``partial``, if any."""
    order = _postorder(sort_formulas(closure(set(domain) | set(partial))))
    full = (1 << len(M.values)) - 1
    allowed = [M.mask([partial[f]]) if f in partial else full for f in order]
    return _first(M, order, allowed)


def is_legal(M: Nmatrix, v: Valuation | Mapping[Formula, str]) -> bool:
    assignment = v.assignment if isinstance(v, Valuation) else v
    if not _is_closed(assignment):
        return False
    for f, x in assignment.items():
        if x not in M._index:
            return False
        if isinstance(f, App) and x not in M.tables[f.conn][tuple(assignment[a] for a in f.args)]:
            return False
    return True


def entails(M: Nmatrix, s: Sequent) -> Entailment:
    """Decide ``s`` in ``M``; an invalid verdict carries a countervaluation.

    The search looks for a valuation of the subformula closure designating
    every premise and no conclusion.  Formulas are visited children-first,
    one premise or conclusion at a time, so each designation constraint is
    checked as soon as its formula is reached.
    """
    if s.premises & s.conclusions:
        return Entailment(True)
    order = _postorder(sort_formulas(s.formulas()))
    full = (1 << len(M.values)) - 1
    dmask = M.mask(M.designated)
    allowed = []
    for f in order:
        if f in s.premises:
            allowed.append(dmask)
        elif f in s.conclusions:
            allowed.append(full & ~dmask)
        else:
            allowed.append(full)
    counter = _first(M, order, allowed)
    return Entailment(counter is None, counter)


def formula_multifunction(M: Nmatrix, f: Formula) -> dict[tuple[str, ...], frozenset[str]]:
    """Values ``f`` can take for each assignment to its (sorted) variables."""
    vs = sorted(variables(f))
    order = _postorder([f])
    full = (1 << len(M.values)) - 1
    out = {}
    for xs in itertools.product(M.values, repeat=len(vs)):
        fixed = {Var(v): M.mask([x]) for v, x in zip(vs, xs)}
        base = [fixed.get(g, full) for g in order]
        ys = []
        for y in M.values:
            allowed = base[:-1] + [base[-1] & M.mask([y])]
            if kernels.first_valuation(*_encode(M, order, allowed)) is not None:
                ys.append(y)
        out[xs] = frozenset(ys)
    return out


@dataclass(frozen=True)
class Separation:
    separated: bool
    pair: tuple[str, str] | None = None

    def __bool__(self) -> bool:
        return self.separated


def separates(M: Nmatrix, S: Iterable[Formula], var: str = "p") -> Separation:
    """Whether the one-variable formulas ``S`` tell every two values apart."""
    profiles = []
    for phi in S:
        vs = variables(phi)
        if not vs <= {var}:
            raise MatrixError(f"{phi} uses variables other than {var!r}")
        table = formula_multifunction(M, phi)
        profiles.append({x: table[(x,)] if vs else table[()] for x in M.values})
    D, ND = M.designated, M.undesignated
    for x, y in itertools.combinations(M.values, 2):
        if not any(
            (p[x] <= D and p[y] <= ND) or (p[x] <= ND and p[y] <= D) for p in profiles
        ):
            return Separation(False, (x, y))
    return Separation(True)


def is_deterministic(M: Nmatrix) -> bool:
    return all(len(out) == 1 for t in M.tables.values() for out in t.values())


# -- products and isomorphism ----------------------------------------------


def _pair(x: str, y: str) -> str:
    return f"({x},{y})"


def strict_product(M1: Nmatrix, M2: Nmatrix) -> Nmatrix:
    """Strict product; shared connectives constrain both components.

    The result is flagged partial exactly when some cell comes out empty.
    """
    sig = M1.signature.union(M2.signature)
    pairs = [
        (x, y)
        for x in M1.values
        for y in M2.values
        if (x in M1.designated) == (y in M2.designated)
    ]
    name = {p: _pair(*p) for p in pairs}
    tables = {}
    empty = False
    for conn, arity in sig.connectives.items():
        table = {}
        for cell in itertools.product(pairs, repeat=arity):
            left = tuple(c[0] for c in cell)
            right = tuple(c[1] for c in cell)
            ok1 = M1.tables[conn][left] if conn in M1.signature else None
            ok2 = M2.tables[conn][right] if conn in M2.signature else None
            out = frozenset(
                name[p]
                for p in pairs
                if (ok1 is None or p[0] in ok1) and (ok2 is None or p[1] in ok2)
            )
            empty = empty or not out
            table[tuple(name[c] for c in cell)] = out
        tables[conn] = table
    designated = frozenset(name[p] for p in pairs if p[0] in M1.designated)
    return Nmatrix(sig, tuple(name[p] for p in pairs), designated, tables, partial=empty)


def rename_values(M: Nmatrix, mapping: Mapping[str, str]) -> Nmatrix:
    """Rename value tokens; unmapped tokens keep their names."""
    r = {v: mapping.get(v, v) for v in M.values}
    if len(set(r.values())) != len(r):
        raise MatrixError("renaming is not injective")
    tables = {
        conn: {tuple(r[x] for x in cell): frozenset(r[y] for y in out) for cell, out in t.items()}
        for conn, t in M.tables.items()
    }
    return Nmatrix(
        M.signature,
        tuple(r[v] for v in M.values),
        frozenset(r[v] for v in M.designated),
        tables,
        M.partial,
    )


@dataclass(frozen=True)
class Isomorphism:
    isomorphic: bool
    mapping: Mapping[str, str] | None = None

    def __bool__(self) -> bool:
        return self.isomorphic


def is_isomorphic(M1: Nmatrix, M2: Nmatrix) -> Isomorphism:
    if M1.signature.connectives != M2.signature.connectives or len(M1.values) != len(M2.values):
        return Isomorphism(False)
    d1 = [v for v in M1.values if v in M1.designated]
    n1 = [v for v in M1.values if v not in M1.designated]
    d2 = [v for v in M2.values if v in M2.designated]
    n2 = [v for v in M2.values if v not in M2.designated]
    if len(d1) != len(d2):
        return Isomorphism(False)
    for pd in itertools.permutations(d2):
        for pn in itertools.permutations(n2):
            h = dict(zip(d1, pd)) | dict(zip(n1, pn))
            if all(
                frozenset(h[y] for y in out) == M2.tables[conn][tuple(h[x] for x in cell)]
                for conn, t in M1.tables.items()
                for cell, out in t.items()
            ):
                return Isomorphism(True, h)
    return Isomorphism(False)


# -- the matrix file format ------------------------------------------------


def parse_matrix(text: str) -> Nmatrix:
    values: list[str] | None = None
    designated: list[str] | None = None
    partial = False
    arities: dict[str, int] = {}
    rows: dict[str, dict[Cell, frozenset[str]]] = {}
    current: str | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, colon, rest = line.partition(":")
        key = key.strip()
        if colon and key in ("values", "designated", "partial"):
            if key == "values":
                values = rest.split()
                if len(set(values)) != len(values):
                    raise MatrixError(f"line {lineno}: duplicate value token")
            elif key == "designated":
                designated = rest.split()
            else:
                flag = rest.strip().lower()
                if flag not in ("true", "false"):
                    raise MatrixError(f"line {lineno}: partial must be true or false")
                partial = flag == "true"
            continue
        if line.startswith("op ") or line == "op":
            parts = line.split()
            if len(parts) != 3 or not parts[2].isdigit():
                raise MatrixError(f"line {lineno}: expected 'op NAME ARITY'")
            current = parts[1]
            if current in arities:
                raise MatrixError(f"line {lineno}: connective {current!r} declared twice")
            arities[current] = int(parts[2])
            rows[current] = {}
            continue
        if current is None or not colon:
            raise MatrixError(f"line {lineno}: unexpected line {raw.strip()!r}")
        cell = tuple(key.split())
        if len(cell) != arities[current]:
            raise MatrixError(f"line {lineno}: row has {len(cell)} inputs, expected {arities[current]}")
        if cell in rows[current]:
            raise MatrixError(f"line {lineno}: duplicate row {' '.join(cell)}")
        rows[current][cell] = frozenset(rest.split())
    if values is None:
        raise MatrixError("missing 'values:' line")
    if designated is None:
        raise MatrixError("missing 'designated:' line")
    for conn, table in rows.items():
        for cell, out in table.items():
            unknown = (set(cell) | out) - set(values)
            if unknown:
                raise MatrixError(f"unknown value {sorted(unknown)[0]!r} in {conn!r} table")
    return Nmatrix(Signature(arities), tuple(values), frozenset(designated), rows, partial)


def format_matrix(M: Nmatrix) -> str:
    lines = [
        "values: " + " ".join(M.values),
        "designated: " + " ".join(v for v in M.values if v in M.designated),
    ]
    if M.partial:
        lines.append("partial: true")
    for conn, arity in M.signature.connectives.items():
        lines.append(f"op {conn} {arity}")
        for cell in itertools.product(M.values, repeat=arity):
            out = " ".join(v for v in M.values if v in M.tables[conn][cell])
            lines.append(f"{' '.join(cell)} : {out}".strip())
    return "\n".join(lines) + "\n"


# -- built-in matrices -----------------------------------------------------

_B = ("0", "1")


def _boolean(**conns) -> Nmatrix:
    """Two-valued matrix, designated {1}; each table maps (x, y) to a set of ints."""
    tables = {
        name: {
            (str(x), str(y)): frozenset(str(z) for z in fn(x, y))
            for x in (0, 1)
            for y in (0, 1)
        }
        for name, fn in conns.items()
    }
    return Nmatrix(Signature({n: 2 for n in conns}), _B, frozenset({"1"}), tables)


def _and(x, y):
    return {x & y}


def _or(x, y):
    return {x | y}


def _pl(x, y):
    return {x & y, x | y}


def _wronski() -> Nmatrix:
    rows = {"0": ("1", "2", "2"), "1": ("2", "2", "2"), "2": ("1", "2", "2")}
    vals = ("0", "1", "2")
    table = {(x, y): frozenset({rows[x][int(y)]}) for x in vals for y in vals}
    return Nmatrix(Signature({"dot": 2}), vals, frozenset({"2"}), {"dot": table})


BUILTIN_MATRICES = {
    "BM_and": lambda: _boolean(**{"and": _and}),
    "BM_or": lambda: _boolean(**{"or": _or}),
    "BM_pl": lambda: _boolean(pl=_pl),
    "BM_and_or": lambda: _boolean(**{"and": _and, "or": _or}),
    "BM_and_pl": lambda: _boolean(**{"and": _and, "pl": _pl}),
    "BM_or_pl": lambda: _boolean(**{"or": _or, "pl": _pl}),
    "BM_and_or_pl": lambda: _boolean(**{"and": _and, "or": _or, "pl": _pl}),
    # the implication table as printed coincides cell for cell with platypus
    "BM_imp": lambda: _boolean(imp=_pl),
    "BM_mp": lambda: _boolean(imp=lambda x, y: {0} if (x, y) == (1, 0) else {0, 1}),
    "BM_pl_in": lambda: _boolean(pl=lambda x, y: {1} if x & y else {0, 1}),
    "BM_pl_el": lambda: _boolean(pl=lambda x, y: {0} if not x | y else {0, 1}),
    "Wronski_C": _wronski,
}


def builtin(name: str) -> Nmatrix:
    try:
        return BUILTIN_MATRICES[name]()
    except KeyError:
        raise MatrixError(f"unknown builtin matrix {name!r}") from None


def build_Mn(n: int) -> Nmatrix:
    """The ``n+2``-valued witness matrix with values ``a0 .. an, 1``."""
    if n < 1:
        raise MatrixError("build_Mn needs n >= 1")
    a = [f"a{i}" for i in range(n + 1)]
    values = (*a, "1")
    table = {}
    for x in values:
        for y in values:
            if x == "1" or y == "1":
                out = {"1", y if x == "1" else x}
            else:
                i, j = int(x[1:]), int(y[1:])
                out = {"1", "a0"} if {i, j} == {0, n} else {a[max(0, min(i, j) - 1)]}
            table[(x, y)] = frozenset(out)
    return Nmatrix(Signature({"pl": 2}), values, frozenset({"1"}), {"pl": table})
