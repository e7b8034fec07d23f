"""Signatures, formulas, prefix-syntax parsing and schema matching.

Formulas are immutable trees written in prefix notation only::

    formula := IDENT | IDENT "(" formula ("," formula)* ")"

An identifier declared as a connective in the governing :class:`Signature`
is a connective (a nullary one is written bare); every other identifier is a
propositional variable.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field

__all__ = [
    "FormulaSyntaxError",
    "Signature",
    "Formula",
    "Var",
    "App",
    "parse_formula",
    "parse_formula_list",
    "format_formula",
    "subformulas",
    "closure",
    "variables",
    "substitute",
    "match_schema",
    "formula_key",
    "sort_formulas",
]

IDENT = re.compile(r"[a-zA-Z_][a-zA-Z0-9_]*")


class FormulaSyntaxError(ValueError):
    """Raised for malformed formula text; ``pos`` is the 0-based offset."""

    def __init__(self, message: str, pos: int | None = None):
        self.pos = pos
        if pos is not None:
            message = f"{message} at position {pos}"
        super().__init__(message)


@dataclass(frozen=True)
class Signature:
    """Connective names mapped to arities."""

    connectives: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        conns = dict(self.connectives)
        for name, arity in conns.items():
            if not IDENT.fullmatch(name):
                raise ValueError(f"invalid connective name {name!r}")
            if not isinstance(arity, int) or arity < 0:
                raise ValueError(f"invalid arity {arity!r} for {name!r}")
        object.__setattr__(self, "connectives", conns)

    def __contains__(self, name: str) -> bool:
        return name in self.connectives

    def __iter__(self) -> Iterator[str]:
        return iter(self.connectives)

    def __len__(self) -> int:
        return len(self.connectives)

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.connectives.items())))

    def arity(self, name: str) -> int:
        return self.connectives[name]

    def union(self, other: Signature) -> Signature:
        merged = dict(self.connectives)
        for name, arity in other.connectives.items():
            if merged.get(name, arity) != arity:
                raise ValueError(f"arity conflict for connective {name!r}")
            merged[name] = arity
        return Signature(merged)

    def restrict(self, names: Iterable[str]) -> Signature:
        return Signature({n: self.connectives[n] for n in names})

    @classmethod
    def parse(cls, text: str) -> Signature:
        """Parse ``"pl:2, and:2, top:0"``."""
        conns = {}
        for item in text.split(","):
            item = item.strip()
            if not item:
                continue
            name, _, arity = item.partition(":")
            conns[name.strip()] = int(arity)
        return cls(conns)


class Formula:
    """Base class of :class:`Var` and :class:`App`.

    Equality, hashing and ordering all go through the canonical text, which is
    injective for a fixed signature.
    """

    __slots__ = ("_text", "_hash", "size", "depth")

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Formula):
            return NotImplemented
        return (
            self._hash == other._hash
            and type(self) is type(other)
            and self._text == other._text
        )

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: Formula) -> bool:
        return self._text < other._text

    def __str__(self) -> str:
        return self._text

    def __setattr__(self, name, value):
        raise AttributeError("formulas are immutable")


class Var(Formula):
    __slots__ = ("name",)

    def __init__(self, name: str):
        set_ = object.__setattr__
        set_(self, "name", name)
        set_(self, "_text", name)
        set_(self, "_hash", hash(("v", name)))
        set_(self, "size", 1)
        set_(self, "depth", 0)

    def __repr__(self) -> str:
        return f"Var({self.name!r})"

    def __reduce__(self):
        return (Var, (self.name,))


class App(Formula):
    __slots__ = ("conn", "args")

    def __init__(self, conn: str, args: Iterable[Formula] = ()):
        args = tuple(args)
        text = f"{conn}({','.join(a._text for a in args)})" if args else conn
        set_ = object.__setattr__
        set_(self, "conn", conn)
        set_(self, "args", args)
        set_(self, "_text", text)
        set_(self, "_hash", hash(("a", text)))
        set_(self, "size", 1 + sum(a.size for a in args))
        set_(self, "depth", 1 + max((a.depth for a in args), default=-1))

    def __repr__(self) -> str:
        return f"App({self.conn!r}, {list(self.args)!r})"

    def __reduce__(self):
        return (App, (self.conn, self.args))


def formula_key(f: Formula) -> tuple[int, str]:
    """Canonical order: smaller formulas first, ties broken by text."""
    return (f.size, f._text)


def sort_formulas(fs: Iterable[Formula]) -> list[Formula]:
    return sorted(fs, key=formula_key)


# -- parsing ---------------------------------------------------------------

_TOKEN = re.compile(r"[a-zA-Z_][a-zA-Z0-9_]*|\S")


class _Parser:
    def __init__(self, text: str, sig: Signature):
        self.sig = sig
        self.tokens = [(m.group(), m.start()) for m in _TOKEN.finditer(text)]
        self.end = len(text)
        self.i = 0

    def peek(self) -> tuple[str | None, int]:
        if self.i < len(self.tokens):
            return self.tokens[self.i]
        return None, self.end

    def next(self) -> tuple[str | None, int]:
        tok = self.peek()
        self.i += 1
        return tok

    def at_end(self) -> bool:
        return self.i >= len(self.tokens)

    def expect(self, ch: str) -> None:
        tok, pos = self.next()
        if tok != ch:
            raise FormulaSyntaxError(f"expected {ch!r}, got {_describe(tok)}", pos)

    def formula(self) -> Formula:
        tok, start = self.next()
        if tok is None or not IDENT.fullmatch(tok):
            raise FormulaSyntaxError(f"expected identifier, got {_describe(tok)}", start)
        if self.peek()[0] != "(":
            if tok not in self.sig:
                return Var(tok)
            if self.sig.arity(tok) != 0:
                raise FormulaSyntaxError(
                    f"connective {tok!r} expects {self.sig.arity(tok)} arguments, got 0",
                    start,
                )
            return App(tok)
        if tok not in self.sig:
            raise FormulaSyntaxError(f"unknown connective {tok!r}", start)
        self.next()
        args = [self.formula()]
        while True:
            sep, pos = self.next()
            if sep == ")":
                break
            if sep != ",":
                raise FormulaSyntaxError(f"expected ',' or ')', got {_describe(sep)}", pos)
            args.append(self.formula())
        if len(args) != self.sig.arity(tok):
            raise FormulaSyntaxError(
                f"connective {tok!r} expects {self.sig.arity(tok)} arguments, "
                f"got {len(args)}",
                start,
            )
        return App(tok, args)


def _describe(tok: str | None) -> str:
    return "end of input" if tok is None else repr(tok)


def parse_formula(text: str, sig: Signature) -> Formula:
    p = _Parser(text, sig)
    f = p.formula()
    if not p.at_end():
        tok, start = p.peek()
        raise FormulaSyntaxError(f"unexpected {tok!r}", start)
    return f


def parse_formula_list(text: str, sig: Signature) -> list[Formula]:
    """Parse a comma separated, possibly empty, list of formulas."""
    p = _Parser(text, sig)
    if p.at_end():
        return []
    out = [p.formula()]
    while not p.at_end():
        p.expect(",")
        out.append(p.formula())
    return out


def format_formula(f: Formula) -> str:
    return f._text


# -- structure -------------------------------------------------------------


def subformulas(f: Formula) -> frozenset[Formula]:
    seen: set[Formula] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if g in seen:
            continue
        seen.add(g)
        if isinstance(g, App):
            stack.extend(g.args)
    return frozenset(seen)


def closure(fs: Iterable[Formula]) -> frozenset[Formula]:
    """Subformula closure of a set of formulas."""
    out: set[Formula] = set()
    for f in fs:
        if f not in out:
            out |= subformulas(f)
    return frozenset(out)


def variables(f: Formula) -> frozenset[str]:
    return frozenset(g.name for g in subformulas(f) if isinstance(g, Var))


def substitute(f: Formula, s: Mapping[str, Formula]) -> Formula:
    """Simultaneous substitution; unbound variables map to themselves."""
    if isinstance(f, Var):
        return s.get(f.name, f)
    if not f.args:
        return f
    return App(f.conn, [substitute(a, s) for a in f.args])


def match_schema(
    schema: Formula,
    target: Formula,
    binding: Mapping[str, Formula] | None = None,
) -> dict[str, Formula] | None:
    """Return the substitution ``s`` with ``substitute(schema, s) == target``.

    ``binding`` pre-binds some schema variables; the result extends it. Only
    variables of ``schema`` (plus pre-bound ones) appear in the result, which
    makes it the most specific such substitution.
    """
    out = dict(binding) if binding else {}
    stack = [(schema, target)]
    while stack:
        pat, tgt = stack.pop()
        if isinstance(pat, Var):
            bound = out.get(pat.name)
            if bound is None:
                out[pat.name] = tgt
            elif bound != tgt:
                return None
        elif (
            isinstance(tgt, App)
            and pat.conn == tgt.conn
            and len(pat.args) == len(tgt.args)
        ):
            stack.extend(zip(pat.args, tgt.args))
        else:
            return None
    return out
