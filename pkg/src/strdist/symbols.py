"""Structured alphabet symbols and their canonical text form.

Besides plain named characters, the reductions need marker symbols
(``$``, ``#L``, ...) and composite gadget symbols that carry other symbols
inside them (pair symbols, directional symbols, staged symbols).  They are
modelled structurally so that a generated symbol can never collide with a
user-provided one.

Text grammar::

    atom      := "$" | "B" | "B1" | "*" | "#L" | "#R" | "PAD" | identifier
    composite := "P(" atom "," atom ")"
               | ("L" | "R") "(" group2 "|" group2 ")"
               | ("S1" | "S2" | "S3") "(" group3 "|" group3 ")"

A group lists its atoms separated by commas.  When every atom of a
composite has a one-character text the commas are dropped, so
``S1(abc|def)`` and ``S1(a,b,c|d,e,f)`` denote the same symbol and the
first is canonical.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import IntEnum
from functools import total_ordering
from typing import Iterable

from .errors import SymbolParseError


class Kind(IntEnum):
    # declaration order is the canonical order between kinds
    DOLLAR = 0
    BLANK = 1
    BLANK1 = 2
    STAR = 3
    HASH_L = 4
    HASH_R = 5
    PAD = 6
    BASE = 7
    PAIR = 8
    DIR_L = 9
    DIR_R = 10
    STAGE = 11


ATOM_TEXT = {
    Kind.DOLLAR: "$",
    Kind.BLANK: "B",
    Kind.BLANK1: "B1",
    Kind.STAR: "*",
    Kind.HASH_L: "#L",
    Kind.HASH_R: "#R",
    Kind.PAD: "PAD",
}
RESERVED_NAMES = frozenset({"B", "B1", "PAD"})
COMPOSITE_KINDS = frozenset({Kind.PAIR, Kind.DIR_L, Kind.DIR_R, Kind.STAGE})
_IDENT = re.compile(r"[A-Za-z0-9_]+")
_SEPARATOR = re.compile(r"\s*,\s*|\s+")


@total_ordering
@dataclass(frozen=True, eq=False)
class Symbol:
    """One alphabet symbol.

    ``parts`` holds the nested atoms of composite symbols: two for a pair,
    four (old pair then new pair) for directional symbols and six (old
    triple then new triple) for staged symbols.
    """

    kind: Kind
    name: str = ""
    parts: tuple[Symbol, ...] = ()
    stage: int = 0
    _key: tuple = field(init=False, repr=False)
    _hash: int = field(init=False, repr=False)

    def __post_init__(self):
        expected = {Kind.PAIR: 2, Kind.DIR_L: 4, Kind.DIR_R: 4, Kind.STAGE: 6}.get(self.kind, 0)
        if len(self.parts) != expected:
            raise ValueError(f"{self.kind.name} takes {expected} parts, got {len(self.parts)}")
        for p in self.parts:
            if p.kind in COMPOSITE_KINDS:
                raise ValueError("composite symbols may only nest atomic symbols")
        if self.kind == Kind.BASE:
            if not _IDENT.fullmatch(self.name) or self.name in RESERVED_NAMES:
                raise ValueError(f"invalid base symbol name {self.name!r}")
        elif self.name:
            raise ValueError("only base symbols carry a name")
        if self.kind == Kind.STAGE and self.stage not in (1, 2, 3):
            raise ValueError("stage index must be 1, 2 or 3")
        if self.kind != Kind.STAGE and self.stage:
            raise ValueError("only staged symbols carry a stage index")
        key = (int(self.kind), self.stage, self.name, tuple(p._key for p in self.parts))
        object.__setattr__(self, "_key", key)
        object.__setattr__(self, "_hash", hash(key))

    def __eq__(self, other):
        if not isinstance(other, Symbol):
            return NotImplemented
        return self._key == other._key

    def __lt__(self, other):
        if not isinstance(other, Symbol):
            return NotImplemented
        return self._key < other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Symbol({self.text()!r})"

    def __str__(self):
        return self.text()

    @property
    def is_atom(self):
        return self.kind not in COMPOSITE_KINDS

    @property
    def sort_key(self):
        return self._key

    def text(self):
        return canonical_symbol_text(self)


def base(name: str) -> Symbol:
    return Symbol(Kind.BASE, name)


DOLLAR = Symbol(Kind.DOLLAR)
BLANK = Symbol(Kind.BLANK)
BLANK1 = Symbol(Kind.BLANK1)
STAR = Symbol(Kind.STAR)
HASH_L = Symbol(Kind.HASH_L)
HASH_R = Symbol(Kind.HASH_R)
PAD = Symbol(Kind.PAD)

_ATOMS_BY_TEXT = {text: Symbol(kind) for kind, text in ATOM_TEXT.items()}


def pair(left: Symbol, right: Symbol) -> Symbol:
    return Symbol(Kind.PAIR, parts=(left, right))


def dir_left(old: tuple[Symbol, Symbol], new: tuple[Symbol, Symbol]) -> Symbol:
    return Symbol(Kind.DIR_L, parts=(*old, *new))


def dir_right(old: tuple[Symbol, Symbol], new: tuple[Symbol, Symbol]) -> Symbol:
    return Symbol(Kind.DIR_R, parts=(*old, *new))


def stage(i: int, old: tuple[Symbol, Symbol, Symbol], new: tuple[Symbol, Symbol, Symbol]) -> Symbol:
    return Symbol(Kind.STAGE, parts=(*old, *new), stage=i)


def _group_text(parts: Iterable[Symbol], compact: bool) -> str:
    texts = [canonical_symbol_text(p) for p in parts]
    return "".join(texts) if compact else ",".join(texts)


def canonical_symbol_text(sym: Symbol) -> str:
    if sym.kind == Kind.BASE:
        return sym.name
    if sym.kind in ATOM_TEXT:
        return ATOM_TEXT[sym.kind]
    if sym.kind == Kind.PAIR:
        return f"P({sym.parts[0].text()},{sym.parts[1].text()})"
    compact = all(len(p.text()) == 1 for p in sym.parts)
    half = len(sym.parts) // 2
    head = {Kind.DIR_L: "L", Kind.DIR_R: "R"}.get(sym.kind, f"S{sym.stage}")
    return f"{head}({_group_text(sym.parts[:half], compact)}|{_group_text(sym.parts[half:], compact)})"


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, message):
        offset = len(self.text[: self.pos].encode("utf-8"))
        raise SymbolParseError(message, self.text, offset)

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            self.fail(f"expected {ch!r}")
        self.pos += 1

    def atom(self) -> Symbol:
        ch = self.peek()
        if ch in ("$", "*"):
            self.pos += 1
            return _ATOMS_BY_TEXT[ch]
        if ch == "#":
            tok = self.text[self.pos : self.pos + 2]
            if tok not in ("#L", "#R"):
                self.fail("expected '#L' or '#R'")
            self.pos += 2
            return _ATOMS_BY_TEXT[tok]
        m = _IDENT.match(self.text, self.pos)
        if not m:
            self.fail("expected a symbol")
        self.pos = m.end()
        return _atom_from_ident(m.group())

    def single_char_atom(self) -> Symbol:
        ch = self.peek()
        if ch in ("$", "*"):
            self.pos += 1
            return _ATOMS_BY_TEXT[ch]
        if ch and _IDENT.fullmatch(ch):
            self.pos += 1
            return _atom_from_ident(ch)
        self.fail("expected a one-character symbol")

    def group(self, n: int, terminator: str) -> list[Symbol]:
        end = self.text.find(terminator, self.pos)
        if end < 0:
            self.fail(f"missing {terminator!r}")
        if "," in self.text[self.pos : end]:
            items = [self.atom()]
            while len(items) < n:
                self.expect(",")
                items.append(self.atom())
            return items
        return [self.single_char_atom() for _ in range(n)]

    def symbol(self) -> Symbol:
        m = _IDENT.match(self.text, self.pos)
        if m and m.end() < len(self.text) and self.text[m.end()] == "(":
            head = m.group()
            self.pos = m.end() + 1
            if head == "P":
                left = self.atom()
                self.expect(",")
                right = self.atom()
                self.expect(")")
                return pair(left, right)
            if head in ("L", "R"):
                old = self.group(2, "|")
                self.expect("|")
                new = self.group(2, ")")
                self.expect(")")
                make = dir_left if head == "L" else dir_right
                return make(tuple(old), tuple(new))
            if head in ("S1", "S2", "S3"):
                old = self.group(3, "|")
                self.expect("|")
                new = self.group(3, ")")
                self.expect(")")
                return stage(int(head[1]), tuple(old), tuple(new))
            self.pos = m.start()
            self.fail(f"unknown composite symbol {head!r}")
        return self.atom()


def _atom_from_ident(ident: str) -> Symbol:
    if ident in _ATOMS_BY_TEXT:
        return _ATOMS_BY_TEXT[ident]
    return base(ident)


def parse_symbol_text(text: str) -> Symbol:
    """Parse the canonical (or comma-separated) text of a symbol."""
    p = _Parser(text)
    sym = p.symbol()
    if p.pos != len(text):
        p.fail("trailing characters")
    return sym


def parse_word(text: str) -> tuple[Symbol, ...]:
    """Parse a word written as symbol texts separated by commas or spaces.

    A word with no separators and no composite symbols is read one
    character per symbol, so ``"ab"`` is the two-symbol word ``a b``.
    """
    text = text.strip()
    if not text:
        return ()
    if not re.search(r"[,\s(]", text):
        return tuple(parse_symbol_text(ch) for ch in text)
    p = _Parser(text)
    out = []
    while p.pos < len(text):
        out.append(p.symbol())
        sep = _SEPARATOR.match(text, p.pos)
        if p.pos < len(text) and not sep:
            p.fail("expected ',' or whitespace between symbols")
        if sep:
            p.pos = sep.end()
    return tuple(out)


def word_text(word: Iterable[Symbol]) -> str:
    """Space-separated symbol texts; readable back with :func:`parse_word`.

    A lone symbol with a multi-character text gets a trailing comma so it
    is not split into characters.
    """
    texts = [s.text() for s in word]
    if len(texts) == 1 and len(texts[0]) > 1:
        return texts[0] + ","
    return " ".join(texts)
