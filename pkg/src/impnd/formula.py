"""Purely implicational formulas: construction, parsing, rendering, interning."""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass, field
from typing import Iterator, Union

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


@dataclass(frozen=True)
class Atom:
    name: str
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not isinstance(self.name, str) or not _IDENT.fullmatch(self.name):
            raise ValueError(f"invalid atom name {self.name!r}")
        object.__setattr__(self, "_hash", hash(("atom", self.name)))

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Imp:
    antecedent: Formula
    consequent: Formula
    _hash: int = field(init=False, repr=False, compare=False)
    _size: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_hash", hash(("imp", self.antecedent, self.consequent)))
        object.__setattr__(self, "_size", size(self.antecedent) + size(self.consequent) + 1)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Imp) or self._hash != other._hash:
            return False
        return self.antecedent == other.antecedent and self.consequent == other.consequent

    def __str__(self) -> str:
        return render_formula(self)


Formula = Union[Atom, Imp]


def imp(*parts: Formula) -> Formula:
    """Right-nested implication: ``imp(a, b, c)`` is ``a -> (b -> c)``."""
    if not parts:
        raise ValueError("imp() needs at least one formula")
    result = parts[-1]
    for part in reversed(parts[:-1]):
        result = Imp(part, result)
    return result


def size(f: Formula) -> int:
    """Atom occurrences plus implication nodes."""
    if isinstance(f, Atom):
        return 1
    return f._size


def atoms_of(f: Formula) -> set[Atom]:
    return {g for g in subformulas(f) if isinstance(g, Atom)}


def subformulas(f: Formula) -> list[Formula]:
    """Distinct subformulas, every formula listed after its immediate parts."""
    seen: set[Formula] = set()
    out: list[Formula] = []
    stack: list[tuple[Formula, bool]] = [(f, False)]
    while stack:
        g, expanded = stack.pop()
        if g in seen:
            continue
        if isinstance(g, Atom) or expanded:
            seen.add(g)
            out.append(g)
            continue
        stack.append((g, True))
        stack.append((g.consequent, False))
        stack.append((g.antecedent, False))
    return out


# -- parsing ---------------------------------------------------------------


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset


def _tokens(text: str) -> Iterator[tuple[str, str, int]]:
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        offset = len(text[:i].encode("utf-8"))
        if ch.isspace():
            i += 1
        elif ch in "()":
            yield ch, ch, offset
            i += 1
        elif text.startswith("->", i):
            yield "->", "->", offset
            i += 2
        else:
            m = _IDENT.match(text, i)
            if m is None:
                raise FormulaSyntaxError(f"unexpected character {ch!r}", offset)
            yield "atom", m.group(), offset
            i = m.end()
    yield "end", "", len(text.encode("utf-8"))


class _Parser:
    def __init__(self, text: str) -> None:
        self.toks = list(_tokens(text))
        self.pos = 0

    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.pos]

    def take(self, kind: str) -> tuple[str, str, int]:
        tok = self.peek()
        if tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise FormulaSyntaxError(f"expected {kind!r}, found {what}", tok[2])
        self.pos += 1
        return tok

    def formula(self) -> Formula:
        left = self.primary()
        if self.peek()[0] == "->":
            self.pos += 1
            return Imp(left, self.formula())
        return left

    def primary(self) -> Formula:
        kind, value, offset = self.peek()
        if kind == "atom":
            self.pos += 1
            return Atom(value)
        if kind == "(":
            self.pos += 1
            inner = self.formula()
            self.take(")")
            return inner
        what = "end of input" if kind == "end" else repr(value)
        raise FormulaSyntaxError(f"expected formula, found {what}", offset)


def parse_formula(text: str) -> Formula:
    parser = _Parser(text)
    f = parser.formula()
    parser.take("end")
    return f


def render_formula(f: Formula) -> str:
    if isinstance(f, Atom):
        return f.name
    left = render_formula(f.antecedent)
    if isinstance(f.antecedent, Imp):
        left = f"({left})"
    return f"{left} -> {render_formula(f.consequent)}"


# -- interning -------------------------------------------------------------


class FormulaTable:
    """Assigns each structurally distinct formula one integer id.

    Lookups are lock-free; insertions are serialized.
    """

    def __init__(self) -> None:
        self._ids: dict[Formula, int] = {}
        self._formulas: list[Formula] = []
        self._lock = threading.Lock()

    def intern(self, f: Formula) -> int:
        found = self._ids.get(f)
        if found is not None:
            return found
        with self._lock:
            found = self._ids.get(f)
            if found is None:
                found = len(self._formulas)
                self._formulas.append(f)
                self._ids[f] = found
            return found

    def lookup(self, fid: int) -> Formula:
        return self._formulas[fid]

    def __len__(self) -> int:
        return len(self._formulas)


default_table = FormulaTable()


def intern(f: Formula) -> int:
    return default_table.intern(f)
