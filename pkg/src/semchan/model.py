"""Propositions, predicates, object references and finite worlds.

A proposition is a signed 1-ary atom: a polarity, a predicate code and an
object reference.  The object can be a concrete object number, the
all-objects marker (written ``*`` in the text grammar) or a nested frame.
A world is a finite domain of object numbers plus a consistent set of
signed literals.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, FrozenSet, Iterable, Tuple

if TYPE_CHECKING:
    from .codec import Frame

BUILTIN_NAMES = frozenset({"NT", "Tr", "Err"})

MAX_NAME_LEN = 64
MAX_OBJECT_NUMBER = 2**64 - 1
MAX_NESTING_DEPTH = 8

_NAME_RE = re.compile(r"[A-Za-z0-9-]+")


class PropositionSyntaxError(ValueError):
    """Raised when proposition text does not match the grammar."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class InconsistentWorldError(ValueError):
    """Raised when a literal set asserts both polarities of an atom."""


@dataclass(frozen=True)
class PredicateCode:
    """Predicate identifier: either a printable name or a positive index.

    ``value`` is a ``str`` for the name form and an ``int`` for the
    numeric-index form.  The names NT, Tr and Err are reserved builtins
    (recognized case-sensitively).
    """

    value: str | int

    def __post_init__(self):
        v = self.value
        if isinstance(v, str):
            if not v or len(v) > MAX_NAME_LEN or not _NAME_RE.fullmatch(v):
                raise ValueError(f"invalid predicate name: {v!r}")
        elif isinstance(v, int):
            if v < 1:
                raise ValueError(f"predicate index must be >= 1, got {v}")
        else:
            raise TypeError(f"predicate value must be str or int, got {type(v)}")

    @property
    def is_name(self) -> bool:
        return isinstance(self.value, str)

    @property
    def is_builtin(self) -> bool:
        return isinstance(self.value, str) and self.value in BUILTIN_NAMES

    def __str__(self) -> str:
        return self.value if isinstance(self.value, str) else f"P_{self.value}"


@dataclass(frozen=True)
class ObjectRef:
    """Object position of an atom: a number, all-objects, or a nested frame."""

    kind: str  # "number" | "all" | "nested"
    number: int = 0
    frame: "Frame | None" = None

    def __post_init__(self):
        if self.kind == "number":
            if not (1 <= self.number <= MAX_OBJECT_NUMBER):
                raise ValueError(
                    f"object number out of range 1..2^64-1: {self.number}"
                )
            if self.frame is not None:
                raise ValueError("number object cannot carry a frame")
        elif self.kind == "all":
            if self.number or self.frame is not None:
                raise ValueError("all-objects marker carries no payload")
        elif self.kind == "nested":
            from .codec import Frame

            if not isinstance(self.frame, Frame):
                raise TypeError("nested object requires a Frame")
            if self.frame.depth + 1 > MAX_NESTING_DEPTH:
                raise ValueError(
                    f"nesting depth exceeds {MAX_NESTING_DEPTH}"
                )
        else:
            raise ValueError(f"unknown object kind: {self.kind!r}")

    @staticmethod
    def num(m: int) -> "ObjectRef":
        return ObjectRef(kind="number", number=m)

    @staticmethod
    def all_objects() -> "ObjectRef":
        return ObjectRef(kind="all")

    @staticmethod
    def nested(frame: "Frame") -> "ObjectRef":
        return ObjectRef(kind="nested", frame=frame)


@dataclass(frozen=True)
class Proposition:
    """A signed 1-ary atom: polarity, predicate, object."""

    polarity: bool
    predicate: PredicateCode
    object: ObjectRef

    def __str__(self) -> str:
        return render_proposition(self)


def negate(p: Proposition) -> Proposition:
    """Flip the polarity; involution."""
    return Proposition(not p.polarity, p.predicate, p.object)


def equivalent(p: Proposition, q: Proposition) -> bool:
    """Logical equivalence of atoms, read structurally.

    Nested frames compare field-wise; the all-objects atom is its own
    atom and is never expanded into a conjunction here.
    """
    return p == q


def render_proposition(p: Proposition) -> str:
    """Text surface: ``['~'] (NAME | '#' INDEX) '(' (NUMBER | '*' | '<hex>') ')'``.

    Named predicates are the canonical form; the ``#n`` spelling exists so
    numeric-index predicates are renderable in transcripts.
    """
    sign = "" if p.polarity else "~"
    if not p.predicate.is_name:
        if p.object.kind == "number":
            return f"{sign}#{p.predicate.value}({p.object.number})"
        if p.object.kind == "all":
            return f"{sign}#{p.predicate.value}(*)"
        from .wire import body_bytes

        return f"{sign}#{p.predicate.value}(<{body_bytes(p.object.frame).hex()}>)"
    if p.object.kind == "number":
        obj = str(p.object.number)
    elif p.object.kind == "all":
        obj = "*"
    else:
        from .wire import body_bytes

        obj = "<" + body_bytes(p.object.frame).hex() + ">"
    return f"{sign}{p.predicate.value}({obj})"


def parse_proposition(text: str) -> Proposition:
    """Parse the text grammar back into a structured atom.

    ``~`` sets polarity false, ``*`` is the all-objects marker, and
    ``<hex>`` is a nested frame given as the hex of its wire body.
    A literal ``0`` object is rejected: all-objects must be written ``*``.
    """
    s = text.strip()
    pos = 0
    polarity = True
    if s.startswith("~"):
        polarity = False
        pos = 1
    pred: PredicateCode
    if pos < len(s) and s[pos] == "#":
        m = re.compile(r"\d+").match(s, pos + 1)
        if not m:
            raise PropositionSyntaxError("expected predicate index after '#'", pos)
        pred = PredicateCode(int(m.group(0)))
        pos = m.end()
    else:
        m = _NAME_RE.match(s, pos)
        if not m:
            raise PropositionSyntaxError("expected predicate name", pos)
        pred = PredicateCode(m.group(0))
        pos = m.end()
    if pos >= len(s) or s[pos] != "(":
        raise PropositionSyntaxError("expected '('", pos)
    pos += 1
    close = s.rfind(")")
    if close != len(s) - 1 or close < pos:
        raise PropositionSyntaxError("expected ')' at end", len(s))
    inner = s[pos:close]
    if inner == "*":
        obj = ObjectRef.all_objects()
    elif inner.startswith("<") and inner.endswith(">"):
        from .wire import parse_body

        try:
            raw = bytes.fromhex(inner[1:-1])
        except ValueError as e:
            raise PropositionSyntaxError(f"bad nested hex: {e}", pos) from e
        frame, consumed = parse_body(raw)
        if consumed != len(raw):
            raise PropositionSyntaxError("trailing bytes in nested frame", pos)
        obj = ObjectRef.nested(frame)
    elif inner.isdigit():
        n = int(inner)
        if n == 0:
            raise PropositionSyntaxError(
                "object 0 must be written '*' (all objects)", pos
            )
        obj = ObjectRef.num(n)
    else:
        raise PropositionSyntaxError(f"bad object: {inner!r}", pos)
    return Proposition(polarity, pred, obj)


@dataclass(frozen=True)
class World:
    """Finite situation: object domain plus a consistent signed-literal set.

    ``literals`` holds (predicate, object number, polarity) triples.  An
    atom is true only if its exact signed literal is listed; absence means
    false for both polarities' assertions.
    """

    domain: FrozenSet[int]
    literals: FrozenSet[Tuple[PredicateCode, int, bool]]

    def __post_init__(self):
        seen = set()
        for pred, obj, pol in self.literals:
            if obj not in self.domain:
                raise ValueError(f"literal object {obj} not in domain")
            key = (pred, obj)
            if (pred, obj, not pol) in self.literals:
                raise InconsistentWorldError(
                    f"both polarities asserted for {pred}({obj})"
                )
            seen.add(key)

    @staticmethod
    def build(
        domain: Iterable[int],
        literals: Iterable[Tuple[PredicateCode, int, bool]],
    ) -> "World":
        return World(frozenset(domain), frozenset(literals))

    def predicates(self) -> list[PredicateCode]:
        """Distinct predicates mentioned by the literal set, sorted."""
        return sorted({pred for pred, _, _ in self.literals}, key=str)


def holds(w: World, p: Proposition) -> bool:
    """Evaluate a ground atom against a world.

    All-objects atoms are conjunctions over the domain: with polarity
    true every object must carry the positive literal, with polarity
    false every object must carry the negative one.
    """
    if p.predicate.is_builtin:
        raise ValueError(
            f"builtin predicate {p.predicate} is channel-relative, "
            "not world-evaluable"
        )
    if p.object.kind == "nested":
        raise ValueError("nested-frame objects have no world semantics")
    if p.object.kind == "number":
        return (p.predicate, p.object.number, p.polarity) in w.literals
    return all(
        (p.predicate, m, p.polarity) in w.literals for m in w.domain
    )


def load_world(path: str) -> World:
    """Read the line-oriented world file format.

    First non-comment line is ``domain: 1 2 3 ...``; each following line
    is one literal in the proposition grammar.  ``#`` starts a comment.
    """
    domain: set[int] = set()
    literals: set[Tuple[PredicateCode, int, bool]] = set()
    saw_domain = False
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if not saw_domain:
                if not line.startswith("domain:"):
                    raise ValueError(
                        f"{path}:{lineno}: expected 'domain:' header"
                    )
                domain = {int(tok) for tok in line[len("domain:"):].split()}
                saw_domain = True
                continue
            p = parse_proposition(line)
            if p.object.kind != "number":
                raise ValueError(
                    f"{path}:{lineno}: world literals must use object numbers"
                )
            literals.add((p.predicate, p.object.number, p.polarity))
    if not saw_domain:
        raise ValueError(f"{path}: missing 'domain:' header")
    return World.build(domain, literals)
