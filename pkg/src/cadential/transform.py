"""PLRQ seventh-chord generators, triadic R, words, diagram checks and BFS paths.

Generators act as partial maps on rooted chords. Each non-transposition
generator is a table ``quality -> (target quality, root shift)``; applying it
outside its table raises :class:`DomainError`.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from .pitch import (
    DOM7, HALF_DIM7, MAJ7, MAJOR_TRIAD, MIN7, MINOR_TRIAD,
    SEVENTH_QUALITIES, TRIAD_QUALITIES,
    ChordQuality, RootedChord, chords_of, classify_quality, pc, transpose,
)


class DomainError(ValueError):
    """A generator was applied to a chord outside its domain."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class UnknownCheckId(KeyError):
    pass


class EmptyGeneratorSet(ValueError):
    pass


_KIND_ORDER = {"R42": 0, "L13": 1, "L42": 2, "P42": 3, "T": 4, "TriadR": 5}


@dataclass(frozen=True)
class Generator:
    kind: str
    n: int = 0

    def __post_init__(self) -> None:
        if self.kind not in _KIND_ORDER:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.kind == "T":
            if not 1 <= self.n <= 11:
                raise ValueError("T(n) needs n in 1..11; T(0) is the empty word")
        elif self.n != 0:
            raise ValueError(f"{self.kind} takes no parameter")

    @property
    def sort_key(self) -> tuple[int, int]:
        return (_KIND_ORDER[self.kind], self.n)

    def inverse(self) -> "Generator":
        if self.kind == "T":
            return Generator("T", 12 - self.n)
        return self

    def __str__(self) -> str:
        return f"T{self.n}" if self.kind == "T" else self.kind

    def __lt__(self, other: "Generator") -> bool:
        return self.sort_key < other.sort_key


def T(n: int) -> Generator:
    return Generator("T", pc(n))


R42 = Generator("R42")
L13 = Generator("L13")
L42 = Generator("L42")
P42 = Generator("P42")
TRIAD_R = Generator("TriadR")

DEFAULT_GENERATORS = (R42, L13, L42, P42)
ALL_GENERATORS = (R42, L13, L42, P42, *(T(n) for n in range(1, 12)), TRIAD_R)

# quality label -> (target quality, root shift)
RULES: dict[str, dict[str, tuple[ChordQuality, int]]] = {
    "R42": {"Maj7": (MIN7, 9), "Min7": (MAJ7, 3)},
    "L13": {"Dom7": (HALF_DIM7, 4), "HalfDim7": (DOM7, -4)},
    "L42": {"Maj7": (MIN7, 4), "Min7": (MAJ7, -4)},
    "P42": {"Maj7": (MIN7, 0), "Min7": (MAJ7, 0)},
    "TriadR": {"MajorTriad": (MINOR_TRIAD, 9), "MinorTriad": (MAJOR_TRIAD, 3)},
}


def domain(g: Generator) -> tuple[str, ...]:
    """Quality labels a generator accepts; empty tuple means total."""
    if g.kind == "T":
        return ()
    return tuple(RULES[g.kind])


def in_domain(g: Generator, c: RootedChord) -> bool:
    return g.kind == "T" or classify_quality(c).label in RULES[g.kind]


def apply_generator(g: Generator, c: RootedChord) -> RootedChord:
    if g.kind == "T":
        return transpose(c, g.n)
    q = classify_quality(c)
    try:
        target, shift = RULES[g.kind][q.label]
    except KeyError:
        raise DomainError(f"{g} is undefined on {q} chords") from None
    return RootedChord(pc(c.root + shift), target.intervals)


@dataclass(frozen=True)
class TransformationWord:
    """Generators applied left to right; the empty word is the identity."""

    gens: tuple[Generator, ...] = ()

    def __iter__(self):
        return iter(self.gens)

    def __len__(self) -> int:
        return len(self.gens)

    def __str__(self) -> str:
        return ",".join(str(g) for g in self.gens) if self.gens else "id"

    def then(self, other: "TransformationWord") -> "TransformationWord":
        return TransformationWord(self.gens + other.gens)


def word(*gens: Generator) -> TransformationWord:
    return TransformationWord(tuple(gens))


_GEN_TOKEN = re.compile(r"^(?:T(\d{1,2})|(R42|L13|L42|P42|TriadR|R))$", re.IGNORECASE)


def parse_generator(text: str) -> Generator:
    m = _GEN_TOKEN.match(text.strip())
    if not m:
        raise ValueError(f"unknown generator {text!r}")
    if m.group(1) is not None:
        return T(int(m.group(1)))
    name = m.group(2).upper()
    return {"R42": R42, "L13": L13, "L42": L42, "P42": P42,
            "TRIADR": TRIAD_R, "R": TRIAD_R}[name]


def parse_word(text: str) -> TransformationWord:
    """Parse ``"L42,T8"``; an empty string or ``id`` is the empty word."""
    text = text.strip()
    if text in ("", "id"):
        return TransformationWord()
    return TransformationWord(tuple(parse_generator(t) for t in text.split(",")))


def apply_word(w: TransformationWord | Sequence[Generator], c: RootedChord) -> RootedChord:
    for i, g in enumerate(w):
        try:
            c = apply_generator(g, c)
        except DomainError as exc:
            raise DomainError(f"generator #{i} ({g}): {exc}", index=i) from None
    return c


def invert_word(w: TransformationWord | Sequence[Generator]) -> TransformationWord:
    return TransformationWord(tuple(g.inverse() for g in reversed(tuple(w))))


# ---------------------------------------------------------------------------
# diagram verification


@dataclass
class VerificationReport:
    check_id: str
    cases_checked: int = 0
    failures: list[tuple[RootedChord, RootedChord | None, RootedChord | str]] = field(
        default_factory=list
    )

    @property
    def passed(self) -> bool:
        return self.cases_checked > 0 and not self.failures

    def expect(self, source: RootedChord, expected: RootedChord | None, got) -> None:
        self.cases_checked += 1
        if got != expected:
            self.failures.append((source, expected, got))


def _try(w: Iterable[Generator], c: RootedChord) -> RootedChord | str:
    try:
        return apply_word(tuple(w), c)
    except DomainError as exc:
        return f"DomainError: {exc}"


def _major_tetrads(key: int) -> dict[str, RootedChord]:
    # local import: cadence depends on this module
    from .cadence import Degree, Tonality, degree_chord

    t = Tonality(key)
    return {d.name: degree_chord(t, d, 4) for d in Degree}


# Diagram nodes: (name, degree). Prism edges labelled by words.
PRISM_NODES = {
    "I": "I", "III": "III",
    "IV_back": "IV", "II_back": "II",
    "II_front": "II", "IV_front": "IV",
}
PRISM_EDGES: tuple[tuple[str, str, TransformationWord], ...] = (
    ("I", "IV_back", word(T(5))),
    ("III", "II_back", word(T(10))),
    ("I", "III", word(R42, T(7))),
    ("IV_back", "II_back", word(R42)),
    ("IV_back", "II_front", word(R42)),
    ("II_back", "IV_front", word(R42)),
    ("II_front", "IV_front", word(R42)),
    # unlabelled front edges, taken as the forced composites
    ("I", "II_front", word(T(5), R42)),
    ("III", "IV_front", word(T(10), R42)),
)


def prism_paths() -> list[tuple[str, str, TransformationWord]]:
    """Every directed path (length >= 1) in the prism, as composed words."""
    out: list[tuple[str, str, TransformationWord]] = []

    def walk(start: str, node: str, acc: TransformationWord) -> None:
        for src, dst, w in PRISM_EDGES:
            if src == node:
                nxt = acc.then(w)
                out.append((start, dst, nxt))
                walk(start, dst, nxt)

    for n in PRISM_NODES:
        walk(n, n, TransformationWord())
    return out


def _check_triangles(rep: VerificationReport) -> None:
    for key in range(12):
        deg = _major_tetrads(key)
        rep.expect(deg["I"], deg["IV"], _try([T(5)], deg["I"]))
        rep.expect(deg["IV"], deg["II"], _try([R42], deg["IV"]))
        rep.expect(deg["I"], deg["II"], _try([T(5), R42], deg["I"]))
        rep.expect(deg["III"], deg["II"], _try([T(10)], deg["III"]))
        rep.expect(deg["II"], deg["IV"], _try([R42], deg["II"]))
        rep.expect(deg["III"], deg["IV"], _try([T(10), R42], deg["III"]))


def _check_prism(rep: VerificationReport) -> None:
    paths = prism_paths()
    for key in range(12):
        deg = _major_tetrads(key)
        for src, dst, w in paths:
            start = deg[PRISM_NODES[src]]
            rep.expect(start, deg[PRISM_NODES[dst]], _try(w, start))


def _check_r42_commute(rep: VerificationReport) -> None:
    for c in chords_of(MAJ7) + chords_of(MIN7):
        for n in range(12):
            lhs = _try([T(n)] if n else [], c)
            lhs = _try([R42], lhs) if isinstance(lhs, RootedChord) else lhs
            rhs = _try([R42] + ([T(n)] if n else []), c)
            rep.expect(c, rhs if isinstance(rhs, RootedChord) else None, lhs)


def _check_triadic_diagram(rep: VerificationReport) -> None:
    for c in chords_of(MAJOR_TRIAD) + chords_of(MINOR_TRIAD):
        for n in (5, 7):
            rep.expect(c, _try([T(n), TRIAD_R], c), _try([TRIAD_R, T(n)], c))
    # the F/C/G over Dm/Am/Em square itself
    for major, minor in ((5, 2), (0, 9), (7, 4)):
        rep.expect(
            RootedChord(major, MAJOR_TRIAD.intervals),
            RootedChord(minor, MINOR_TRIAD.intervals),
            _try([TRIAD_R], RootedChord(major, MAJOR_TRIAD.intervals)),
        )


def _check_involutions(rep: VerificationReport) -> None:
    for g in (R42, L13, L42, P42, TRIAD_R):
        for label in RULES[g.kind]:
            q = next(q for q in SEVENTH_QUALITIES + TRIAD_QUALITIES if q.label == label)
            for c in chords_of(q):
                rep.expect(c, c, _try([g, g], c))


def _check_p42_supertonic(rep: VerificationReport) -> None:
    for key in range(12):
        tonic = _major_tetrads(key)["I"]
        rep.expect(tonic, _major_tetrads(pc(key - 2))["II"], _try([P42], tonic))


CHECKS = {
    "triangles": _check_triangles,
    "prism": _check_prism,
    "r42_t_commute": _check_r42_commute,
    "triadic_diagram": _check_triadic_diagram,
    "involutions": _check_involutions,
    "p42_supertonic": _check_p42_supertonic,
}


def verify_theory(check_id: str) -> VerificationReport:
    try:
        check = CHECKS[check_id]
    except KeyError:
        raise UnknownCheckId(check_id) from None
    rep = VerificationReport(check_id)
    check(rep)
    return rep


# ---------------------------------------------------------------------------
# Cayley-graph search

STATE_QUALITIES = SEVENTH_QUALITIES + TRIAD_QUALITIES


def state_space() -> list[RootedChord]:
    return [c for q in STATE_QUALITIES for c in chords_of(q)]


def shortest_path(
    start: RootedChord,
    target: RootedChord,
    gens: Iterable[Generator] = DEFAULT_GENERATORS,
) -> TransformationWord | None:
    """Minimum-length word taking ``start`` to ``target``, or None if unreachable.

    Neighbours are expanded in generator order, so among shortest words the
    lexicographically smallest one is returned.
    """
    ordered = sorted(set(gens))
    if not ordered:
        raise EmptyGeneratorSet("shortest_path needs at least one generator")
    states = set(state_space())
    if start == target:
        return TransformationWord()
    if start not in states or target not in states:
        return None
    parent: dict[RootedChord, tuple[RootedChord, Generator]] = {}
    seen = {start}
    queue = deque([start])
    while queue:
        c = queue.popleft()
        for g in ordered:
            if not in_domain(g, c):
                continue
            nxt = apply_generator(g, c)
            if nxt in seen:
                continue
            seen.add(nxt)
            parent[nxt] = (c, g)
            if nxt == target:
                path = []
                node = nxt
                while node != start:
                    node, step = parent[node]
                    path.append(step)
                return TransformationWord(tuple(reversed(path)))
            queue.append(nxt)
    return None


def cayley_edges(
    gens: Iterable[Generator] = DEFAULT_GENERATORS,
    qualities: Sequence[ChordQuality] = STATE_QUALITIES,
) -> list[tuple[RootedChord, RootedChord, Generator]]:
    nodes = [c for q in qualities for c in chords_of(q)]
    node_set = set(nodes)
    edges = []
    for c, g in product(nodes, sorted(set(gens))):
        if in_domain(g, c):
            d = apply_generator(g, c)
            if d in node_set:
                edges.append((c, d, g))
    return edges
