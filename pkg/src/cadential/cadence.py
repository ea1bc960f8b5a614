"""Scales, degree chords, minimal cadential sets and the ABC conglomerate."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable

from .pitch import RootedChord, chord_from_pcs, pc, pc_name
from .transform import L13, R42, DomainError, Generator, apply_generator

MAJOR = (0, 2, 4, 5, 7, 9, 11)
WHOLE_TONE = (0, 2, 4, 6, 8, 10)


class Degree(enum.IntEnum):
    I = 1
    II = 2
    III = 3
    IV = 4
    V = 5
    VI = 6
    VII = 7

    def __str__(self) -> str:
        return self.name

    @classmethod
    def parse(cls, text: str) -> "Degree":
        try:
            return cls[text.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown Roman numeral {text!r}") from None


class Arity(enum.IntEnum):
    TRIADIC = 3
    TETRADIC = 4


class Region(str, enum.Enum):
    A = "A"
    B = "B"
    C = "C"

    @property
    def nickname(self) -> str:
        return {"A": "Alice", "B": "Blues", "C": "Cherokee"}[self.value]


@dataclass(frozen=True)
class Tonality:
    root: int
    pattern: tuple[int, ...] = MAJOR

    def __post_init__(self) -> None:
        object.__setattr__(self, "root", pc(self.root))
        p = tuple(self.pattern)
        if not p or p[0] != 0 or any(b <= a for a, b in zip(p, p[1:])) or p[-1] >= 12:
            raise ValueError(f"scale pattern must be strictly increasing from 0: {p}")
        object.__setattr__(self, "pattern", p)

    @property
    def heptatonic(self) -> bool:
        return len(self.pattern) == 7

    @property
    def notes(self) -> tuple[int, ...]:
        return tuple(pc(self.root + o) for o in self.pattern)

    def transposed(self, n: int) -> "Tonality":
        return Tonality(self.root + n, self.pattern)

    def name(self, sharps: bool = False) -> str:
        suffix = "" if self.pattern == MAJOR else f"[{','.join(map(str, self.pattern))}]"
        return pc_name(self.root, sharps) + suffix

    def __str__(self) -> str:
        return self.name()


def stacked_chord(t: Tonality, position: int, arity: int) -> RootedChord:
    """Stack scale thirds over a 1-based scale position, for any pattern size."""
    notes = t.notes
    n = len(notes)
    if not 1 <= position <= n:
        raise ValueError(f"degree {position} outside 1..{n}")
    i = position - 1
    members = dict.fromkeys(notes[(i + 2 * k) % n] for k in range(int(arity)))
    return chord_from_pcs(notes[i], members)


def degree_chord(t: Tonality, d: Degree | int, arity: Arity | int = Arity.TETRADIC) -> RootedChord:
    if not t.heptatonic:
        raise ValueError("degree chords need a heptatonic pattern")
    return stacked_chord(t, int(d), arity)


@lru_cache(maxsize=None)
def _degree_chords(root: int, pattern: tuple[int, ...], arity: int) -> tuple[RootedChord, ...]:
    t = Tonality(root, pattern)
    return tuple(stacked_chord(t, i, arity) for i in range(1, len(pattern) + 1))


def degree_chords(t: Tonality, arity: Arity | int = Arity.TETRADIC) -> tuple[RootedChord, ...]:
    return _degree_chords(t.root, t.pattern, int(arity))


def identify_degree(t: Tonality, c: RootedChord, arity: Arity | int = Arity.TETRADIC) -> Degree | None:
    """Degree whose chord equals ``c`` exactly, if any."""
    for i, dc in enumerate(degree_chords(t, arity), start=1):
        if dc == c:
            return Degree(i)
    return None


def scales_containing(
    c: RootedChord, pattern: tuple[int, ...] = MAJOR, arity: Arity | int = Arity.TETRADIC
) -> list[Tonality]:
    return [
        Tonality(r, pattern) for r in range(12)
        if c in degree_chords(Tonality(r, pattern), arity)
    ]


# ---------------------------------------------------------------------------
# cadential sets

TRIADIC_NAMES = {
    frozenset({2, 5}): "k1", frozenset({2, 3}): "k2", frozenset({3, 4}): "k3",
    frozenset({4, 5}): "k4", frozenset({7}): "k5",
}
TETRADIC_NAMES = {
    frozenset({1, 2}): "J1", frozenset({1, 4}): "J2", frozenset({2, 3}): "J3",
    frozenset({3, 4}): "J4", frozenset({5}): "J5", frozenset({7}): "J6",
}


@dataclass(frozen=True)
class CadentialSet:
    degrees: frozenset[Degree]
    arity: Arity = Arity.TETRADIC
    name: str | None = None

    @property
    def sorted_degrees(self) -> tuple[Degree, ...]:
        return tuple(sorted(self.degrees))

    def __str__(self) -> str:
        body = "{" + ",".join(str(d) for d in self.sorted_degrees) + "}"
        return f"{self.name} = {body}" if self.name else body


def cadential_set(degrees: Iterable[Degree | int], arity: Arity | int = Arity.TETRADIC,
                  pattern: tuple[int, ...] = MAJOR) -> CadentialSet:
    """Build a set, attaching the conventional name when the pattern is major."""
    ds = frozenset(Degree(int(d)) for d in degrees)
    arity = Arity(int(arity))
    name = None
    if pattern == MAJOR:
        table = TETRADIC_NAMES if arity is Arity.TETRADIC else TRIADIC_NAMES
        name = table.get(frozenset(int(d) for d in ds))
    return CadentialSet(ds, arity, name)


def named_sets(arity: Arity | int = Arity.TETRADIC) -> dict[str, CadentialSet]:
    table = TETRADIC_NAMES if int(arity) == 4 else TRIADIC_NAMES
    sets = (cadential_set(ds, arity) for ds in table)
    return {s.name: s for s in sorted(sets, key=lambda s: int(s.name[1:]))}


def containing_roots(t: Tonality, positions: Iterable[int], arity: Arity | int) -> list[int]:
    """Roots of the pattern transpositions containing every listed degree chord of ``t``."""
    wanted = [stacked_chord(t, p, arity) for p in positions]
    return [
        r for r in range(12)
        if all(c in degree_chords(Tonality(r, t.pattern), arity) for c in wanted)
    ]


def is_cadential(t: Tonality, degrees: Iterable[Degree | int], arity: Arity | int = Arity.TETRADIC) -> bool:
    """True when ``t`` is the only transposition holding all the degree chords."""
    positions = [int(d) for d in degrees]
    if not positions:
        return False
    return containing_roots(t, positions, arity) == [t.root]


def is_minimal_cadential(t: Tonality, degrees: Iterable[Degree | int], arity: Arity | int = Arity.TETRADIC) -> bool:
    ds = sorted({int(d) for d in degrees})
    if not is_cadential(t, ds, arity):
        return False
    # cadentiality is upward closed, so dropping one element at a time suffices
    return not any(is_cadential(t, [d for d in ds if d != x], arity) for x in ds)


def minimal_cadential_sets(t: Tonality, arity: Arity | int = Arity.TETRADIC) -> list[CadentialSet]:
    """All minimal cadential degree sets of ``t``, by size then degree order.

    Non-heptatonic patterns are accepted; their sets carry no names.
    """
    n = len(t.pattern)
    found: list[tuple[int, ...]] = []
    for size in range(1, n + 1):
        for combo in combinations(range(1, n + 1), size):
            if any(set(f) <= set(combo) for f in found):
                continue
            if is_cadential(t, combo, arity):
                found.append(combo)
    return [cadential_set(c, arity, t.pattern) for c in found]


def region_of(s: CadentialSet | Iterable[Degree | int]) -> Region:
    degrees = s.degrees if isinstance(s, CadentialSet) else frozenset(Degree(int(d)) for d in s)
    if Degree.I in degrees:
        return Region.B
    if len(degrees) == 1:
        return Region.C
    return Region.A


# ---------------------------------------------------------------------------
# conglomerate links

@dataclass(frozen=True)
class PairLink:
    source: CadentialSet
    target: CadentialSet
    anchor: frozenset[Degree]
    morphism: Generator
    mapped: tuple[tuple[Degree, Degree], ...]

    @property
    def region(self) -> Region:
        return region_of(self.source)


class UnlinkedPair(ValueError):
    pass


PAIR_MORPHISMS = {
    frozenset({"J3", "J4"}): R42,
    frozenset({"J1", "J2"}): R42,
    frozenset({"J5", "J6"}): L13,
}


def _as_named(s: CadentialSet) -> CadentialSet:
    if s.name:
        return s
    return cadential_set(s.degrees, s.arity)


def cadence_pair_morphism(a: CadentialSet, b: CadentialSet, t: Tonality = Tonality(0)) -> PairLink:
    a, b = _as_named(a), _as_named(b)
    g = PAIR_MORPHISMS.get(frozenset({a.name, b.name}))
    if g is None or a.arity is not Arity.TETRADIC or a.name == b.name:
        raise UnlinkedPair(f"no conglomerate edge between {a} and {b}")
    anchor = a.degrees & b.degrees
    mapped = []
    for d in sorted(a.degrees - anchor):
        image = identify_degree(t, apply_generator(g, degree_chord(t, d)))
        if image is None or image not in b.degrees - anchor:
            raise AssertionError(f"{g} does not carry {d} of {a} into {b} in {t}")
        mapped.append((d, image))
    if {m for _, m in mapped} != set(b.degrees - anchor):
        raise AssertionError(f"{g} does not cover {b} from {a} in {t}")
    return PairLink(a, b, anchor, g, tuple(mapped))


def conglomerate_links(t: Tonality = Tonality(0)) -> list[PairLink]:
    sets = named_sets(Arity.TETRADIC)
    return [cadence_pair_morphism(sets[x], sets[y], t)
            for x, y in (("J3", "J4"), ("J1", "J2"), ("J5", "J6"))]


@dataclass(frozen=True)
class ImageChord:
    source_degree: Degree
    chord: RootedChord
    degree: Degree | None  # None when the image is foreign to the key

    @property
    def foreign(self) -> bool:
        return self.degree is None


def cadence_image(s: CadentialSet, g: Generator, t: Tonality) -> list[ImageChord]:
    out = []
    for d in s.sorted_degrees:
        src = degree_chord(t, d, s.arity)
        try:
            img = apply_generator(g, src)
        except DomainError as exc:
            raise DomainError(f"degree {d} of {t}: {exc}") from None
        out.append(ImageChord(d, img, identify_degree(t, img, s.arity)))
    return out


def verify_enumeration(arity: Arity | int) -> "VerificationReport":
    """Named k/J sets versus fresh enumeration at all twelve roots."""
    from .transform import VerificationReport

    arity = Arity(int(arity))
    rep = VerificationReport("cadences_" + arity.name.lower())
    expected = sorted(tuple(sorted(s)) for s in (TETRADIC_NAMES if arity is Arity.TETRADIC else TRIADIC_NAMES))
    for r in range(12):
        t = Tonality(r)
        got = sorted(tuple(int(d) for d in s.sorted_degrees) for s in minimal_cadential_sets(t, arity))
        tonic = degree_chord(t, Degree.I, arity)
        rep.expect(tonic, tuple(expected), tuple(got))
    return rep


def verify_not_minimal() -> "VerificationReport":
    """{II,V} tetradic: cadential everywhere, minimal nowhere."""
    from .transform import VerificationReport

    rep = VerificationReport("ii_v_not_minimal")
    for r in range(12):
        t = Tonality(r)
        tonic = degree_chord(t, Degree.I)
        rep.expect(tonic, (True, False), (is_cadential(t, [2, 5]), is_minimal_cadential(t, [2, 5])))
    return rep
