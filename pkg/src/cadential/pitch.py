"""Mod-12 pitch-class arithmetic and rooted chords.

Pitch classes are plain ints in 0..11 with C = 0. A chord is stored root-first:
a root pitch class plus strictly increasing semitone offsets starting at 0, so
``[x, x+4, x+7, x+11]`` with root ``x`` becomes ``RootedChord(x, (0, 4, 7, 11))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

PITCH_CLASSES = 12

_FLAT_NAMES = ("C", "Db", "D", "Eb", "E", "F", "Gb", "G", "Ab", "A", "Bb", "B")
_SHARP_NAMES = ("C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B")


class ChordError(ValueError):
    """Base class for malformed chord construction."""


class EmptyChord(ChordError):
    pass


class NonCanonicalIntervals(ChordError):
    pass


def pc(value: int) -> int:
    """Reduce an integer to a pitch class."""
    return value % PITCH_CLASSES


def pc_name(value: int, sharps: bool = False) -> str:
    names = _SHARP_NAMES if sharps else _FLAT_NAMES
    return names[pc(value)]


@dataclass(frozen=True, order=True)
class RootedChord:
    root: int
    intervals: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.root < PITCH_CLASSES:
            raise ValueError(f"root {self.root} outside 0..11")
        _check_intervals(self.intervals)

    @property
    def pcs(self) -> tuple[int, ...]:
        """Realized pitch classes in root-first order."""
        return tuple(pc(self.root + i) for i in self.intervals)

    @property
    def pc_set(self) -> frozenset[int]:
        return frozenset(self.pcs)

    @property
    def quality(self) -> "ChordQuality":
        return classify_quality(self)

    def __len__(self) -> int:
        return len(self.intervals)

    def __repr__(self) -> str:
        return f"RootedChord({pc_name(self.root)}, {list(self.intervals)})"


def _check_intervals(intervals: Sequence[int]) -> None:
    if len(intervals) == 0:
        raise EmptyChord("a chord needs at least one interval")
    if intervals[0] != 0:
        raise NonCanonicalIntervals(f"intervals must start at 0, got {list(intervals)}")
    for a, b in zip(intervals, intervals[1:]):
        if b <= a:
            raise NonCanonicalIntervals(
                f"intervals must be strictly increasing, got {list(intervals)}"
            )
    if intervals[-1] >= PITCH_CLASSES:
        raise NonCanonicalIntervals(f"intervals must be < 12, got {list(intervals)}")


def make_chord(root: int, intervals: Iterable[int]) -> RootedChord:
    """Build a canonical chord. Raises EmptyChord / NonCanonicalIntervals."""
    ivs = tuple(int(i) for i in intervals)
    _check_intervals(ivs)
    return RootedChord(pc(root), ivs)


def chord_from_pcs(root: int, pcs: Iterable[int]) -> RootedChord:
    """Normalize an arbitrary pc collection (any rotation) to root-first form.

    ``root`` must be a member of ``pcs``; duplicates are rejected.
    """
    members = [pc(p) for p in pcs]
    if not members:
        raise EmptyChord("no pitch classes given")
    if len(set(members)) != len(members):
        raise NonCanonicalIntervals(f"duplicate pitch classes in {members}")
    if pc(root) not in members:
        raise ValueError(f"root {pc(root)} not among {members}")
    return RootedChord(pc(root), tuple(sorted(pc(p - root) for p in members)))


def transpose(c: RootedChord, n: int) -> RootedChord:
    return RootedChord(pc(c.root + n), c.intervals)


@dataclass(frozen=True)
class ChordQuality:
    label: str
    intervals: tuple[int, ...]

    @property
    def is_other(self) -> bool:
        return self.label == "Other"

    def __str__(self) -> str:
        if self.is_other:
            return f"Other({list(self.intervals)})"
        return self.label


MAJOR_TRIAD = ChordQuality("MajorTriad", (0, 4, 7))
MINOR_TRIAD = ChordQuality("MinorTriad", (0, 3, 7))
DIM_TRIAD = ChordQuality("DimTriad", (0, 3, 6))
AUG_TRIAD = ChordQuality("AugTriad", (0, 4, 8))
MAJ7 = ChordQuality("Maj7", (0, 4, 7, 11))
DOM7 = ChordQuality("Dom7", (0, 4, 7, 10))
MIN7 = ChordQuality("Min7", (0, 3, 7, 10))
HALF_DIM7 = ChordQuality("HalfDim7", (0, 3, 6, 10))
DIM7 = ChordQuality("Dim7", (0, 3, 6, 9))
AUG_DOM7 = ChordQuality("AugDom7", (0, 4, 8, 10))
SIXTH = ChordQuality("Sixth", (0, 4, 7, 9))
MIN_SIXTH = ChordQuality("MinSixth", (0, 3, 7, 9))

NAMED_QUALITIES: tuple[ChordQuality, ...] = (
    MAJOR_TRIAD, MINOR_TRIAD, DIM_TRIAD, AUG_TRIAD,
    MAJ7, DOM7, MIN7, HALF_DIM7, DIM7, AUG_DOM7, SIXTH, MIN_SIXTH,
)
_BY_INTERVALS = {q.intervals: q for q in NAMED_QUALITIES}

SEVENTH_QUALITIES = (MAJ7, DOM7, MIN7, HALF_DIM7, DIM7)
TRIAD_QUALITIES = (MAJOR_TRIAD, MINOR_TRIAD, DIM_TRIAD, AUG_TRIAD)


def classify_quality(c: RootedChord) -> ChordQuality:
    return _BY_INTERVALS.get(c.intervals) or ChordQuality("Other", c.intervals)


def chords_of(quality: ChordQuality) -> list[RootedChord]:
    """All twelve transpositions of a quality, ordered by root."""
    return [RootedChord(r, quality.intervals) for r in range(PITCH_CLASSES)]


_SHORT_SUFFIX = {
    "MajorTriad": "", "MinorTriad": "m", "DimTriad": "dim", "AugTriad": "+",
    "Maj7": "maj7", "Dom7": "7", "Min7": "m7", "HalfDim7": "m7b5", "Dim7": "dim7",
    "AugDom7": "+7", "Sixth": "6", "MinSixth": "m6",
}


def chord_name(c: RootedChord, sharps: bool = False) -> str:
    """Compact symbol for display, e.g. ``Dm7``; unnamed qualities show offsets."""
    q = classify_quality(c)
    root = pc_name(c.root, sharps)
    if q.is_other:
        return f"{root}[{','.join(map(str, c.intervals))}]"
    return root + _SHORT_SUFFIX[q.label]
