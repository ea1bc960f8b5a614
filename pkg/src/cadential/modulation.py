"""Pivots, quantized-modulation lookup, P42 bridges and descending chains."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable, Mapping

from .cadence import Arity, Degree, Tonality, degree_chord, degree_chords, identify_degree
from .chordsym import SHARP_KEYS, ParsedChord, Progression, parse_chord, spell
from .pitch import MAJ7, RootedChord, chord_name, classify_quality, pc
from .transform import P42, DomainError, apply_generator


@dataclass(frozen=True)
class PivotTableEntry:
    interval: int
    required_degrees: frozenset[Degree]


class PivotTableError(ValueError):
    pass


_LINE = re.compile(r"^interval\s*=\s*(\d+)\s+degrees\s*=\s*([A-Za-z ,]+)$")


def parse_pivot_table(text: str) -> dict[int, PivotTableEntry]:
    table: dict[int, PivotTableEntry] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _LINE.match(line)
        if not m:
            raise PivotTableError(f"line {lineno}: expected 'interval=<n> degrees=<I,II,...>'")
        interval = int(m.group(1))
        if not 0 <= interval <= 11:
            raise PivotTableError(f"line {lineno}: interval {interval} outside 0..11")
        try:
            degrees = frozenset(Degree.parse(d) for d in m.group(2).split(",") if d.strip())
        except ValueError as exc:
            raise PivotTableError(f"line {lineno}: {exc}") from None
        if not degrees:
            raise PivotTableError(f"line {lineno}: no degrees")
        table[interval] = PivotTableEntry(interval, degrees)
    return table


def load_pivot_table(path=None) -> dict[int, PivotTableEntry]:
    """Read a pivot table file; with no path, the bundled two-entry table."""
    if path is None:
        text = resources.files("cadential").joinpath("pivots.txt").read_text(encoding="utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return parse_pivot_table(text)


DEFAULT_PIVOT_TABLE: Mapping[int, PivotTableEntry] = {
    5: PivotTableEntry(5, frozenset({Degree.II, Degree.VII})),
    7: PivotTableEntry(7, frozenset({Degree.III, Degree.V})),
}


class Verdict(str, enum.Enum):
    QUANTIZED = "Quantized"
    NON_QUANTIZED = "NonQuantized"


@dataclass(frozen=True)
class ModulationClassification:
    source: Tonality
    target: Tonality
    presented_degrees: frozenset[Degree]
    verdict: Verdict
    required_degrees: frozenset[Degree] = frozenset()
    missing: frozenset[Degree] = frozenset()
    reason: str | None = None  # "missing" | "no-table-entry" when not quantized

    @property
    def interval(self) -> int:
        return pc(self.target.root - self.source.root)

    @property
    def quantized(self) -> bool:
        return self.verdict is Verdict.QUANTIZED


def classify_modulation(
    source: Tonality,
    target: Tonality,
    presented: Iterable[Degree],
    table: Mapping[int, PivotTableEntry] = DEFAULT_PIVOT_TABLE,
) -> ModulationClassification:
    presented = frozenset(Degree(int(d)) for d in presented)
    entry = table.get(pc(target.root - source.root))
    if entry is None:
        return ModulationClassification(
            source, target, presented, Verdict.NON_QUANTIZED, reason="no-table-entry"
        )
    missing = entry.required_degrees - presented
    if missing:
        return ModulationClassification(
            source, target, presented, Verdict.NON_QUANTIZED,
            entry.required_degrees, frozenset(missing), "missing",
        )
    return ModulationClassification(
        source, target, presented, Verdict.QUANTIZED, entry.required_degrees
    )


def common_degree_chords(
    k1: Tonality, k2: Tonality, arity: Arity | int = Arity.TETRADIC
) -> list[tuple[RootedChord, Degree, Degree]]:
    out = []
    for i, c in enumerate(degree_chords(k1, arity), start=1):
        d2 = identify_degree(k2, c, arity)
        if d2 is not None:
            out.append((c, Degree(i), d2))
    return out


@dataclass(frozen=True)
class BridgeResult:
    source_chord: RootedChord
    bridge_chord: RootedChord
    target_key: Tonality
    target_degree: Degree = Degree.II
    establishing_sets: tuple[frozenset[Degree], ...] = (
        frozenset({Degree.II, Degree.V}),  # cadential, not minimal
        frozenset({Degree.I, Degree.II}),  # J1
    )


def p42_bridge(c: RootedChord) -> BridgeResult:
    if classify_quality(c) != MAJ7:
        raise DomainError(f"P42 bridge needs a Maj7 chord, got {chord_name(c)}")
    return BridgeResult(c, apply_generator(P42, c), Tonality(c.root - 2), Degree.II)


def key_spelled(key: Tonality, c: RootedChord) -> ParsedChord:
    """Chord symbol spelled with the key signature's accidentals."""
    return parse_chord(chord_name(c, sharps=key.root in SHARP_KEYS))


def descending_chain(start: Tonality, length: int, fast: bool = False) -> Progression:
    """ii-V-I (or ii-I when ``fast``) per key, keys falling by whole steps.

    Each new key's ii is the P42 image of the previous tonic.
    """
    if length < 1:
        raise ValueError("length must be at least 1")
    degrees = (Degree.II, Degree.I) if fast else (Degree.II, Degree.V, Degree.I)
    measures = []
    key = start
    for _ in range(length):
        chords = [key_spelled(key, degree_chord(key, d)) for d in degrees]
        measures.append([(c, 1.0 / len(chords)) for c in chords])
        key = Tonality(key.root - 2, key.pattern)
    title = f"{'fast ' if fast else ''}descending chain from {start.name(start.root in SHARP_KEYS)}"
    return Progression(title, spell(start.root, start.root in SHARP_KEYS), measures)
