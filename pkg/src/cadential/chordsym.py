"""Jazz chord symbols and the ``.ls`` lead-sheet format.

A chord symbol is ``root [quality] [alterations...] [/bass]``, e.g. ``Bbmaj7``,
``A7b9``, ``F+7``, ``C#m7``, ``G7b9/B``. ``♭``/``♯`` are accepted for ``b``/``#``.

Lead sheets::

    title: Blues for Alice
    key: F
    section: head
    | F6 | Em7 A7b9 | Dm7 G7 |   # comment

Bars are split on ``|`` and chords on whitespace. ``NC`` (or ``N.C.``) marks a
bar with no harmony.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace

from .pitch import RootedChord, classify_quality, ChordQuality, make_chord, pc

_LETTERS = {"C": 0, "D": 2, "E": 4, "F": 5, "G": 7, "A": 9, "B": 11}
_UNICODE = str.maketrans({"♭": "b", "♯": "#", "⁺": "+", "Δ": "^", "△": "^"})


class ChordSymbolError(ValueError):
    def __init__(self, message: str, text: str, span: tuple[int, int]):
        super().__init__(f"{message}: {text!r} at [{span[0]}:{span[1]}]")
        self.text = text
        self.span = span


class UnknownRoot(ChordSymbolError):
    pass


class UnknownQuality(ChordSymbolError):
    pass


class TrailingGarbage(ChordSymbolError):
    pass


class ContradictoryAlterations(ValueError):
    pass


# canonical token -> base intervals (9ths etc. reduced mod 12)
QUALITY_INTERVALS: dict[str, tuple[int, ...]] = {
    "": (0, 4, 7),
    "m": (0, 3, 7),
    "dim": (0, 3, 6),
    "+": (0, 4, 8),
    "6": (0, 4, 7, 9),
    "m6": (0, 3, 7, 9),
    "7": (0, 4, 7, 10),
    "maj7": (0, 4, 7, 11),
    "m7": (0, 3, 7, 10),
    "m7b5": (0, 3, 6, 10),
    "dim7": (0, 3, 6, 9),
    "+7": (0, 4, 8, 10),
    "9": (0, 4, 7, 10, 2),
    "maj9": (0, 4, 7, 11, 2),
    "m9": (0, 3, 7, 10, 2),
    "13": (0, 4, 7, 10, 2, 9),
    "sus2": (0, 2, 7),
    "sus4": (0, 5, 7),
    "7sus4": (0, 5, 7, 10),
}

_QUALITY_ALIASES: dict[str, str] = {
    "maj": "", "M": "",
    "m": "m", "mi": "m", "min": "m", "-": "m",
    "dim": "dim", "o": "dim",
    "aug": "+", "+": "+",
    "6": "6", "m6": "m6", "mi6": "m6", "min6": "m6", "-6": "m6",
    "7": "7",
    "maj7": "maj7", "M7": "maj7", "ma7": "maj7", "^7": "maj7", "^": "maj7",
    "m7": "m7", "mi7": "m7", "min7": "m7", "-7": "m7",
    "m7b5": "m7b5", "mi7b5": "m7b5", "min7b5": "m7b5", "-7b5": "m7b5",
    "ø": "m7b5", "ø7": "m7b5",
    "dim7": "dim7", "o7": "dim7",
    "+7": "+7", "aug7": "+7", "7#5": "+7",
    "9": "9", "maj9": "maj9", "M9": "maj9", "^9": "maj9",
    "m9": "m9", "mi9": "m9", "min9": "m9", "-9": "m9",
    "13": "13",
    "sus2": "sus2", "sus4": "sus4", "sus": "sus4", "7sus4": "7sus4", "7sus": "7sus4",
}
# longest alias first so "m7b5" wins over "m7" and "maj7" over "m"
_ALIAS_ORDER = sorted(_QUALITY_ALIASES, key=len, reverse=True)

ALTERATIONS = ("b5", "#5", "b9", "#9", "#11", "b13")
_ALT_ORDER = {a: i for i, a in enumerate(ALTERATIONS)}


@dataclass(frozen=True)
class ParsedChord:
    root: str
    quality: str = ""
    alterations: tuple[str, ...] = ()
    bass: str | None = None

    @property
    def root_pc(self) -> int:
        return spelling_pc(self.root)

    def render(self) -> str:
        alts = "".join(self.alterations)
        s = self.root + self.quality + alts
        if alts and _reads_differently(s, self):
            # "Cb5" reads as C-flat, "Cm7b5" as half-diminished
            s = f"{self.root}{self.quality}({alts})"
        return f"{s}/{self.bass}" if self.bass else s

    def transposed(self, n: int, sharps: bool | None = None) -> "ParsedChord":
        def move(sp: str) -> str:
            use_sharps = "#" in sp if sharps is None else sharps
            return spell(spelling_pc(sp) + n, use_sharps)

        return replace(self, root=move(self.root), bass=move(self.bass) if self.bass else None)

    def __str__(self) -> str:
        return self.render()


def _reads_differently(text: str, chord: "ParsedChord") -> bool:
    try:
        return parse_chord(text) != replace(chord, bass=None)
    except ChordSymbolError:
        return True


def spelling_pc(spelling: str) -> int:
    value = _LETTERS[spelling[0]]
    for acc in spelling[1:]:
        value += -1 if acc == "b" else 1
    return pc(value)


_FLATS = ("C", "Db", "D", "Eb", "E", "F", "Gb", "G", "Ab", "A", "Bb", "B")
_SHARPS = ("C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B")


def spell(pc_value: int, sharps: bool = False) -> str:
    return (_SHARPS if sharps else _FLATS)[pc(pc_value)]


# major keys whose signatures carry sharps
SHARP_KEYS = frozenset({7, 2, 9, 4, 11, 6})


def _root_at(text: str, pos: int) -> tuple[str, int]:
    if pos >= len(text) or text[pos] not in _LETTERS:
        raise UnknownRoot("expected a root letter A-G", text, (pos, pos + 1))
    end = pos + 1
    if end < len(text) and text[end] in "b#":
        end += 1
    return text[pos:end], end


def parse_chord(text: str) -> ParsedChord:
    raw = text.strip().translate(_UNICODE)
    if not raw:
        raise UnknownRoot("empty chord symbol", text, (0, 0))
    root, pos = _root_at(raw, 0)

    quality = ""
    for alias in _ALIAS_ORDER:
        if raw.startswith(alias, pos):
            quality = _QUALITY_ALIASES[alias]
            pos += len(alias)
            break

    alterations: list[str] = []
    group = raw.startswith("(", pos)
    pos += group
    while pos < len(raw) and raw[pos] != "/":
        if group and raw[pos] in ",)":
            pos += 1
            group = raw[pos - 1] == ","
            continue
        for alt in sorted(ALTERATIONS, key=len, reverse=True):
            if raw.startswith(alt, pos):
                alterations.append(alt)
                pos += len(alt)
                break
        else:
            cls = UnknownQuality if not alterations and quality == "" and not group else TrailingGarbage
            raise cls("unrecognized chord suffix", text, (pos, len(raw)))

    if group:
        raise TrailingGarbage("unclosed '('", text, (pos, len(raw)))

    bass = None
    if pos < len(raw):  # slash bass
        bass, end = _root_at(raw, pos + 1)
        if end != len(raw):
            raise TrailingGarbage("junk after bass note", text, (end, len(raw)))

    if len(set(alterations)) != len(alterations):
        raise TrailingGarbage("repeated alteration", text, (0, len(raw)))
    return ParsedChord(root, quality, tuple(sorted(alterations, key=_ALT_ORDER.get)), bass)


def realize_chord(p: ParsedChord) -> tuple[RootedChord, ChordQuality]:
    ivs = set(QUALITY_INTERVALS[p.quality])
    alts = set(p.alterations)
    fifth = 7 if 7 in ivs else 6 if 6 in ivs else 8 if 8 in ivs else None
    if {"b5", "#5"} <= alts:
        raise ContradictoryAlterations(f"{p}: both b5 and #5")
    if "b5" in alts and fifth == 8 or "#5" in alts and fifth == 6:
        raise ContradictoryAlterations(f"{p}: altered fifth clashes with the quality's fifth")
    if "b5" in alts:
        ivs.discard(7)
        ivs.add(6)
    if "#5" in alts:
        ivs.discard(7)
        ivs.add(8)
    if "b9" in alts or "#9" in alts:
        if "#9" in alts and 3 in ivs and 4 not in ivs:
            raise ContradictoryAlterations(f"{p}: #9 on a minor third")
        ivs.discard(2)
        ivs.update({1} if "b9" in alts else set())
        ivs.update({3} if "#9" in alts else set())
    if "#11" in alts:
        if fifth == 6 and "b5" not in alts:
            raise ContradictoryAlterations(f"{p}: #11 duplicates the flat fifth")
        ivs.add(6)
    if "b13" in alts:
        if fifth == 8:
            raise ContradictoryAlterations(f"{p}: b13 duplicates the raised fifth")
        ivs.discard(9)
        ivs.add(8)
    chord = make_chord(p.root_pc, sorted(ivs))
    return chord, classify_quality(chord)


def realize(text_or_chord: str | ParsedChord) -> RootedChord:
    p = parse_chord(text_or_chord) if isinstance(text_or_chord, str) else text_or_chord
    return realize_chord(p)[0]


# ---------------------------------------------------------------------------
# lead sheets


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class EmptySheet(ValueError):
    pass


@dataclass(frozen=True)
class Event:
    measure: int
    chord: ParsedChord
    weight: float
    section: int = 0


@dataclass
class Progression:
    title: str = ""
    declared_key: str | None = None
    measures: list[list[tuple[ParsedChord, float]]] = field(default_factory=list)
    sections: list[tuple[str, int]] = field(default_factory=list)  # (name, first measure)

    def section_of(self, measure: int) -> int:
        idx = 0
        for i, (_, first) in enumerate(self.sections):
            if first <= measure:
                idx = i
        return idx

    def events(self) -> list[Event]:
        return [
            Event(m, chord, w, self.section_of(m))
            for m, bar in enumerate(self.measures, start=1)
            for chord, w in bar
        ]

    def section_spans(self) -> list[tuple[str, int, int]]:
        """(name, first, last) measure spans; a sheet without headers is one section."""
        if not self.measures:
            return []
        heads = self.sections or [("", 1)]
        heads = [h for h in heads if h[1] <= len(self.measures)]
        out = []
        for i, (name, first) in enumerate(heads):
            last = heads[i + 1][1] - 1 if i + 1 < len(heads) else len(self.measures)
            if last >= first:
                out.append((name, first, last))
        return out

    def transposed(self, n: int) -> "Progression":
        key = None
        if self.declared_key:
            key = spell(spelling_pc(self.declared_key) + n)
        return Progression(
            self.title,
            key,
            [[(c.transposed(n, sharps=False), w) for c, w in bar] for bar in self.measures],
            list(self.sections),
        )

    def render(self) -> str:
        lines = []
        if self.title:
            lines.append(f"title: {self.title}")
        if self.declared_key:
            lines.append(f"key: {self.declared_key}")
        starts = {first: name for name, first in self.sections}
        row: list[str] = []
        for m, bar in enumerate(self.measures, start=1):
            if m in starts:
                if row:
                    lines.append("| " + " | ".join(row) + " |")
                    row = []
                lines.append(f"section: {starts[m]}")
            row.append(" ".join(c.render() for c, _ in bar) or "NC")
        if row:
            lines.append("| " + " | ".join(row) + " |")
        return "\n".join(lines) + "\n"


def progression(*bars: str, title: str = "", key: str | None = None) -> Progression:
    """Build a progression from bar strings, e.g. ``progression("Dm7 G7", "Cmaj7")``."""
    return parse_leadsheet(
        (f"title: {title}\n" if title else "")
        + (f"key: {key}\n" if key else "")
        + "| " + " | ".join(bars) + " |"
    )


_NO_CHORD = {"NC", "N.C.", "%NC"}
_HEADER = re.compile(r"^\s*(title|key|section)\s*:(.*)$", re.IGNORECASE)


def _strip_comment(line: str) -> str:
    # '#' starts a comment only at the start of a token; C# keeps its sharp
    m = re.search(r"(^|\s)#", line)
    return line[: m.start()] if m else line


def parse_leadsheet(text: str) -> Progression:
    prog = Progression()
    raw_bars: list[list[ParsedChord]] = []
    pending_section: str | None = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = _strip_comment(line)
        if not body.strip():
            continue
        header = _HEADER.match(body)
        if header:
            name, value = header.group(1).lower(), header.group(2).strip()
            if name == "title":
                prog.title = value
            elif name == "key":
                try:
                    _, end = _root_at(value, 0)
                    if end != len(value):
                        raise ValueError
                except (UnknownRoot, ValueError):
                    raise ParseError(f"bad key {value!r}", lineno, body.index(value) + 1) from None
                prog.declared_key = value
            else:
                pending_section = value
            continue
        col = 0
        for segment in body.split("|"):
            tokens = segment.split()
            if tokens:
                if pending_section is not None:
                    prog.sections.append((pending_section, len(raw_bars) + 1))
                    pending_section = None
                bar = []
                search_from = col
                for tok in tokens:
                    tcol = body.index(tok, search_from)
                    search_from = tcol + len(tok)
                    if tok.upper() in _NO_CHORD:
                        continue
                    try:
                        bar.append(parse_chord(tok))
                    except ChordSymbolError as exc:
                        raise ParseError(str(exc), lineno, tcol + exc.span[0] + 1) from None
                raw_bars.append(bar)
            col += len(segment) + 1
    if not raw_bars:
        raise EmptySheet("lead sheet has no measures")
    prog.measures = [[(c, 1.0 / len(bar)) for c in bar] for bar in raw_bars]
    return prog


def load_leadsheet(path) -> Progression:
    with open(path, encoding="utf-8") as fh:
        return parse_leadsheet(fh.read())
