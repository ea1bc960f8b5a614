"""Lead-sheet analysis: degree matching, cadence activation, keys, modulations.

Matching modes for an event against a key's degree chords:

``exact``        realized chord equals the degree tetrad (strength 2)
``degree_root``  chord root equals the degree's root (strength 1, 2 if also exact)
``cover``        degree tetrad pcs lie inside the union of ``cover_span``
                 consecutive events (strength 1)

Keys are inferred per section with a sliding window of measures. The active key
switches only when another key outscores it by ``switch_margin`` (duration
weighted) and has an activated minimal cadential set in that window; the change
is then placed at the best split point inside the window.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .cadence import (
    Arity, CadentialSet, Degree, Region, Tonality, degree_chords, minimal_cadential_sets,
    region_of,
)
from .chordsym import Event, ParsedChord, Progression, spell, SHARP_KEYS, realize_chord
from .modulation import (
    DEFAULT_PIVOT_TABLE, BridgeResult, ModulationClassification, PivotTableEntry,
    classify_modulation, p42_bridge,
)
from .pitch import MAJ7, MIN7, SIXTH, RootedChord, chord_name, classify_quality, pc


class MatchMode(str, enum.Enum):
    EXACT = "exact"
    DEGREE_ROOT = "degree_root"
    COVER = "cover"


STRENGTH = {MatchMode.EXACT: 2, MatchMode.DEGREE_ROOT: 1, MatchMode.COVER: 1}


@dataclass
class AnalysisConfig:
    mode: MatchMode = MatchMode.DEGREE_ROOT
    window: int = 4
    stride: int = 1
    cover_span: int = 2
    passage_radius: int = 2
    switch_margin: float = 2.0
    sixth_as_tonic: bool = True
    pivot_table: dict[int, PivotTableEntry] = field(default_factory=lambda: dict(DEFAULT_PIVOT_TABLE))

    def __post_init__(self) -> None:
        self.mode = MatchMode(self.mode)
        if self.window < 1 or self.stride < 1 or self.cover_span < 1:
            raise ValueError("window, stride and cover_span must be positive")
        if self.passage_radius < 0:
            raise ValueError("passage_radius must be >= 0")


@dataclass(frozen=True)
class DegreeMatch:
    measure: int
    chord: ParsedChord
    key: Tonality
    degree: Degree
    mode: MatchMode
    strength: int
    events: tuple[int, ...] = ()  # event indices behind the match
    note: str | None = None


def key_name(t: Tonality) -> str:
    return spell(t.root, t.root in SHARP_KEYS)


# ---------------------------------------------------------------------------
# matching


def _realized(events: Sequence[Event]) -> list[RootedChord]:
    return [realize_chord(e.chord)[0] for e in events]


def _root_matches(events, chords, key: Tonality, sixth_as_tonic: bool) -> list[DegreeMatch]:
    tetrads = degree_chords(key, Arity.TETRADIC)
    roots = [c.root for c in tetrads]
    out = []
    for i, (e, c) in enumerate(zip(events, chords)):
        if c.root not in roots:
            continue
        d = Degree(roots.index(c.root) + 1)
        exact = tetrads[d - 1] == c
        note = None
        if sixth_as_tonic and d is Degree.I and classify_quality(c) == SIXTH:
            note = "tonic-substitute"
        mode = MatchMode.EXACT if exact else MatchMode.DEGREE_ROOT
        out.append(DegreeMatch(e.measure, e.chord, key, d, mode, 2 if exact else 1, (i,), note))
    return out


def _cover_matches(events, chords, key: Tonality, span: int) -> list[DegreeMatch]:
    tetrads = degree_chords(key, Arity.TETRADIC)
    out = []
    # windows never straddle a section boundary
    n = len(events)
    for start in range(n):
        idx = [start]
        while len(idx) < span and idx[-1] + 1 < n and events[idx[-1] + 1].section == events[start].section:
            idx.append(idx[-1] + 1)
        if len(idx) < span and start > 0 and events[start - 1].section == events[start].section:
            continue  # tail shorter than span is already covered by an earlier window
        union = frozenset().union(*(chords[i].pc_set for i in idx))
        for d, tet in enumerate(tetrads, start=1):
            if tet.pc_set <= union:
                e = events[start]
                out.append(DegreeMatch(e.measure, e.chord, key, Degree(d), MatchMode.COVER,
                                       STRENGTH[MatchMode.COVER], tuple(idx)))
    return out


def match_events(
    events: Sequence[Event], key: Tonality, mode: MatchMode | str,
    cover_span: int = 2, sixth_as_tonic: bool = True,
) -> list[DegreeMatch]:
    mode = MatchMode(mode)
    chords = _realized(events)
    if mode is MatchMode.COVER:
        return _cover_matches(events, chords, key, cover_span)
    matches = _root_matches(events, chords, key, sixth_as_tonic)
    if mode is MatchMode.EXACT:
        matches = [m for m in matches if m.mode is MatchMode.EXACT]
    return matches


def match_degrees(
    p: Progression, key: Tonality, mode: MatchMode | str = MatchMode.DEGREE_ROOT,
    cover_span: int = 2, sixth_as_tonic: bool = True,
) -> list[DegreeMatch]:
    return match_events(p.events(), key, mode, cover_span, sixth_as_tonic)


@dataclass(frozen=True)
class Activation:
    cadence: CadentialSet
    region: Region


def activated_cadences(
    matches: Iterable[DegreeMatch], key: Tonality, arity: Arity = Arity.TETRADIC
) -> list[Activation]:
    """Minimal cadential sets of ``key`` whose degrees are all matched."""
    matched = {m.degree for m in matches if m.key == key}
    return [
        Activation(s, region_of(s))
        for s in sorted(minimal_cadential_sets(key, arity), key=_set_order)
        if s.degrees <= matched
    ]


def _set_order(s: CadentialSet):
    return (int(s.name[1:]) if s.name else 99, s.sorted_degrees)


# ---------------------------------------------------------------------------
# keys


@dataclass(frozen=True)
class KeySegment:
    first: int
    last: int
    key: Tonality
    score: float


def _weighted_score(events, chords, key: Tonality) -> float:
    tetrads = degree_chords(key)
    roots = [c.root for c in tetrads]
    total = 0.0
    for e, c in zip(events, chords):
        if c.root in roots:
            total += e.weight * (2 if tetrads[roots.index(c.root)] == c else 1)
    return total


def _fifths_distance(a: int, b: int) -> int:
    steps = pc((b - a) * 7)
    return min(steps, 12 - steps)


def _section_windows(first: int, last: int, cfg: AnalysisConfig) -> list[tuple[int, int]]:
    if last - first + 1 <= cfg.window:
        return [(first, last)]
    starts = range(first, last - cfg.window + 2, cfg.stride)
    spans = [(s, s + cfg.window - 1) for s in starts]
    if spans[-1][1] < last:
        spans.append((last - cfg.window + 1, last))
    return spans


def _home_key(p: Progression, events, chords) -> Tonality:
    if p.declared_key:
        return Tonality(ParsedChord(p.declared_key).root_pc)
    scores = [(_weighted_score(events, chords, Tonality(r)), -r) for r in range(12)]
    return Tonality(-max(scores)[1])


def _choose(scores: dict[int, float], current: int, home: int) -> int:
    best = max(scores.values())
    tied = [k for k, v in scores.items() if v == best]
    if current in tied:
        return current
    if home in tied:
        return home
    # closest on the circle of fifths, subdominant side first
    return min(tied, key=lambda k: (_fifths_distance(current, k), pc((k - current) * 7) != 11))


def infer_keys(p: Progression, config: AnalysisConfig | None = None) -> list[KeySegment]:
    cfg = config or AnalysisConfig()
    events = p.events()
    if not events:
        return []
    chords = _realized(events)
    home = _home_key(p, events, chords)
    current = home.root
    boundaries: list[tuple[int, int, float]] = []  # (first measure, key root, score)
    for _, first, last in p.section_spans():
        for ws, we in _section_windows(first, last, cfg):
            idx = [i for i, e in enumerate(events) if ws <= e.measure <= we]
            if not idx:
                continue
            ev = [events[i] for i in idx]
            ch = [chords[i] for i in idx]
            scores = {r: _weighted_score(ev, ch, Tonality(r)) for r in range(12)}
            if not boundaries:
                boundaries.append((first, current, scores[current]))
            best = _choose(scores, current, home.root)
            if best == current or scores[best] - scores[current] < cfg.switch_margin:
                continue
            new_key = Tonality(best)
            acts = activated_cadences(
                _root_matches(ev, ch, new_key, cfg.sixth_as_tonic), new_key)
            if not acts:
                continue
            split = _split_point(ev, ch, Tonality(current), new_key, ws, we)
            split = max(split, boundaries[-1][0] + 1)
            boundaries.append((split, best, scores[best]))
            current = best
    last_measure = len(p.measures)
    segments = []
    for i, (first, root, score) in enumerate(boundaries):
        end = boundaries[i + 1][0] - 1 if i + 1 < len(boundaries) else last_measure
        segments.append(KeySegment(first, end, Tonality(root), score))
    return segments


def _split_point(ev, ch, old: Tonality, new: Tonality, ws: int, we: int) -> int:
    """Measure in [ws, we] from which the new key fits best; later wins ties."""
    best_gain, best_m = None, ws
    for m in range(ws, we + 1):
        gain = sum(
            _weighted_score([e], [c], new) - _weighted_score([e], [c], old)
            for e, c in zip(ev, ch) if e.measure >= m
        )
        if best_gain is None or gain >= best_gain:
            best_gain, best_m = gain, m
    return best_m


def key_at(segments: Sequence[KeySegment], measure: int) -> Tonality | None:
    for s in segments:
        if s.first <= measure <= s.last:
            return s.key
    return None


# ---------------------------------------------------------------------------
# modulations and bridges


@dataclass(frozen=True)
class ModulationFinding:
    measure: int
    classification: ModulationClassification
    passage: tuple[int, int]
    evidence: tuple[DegreeMatch, ...]


def _section_bounds(p: Progression, measure: int) -> tuple[int, int]:
    for _, first, last in p.section_spans():
        if first <= measure <= last:
            return first, last
    return 1, len(p.measures)


def _all_mode_matches(events, key: Tonality, cfg: AnalysisConfig) -> list[DegreeMatch]:
    return (match_events(events, key, MatchMode.DEGREE_ROOT, cfg.cover_span, cfg.sixth_as_tonic)
            + match_events(events, key, MatchMode.COVER, cfg.cover_span, cfg.sixth_as_tonic))


def detect_modulations(
    p: Progression, config: AnalysisConfig | None = None,
    segments: Sequence[KeySegment] | None = None,
) -> list[ModulationFinding]:
    """Classify every key change of the timeline.

    The passage runs from ``passage_radius`` bars before the change to the
    later of ``passage_radius`` bars after it and the end of the new key's
    segment, clipped to the section.
    """
    cfg = config or AnalysisConfig()
    segments = list(segments) if segments is not None else infer_keys(p, cfg)
    events = p.events()
    out = []
    for prev, seg in zip(segments, segments[1:]):
        m = seg.first
        sec_first, sec_last = _section_bounds(p, m)
        lo = max(sec_first, m - cfg.passage_radius)
        hi = min(sec_last, max(m + cfg.passage_radius, seg.last))
        passage = [e for e in events if lo <= e.measure <= hi]
        matches = _all_mode_matches(passage, seg.key, cfg)
        presented = {mt.degree for mt in matches}
        cls = classify_modulation(prev.key, seg.key, presented, cfg.pivot_table)
        wanted = cls.required_degrees or frozenset(presented)
        evidence = tuple(sorted(
            (mt for mt in matches if mt.degree in wanted),
            key=lambda mt: (mt.degree, -mt.strength, mt.measure, mt.mode.value),
        ))
        out.append(ModulationFinding(m, cls, (lo, hi), evidence))
    return out


@dataclass(frozen=True)
class BridgeFinding:
    measure: int  # measure of the bridge (second) chord
    source: ParsedChord
    target: ParsedChord
    result: BridgeResult
    note: str | None = None


def detect_bridges(p: Progression, config: AnalysisConfig | None = None) -> list[BridgeFinding]:
    """Consecutive events (c1, c2) with c2 = P42(c1)."""
    cfg = config or AnalysisConfig()
    events = p.events()
    chords = _realized(events)
    out = []
    for (e1, c1), (e2, c2) in zip(zip(events, chords), zip(events[1:], chords[1:])):
        if e1.section != e2.section or classify_quality(c2) != MIN7:
            continue
        q1 = classify_quality(c1)
        note = None
        if q1 == SIXTH and cfg.sixth_as_tonic:
            c1 = RootedChord(c1.root, MAJ7.intervals)
            note = "sixth chord read as Maj7"
        elif q1 != MAJ7:
            continue
        result = p42_bridge(c1)
        if result.bridge_chord == c2:
            out.append(BridgeFinding(e2.measure, e1.chord, e2.chord, result, note))
    return out


# ---------------------------------------------------------------------------
# report


@dataclass(frozen=True)
class WindowFinding:
    first: int
    last: int
    key: Tonality
    matched: frozenset[Degree]
    activations: tuple[Activation, ...]

    @property
    def names(self) -> list[str]:
        return [a.cadence.name or str(a.cadence) for a in self.activations]

    @property
    def regions(self) -> list[Region]:
        return sorted({a.region for a in self.activations}, key=lambda r: r.value)


@dataclass
class AnalysisReport:
    title: str
    config: AnalysisConfig
    key_timeline: list[KeySegment]
    windows: list[WindowFinding]
    modulations: list[ModulationFinding]
    bridges: list[BridgeFinding]
    region_stats: dict[str, float]
    chromatic: list[tuple[int, ParsedChord]]


def analyze(p: Progression, config: AnalysisConfig | None = None) -> AnalysisReport:
    cfg = config or AnalysisConfig()
    segments = infer_keys(p, cfg)
    events = p.events()
    windows: list[WindowFinding] = []
    chromatic: list[tuple[int, ParsedChord]] = []
    if events:
        for _, first, last in p.section_spans():
            for ws, we in _section_windows(first, last, cfg):
                ev = [e for e in events if ws <= e.measure <= we]
                if not ev:
                    continue
                keys = []
                for m in range(ws, we + 1):
                    k = key_at(segments, m)
                    if k is not None and k not in keys:
                        keys.append(k)
                for k in keys:
                    matches = match_events(ev, k, cfg.mode, cfg.cover_span, cfg.sixth_as_tonic)
                    windows.append(WindowFinding(
                        ws, we, k, frozenset(mt.degree for mt in matches),
                        tuple(activated_cadences(matches, k)),
                    ))
        for e in events:
            k = key_at(segments, e.measure)
            if not match_events([e], k, MatchMode.DEGREE_ROOT):
                chromatic.append((e.measure, e.chord))
    return AnalysisReport(
        p.title, cfg, segments, windows, detect_modulations(p, cfg, segments),
        detect_bridges(p, cfg), region_stats(windows), chromatic,
    )


def region_stats(windows: Sequence[WindowFinding]) -> dict[str, float]:
    """Share of windows per region; a window's unit is split over its activations."""
    totals = {r.value: 0.0 for r in Region}
    counted = 0
    for w in windows:
        if not w.activations:
            continue
        counted += 1
        for a in w.activations:
            totals[a.region.value] += 1.0 / len(w.activations)
    if counted:
        totals = {k: v / counted for k, v in totals.items()}
    return totals


# ---------------------------------------------------------------------------
# serialization


def _degrees(ds: Iterable[Degree]) -> list[str]:
    return [str(d) for d in sorted(ds)]


def _match_dict(m: DegreeMatch) -> dict:
    out = {"measure": m.measure, "chord": m.chord.render(), "degree": str(m.degree),
           "mode": m.mode.value, "strength": m.strength}
    if m.note:
        out["note"] = m.note
    return out


LEGEND = [
    "degree_root matching reads chords by root (F6 as I, G7 as II in F); exact and cover matches are listed in evidence.",
    "Under exact matching F7 and Bb7 are not I7/IV7 of F, so J2 in bars 4-5 of Blues for Alice needs root matching.",
    "F+7 is accepted as V of Bb by root only.",
]


def report_to_dict(r: AnalysisReport) -> dict:
    return {
        "title": r.title,
        "key_timeline": [
            {"first_measure": s.first, "last_measure": s.last, "key": key_name(s.key),
             "root": s.key.root, "score": s.score}
            for s in r.key_timeline
        ],
        "windows": [
            {"first_measure": w.first, "last_measure": w.last, "key": key_name(w.key),
             "matched_degrees": _degrees(w.matched),
             "activated": [
                 {"name": a.cadence.name, "degrees": _degrees(a.cadence.degrees),
                  "region": a.region.value}
                 for a in w.activations
             ],
             "regions": [x.value for x in w.regions]}
            for w in r.windows
        ],
        "modulations": [
            {"measure": f.measure, "from": key_name(f.classification.source),
             "to": key_name(f.classification.target),
             "interval": f.classification.interval,
             "verdict": f.classification.verdict.value,
             "reason": f.classification.reason,
             "required_degrees": _degrees(f.classification.required_degrees),
             "presented_degrees": _degrees(f.classification.presented_degrees),
             "missing": _degrees(f.classification.missing),
             "passage": list(f.passage),
             "evidence": [_match_dict(m) for m in f.evidence]}
            for f in r.modulations
        ],
        "bridges": [
            {"measure": b.measure, "source_chord": b.source.render(),
             "bridge_chord": b.target.render(),
             "target_key": key_name(b.result.target_key),
             "target_degree": str(b.result.target_degree),
             **({"note": b.note} if b.note else {})}
            for b in r.bridges
        ],
        "region_stats": r.region_stats,
        "chromatic": [{"measure": m, "chord": c.render()} for m, c in r.chromatic],
        "legend": LEGEND,
    }


def report_to_text(r: AnalysisReport) -> str:
    lines = [f"== {r.title or 'untitled'} =="]
    lines.append("keys:")
    for s in r.key_timeline:
        lines.append(f"  mm.{s.first}-{s.last}: {key_name(s.key)}")
    lines.append("cadential windows:")
    for w in r.windows:
        acts = ", ".join(f"{a.cadence.name or a.cadence}({a.region.value})" for a in w.activations)
        lines.append(
            f"  mm.{w.first}-{w.last} [{key_name(w.key)}] degrees {{{','.join(_degrees(w.matched))}}}"
            f" -> {acts or '-'}"
        )
    lines.append("modulations:")
    if not r.modulations:
        lines.append("  none")
    for f in r.modulations:
        c = f.classification
        verdict = c.verdict.value
        if c.reason == "missing":
            verdict += f" (missing {','.join(_degrees(c.missing))})"
        elif c.reason:
            verdict += f" ({c.reason})"
        lines.append(f"  m.{f.measure}: {key_name(c.source)} -> {key_name(c.target)}"
                     f" (+{c.interval}) {verdict}")
        for m in f.evidence:
            if not c.required_degrees or m.degree in c.required_degrees:
                lines.append(f"    {m.degree}: {m.chord} m.{m.measure} [{m.mode.value}]")
    lines.append("P42 bridges:")
    if not r.bridges:
        lines.append("  none")
    for b in r.bridges:
        lines.append(f"  m.{b.measure}: {b.source} -> {b.target} = II of {key_name(b.result.target_key)}")
    stats = ", ".join(f"{k} {v:.2f}" for k, v in r.region_stats.items())
    lines.append(f"region occupancy: {stats}")
    if r.chromatic:
        lines.append("chromatic: " + " ".join(f"{c}@{m}" for m, c in r.chromatic))
    lines.append("notes:")
    lines.extend(f"  - {n}" for n in LEGEND)
    return "\n".join(lines) + "\n"
