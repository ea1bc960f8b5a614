"""Graphviz DOT text for the conglomerate, the prism and Cayley graphs."""

from __future__ import annotations

from typing import Iterable

from .cadence import Degree, Tonality, conglomerate_links, degree_chord, named_sets, region_of
from .chordsym import SHARP_KEYS
from .pitch import SEVENTH_QUALITIES, RootedChord, chord_name
from .transform import DEFAULT_GENERATORS, PRISM_EDGES, PRISM_NODES, Generator, cayley_edges


def _q(s: str) -> str:
    return '"' + s.replace('"', r"\"") + '"'


def conglomerate_dot(key: Tonality = Tonality(0)) -> str:
    sharps = key.root in SHARP_KEYS
    lines = [
        "graph conglomerate {",
        "  rankdir=LR;",
        "  node [shape=box];",
    ]
    for name, s in named_sets(4).items():
        chords = " ".join(chord_name(degree_chord(key, d), sharps) for d in s.sorted_degrees)
        region = region_of(s)
        label = f"{name} = {{{','.join(map(str, s.sorted_degrees))}}}\\n{chords}\\nregion {region.value} ({region.nickname})"
        lines.append(f"  {name} [label={_q(label)}];")
    for link in conglomerate_links(key):
        lines.append(f"  {link.source.name} -- {link.target.name} [label={_q(str(link.morphism))}];")
    # which prism arrows the dashed lines stand for is not pinned down; these are the bottom-face composites
    lines.append(f"  J1 -- J3 [style=dashed, label={_q('T7∘R42 (I→III)')}];")
    lines.append(f"  J2 -- J4 [style=dashed, label={_q('T5 (I→IV)')}];")
    lines.append(
        "  legend [shape=note, label="
        + _q("solid: pair morphisms; dashed: prism summary (edge choice is a reading of the figure)")
        + "];"
    )
    lines.append("}")
    return "\n".join(lines) + "\n"


def prism_dot(key: Tonality = Tonality(0)) -> str:
    sharps = key.root in SHARP_KEYS
    lines = ["digraph prism {", "  node [shape=ellipse];"]
    for node, deg in PRISM_NODES.items():
        chord = chord_name(degree_chord(key, Degree[deg]), sharps)
        lines.append(f"  {node} [label={_q(f'{deg}7 = {chord}')}];")
    for src, dst, w in PRISM_EDGES:
        label = "∘".join(str(g) for g in reversed(w.gens))
        style = ", style=dashed" if (src, dst) in {("I", "II_front"), ("III", "IV_front")} else ""
        lines.append(f"  {src} -> {dst} [label={_q(label)}{style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cayley_dot(gens: Iterable[Generator] = DEFAULT_GENERATORS) -> str:
    lines = ["digraph cayley {", "  node [shape=circle];"]
    edges = cayley_edges(gens, SEVENTH_QUALITIES)
    seen = set()
    for q in SEVENTH_QUALITIES:
        for r in range(12):
            name = chord_name(RootedChord(r, q.intervals))
            lines.append(f"  {_q(name)};")
    for a, b, g in edges:
        pair = (min(a, b), max(a, b), g)
        if g.inverse() == g:
            if pair in seen:
                continue
            seen.add(pair)
            lines.append(f"  {_q(chord_name(a))} -> {_q(chord_name(b))} [label={_q(str(g))}, dir=both];")
        else:
            lines.append(f"  {_q(chord_name(a))} -> {_q(chord_name(b))} [label={_q(str(g))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
