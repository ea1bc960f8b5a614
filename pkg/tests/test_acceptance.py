"""Acceptance criteria, one check per criterion.

Run under pytest (a PASS/FAIL line per criterion is printed in the terminal
summary) or directly with ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import itertools

import numpy as np
import pytest
from scipy.sparse.csgraph import floyd_warshall

from cadential import corpus_path
from cadential.analyze import MatchMode, analyze
from cadential.cadence import (
    Arity, Degree, Region, Tonality, degree_chord, is_cadential, is_minimal_cadential,
    minimal_cadential_sets,
)
from cadential.chordsym import load_leadsheet, parse_chord, realize_chord
from cadential.modulation import Verdict
from cadential.pitch import (
    DIM7, DOM7, HALF_DIM7, MAJ7, MIN7, SEVENTH_QUALITIES, RootedChord, chords_of, make_chord,
)
from cadential.transform import (
    DEFAULT_GENERATORS, L13, L42, P42, R42, RULES, T, apply_generator, apply_word, cayley_edges,
    shortest_path, verify_theory, word,
)

MAJOR_STEPS = (0, 2, 4, 5, 7, 9, 11)


# -- independent oracle: plain pitch-class arithmetic, no library code -------


def _oracle_chords(key_root: int, arity: int) -> list[tuple[int, frozenset[int]]]:
    notes = [(key_root + s) % 12 for s in MAJOR_STEPS]
    return [(notes[i], frozenset(notes[(i + 2 * k) % 7] for k in range(arity))) for i in range(7)]


def _oracle_minimal_sets(key_root: int, arity: int) -> set[frozenset[int]]:
    scales = {r: set(_oracle_chords(r, arity)) for r in range(12)}
    own = _oracle_chords(key_root, arity)

    def cadential(subset):
        chords = {own[d - 1] for d in subset}
        return [r for r in range(12) if chords <= scales[r]] == [key_root]

    out = set()
    for mask in range(1, 1 << 7):
        subset = frozenset(d + 1 for d in range(7) if mask >> d & 1)
        if not cadential(subset):
            continue
        proper = (
            frozenset(c)
            for n in range(1, len(subset))
            for c in itertools.combinations(sorted(subset), n)
        )
        if not any(cadential(p) for p in proper):
            out.add(subset)
    return out


def _degree_sets(sets) -> set[frozenset[int]]:
    return {frozenset(int(d) for d in s.degrees) for s in sets}


# -- criteria ----------------------------------------------------------------


def ac01_tetradic_enumeration():
    expected = {frozenset(s) for s in ({1, 2}, {1, 4}, {2, 3}, {3, 4}, {5}, {7})}
    names = {s.name: frozenset(int(d) for d in s.degrees)
             for s in minimal_cadential_sets(Tonality(0), Arity.TETRADIC)}
    assert names == {"J1": frozenset({1, 2}), "J2": frozenset({1, 4}), "J3": frozenset({2, 3}),
                     "J4": frozenset({3, 4}), "J5": frozenset({5}), "J6": frozenset({7})}
    for root in range(12):
        got = _degree_sets(minimal_cadential_sets(Tonality(root), Arity.TETRADIC))
        assert got == expected, root
        assert _oracle_minimal_sets(root, 4) == expected, root


def ac02_triadic_enumeration():
    expected = {frozenset(s) for s in ({2, 5}, {2, 3}, {3, 4}, {4, 5}, {7})}
    names = {s.name: frozenset(int(d) for d in s.degrees)
             for s in minimal_cadential_sets(Tonality(0), Arity.TRIADIC)}
    assert names == {"k1": frozenset({2, 5}), "k2": frozenset({2, 3}), "k3": frozenset({3, 4}),
                     "k4": frozenset({4, 5}), "k5": frozenset({7})}
    for root in range(12):
        assert _degree_sets(minimal_cadential_sets(Tonality(root), Arity.TRIADIC)) == expected
        assert _oracle_minimal_sets(root, 3) == expected


def ac03_generator_fidelity():
    assert apply_generator(R42, realize_chord(parse_chord("Fmaj7"))[0]) == \
        realize_chord(parse_chord("Dm7"))[0]
    l13 = apply_generator(L13, make_chord(7, DOM7.intervals))
    assert set(l13.pcs) == {9, 11, 2, 5} and l13 == RootedChord(11, HALF_DIM7.intervals)
    assert apply_generator(P42, realize_chord(parse_chord("Bmaj7"))[0]) == \
        realize_chord(parse_chord("Bm7"))[0]
    for r in range(12):
        c = RootedChord(r, MAJ7.intervals)
        assert apply_word(word(L42, T(8)), c) == apply_generator(P42, c) == RootedChord(r, MIN7.intervals)


def ac04_prism():
    rep = verify_theory("prism")
    assert rep.passed and rep.cases_checked > 0, rep.failures[:3]
    saved = RULES["R42"]["Maj7"]
    RULES["R42"]["Maj7"] = (MIN7, 8)
    try:
        assert not verify_theory("prism").passed, "mutated R42 went undetected"
    finally:
        RULES["R42"]["Maj7"] = saved
    assert verify_theory("prism").passed


def ac05_commutation_and_involutions():
    for q in (MAJ7, MIN7):
        for c in chords_of(q):
            for n in range(1, 12):
                assert apply_generator(R42, apply_generator(T(n), c)) == \
                    apply_generator(T(n), apply_generator(R42, c))
    for check in ("r42_t_commute", "involutions", "triadic_diagram", "triangles"):
        rep = verify_theory(check)
        assert rep.passed, (check, rep.failures[:3])
    # five involutions: R42, L13, L42, P42, triadic R
    assert verify_theory("involutions").cases_checked == 24 + 24 + 24 + 24 + 24


def ac06_p42_supertonic():
    for k in range(12):
        tonic = degree_chord(Tonality(k), Degree.I)
        assert apply_generator(P42, tonic) == degree_chord(Tonality(k - 2), Degree.II)
    assert verify_theory("p42_supertonic").passed


def ac07_blues_for_alice():
    report = analyze(load_leadsheet(corpus_path("blues_for_alice")))
    wanted = [
        ("J1", lambda w: w.first <= 1 and w.last >= 3),
        ("J2", lambda w: w.first <= 4 and w.last >= 5),
        ("J4", lambda w: w.first <= 5 <= 7 <= w.last),
        ("J3", lambda w: w.first <= 9 and w.last >= 12),
    ]
    position = 0
    regions = []
    for name, covers in wanted:
        while position < len(report.windows):
            w = report.windows[position]
            if name in w.names and covers(w):
                break
            position += 1
        else:
            raise AssertionError(f"{name} not found in order")
        act = next(a for a in report.windows[position].activations if a.cadence.name == name)
        regions.append(act.region)
        assert report.windows[position].key == Tonality(5)
    assert regions == [Region.B, Region.B, Region.A, Region.A]


def _cherokee_findings(n: int = 0):
    p = load_leadsheet(corpus_path("cherokee"))
    return analyze(p.transposed(n) if n else p)


def ac08_cherokee():
    report = _cherokee_findings()
    quantized = [m for m in report.modulations if m.classification.quantized]
    assert len(quantized) == 2
    to_eb, to_bb = quantized
    assert (to_eb.classification.source, to_eb.classification.target) == (Tonality(10), Tonality(3))
    assert to_eb.classification.required_degrees == {Degree.II, Degree.VII}
    ev = {(m.degree, m.mode): m for m in to_eb.evidence}
    assert ev[(Degree.II, MatchMode.EXACT)].chord.render() == "Fm7"
    vii = ev[(Degree.VII, MatchMode.COVER)]
    assert (vii.measure, vii.chord.render(), len(vii.events)) == (6, "Ab9", 2)
    union = realize_chord(parse_chord("Ab9"))[0].pc_set | realize_chord(parse_chord("Bb6"))[0].pc_set
    assert degree_chord(Tonality(3), Degree.VII).pc_set <= union

    assert (to_bb.classification.source, to_bb.classification.target) == (Tonality(3), Tonality(10))
    assert to_bb.classification.required_degrees == {Degree.III, Degree.V}
    ev = {(m.degree, m.mode): m for m in to_bb.evidence}
    assert ev[(Degree.III, MatchMode.EXACT)].chord.render() == "Dm7"
    assert ev[(Degree.V, MatchMode.DEGREE_ROOT)].chord.render() == "F+7"

    spans = {name: (first, last) for name, first, last in
             load_leadsheet(corpus_path("cherokee")).section_spans()}
    lo, hi = spans["bridge"]
    bridge_mods = [m for m in report.modulations if lo <= m.measure <= hi]
    assert bridge_mods and all(m.classification.verdict is Verdict.NON_QUANTIZED for m in bridge_mods)

    pairs = [(b.source.render(), b.target.render()) for b in report.bridges]
    assert ("Bmaj7", "Bm7") in pairs and ("Amaj7", "Am7") in pairs
    for b in report.bridges:
        assert apply_generator(P42, b.result.source_chord) == realize_chord(b.target)[0]


def ac09_ii_v_not_minimal():
    c = Tonality(0)
    assert is_cadential(c, [Degree.II, Degree.V], Arity.TETRADIC)
    assert not is_minimal_cadential(c, [Degree.II, Degree.V], Arity.TETRADIC)
    assert is_minimal_cadential(c, [Degree.V], Arity.TETRADIC)


def _sheet_tokens(name):
    return [ch.render() for bar in load_leadsheet(corpus_path(name)).measures for ch, _ in bar]


def ac10_parser_round_trip():
    tokens = _sheet_tokens("blues_for_alice") + _sheet_tokens("cherokee")
    assert tokens
    for tok in tokens:
        p = parse_chord(tok)
        assert parse_chord(p.render()) == p, tok
    oracles = {
        "F6": (5, {5, 9, 0, 2}),
        "Ab9": (8, {8, 0, 3, 6, 10}),
        "F+7": (5, {5, 9, 1, 3}),
        "A7b9": (9, {9, 1, 4, 7, 10}),
    }
    for text, (root, pcs) in oracles.items():
        chord, _ = realize_chord(parse_chord(text))
        assert chord.root == root and set(chord.pcs) == pcs, text


def ac11_pathfinder_oracle():
    nodes = [c for q in SEVENTH_QUALITIES for c in chords_of(q)]
    assert len(nodes) == 60
    index = {c: i for i, c in enumerate(nodes)}
    adj = np.zeros((60, 60))
    for a, b, _ in cayley_edges(DEFAULT_GENERATORS, SEVENTH_QUALITIES):
        adj[index[a], index[b]] = 1
    dist = floyd_warshall(adj, directed=True, unweighted=True)
    for i, a in enumerate(nodes):
        for j, b in enumerate(nodes):
            w = shortest_path(a, b)
            if np.isinf(dist[i, j]):
                assert w is None
            else:
                assert w is not None and len(w) == int(dist[i, j])
    cmaj7 = RootedChord(0, MAJ7.intervals)
    assert shortest_path(cmaj7, RootedChord(9, MIN7.intervals)) == word(R42)
    assert shortest_path(RootedChord(7, DOM7.intervals), RootedChord(11, HALF_DIM7.intervals)) == word(L13)
    assert shortest_path(cmaj7, RootedChord(0, MIN7.intervals)) == word(P42)
    assert shortest_path(cmaj7, RootedChord(0, DIM7.intervals)) is None


def _signature(report, shift: int):
    keys = [(s.first, s.last, (s.key.root - shift) % 12) for s in report.key_timeline]
    windows = [(w.first, w.last, (w.key.root - shift) % 12, tuple(w.names)) for w in report.windows]
    mods = [(m.measure, m.classification.verdict, (m.classification.source.root - shift) % 12,
             (m.classification.target.root - shift) % 12,
             tuple(sorted((int(e.degree), e.mode.value) for e in m.evidence)))
            for m in report.modulations]
    bridges = [(b.measure, (b.result.target_key.root - shift) % 12) for b in report.bridges]
    regions = tuple(sorted(report.region_stats.items()))
    return keys, windows, mods, bridges, regions


def ac12_transposition_equivariance():
    base = _signature(_cherokee_findings(0), 0)
    for n in range(12):
        assert _signature(_cherokee_findings(n), n) == base, n


CRITERIA = [
    ("AC1", "tetradic minimal cadential sets J1..J6", ac01_tetradic_enumeration),
    ("AC2", "triadic minimal cadential sets k1..k5", ac02_triadic_enumeration),
    ("AC3", "generator examples and P42 = T8 after L42", ac03_generator_fidelity),
    ("AC4", "prism commutes; mutated R42 is caught", ac04_prism),
    ("AC5", "commutation, involutions, triadic diagram", ac05_commutation_and_involutions),
    ("AC6", "P42 sends I7 of K to II7 of K-2", ac06_p42_supertonic),
    ("AC7", "Blues for Alice path J1 J2 J4 J3", ac07_blues_for_alice),
    ("AC8", "Cherokee modulations and bridges", ac08_cherokee),
    ("AC9", "{II,V} cadential but not minimal", ac09_ii_v_not_minimal),
    ("AC10", "chord symbol round trip and realizations", ac10_parser_round_trip),
    ("AC11", "BFS agrees with Floyd-Warshall", ac11_pathfinder_oracle),
    ("AC12", "analyzer transposition equivariance", ac12_transposition_equivariance),
]


@pytest.mark.parametrize("cid,desc,check", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(cid, desc, check):
    try:
        check()
    except Exception:
        print(f"{cid} FAIL  {desc}")
        raise
    print(f"{cid} PASS  {desc}")


if __name__ == "__main__":
    import sys
    import traceback

    failed = 0
    for cid, desc, check in CRITERIA:
        try:
            check()
            print(f"{cid} PASS  {desc}")
        except Exception:
            failed += 1
            print(f"{cid} FAIL  {desc}")
            traceback.print_exc()
    sys.exit(1 if failed else 0)
