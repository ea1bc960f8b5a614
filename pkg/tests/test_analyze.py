import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cadential import corpus_path
from cadential.analyze import (
    AnalysisConfig, MatchMode, activated_cadences, analyze, detect_bridges, infer_keys, key_at,
    match_events, report_to_dict, report_to_text,
)
from cadential.cadence import Degree, Region, Tonality, degree_chord, minimal_cadential_sets
from cadential.chordsym import load_leadsheet, parse_leadsheet, progression, realize
from cadential.transform import P42, apply_generator

F, EB = Tonality(5), Tonality(3)


def _events(sheet, *measures):
    return [e for e in sheet.events() if e.measure in measures]


def test_f6_is_tonic_by_root(blues):
    (m,) = match_events(_events(blues, 1), F, MatchMode.DEGREE_ROOT)
    assert m.degree == Degree.I and m.note


def test_c7_is_exact_dominant(blues):
    (m,) = match_events(_events(blues, 10), F, MatchMode.EXACT)
    assert m.degree == Degree.V and m.strength == 2


def test_cover_finds_vii_over_ab9_bb6(cherokee):
    ms = match_events(_events(cherokee, 6, 7), EB, MatchMode.COVER)
    assert Degree.VII in {m.degree for m in ms}


def test_exact_mode_invariant(blues, cherokee):
    for sheet in (blues, cherokee):
        for k in range(12):
            key = Tonality(k)
            for m in match_events(sheet.events(), key, MatchMode.EXACT):
                assert realize(m.chord) == degree_chord(key, m.degree)


def test_chromatic_events_have_no_degree(blues):
    report = analyze(blues)
    assert [c.render() for _, c in report.chromatic] == ["Eb7", "Abm7", "Db7"]


def test_blues_windows(blues):
    report = analyze(blues)
    by_span = {(w.first, w.last): w for w in report.windows}
    assert "J1" in by_span[(1, 4)].names
    assert "J3" in by_span[(9, 12)].names and "J5" in by_span[(9, 12)].names


def test_activations_are_minimal_sets(blues, cherokee):
    for sheet in (blues, cherokee):
        for w in analyze(sheet).windows:
            allowed = minimal_cadential_sets(w.key)
            assert all(a.cadence in allowed for a in w.activations)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_enlarging_a_window_keeps_activations(data):
    sheet = load_leadsheet(corpus_path("blues_for_alice"))
    events = sheet.events()
    small = data.draw(st.sets(st.integers(0, len(events) - 1)))
    extra = data.draw(st.sets(st.integers(0, len(events) - 1)))
    mode = data.draw(st.sampled_from(list(MatchMode)))
    ev_small = [events[i] for i in sorted(small)]
    ev_big = [events[i] for i in sorted(small | extra)]
    a = {x.cadence for x in activated_cadences(match_events(ev_small, F, mode, 1), F)}
    b = {x.cadence for x in activated_cadences(match_events(ev_big, F, mode, 1), F)}
    assert a <= b


def test_blues_key_without_header(blues):
    p = load_leadsheet(corpus_path("blues_for_alice"))
    p.declared_key = None
    segs = infer_keys(p)
    assert [(s.first, s.last, s.key) for s in segs] == [(1, 13, F)]


def test_single_chord_key():
    assert infer_keys(parse_leadsheet("| C |"))[0].key == Tonality(0)


def test_cherokee_timeline(cherokee):
    segs = infer_keys(cherokee)
    assert [(s.first, s.key.root) for s in segs[:3]] == [(1, 10), (3, 3), (8, 10)]
    assert key_at(segs, 5) == EB and key_at(segs, 99) is None


def test_empty_sheet_report():
    report = analyze(parse_leadsheet("| NC | NC |"))
    assert report.windows == [] and report.modulations == [] and report.bridges == []
    assert report_to_dict(report)["key_timeline"] == []


def test_bridges_agree_with_p42(cherokee):
    for b in detect_bridges(cherokee):
        assert apply_generator(P42, realize(b.source)) == realize(b.target)


def test_sixth_read_as_maj7_bridge():
    found = detect_bridges(progression("C6", "Cm7"))
    assert len(found) == 1 and found[0].note
    assert detect_bridges(progression("C6", "Cm7"), AnalysisConfig(sixth_as_tonic=False)) == []


def test_bridges_do_not_cross_sections():
    p = parse_leadsheet("section: a\n| Cmaj7 |\nsection: b\n| Cm7 |")
    assert detect_bridges(p) == []


def test_region_stats_sum(cherokee):
    stats = analyze(cherokee).region_stats
    assert set(stats) == {r.value for r in Region}
    assert sum(stats.values()) == pytest.approx(1.0)


def test_config_validation():
    with pytest.raises(ValueError):
        AnalysisConfig(window=0)


def test_text_report_mentions_findings(cherokee):
    text = report_to_text(analyze(cherokee))
    assert "Quantized" in text and "Bm7" in text


@pytest.mark.parametrize("n", range(12))
def test_blues_equivariance(blues, n):
    base, moved = analyze(blues), analyze(blues.transposed(n))
    assert [(w.first, w.names) for w in base.windows] == [(w.first, w.names) for w in moved.windows]
    assert [s.key.root for s in moved.key_timeline] == [(s.key.root + n) % 12 for s in base.key_timeline]
