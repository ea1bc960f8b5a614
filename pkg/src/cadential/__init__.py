"""Seventh-chord neo-Riemannian transformations, cadential sets and jazz analysis."""

from .analyze import AnalysisConfig, AnalysisReport, MatchMode, analyze
from .cadence import (
    Arity, CadentialSet, Degree, Region, Tonality, degree_chord, minimal_cadential_sets,
    region_of,
)
from .chordsym import ParsedChord, Progression, parse_chord, parse_leadsheet, realize_chord
from .pitch import RootedChord, classify_quality, make_chord, transpose
from .transform import (
    L13, L42, P42, R42, TRIAD_R, T, Generator, TransformationWord, apply_generator,
    apply_word, shortest_path, verify_theory,
)

__version__ = "0.1.0"


def corpus_path(name: str):
    """Path of a bundled lead sheet, e.g. ``corpus_path("cherokee")``."""
    from importlib import resources

    return resources.files("cadential").joinpath("corpus", f"{name}.ls")
