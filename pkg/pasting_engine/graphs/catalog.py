"""Worked example graphs used by the samples, the structural suite and the tests."""
from typing import Mapping, Optional, Tuple

from pasting_engine.graphs.anchored import AnchoredGraph, build_anchored
from pasting_engine.graphs.bracketed import BracketedGraph
from pasting_engine.graphs.bracketing import DASH, Bracketing, Node, left_normalized

PAIR = Node(DASH, DASH)


def bracket_left(g: AnchoredGraph,
                 overrides: Optional[Mapping[str, Tuple[Bracketing, Bracketing]]] = None) -> BracketedGraph:
    """Bracket every path of g left-normalized, except the faces named in ``overrides``."""
    overrides = overrides or {}
    shapes = {
        f.name: overrides.get(f.name, (left_normalized(f.domain.length), left_normalized(f.codomain.length)))
        for f in g.faces
    }
    return BracketedGraph(g, left_normalized(g.domain.length), left_normalized(g.codomain.length), shapes)


def running_anchored() -> AnchoredGraph:
    """Three faces theta1, theta2, theta3 from (f1 f2) down to (g1 g2) through S."""
    return build_anchored(
        vertices=["V", "S", "U", "W", "T"],
        edges={
            "h1": ("V", "S"), "h2": ("S", "U"), "h3": ("S", "W"),
            "f1": ("V", "U"), "f2": ("U", "T"),
            "g1": ("V", "W"), "g2": ("W", "T"),
        },
        faces={
            "theta1": (["f1"], ["h1", "h2"]),
            "theta2": (["h2", "f2"], ["h3", "g2"]),
            "theta3": (["h1", "h3"], ["g1"]),
        },
        domain=["f1", "f2"],
        codomain=["g1", "g2"],
    )


def running_example() -> BracketedGraph:
    return bracket_left(running_anchored())


def atomic_example() -> BracketedGraph:
    """One face F from (h1 h2) to (h3 h4 h5), whiskered by f and g."""
    g = build_anchored(
        vertices=["s", "sF", "u", "tF", "v", "w", "t"],
        edges={
            "f": ("s", "sF"), "h1": ("sF", "u"), "h2": ("u", "tF"),
            "h3": ("sF", "v"), "h4": ("v", "w"), "h5": ("w", "tF"), "g": ("tF", "t"),
        },
        faces={"F": (["h1", "h2"], ["h3", "h4", "h5"])},
        domain=["f", "h1", "h2", "g"],
        codomain=["f", "h3", "h4", "h5", "g"],
    )
    return bracket_left(g)


def parallel_minimal() -> BracketedGraph:
    """A single 2-cell between parallel edges x, y: s -> t."""
    g = build_anchored(
        vertices=["s", "t"],
        edges={"x": ("s", "t"), "y": ("s", "t")},
        faces={"alpha": (["x"], ["y"])},
        domain=["x"],
        codomain=["y"],
    )
    return bracket_left(g)


def side_by_side() -> BracketedGraph:
    """Two faces next to each other; both peel orders present it."""
    g = build_anchored(
        vertices=["s", "m", "t"],
        edges={"a1": ("s", "m"), "b1": ("s", "m"), "a2": ("m", "t"), "b2": ("m", "t")},
        faces={"alpha": (["a1"], ["b1"]), "beta": (["a2"], ["b2"])},
        domain=["a1", "a2"],
        codomain=["b1", "b2"],
    )
    return bracket_left(g)


def vertical_pair() -> BracketedGraph:
    """Two faces stacked on one another between s and t."""
    g = build_anchored(
        vertices=["s", "t"],
        edges={"x": ("s", "t"), "y": ("s", "t"), "z": ("s", "t")},
        faces={"alpha": (["x"], ["y"]), "beta": (["y"], ["z"])},
        domain=["x"],
        codomain=["z"],
    )
    return bracket_left(g)


def interior_source_obstruction() -> AnchoredGraph:
    """A valid anchored graph that is not a pasting scheme.

    The vertex v is a source inside the diagram, so neither face ever has
    its domain on the frontier.
    """
    return build_anchored(
        vertices=["s", "t", "v"],
        edges={"x": ("s", "t"), "y": ("s", "t"), "e1": ("v", "t"), "e2": ("v", "s")},
        faces={"T": (["e2", "x"], ["e1"]), "Bt": (["e1"], ["e2", "y"])},
        domain=["x"],
        codomain=["y"],
    )
