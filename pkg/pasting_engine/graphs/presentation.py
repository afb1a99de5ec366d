"""Recognition of pasting schemes by frontier peeling."""
import logging
from dataclasses import dataclass
from functools import reduce
from typing import List, Sequence, Tuple, Union

from pasting_engine.config.settings import MAX_ENUMERATION_FACES
from pasting_engine.errors import EnumerationLimitError, PresentationError
from pasting_engine.graphs.anchored import (
    EXTERIOR,
    AnchoredFace,
    AnchoredGraph,
    DirectedPath,
    Graph,
    peel,
    peelable_faces,
    require_valid,
    vertical_compose,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PastingSchemePresentation:
    """A graph written as a vertical stack of atomic graphs.

    Factor i carries face ``face_order[i]`` of the presented graph under the
    same identifier; ``frontiers[i]`` is the domain of factor i and
    ``frontiers[i + 1]`` its codomain.
    """
    graph: AnchoredGraph
    factors: Tuple[AnchoredGraph, ...]
    face_order: Tuple[str, ...]
    frontiers: Tuple[DirectedPath, ...]

    def __len__(self) -> int:
        return len(self.factors)

    def position(self, index: int) -> int:
        """Where the face of factor ``index`` meets its domain frontier."""
        face = self.graph.face(self.face_order[index])
        return self.frontiers[index].find(face.domain)

    def compose(self) -> AnchoredGraph:
        return reduce(vertical_compose, self.factors)


@dataclass(frozen=True)
class NotAPastingScheme:
    """Failure certificate: no unused face can be peeled off the frontier."""
    frontier: DirectedPath
    unused_faces: Tuple[str, ...]
    reason: str

    def __str__(self) -> str:
        return self.reason


def atomic_factor(g: AnchoredGraph, frontier: DirectedPath, name: str) -> Tuple[AnchoredGraph, DirectedPath]:
    """The atomic graph (prefix) + face + (suffix) peeled at the frontier, and the next frontier."""
    face = g.face(name)
    after = peel(g, frontier, name)
    edges = set(frontier.edges) | set(after.edges)
    factor = AnchoredGraph(
        graph=Graph(
            vertices=tuple(sorted(set(frontier.vertices) | set(after.vertices))),
            incidence={e: g.graph.incidence[e] for e in edges},
        ),
        faces=(face,),
        exterior=AnchoredFace(EXTERIOR, g.source, g.sink, frontier, after),
    )
    return factor, after


def presentation_from_order(g: AnchoredGraph, order: Sequence[str]) -> PastingSchemePresentation:
    """Peel the faces of g in the given order.

    Raises:
        PresentationError: if the order skips or repeats a face, a face is not
            peelable when its turn comes, or the last frontier is not codom_G
    """
    if sorted(order) != sorted(g.face_names):
        raise PresentationError(f"order {list(order)} is not a permutation of the faces {list(g.face_names)}")
    frontier = g.domain
    factors: List[AnchoredGraph] = []
    frontiers = [frontier]
    for name in order:
        if frontier.find(g.face(name).domain) is None:
            raise PresentationError(f"domain of {name} is not a subpath of the frontier {frontier}")
        factor, frontier = atomic_factor(g, frontier, name)
        factors.append(factor)
        frontiers.append(frontier)
    if frontier != g.codomain:
        raise PresentationError(f"final frontier {frontier} differs from the codomain {g.codomain}")
    return PastingSchemePresentation(g, tuple(factors), tuple(order), tuple(frontiers))


def find_presentation(g: AnchoredGraph) -> Union[PastingSchemePresentation, NotAPastingScheme]:
    """Greedy frontier peeling.

    The face peeled next is the one whose domain starts leftmost on the
    frontier, ties broken by identifier.
    """
    require_valid(g)
    if not g.faces:
        return NotAPastingScheme(g.domain, (), "no interior faces: not a pasting scheme")

    frontier = g.domain
    unused = set(g.face_names)
    order: List[str] = []
    while unused:
        candidates = peelable_faces(g, frontier, unused)
        if not candidates:
            reason = (
                f"not a pasting scheme: no unused face has its domain on the frontier {frontier}"
                f" (unused: {', '.join(sorted(unused))})"
            )
            logger.debug(reason)
            return NotAPastingScheme(frontier, tuple(sorted(unused)), reason)
        position, name = candidates[0]
        logger.debug(f"Peeling face {name} at frontier position {position}")
        frontier = peel(g, frontier, name)
        unused.discard(name)
        order.append(name)
    if frontier != g.codomain:
        return NotAPastingScheme(frontier, (), f"not a pasting scheme: final frontier {frontier} is not the codomain")
    return presentation_from_order(g, order)


def enumerate_presentations(g: AnchoredGraph,
                            max_faces: int = MAX_ENUMERATION_FACES) -> List[PastingSchemePresentation]:
    """Every presentation of g, by depth-first search over peel orders.

    Presentations come out in lexicographic order of their face sequences.
    """
    if max_faces > MAX_ENUMERATION_FACES:
        raise EnumerationLimitError(f"max_faces may not exceed {MAX_ENUMERATION_FACES}, got {max_faces}")
    if len(g.faces) > max_faces:
        raise EnumerationLimitError(f"graph has {len(g.faces)} faces, limit is {max_faces}")
    require_valid(g)
    if not g.faces:
        return []

    orders: List[Tuple[str, ...]] = []

    def search(frontier: DirectedPath, unused: frozenset, prefix: Tuple[str, ...]) -> None:
        if not unused:
            if frontier == g.codomain:
                orders.append(prefix)
            return
        for name in sorted(unused):
            if frontier.find(g.face(name).domain) is not None:
                search(peel(g, frontier, name), unused - {name}, prefix + (name,))

    search(g.domain, frozenset(g.face_names), ())
    logger.debug(f"Found {len(orders)} presentations of a {len(g.faces)}-face graph")
    return [presentation_from_order(g, order) for order in orders]
