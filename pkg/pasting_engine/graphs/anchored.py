"""Anchored plane graphs given by combinatorial face data.

A plane graph is never embedded. Each face records its source, sink,
domain and codomain, and the boundary of an interior face F is read as
dom_F followed by the reverse of codom_F; the exterior boundary is
codom_G followed by the reverse of dom_G. Along its domain a face lies
below the path, along its codomain above it.
"""
import logging
from collections import Counter, deque
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from pasting_engine.errors import GraphError, InterfaceMismatchError, UnvalidatedGraphError
from pasting_engine.types import ValidationReport

logger = logging.getLogger(__name__)

EXTERIOR = "ext"


@dataclass(frozen=True)
class Graph:
    """Vertices plus an incidence map edge -> (tail, head)."""
    vertices: Tuple[str, ...]
    incidence: Mapping[str, Tuple[str, str]]

    @property
    def edges(self) -> Tuple[str, ...]:
        return tuple(sorted(self.incidence))

    def tail(self, edge: str) -> str:
        return self.incidence[edge][0]

    def head(self, edge: str) -> str:
        return self.incidence[edge][1]


@dataclass(frozen=True)
class DirectedPath:
    """Alternating sequence v0 e1 v1 ... en vn, stored as two tuples."""
    vertices: Tuple[str, ...]
    edges: Tuple[str, ...]

    def __post_init__(self):
        if len(self.vertices) != len(self.edges) + 1:
            raise GraphError(
                f"path needs {len(self.edges) + 1} vertices for {len(self.edges)} edges, "
                f"got {len(self.vertices)}"
            )

    @property
    def source(self) -> str:
        return self.vertices[0]

    @property
    def sink(self) -> str:
        return self.vertices[-1]

    @property
    def length(self) -> int:
        return len(self.edges)

    def find(self, other: "DirectedPath") -> Optional[int]:
        """Position of ``other`` as a contiguous subpath, or None."""
        if not other.edges or other.edges[0] not in self.edges:
            return None
        start = self.edges.index(other.edges[0])
        stop = start + other.length
        if self.edges[start:stop] != other.edges:
            return None
        if self.vertices[start:stop + 1] != other.vertices:
            return None
        return start

    def segment(self, start: int, stop: int) -> "DirectedPath":
        """Subpath made of edges[start:stop]."""
        return DirectedPath(self.vertices[start:stop + 1], self.edges[start:stop])

    def splice(self, start: int, stop: int, replacement: "DirectedPath") -> "DirectedPath":
        """Replace edges[start:stop] by a path with the same endpoints."""
        if replacement.source != self.vertices[start] or replacement.sink != self.vertices[stop]:
            raise GraphError(
                f"replacement runs {replacement.source} -> {replacement.sink}, "
                f"expected {self.vertices[start]} -> {self.vertices[stop]}"
            )
        return DirectedPath(
            self.vertices[:start] + replacement.vertices + self.vertices[stop + 1:],
            self.edges[:start] + replacement.edges + self.edges[stop:],
        )

    def relabel(self, vertex_map: Mapping[str, str], edge_map: Mapping[str, str]) -> "DirectedPath":
        return DirectedPath(
            tuple(vertex_map.get(v, v) for v in self.vertices),
            tuple(edge_map.get(e, e) for e in self.edges),
        )

    def __str__(self) -> str:
        return "(" + " ".join(self.edges) + ")" if self.edges else f"({self.source})"


@dataclass(frozen=True)
class AnchoredFace:
    """A face with source s_F, sink t_F, domain and codomain paths."""
    name: str
    source: str
    sink: str
    domain: DirectedPath
    codomain: DirectedPath

    def boundary_walk(self) -> List[Tuple[str, bool]]:
        """Edges of dom_F then codom_F reversed; the flag is True when traversed forwards."""
        return [(e, True) for e in self.domain.edges] + [(e, False) for e in reversed(self.codomain.edges)]

    def relabel(self, vertex_map: Mapping[str, str], edge_map: Mapping[str, str],
                name: Optional[str] = None) -> "AnchoredFace":
        return AnchoredFace(
            name=name or self.name,
            source=vertex_map.get(self.source, self.source),
            sink=vertex_map.get(self.sink, self.sink),
            domain=self.domain.relabel(vertex_map, edge_map),
            codomain=self.codomain.relabel(vertex_map, edge_map),
        )


@dataclass(frozen=True)
class AnchoredGraph:
    """A connected plane graph with anchored interior faces and exterior."""
    graph: Graph
    faces: Tuple[AnchoredFace, ...]
    exterior: AnchoredFace

    @property
    def source(self) -> str:
        return self.exterior.source

    @property
    def sink(self) -> str:
        return self.exterior.sink

    @property
    def domain(self) -> DirectedPath:
        return self.exterior.domain

    @property
    def codomain(self) -> DirectedPath:
        return self.exterior.codomain

    @property
    def face_names(self) -> Tuple[str, ...]:
        return tuple(f.name for f in self.faces)

    def face(self, name: str) -> AnchoredFace:
        for f in self.faces:
            if f.name == name:
                return f
        raise GraphError(f"no interior face named {name}")

    def has_face(self, name: str) -> bool:
        return any(f.name == name for f in self.faces)

    def identifiers(self) -> Set[str]:
        """Every vertex, edge and face identifier in use."""
        return set(self.graph.vertices) | set(self.graph.incidence) | set(self.face_names) | {EXTERIOR}

    def path(self, edges: Sequence[str]) -> DirectedPath:
        return path_from_edges(self.graph.incidence, edges)


def path_from_edges(incidence: Mapping[str, Tuple[str, str]], edges: Sequence[str]) -> DirectedPath:
    """Build a path from a non-empty edge sequence.

    Vertices are read off as the tail of the first edge followed by the
    head of every edge; validation decides whether the result is directed.
    """
    if not edges:
        raise GraphError("a path needs at least one edge")
    missing = [e for e in edges if e not in incidence]
    if missing:
        raise GraphError(f"unknown edges {missing}")
    vertices = [incidence[edges[0]][0]] + [incidence[e][1] for e in edges]
    return DirectedPath(tuple(vertices), tuple(edges))


def make_face(incidence: Mapping[str, Tuple[str, str]], name: str,
              domain: Sequence[str], codomain: Sequence[str]) -> AnchoredFace:
    """Face whose source and sink are the endpoints of its domain."""
    dom = path_from_edges(incidence, domain)
    cod = path_from_edges(incidence, codomain)
    return AnchoredFace(name=name, source=dom.source, sink=dom.sink, domain=dom, codomain=cod)


def build_anchored(vertices: Iterable[str],
                   edges: Mapping[str, Tuple[str, str]],
                   faces: Mapping[str, Tuple[Sequence[str], Sequence[str]]],
                   domain: Sequence[str],
                   codomain: Sequence[str]) -> AnchoredGraph:
    """Assemble an AnchoredGraph from plain data without validating it."""
    incidence = dict(edges)
    interior = tuple(
        make_face(incidence, name, dom, cod) for name, (dom, cod) in sorted(faces.items())
    )
    exterior = make_face(incidence, EXTERIOR, domain, codomain)
    return AnchoredGraph(
        graph=Graph(vertices=tuple(sorted(set(vertices))), incidence=incidence),
        faces=interior,
        exterior=exterior,
    )


def _path_problem(path: DirectedPath, incidence: Mapping[str, Tuple[str, str]]) -> Optional[str]:
    for i, e in enumerate(path.edges):
        if e not in incidence:
            return f"unknown edge {e}"
        tail, head = incidence[e]
        if tail != path.vertices[i]:
            return f"edge {e} has tail {tail}, expected {path.vertices[i]}"
        if head != path.vertices[i + 1]:
            return f"edge {e} has head {head}, expected {path.vertices[i + 1]}"
    if len(set(path.vertices)) != len(path.vertices):
        return "a vertex repeats"
    return None


def _check_face(face: AnchoredFace, incidence: Mapping[str, Tuple[str, str]],
                report: ValidationReport, interior: bool) -> None:
    label = f"face {face.name}" if interior else "exterior"
    if face.source == face.sink:
        report.add(label, f"source and sink coincide at {face.source}")
    for role, path in (("domain", face.domain), ("codomain", face.codomain)):
        if path.length == 0:
            report.add(label, f"{role} is a trivial path")
            continue
        problem = _path_problem(path, incidence)
        if problem:
            report.add(label, f"{role} is not a directed path ({problem})")
            continue
        if path.source != face.source:
            report.add(label, f"{role} starts at {path.source}, expected {face.source}")
        if path.sink != face.sink:
            report.add(label, f"{role} ends at {path.sink}, expected {face.sink}")
    if interior:
        shared = set(face.domain.edges) & set(face.codomain.edges)
        if shared:
            report.add(label, f"domain and codomain share edges {sorted(shared)}")


def _unreachable(vertices: Sequence[str], incidence: Mapping[str, Tuple[str, str]]) -> List[str]:
    if not vertices:
        return []
    known = set(vertices)
    neighbours: Dict[str, Set[str]] = {v: set() for v in vertices}
    for tail, head in incidence.values():
        if tail in known and head in known:
            neighbours[tail].add(head)
            neighbours[head].add(tail)
    seen = {vertices[0]}
    queue = deque([vertices[0]])
    while queue:
        for w in neighbours[queue.popleft()]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return sorted(known - seen)


def validate_anchored(g: AnchoredGraph) -> ValidationReport:
    """Check every AnchoredGraph invariant; violations are returned, never raised."""
    report = ValidationReport()
    vertices = g.graph.vertices
    incidence = g.graph.incidence

    if len(set(vertices)) < 2:
        report.add("graph", f"needs at least 2 vertices, has {len(set(vertices))}")
    if len(incidence) < 2:
        report.add("graph", f"needs at least 2 edges, has {len(incidence)}")
    if len(set(vertices)) != len(vertices):
        report.add("graph", "duplicate vertex identifiers")
    clash = set(vertices) & set(incidence)
    if clash:
        report.add("graph", f"identifiers used for both vertices and edges: {sorted(clash)}")

    vertex_set = set(vertices)
    for e in sorted(incidence):
        tail, head = incidence[e]
        if tail not in vertex_set:
            report.add(f"edge {e}", f"tail {tail} is not a vertex")
        if head not in vertex_set:
            report.add(f"edge {e}", f"head {head} is not a vertex")
        if tail == head:
            report.add(f"edge {e}", "is a loop")

    unreachable = _unreachable(vertices, incidence)
    if unreachable:
        report.add("graph", f"not connected: {unreachable} unreachable from {vertices[0]}")

    names = [f.name for f in g.faces]
    if len(set(names)) != len(names):
        report.add("graph", "duplicate face identifiers")
    for face in g.faces:
        _check_face(face, incidence, report, interior=True)
    _check_face(g.exterior, incidence, report, interior=False)

    # Each edge sits on exactly two boundary walks, with one face below and one above
    walks: Counter = Counter()
    below: Counter = Counter()
    above: Counter = Counter()
    for face in g.faces:
        walks.update(e for e, _ in face.boundary_walk())
        below.update(face.domain.edges)
        above.update(face.codomain.edges)
    walks.update(e for e, _ in g.exterior.boundary_walk())
    above.update(g.domain.edges)
    below.update(g.codomain.edges)
    for e in sorted(incidence):
        if walks[e] != 2:
            report.add(f"edge {e}", f"occurs {walks[e]} times in face boundary walks, expected 2")
        elif below[e] != 1 or above[e] != 1:
            report.add(f"edge {e}", f"lies below {below[e]} and above {above[e]} faces, expected one each")

    euler = len(set(vertices)) - len(incidence) + len(g.faces) + 1
    if euler != 2:
        report.add(
            "graph",
            f"Euler relation fails: V - E + F = {len(set(vertices))} - {len(incidence)} + "
            f"{len(g.faces) + 1} = {euler}, expected 2",
        )

    if report.ok:
        logger.debug(f"Anchored graph with {len(g.faces)} interior faces is valid")
    else:
        logger.debug(f"Anchored graph has {len(report.violations)} violations")
    return report


def require_valid(g: AnchoredGraph) -> None:
    """Raise UnvalidatedGraphError unless g passes validate_anchored."""
    report = validate_anchored(g)
    if not report.ok:
        raise UnvalidatedGraphError("graph is not a valid anchored graph: " + "; ".join(report.messages()))


def is_atomic(g: AnchoredGraph) -> bool:
    """True iff g has exactly one interior face.

    For an atomic graph the domain and codomain of the face are checked to
    lie on the global domain and codomain.
    """
    require_valid(g)
    if len(g.faces) != 1:
        return False
    face = g.faces[0]
    if g.domain.find(face.domain) is None:
        raise GraphError(f"atomic graph: domain of {face.name} is not a subpath of the global domain")
    if g.codomain.find(face.codomain) is None:
        raise GraphError(f"atomic graph: codomain of {face.name} is not a subpath of the global codomain")
    return True


def peelable_faces(g: AnchoredGraph, frontier: DirectedPath, unused: Iterable[str]) -> List[Tuple[int, str]]:
    """Unused faces whose domain is a contiguous subpath of the frontier.

    Sorted by position along the frontier, then by face identifier.
    """
    found = []
    for name in unused:
        position = frontier.find(g.face(name).domain)
        if position is not None:
            found.append((position, name))
    return sorted(found)


def peel(g: AnchoredGraph, frontier: DirectedPath, name: str) -> DirectedPath:
    """Frontier after pushing it across face ``name``."""
    face = g.face(name)
    position = frontier.find(face.domain)
    if position is None:
        raise GraphError(f"domain of {name} is not on the frontier {frontier}")
    return frontier.splice(position, position + face.domain.length, face.codomain)


def relabel(g: AnchoredGraph, vertex_map: Mapping[str, str], edge_map: Mapping[str, str],
            face_map: Optional[Mapping[str, str]] = None) -> AnchoredGraph:
    """Rename identifiers; edges mapped onto each other are merged."""
    face_map = face_map or {}
    incidence: Dict[str, Tuple[str, str]] = {}
    for e, (tail, head) in g.graph.incidence.items():
        incidence[edge_map.get(e, e)] = (vertex_map.get(tail, tail), vertex_map.get(head, head))
    faces = tuple(sorted(
        (f.relabel(vertex_map, edge_map, face_map.get(f.name)) for f in g.faces),
        key=lambda f: f.name,
    ))
    return AnchoredGraph(
        graph=Graph(tuple(sorted({vertex_map.get(v, v) for v in g.graph.vertices})), incidence),
        faces=faces,
        exterior=g.exterior.relabel(vertex_map, edge_map),
    )


def fresh_name(base: str, taken: Set[str]) -> str:
    """``base`` suffixed with the smallest _k (k >= 2) not yet taken."""
    k = 2
    while f"{base}_{k}" in taken:
        k += 1
    return f"{base}_{k}"


def vertical_compose(g: AnchoredGraph, h: AnchoredGraph) -> AnchoredGraph:
    """The composite HG: h stacked below g along codom_G = dom_H.

    Identifiers of h off the shared path that clash with identifiers of g
    are renamed by suffixing.
    """
    return compose_with_renaming(g, h)[0]


def compose_with_renaming(g: AnchoredGraph, h: AnchoredGraph) -> Tuple[AnchoredGraph, Dict[str, str]]:
    """vertical_compose, also returning how faces of h were renamed."""
    if g.source != h.source or g.sink != h.sink:
        raise InterfaceMismatchError(
            f"endpoints differ: {g.source} -> {g.sink} versus {h.source} -> {h.sink}"
        )
    cod, dom = g.codomain, h.domain
    for i in range(max(cod.length, dom.length)):
        left = cod.edges[i] if i < cod.length else None
        right = dom.edges[i] if i < dom.length else None
        if left != right:
            raise InterfaceMismatchError(
                f"interface mismatch at position {i}: codomain has {left}, domain has {right}", i
            )
    for i, (left, right) in enumerate(zip(cod.vertices, dom.vertices)):
        if left != right:
            raise InterfaceMismatchError(
                f"interface mismatch at vertex {i}: codomain has {left}, domain has {right}", i
            )
    for e in cod.edges:
        if g.graph.incidence[e] != h.graph.incidence[e]:
            raise InterfaceMismatchError(f"shared edge {e} has different endpoints in the two graphs")

    shared = set(cod.vertices) | set(cod.edges)
    taken = g.identifiers()
    vertex_map: Dict[str, str] = {}
    edge_map: Dict[str, str] = {}
    face_map: Dict[str, str] = {}
    for names, mapping in ((h.graph.vertices, vertex_map), (sorted(h.graph.incidence), edge_map),
                           (h.face_names, face_map)):
        for name in names:
            if name in shared:
                continue
            if name in taken:
                mapping[name] = fresh_name(name, taken)
            taken.add(mapping.get(name, name))
    if vertex_map or edge_map or face_map:
        logger.debug(f"Renamed {len(vertex_map) + len(edge_map) + len(face_map)} identifiers of the upper graph")
    lower = relabel(h, vertex_map, edge_map, face_map)

    incidence = dict(g.graph.incidence)
    incidence.update(lower.graph.incidence)
    exterior = AnchoredFace(EXTERIOR, g.source, g.sink, g.domain, lower.codomain)
    composite = AnchoredGraph(
        graph=Graph(tuple(sorted(set(g.graph.vertices) | set(lower.graph.vertices))), incidence),
        faces=tuple(sorted(g.faces + lower.faces, key=lambda f: f.name)),
        exterior=exterior,
    )
    return composite, face_map


def canonical_form(g: AnchoredGraph, match_face_names: bool = False) -> tuple:
    """Name-independent description of g.

    Vertices and edges are numbered in discovery order: the global domain
    first, then the codomain of each face in greedy peeling order. Faces
    keep their identifiers when ``match_face_names`` is set.
    """
    vertex_label: Dict[str, str] = {}
    edge_label: Dict[str, str] = {}

    def discover(path: DirectedPath) -> None:
        for v in path.vertices:
            vertex_label.setdefault(v, f"v{len(vertex_label)}")
        for e in path.edges:
            edge_label.setdefault(e, f"e{len(edge_label)}")

    discover(g.domain)
    frontier = g.domain
    unused = set(g.face_names)
    order: List[str] = []
    while unused:
        candidates = peelable_faces(g, frontier, unused)
        if not candidates:
            break
        _, name = candidates[0]
        discover(g.face(name).codomain)
        frontier = peel(g, frontier, name)
        unused.discard(name)
        order.append(name)
    for name in sorted(unused):
        discover(g.face(name).domain)
        discover(g.face(name).codomain)
        order.append(name)
    discover(g.codomain)
    for v in sorted(g.graph.vertices):
        vertex_label.setdefault(v, f"v{len(vertex_label)}")
    for e in sorted(g.graph.incidence):
        edge_label.setdefault(e, f"e{len(edge_label)}")

    face_label = {name: (name if match_face_names else f"F{i}") for i, name in enumerate(order)}
    edges = tuple(sorted(
        (edge_label[e], vertex_label[t], vertex_label[h]) for e, (t, h) in g.graph.incidence.items()
    ))
    faces = tuple(sorted(
        (face_label[f.name], tuple(edge_label[e] for e in f.domain.edges),
         tuple(edge_label[e] for e in f.codomain.edges))
        for f in g.faces
    ))
    return (
        len(set(g.graph.vertices)),
        edges,
        faces,
        tuple(edge_label[e] for e in g.domain.edges),
        tuple(edge_label[e] for e in g.codomain.edges),
    )


def structurally_equal(a: AnchoredGraph, b: AnchoredGraph, match_face_names: bool = False) -> bool:
    """Equality up to renaming of vertices and edges (and faces, unless matched by name)."""
    return canonical_form(a, match_face_names) == canonical_form(b, match_face_names)
