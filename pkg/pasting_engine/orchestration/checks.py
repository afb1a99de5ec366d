"""Uniqueness and coherence verdicts, evaluated in a model."""
import logging
from collections import deque
from typing import Any, Dict, List, Mapping, Sequence

from pasting_engine.errors import BracketingError
from pasting_engine.evaluation.diagram import (
    CompositeResult,
    PastingDiagram,
    compose,
    composite_of_scheme,
    extend_assignment,
    fold_path,
)
from pasting_engine.graphs.anchored import DirectedPath
from pasting_engine.graphs.bracketed import ExtensionCertificate, associator_scheme
from pasting_engine.graphs.bracketing import AssocMove, Bracketing, apply_move, apply_moves, redexes
from pasting_engine.models.base import BicategoryModel
from pasting_engine.types import Verdict

logger = logging.getLogger(__name__)


def _trace_lines(m: BicategoryModel, result: CompositeResult) -> List[str]:
    lines = [f"{c.index}: {c.label}" for c in result.trace]
    lines.append("value: " + m.render_2(result.value).replace("\n", "; "))
    return lines


def check_uniqueness(d: PastingDiagram, certs: Sequence[ExtensionCertificate]) -> Verdict:
    """Compose d under every certificate and compare the composites pairwise."""
    if len(certs) < 2:
        return Verdict(True, "uniqueness", "trivially unique: fewer than two certificates", compared=len(certs))
    m = d.model
    results = [compose(d, cert) for cert in certs]
    failures = []
    for i in range(len(results)):
        for j in range(i + 1, len(results)):
            if not m.equal_2(results[i].value, results[j].value):
                failures.append(f"{certs[i].strategy} (#{i}) and {certs[j].strategy} (#{j}) composites differ")
    traces: Dict[str, List[str]] = {}
    if failures:
        traces = {f"{cert.strategy}#{i}": _trace_lines(m, r) for i, (cert, r) in enumerate(zip(certs, results))}
        logger.warning(f"Uniqueness fails: {'; '.join(failures)}")
    return Verdict(
        ok=not failures,
        kind="uniqueness",
        message="all composites agree" if not failures else failures[0],
        compared=len(results),
        failures=failures,
        traces=traces,
    )


def shortest_chain(src: Bracketing, dst: Bracketing) -> List[AssocMove]:
    """Breadth-first search for a shortest sequence of moves from src to dst."""
    if src.length != dst.length:
        raise BracketingError(f"cannot connect bracketings of lengths {src.length} and {dst.length}")
    parents: Dict[Bracketing, Any] = {src: None}
    queue = deque([src])
    while queue:
        tree = queue.popleft()
        if tree == dst:
            break
        for move in redexes(tree):
            nxt = apply_move(tree, move)
            if nxt not in parents:
                parents[nxt] = (tree, move)
                queue.append(nxt)
    moves: List[AssocMove] = []
    tree = dst
    while parents[tree] is not None:
        tree, move = parents[tree]
        moves.append(move)
    return list(reversed(moves))


def associator_composite(m: BicategoryModel, path: DirectedPath, vertices: Mapping[str, Any],
                         edges: Mapping[str, Any], start: Bracketing, moves: Sequence[AssocMove]) -> Any:
    """The 2-cell of an all-associator scheme; the identity when there are no moves."""
    if not moves:
        return m.identity_2(fold_path(m, start, [edges[e] for e in path.edges]))
    scheme = associator_scheme(path, start, moves)
    indices = range(len(scheme))
    d = extend_assignment(m, scheme, indices, vertices, edges, {})
    return composite_of_scheme(d, scheme, indices).value


def check_maclane_instance(m: BicategoryModel, path: DirectedPath, vertices: Mapping[str, Any],
                           edges: Mapping[str, Any], start: Bracketing, end: Bracketing,
                           chains: Sequence[Sequence[AssocMove]]) -> Verdict:
    """Evaluate every move chain from ``start`` to ``end`` on one 1-skeleton and compare.

    Raises:
        BracketingError: if a chain does not lead from start to end
    """
    for i, chain in enumerate(chains):
        if apply_moves(start, chain) != end:
            raise BracketingError(f"chain {i} does not lead from {start} to {end}")
    values = [associator_composite(m, path, vertices, edges, start, chain) for chain in chains]
    failures = [
        f"chain {i} ({len(chains[i])} moves) differs from chain 0 ({len(chains[0])} moves)"
        for i in range(1, len(values))
        if not m.equal_2(values[0], values[i])
    ]
    traces = {}
    if failures:
        traces = {f"chain{i}": [str(move) for move in chain] for i, chain in enumerate(chains)}
    return Verdict(
        ok=not failures,
        kind="maclane",
        message=f"{start} => {end}: " + ("composites agree" if not failures else failures[0]),
        compared=len(values),
        failures=failures,
        traces=traces,
    )
