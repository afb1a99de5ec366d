"""Distinct composition scheme extensions of the same bracketed graph."""
import logging
import random
from typing import List, Optional

from pasting_engine.config.settings import MAX_ENUMERATION_FACES
from pasting_engine.errors import StrategyInapplicableError
from pasting_engine.graphs.bracketed import (
    BracketedGraph,
    ExtensionCertificate,
    build_extension,
    canonical_interface_chains,
    extend_to_composition_scheme,
    interface_bracketings,
)
from pasting_engine.graphs.bracketing import redexes
from pasting_engine.graphs.presentation import PastingSchemePresentation, enumerate_presentations

logger = logging.getLogger(__name__)

STRATEGIES = ("canonical", "redundant-pair", "reordered")


def _redundant_pair(g: BracketedGraph, p: PastingSchemePresentation, rng: random.Random) -> ExtensionCertificate:
    chains = canonical_interface_chains(g, p)
    trees = interface_bracketings(g, p)
    candidates = [i for i, tree in enumerate(trees) if tree.length >= 3]
    if not candidates:
        raise StrategyInapplicableError("redundant-pair needs an interface with at least three edges")
    i = rng.choice(candidates)
    move = rng.choice(redexes(trees[i]))
    chains[i] = [move, move.inverse()] + chains[i]
    logger.debug(f"Redundant pair {move} / {move.inverse()} at interface {i}")
    return build_extension(g, p, chains, strategy="redundant-pair")


def _reordered(g: BracketedGraph, p: PastingSchemePresentation) -> ExtensionCertificate:
    if len(g.anchored.faces) > MAX_ENUMERATION_FACES:
        raise StrategyInapplicableError(f"reordered needs at most {MAX_ENUMERATION_FACES} faces")
    for other in enumerate_presentations(g.anchored):
        if other.face_order != p.face_order:
            return build_extension(g, other, canonical_interface_chains(g, other), strategy="reordered")
    raise StrategyInapplicableError("reordered needs a second presentation, the graph has only one")


def alternate_certificate(g: BracketedGraph, p: PastingSchemePresentation, strategy: str,
                          rng: Optional[random.Random] = None) -> ExtensionCertificate:
    """A composition scheme extension of g built by ``strategy``.

    Raises:
        StrategyInapplicableError: if the strategy cannot produce a certificate for g
    """
    if strategy == "canonical":
        return extend_to_composition_scheme(g, p)
    if strategy == "redundant-pair":
        return _redundant_pair(g, p, rng or random.Random(0))
    if strategy == "reordered":
        return _reordered(g, p)
    raise StrategyInapplicableError(f"unknown strategy {strategy!r}, expected one of {', '.join(STRATEGIES)}")


def available_certificates(g: BracketedGraph, p: PastingSchemePresentation,
                           rng: random.Random) -> List[ExtensionCertificate]:
    """Every strategy that applies, canonical first."""
    certificates = []
    for strategy in STRATEGIES:
        try:
            certificates.append(alternate_certificate(g, p, strategy, rng))
        except StrategyInapplicableError as e:
            logger.debug(f"Skipping {strategy}: {e}")
    return certificates
