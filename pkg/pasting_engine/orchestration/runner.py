"""Orchestration of the verification suites."""
import logging
import random
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import replace
from datetime import datetime
from typing import Callable, List, Optional, Sequence, Tuple

import pandas as pd

from pasting_engine.config.settings import MAX_ENUMERATION_FACES, Settings, load_settings
from pasting_engine.evaluation.diagram import PastingDiagram
from pasting_engine.format.document import document_from_graph, model_block_from_diagram, render_document
from pasting_engine.graphs.anchored import (
    DirectedPath,
    canonical_form,
    is_atomic,
    structurally_equal,
    validate_anchored,
    vertical_compose,
)
from pasting_engine.graphs.bracketed import (
    collapse_all,
    extend_to_composition_scheme,
    underlying_presentation,
    verify_extension,
)
from pasting_engine.graphs.bracketing import associator_chain, catalan, enumerate_bracketings
from pasting_engine.graphs.catalog import interior_source_obstruction
from pasting_engine.graphs.presentation import (
    NotAPastingScheme,
    enumerate_presentations,
    find_presentation,
)
from pasting_engine.models.axioms import check_axioms, random_samples
from pasting_engine.models.base import BicategoryModel
from pasting_engine.models.matrices import StrictMatrixModel
from pasting_engine.models.spans import SpanModel
from pasting_engine.orchestration.certificates import available_certificates
from pasting_engine.orchestration.checks import check_maclane_instance, check_uniqueness, shortest_chain
from pasting_engine.orchestration.generator import random_pasting_diagram
from pasting_engine.types import GeneratorConfig, SuiteSummary, TrialResult
from pasting_engine.utils.hashing import fingerprint

logger = logging.getLogger(__name__)

Trial = Callable[[int, int], TrialResult]


def make_model(kind: str) -> BicategoryModel:
    if kind == "span":
        return SpanModel()
    if kind == "matrix":
        return StrictMatrixModel()
    if kind == "boolean":
        return StrictMatrixModel(semiring="boolean")
    raise ValueError(f"unknown model {kind!r}, expected span or matrix")


def encode_diagram(d: PastingDiagram) -> str:
    """Replayable .paste text of a diagram: its shape and its cells."""
    return render_document(document_from_graph(d.shape, "trial", (model_block_from_diagram(d),)))


# Suites


def uniqueness_trial(cfg: GeneratorConfig, model_kind: str) -> Trial:
    def run(index: int, seed: int) -> TrialResult:
        d, p = random_pasting_diagram(cfg, make_model(model_kind), seed)
        certs = available_certificates(d.shape, p, random.Random(seed))
        verdict = check_uniqueness(d, certs)
        return _result("uniqueness", index, seed, verdict.ok, verdict.message, d, len(certs))
    return run


def strict_trial(cfg: GeneratorConfig, semiring: str = "natural") -> Trial:
    """All presentations of one generated graph give the same strict composite."""
    strict_cfg = replace(cfg, max_faces=min(cfg.max_faces, 5))

    def run(index: int, seed: int) -> TrialResult:
        d, _ = random_pasting_diagram(strict_cfg, StrictMatrixModel(semiring=semiring), seed)
        certs = [extend_to_composition_scheme(d.shape, q) for q in enumerate_presentations(d.shape.anchored)]
        verdict = check_uniqueness(d, certs)
        return _result("strict", index, seed, verdict.ok, verdict.message, d, len(certs))
    return run


def maclane_pairs(max_length: int) -> List[Tuple[int, int, int]]:
    """(length, i, j) indices into enumerate_bracketings(length) for all ordered pairs."""
    pairs = []
    for n in range(1, max_length + 1):
        count = len(enumerate_bracketings(n))
        pairs.extend((n, i, j) for i in range(count) for j in range(count))
    return pairs


def maclane_trial(model_kind: str, settings: Settings) -> Tuple[Trial, int]:
    pairs = maclane_pairs(settings.maclane_max_length)

    def run(index: int, seed: int) -> TrialResult:
        if index == 0:
            counts = [len(enumerate_bracketings(n)) for n in range(1, settings.maclane_max_length + 1)]
            expected = [catalan(n - 1) for n in range(1, settings.maclane_max_length + 1)]
            ok = counts == expected
            return TrialResult("maclane", index, seed, "pass" if ok else "fail",
                               f"bracketing counts {counts}, Catalan numbers {expected}")
        n, i, j = pairs[index - 1]
        trees = enumerate_bracketings(n)
        src, dst = trees[i], trees[j]
        m = make_model(model_kind)
        rng = random.Random(seed)
        vertices = [f"p{k}" for k in range(n + 1)]
        edges = [f"x{k + 1}" for k in range(n)]
        path = DirectedPath(tuple(vertices), tuple(edges))
        chains = [associator_chain(src, dst), shortest_chain(src, dst)]
        for _ in range(settings.maclane_skeletons):
            objects = {v: m.random_object(rng, 3, label=f"{v}_") for v in vertices}
            cells = {
                e: m.random_one_cell(rng, objects[vertices[k]], objects[vertices[k + 1]], 3, label=f"{e}_")
                for k, e in enumerate(edges)
            }
            verdict = check_maclane_instance(m, path, objects, cells, src, dst, chains)
            if not verdict.ok:
                return TrialResult("maclane", index, seed, "fail", verdict.message)
        return TrialResult("maclane", index, seed, "pass",
                           f"{src} => {dst}: {len(chains[0])} vs {len(chains[1])} moves agree")
    return run, len(pairs) + 1


def axioms_trial(settings: Settings) -> Tuple[Trial, int]:
    kinds = ("span", "matrix", "boolean")

    def run(index: int, seed: int) -> TrialResult:
        m = make_model(kinds[index])
        report = check_axioms(m, random_samples(m, random.Random(seed), settings.axiom_samples, 3))
        message = f"{kinds[index]}: {report.checked} law checks"
        if report.failures:
            message += f", first failure: {report.failures[0]}"
        return TrialResult("axioms", index, seed, "pass" if report.ok else "fail", message)
    return run, len(kinds)


def structural_trial(cfg: GeneratorConfig, model_kind: str) -> Trial:
    def run(index: int, seed: int) -> TrialResult:
        problems = []
        if index == 0:
            obstruction = interior_source_obstruction()
            if not validate_anchored(obstruction).ok or not isinstance(find_presentation(obstruction), NotAPastingScheme):
                problems.append("interior source obstruction misclassified")
        d, p = random_pasting_diagram(cfg, make_model(model_kind), seed)
        g = d.shape.anchored
        report = validate_anchored(g)
        if not report.ok:
            problems.append("generated graph invalid: " + "; ".join(report.messages()))
        if not all(is_atomic(factor) for factor in p.factors):
            problems.append("a presentation factor is not atomic")
        if len(p.factors) >= 3:
            a, b, c = p.factors[:3]
            if not structurally_equal(vertical_compose(vertical_compose(a, b), c),
                                      vertical_compose(a, vertical_compose(b, c)), match_face_names=True):
                problems.append("vertical composition is not associative")
        if canonical_form(p.compose(), True) != canonical_form(g, True):
            problems.append("presentation does not recompose to the graph")
        if len(g.faces) <= MAX_ENUMERATION_FACES:
            found = find_presentation(g)
            if isinstance(found, NotAPastingScheme) or not enumerate_presentations(g):
                problems.append("greedy and exhaustive recognition disagree")
        cert = extend_to_composition_scheme(d.shape, p)
        if not verify_extension(cert, d.shape):
            problems.append("extension does not collapse back to the graph")
        if underlying_presentation(cert).face_order != p.face_order:
            problems.append("collapsing the extension loses the presentation order")
        graphs = cert.associativity_graphs()
        if graphs:
            partial = collapse_all(cert.scheme.graph, graphs[:random.Random(seed).randrange(len(graphs))])
            if isinstance(find_presentation(partial.anchored), NotAPastingScheme):
                problems.append("a partially collapsed scheme is not a pasting scheme")
        ok = not problems
        return _result("structural", index, seed, ok, "structure holds" if ok else problems[0], d, 1)
    return run


def _result(suite: str, index: int, seed: int, ok: bool, message: str,
            d: PastingDiagram, certificates: int) -> TrialResult:
    encoding = encode_diagram(d)
    return TrialResult(
        suite=suite,
        trial=index,
        seed=seed,
        status="pass" if ok else "fail",
        message=message,
        faces=len(d.shape.anchored.faces),
        certificates=certificates,
        encoding=None if ok else encoding,
        fingerprint=fingerprint(encoding),
    )


# Execution


def run_trials(suite: str, trial: Trial, count: int, cfg: GeneratorConfig, max_workers: int) -> SuiteSummary:
    """Run ``count`` independent trials in parallel, merged by trial index."""
    start_time = time.time()
    logger.info("=" * 60)
    logger.info(f"SUITE START | {suite} | Trials: {count} | Seed: {cfg.seed} | "
                f"Start Time: {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}")
    logger.info("=" * 60)

    results: List[Optional[TrialResult]] = [None] * count

    def run_single(index: int) -> Tuple[int, TrialResult]:
        seed = cfg.trial_seed(index)
        try:
            return index, trial(index, seed)
        except Exception as e:
            logger.error(f"Error in {suite} trial {index} (seed {seed}): {e}", exc_info=True)
            return index, TrialResult(suite, index, seed, "error", f"{type(e).__name__}: {e}")

    workers = max(1, min(max_workers, count))
    with ThreadPoolExecutor(max_workers=workers) as executor:
        future_to_index = {executor.submit(run_single, i): i for i in range(count)}
        completed = 0
        for future in as_completed(future_to_index):
            completed += 1
            index, result = future.result()
            results[index] = result
            if completed % 10 == 0 or completed == count:
                logger.info(f"Progress: {completed}/{count} {suite} trials completed")

    elapsed = time.time() - start_time
    summary = SuiteSummary(suite, [r for r in results if r is not None], elapsed)
    logger.info("=" * 60)
    logger.info(f"SUITE COMPLETE | {suite} | pass {summary.count('pass')} | fail {summary.count('fail')} | "
                f"error {summary.count('error')}")
    logger.info(f"Total Time: {elapsed:.2f} seconds")
    logger.info("=" * 60)
    return summary


def run_verification(suites: Sequence[str], cfg: GeneratorConfig, model_kind: str = "span",
                     max_workers: Optional[int] = None, settings: Optional[Settings] = None) -> List[SuiteSummary]:
    settings = settings or load_settings()
    workers = max_workers or settings.max_workers
    summaries = []
    for suite in suites:
        if suite == "uniqueness":
            summaries.append(run_trials(suite, uniqueness_trial(cfg, model_kind), cfg.trials, cfg, workers))
        elif suite == "strict":
            summaries.append(run_trials(suite, strict_trial(cfg), cfg.trials, cfg, workers))
        elif suite == "maclane":
            trial, count = maclane_trial(model_kind, settings)
            summaries.append(run_trials(suite, trial, count, cfg, workers))
        elif suite == "axioms":
            trial, count = axioms_trial(settings)
            summaries.append(run_trials(suite, trial, count, cfg, workers))
        elif suite == "structural":
            summaries.append(run_trials(suite, structural_trial(cfg, model_kind), cfg.trials, cfg, workers))
        else:
            raise ValueError(f"unknown suite {suite!r}")
    return summaries


def results_frame(summaries: Sequence[SuiteSummary]) -> pd.DataFrame:
    """One row per trial, ordered by suite and trial index."""
    rows = [r.as_row() for s in summaries for r in s.results]
    columns = ["suite", "trial", "seed", "status", "faces", "certificates", "fingerprint", "message"]
    return pd.DataFrame(rows, columns=columns)


def summary_frame(summaries: Sequence[SuiteSummary]) -> pd.DataFrame:
    frame = results_frame(summaries)
    if frame.empty:
        return pd.DataFrame(columns=["suite", "pass", "fail", "error", "skipped"])
    counts = frame.pivot_table(index="suite", columns="status", values="trial", aggfunc="count", fill_value=0)
    counts = counts.reindex(columns=["pass", "fail", "error", "skipped"], fill_value=0)
    order = [s.suite for s in summaries]
    return counts.reindex(order).reset_index()
