"""Command reports: JSON payloads with a schema version, and their text form."""
import json
import logging
from typing import Any, Dict, List, Sequence, Union

from pasting_engine.config.settings import REPORT_SCHEMA_VERSION
from pasting_engine.evaluation.diagram import CompositeResult
from pasting_engine.graphs.bracketed import AssociativityGraph, ExtensionCertificate, check_associativity
from pasting_engine.graphs.presentation import NotAPastingScheme, PastingSchemePresentation
from pasting_engine.models.base import BicategoryModel
from pasting_engine.types import GeneratorConfig, SuiteSummary, ValidationReport

logger = logging.getLogger(__name__)

Report = Dict[str, Any]


def make_report(command: str, ok: bool, **payload: Any) -> Report:
    return {"schema_version": REPORT_SCHEMA_VERSION, "command": command, "ok": ok, **payload}


def to_json(report: Report) -> str:
    """Stable text: sorted keys, two-space indent, no timestamps."""
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False)


# check


def check_report(name: str, validation: ValidationReport,
                 recognition: Union[PastingSchemePresentation, NotAPastingScheme, None]) -> Report:
    scheme = isinstance(recognition, PastingSchemePresentation)
    payload: Report = {
        "diagram": name,
        "valid": validation.ok,
        "violations": validation.messages(),
        "pasting_scheme": scheme,
    }
    if scheme:
        payload["face_order"] = list(recognition.face_order)
    elif recognition is not None:
        payload["reason"] = recognition.reason
        payload["unused_faces"] = list(recognition.unused_faces)
    return make_report("check", validation.ok and scheme, **payload)


def render_check(report: Report) -> str:
    lines = [f"diagram {report['diagram']}"]
    if not report["valid"]:
        lines.append(f"invalid anchored graph: {len(report['violations'])} violation(s)")
        lines += [f"  {v}" for v in report["violations"]]
    elif report["pasting_scheme"]:
        lines.append("pasting diagram: presented by " + " ; ".join(report["face_order"]))
    else:
        lines.append(report["reason"])
    return "\n".join(lines)


# schemes


def schemes_report(name: str, presentations: Sequence[PastingSchemePresentation],
                   exhaustive: bool) -> Report:
    return make_report(
        "schemes", bool(presentations),
        diagram=name,
        exhaustive=exhaustive,
        count=len(presentations),
        presentations=[
            {"face_order": list(p.face_order), "frontiers": [str(f) for f in p.frontiers]}
            for p in presentations
        ],
    )


def render_schemes(report: Report) -> str:
    heading = "all presentations" if report["exhaustive"] else "presentation"
    lines = [f"diagram {report['diagram']}: {heading} ({report['count']})"]
    for i, p in enumerate(report["presentations"], 1):
        lines.append(f"  {i}. " + " ; ".join(p["face_order"]))
        for frontier in p["frontiers"]:
            lines.append(f"       {frontier}")
    return "\n".join(lines)


# extend


def _factor_entries(cert: ExtensionCertificate) -> List[Report]:
    moves = iter([move for chain in cert.chains for move in chain])
    assoc = set(cert.assoc_indices)
    entries = []
    for i, factor in enumerate(cert.scheme.factors):
        entry: Report = {
            "index": i,
            "face": factor.face,
            "dom": factor.dom.render(),
            "cod": factor.cod.render(),
        }
        if i in assoc:
            found = check_associativity(factor)
            entry["kind"] = found.form.symbol if isinstance(found, AssociativityGraph) else "?"
            entry["move"] = str(next(moves))
        else:
            entry["kind"] = "face"
        entries.append(entry)
    return entries


def extend_report(name: str, cert: ExtensionCertificate, verified: bool) -> Report:
    return make_report(
        "extend", verified,
        diagram=name,
        strategy=cert.strategy,
        face_order=list(cert.face_order),
        associativity_indices=list(cert.assoc_indices),
        factors=_factor_entries(cert),
    )


def render_extend(report: Report) -> str:
    factors = report["factors"]
    lines = [
        f"diagram {report['diagram']}: {len(factors)} factors ({report['strategy']}), "
        f"{len(report['associativity_indices'])} associativity faces"
    ]
    width = max((len(f["face"]) for f in factors), default=4)
    for f in factors:
        tag = "" if f["kind"] == "face" else f["kind"]
        move = f"  {f['move']}" if "move" in f else ""
        lines.append(f"  {f['index']:>2}  {f['face']:<{width}}  {tag:<3}  {f['dom']}  =>  {f['cod']}{move}")
    if not report["ok"]:
        lines.append("warning: the scheme does not collapse back to the diagram")
    return "\n".join(lines)


# eval


def eval_report(name: str, m: BicategoryModel, result: CompositeResult) -> Report:
    return make_report(
        "eval", True,
        diagram=name,
        model=m.name,
        composite=m.payload_2(result.value),
        source=m.render_1(m.two_source(result.value)),
        target=m.render_1(m.two_target(result.value)),
        trace=[
            {"index": c.index, "face": c.face, "kind": c.kind, "label": c.label}
            for c in result.trace
        ],
        strategy=result.certificate.strategy if result.certificate else None,
    )


def render_eval(report: Report, m: BicategoryModel, result: CompositeResult) -> str:
    lines = [
        f"diagram {report['diagram']} in the {report['model']} model",
        f"source: {report['source']}",
        f"target: {report['target']}",
        "composite:",
    ]
    lines += [f"  {line}" for line in m.render_2(result.value).splitlines()]
    lines.append("constituents (first applied first):")
    lines += [f"  {c['index']}: {c['label']}" for c in report["trace"]]
    return "\n".join(lines)


# verify


def verify_report(summaries: Sequence[SuiteSummary], cfg: GeneratorConfig, model_kind: str) -> Report:
    suites = []
    for s in summaries:
        suites.append({
            "suite": s.suite,
            "ok": s.ok,
            "trials": len(s.results),
            "pass": s.count("pass"),
            "fail": s.count("fail"),
            "error": s.count("error"),
            "skipped": s.count("skipped"),
            "failures": [
                {
                    "trial": r.trial,
                    "seed": r.seed,
                    "status": r.status,
                    "message": r.message,
                    "fingerprint": r.fingerprint,
                    "encoding": r.encoding,
                }
                for r in s.failures()
            ],
        })
    return make_report(
        "verify", all(s.ok for s in summaries),
        config={
            "seed": cfg.seed,
            "trials": cfg.trials,
            "max_faces": cfg.max_faces,
            "max_path_len": cfg.max_path_len,
            "max_object_size": cfg.max_object_size,
            "model": model_kind,
        },
        suites=suites,
    )


def render_verify(report: Report, table: str) -> str:
    c = report["config"]
    lines = [
        f"verify: seed {c['seed']}, {c['trials']} trials, model {c['model']}, "
        f"faces <= {c['max_faces']}, paths <= {c['max_path_len']}",
        table,
    ]
    for suite in report["suites"]:
        for f in suite["failures"]:
            lines.append(f"{suite['suite']} trial {f['trial']} ({f['status']}, seed {f['seed']}): {f['message']}")
            if f["fingerprint"]:
                lines.append(f"  fingerprint {f['fingerprint']}")
            if f["encoding"]:
                lines += [f"  | {line}" for line in f["encoding"].splitlines()]
    lines.append("all suites pass" if report["ok"] else "verification FAILED")
    return "\n".join(lines)
