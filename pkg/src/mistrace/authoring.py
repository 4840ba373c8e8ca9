"""Quiz-authoring support: distractor generation, corpora, batch stats.

A distractor is a wrong-but-reachable transcript: the output some valid
misconception profile produces on the task, deduplicated and ranked by
how small a profile suffices.  Batch diagnosis aggregates per-code
weights over a corpus of student responses with fractional weighting
when several minimal explanations tie.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

from . import diagnosis as dx
from . import exec_core as ec
from . import minilang as ml
from . import taxonomy as tax
from . import variants as va


class CorpusError(Exception):
    """Malformed or inconsistent corpus file."""


@dataclass(frozen=True)
class Response:
    answer: str
    student_id: Optional[str] = None


@dataclass(frozen=True)
class TaskRecord:
    id: str
    source: str
    reference_transcript: tuple[str, ...]
    responses: tuple[Response, ...] = ()

    @staticmethod
    def create(
        id: str,
        source: str,
        responses: tuple[Response, ...] = (),
        limits: Optional[ec.Limits] = None,
    ) -> "TaskRecord":
        program = ml.parse(source)
        result = ec.run_reference(program, limits)
        return TaskRecord(id, source, result.transcript, responses)


@dataclass(frozen=True)
class Distractor:
    transcript: tuple[str, ...]
    generating_profiles: tuple[va.SemanticProfile, ...]
    plausibility_rank: int

    def to_json_dict(self) -> dict:
        return {
            "transcript": list(self.transcript),
            "profiles": [str(p) for p in self.generating_profiles],
            "plausibilityRank": self.plausibility_rank,
        }


def gen_distractors(
    program: ml.Program,
    registry: Optional[tax.Registry] = None,
    max_cardinality: int = 1,
    limits: Optional[ec.Limits] = None,
) -> list[Distractor]:
    """Wrong answers reachable through valid applicable profiles.

    Outcomes equal to the reference transcript are never distractors;
    runs that error out or print nothing are dropped unless nothing else
    remains.  Sorted by (plausibility rank, transcript).
    """
    registry = registry or tax.default_registry()
    limits = limits or ec.Limits()
    reference = ec.run_reference(program, limits)
    candidates = va.applicable_variants(registry, ml.features(program))
    by_transcript: dict[tuple[str, ...], dict] = {}
    for cardinality in range(1, max_cardinality + 1):
        for profile in dx.iter_profiles(registry, candidates, cardinality):
            result = va.run_variant(program, profile, limits=limits)
            if result.transcript == reference.transcript:
                continue
            bucket = by_transcript.setdefault(
                result.transcript,
                {"profiles": [], "rank": cardinality, "error": result.status == ec.STATUS_RUNTIME_ERROR},
            )
            bucket["profiles"].append(profile)
            bucket["error"] = bucket["error"] and result.status == ec.STATUS_RUNTIME_ERROR
    all_distractors = [
        Distractor(t, tuple(info["profiles"]), info["rank"])
        for t, info in by_transcript.items()
    ]
    good = [
        d
        for d in all_distractors
        if d.transcript and not by_transcript[d.transcript]["error"]
    ]
    chosen = good if good else all_distractors
    chosen.sort(key=lambda d: (d.plausibility_rank, d.transcript))
    return chosen


@dataclass
class AggregateStats:
    weights: dict[str, float] = field(default_factory=dict)
    correct: int = 0
    explained: int = 0
    unexplained: int = 0
    ambiguous: int = 0
    responses: int = 0
    skipped_tasks: list[str] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "weights": {code: self.weights[code] for code in sorted(self.weights)},
            "totals": {
                "responses": self.responses,
                "correct": self.correct,
                "explained": self.explained,
                "unexplained": self.unexplained,
                "ambiguous": self.ambiguous,
            },
            "skippedTasks": list(self.skipped_tasks),
        }


def batch_diagnose(
    corpus: list[TaskRecord],
    cfg: Optional[dx.SearchConfig] = None,
    registry: Optional[tax.Registry] = None,
    match_mode: str = "exact",
) -> AggregateStats:
    """Diagnose every response and aggregate per-code weights.

    A response with m minimal explanations spreads one unit of weight:
    each explanation carries 1/m, split evenly over its codes, so the
    weights of one explained response always sum to one.
    """
    cfg = cfg or dx.SearchConfig()
    registry = registry or tax.default_registry()
    stats = AggregateStats()
    for task in corpus:
        try:
            program = ml.parse(task.source)
        except ml.ParseError as exc:
            stats.skipped_tasks.append(f"{task.id}: {exc}")
            continue
        for response in task.responses:
            stats.responses += 1
            obs = dx.Observation.from_text(response.answer, match_mode)
            report = dx.diagnose(program, obs, cfg, registry)
            if report.verdict == "correct":
                stats.correct += 1
                continue
            if report.verdict == "unexplained":
                stats.unexplained += 1
                continue
            stats.explained += 1
            minimal = report.minimal_explanations()
            if len(minimal) > 1:
                stats.ambiguous += 1
            share = 1.0 / len(minimal)
            for explanation in minimal:
                codes = explanation.profile.codes
                for code in codes:
                    stats.weights[code] = stats.weights.get(code, 0.0) + share / len(codes)
    return stats


# ---------------------------------------------------------------------------
# Corpus persistence
# ---------------------------------------------------------------------------

def _task_to_json(task: TaskRecord) -> dict:
    responses = []
    for r in task.responses:
        item: dict = {"answer": r.answer}
        if r.student_id is not None:
            item["studentId"] = r.student_id
        responses.append(item)
    return {
        "id": task.id,
        "source": task.source,
        "referenceTranscript": list(task.reference_transcript),
        "responses": responses,
    }


def save_corpus(corpus: list[TaskRecord], path: Union[str, Path]) -> None:
    doc = {"version": "1.0", "tasks": [_task_to_json(t) for t in corpus]}
    Path(path).write_text(
        json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )


def load_corpus(path: Union[str, Path], limits: Optional[ec.Limits] = None) -> list[TaskRecord]:
    """Load and validate a corpus; cached reference transcripts must
    match a fresh reference run of the source."""
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise CorpusError(f"cannot read corpus: {exc}") from exc
    if not isinstance(doc, dict) or not isinstance(doc.get("tasks"), list):
        raise CorpusError("malformed corpus: expected an object with a tasks array")
    corpus: list[TaskRecord] = []
    for raw in doc["tasks"]:
        if not isinstance(raw, dict) or "source" not in raw or "id" not in raw:
            raise CorpusError("malformed corpus: every task needs id and source")
        responses = tuple(
            Response(answer=r["answer"], student_id=r.get("studentId"))
            for r in raw.get("responses", [])
        )
        try:
            program = ml.parse(raw["source"])
        except ml.ParseError as exc:
            raise CorpusError(f"task {raw['id']}: source does not parse: {exc}") from exc
        fresh = ec.run_reference(program, limits).transcript
        cached = raw.get("referenceTranscript")
        if cached is not None and tuple(cached) != fresh:
            raise CorpusError(
                f"task {raw['id']}: cached reference transcript is stale"
            )
        corpus.append(TaskRecord(raw["id"], raw["source"], fresh, responses))
    return corpus
