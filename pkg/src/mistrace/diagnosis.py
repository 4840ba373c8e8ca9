"""Explain observed answers as minimal misconception sets.

Given a program and the transcript a student predicted, the search
simulates semantic profiles over the applicable catalog, by increasing
cardinality, and reports every match up to the configured bound.  A
match whose proper subsets all fail is a minimal explanation; an answer
equal to the reference transcript is "correct" even when nonempty
profiles also produce it (those are reported as masked candidates).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterator, Optional

from . import exec_core as ec
from . import minilang as ml
from . import taxonomy as tax
from . import variants as va

MATCH_MODES = ("exact", "prefix", "normalized")
_CAPPED = (ec.STATUS_STEP_CAP, ec.STATUS_OUTPUT_CAP)


@dataclass(frozen=True)
class Observation:
    """A student's predicted output."""

    transcript: tuple[str, ...]
    match_mode: str = "exact"

    def __post_init__(self):
        if self.match_mode not in MATCH_MODES:
            raise ValueError(f"unknown match mode {self.match_mode!r}")

    @staticmethod
    def from_text(text: str, match_mode: str = "exact") -> "Observation":
        """One transcript entry per non-empty line, trimmed."""
        tokens = tuple(line.strip() for line in text.split("\n") if line.strip())
        return Observation(tokens, match_mode)


def _collapse(tokens: tuple[str, ...]) -> str:
    return " ".join(" ".join(tokens).split())


def match_transcript(expected: Observation, actual: ec.ExecResult) -> bool:
    """Does a run's outcome agree with the observation, per its mode?"""
    if actual.status == ec.STATUS_PREFIX_MISMATCH:
        return False
    mode = expected.match_mode
    if mode == "normalized":
        if actual.status == ec.STATUS_RUNTIME_ERROR:
            return False
        return _collapse(expected.transcript) == _collapse(actual.transcript)
    exact = (
        actual.status != ec.STATUS_RUNTIME_ERROR
        and actual.transcript == expected.transcript
    )
    if mode == "exact" or exact:
        return exact
    # prefix: a capped run may continue past the answer, or the student
    # may have written more than the capped run got to produce.
    if actual.status not in _CAPPED:
        return False
    a, b = actual.transcript, expected.transcript
    shorter, longer = (a, b) if len(a) <= len(b) else (b, a)
    return longer[: len(shorter)] == shorter


@dataclass(frozen=True)
class SearchConfig:
    max_cardinality: int = 2
    limits: ec.Limits = field(default_factory=ec.Limits)

    def __post_init__(self):
        if not 0 <= self.max_cardinality <= 3:
            raise ValueError("max_cardinality must be between 0 and 3")


@dataclass(frozen=True)
class Explanation:
    profile: va.SemanticProfile
    status: str
    match_mode: str
    minimal: bool = False


@dataclass(frozen=True)
class DiagnosisReport:
    verdict: str                       # "correct" | "explained" | "unexplained"
    explanations: tuple[Explanation, ...]
    masked_candidates: tuple[Explanation, ...]
    ambiguity: int
    searched: int

    def minimal_explanations(self) -> tuple[Explanation, ...]:
        return tuple(e for e in self.explanations if e.minimal)

    def to_json_dict(self) -> dict:
        def render(e: Explanation) -> dict:
            return {
                "codes": list(e.profile.codes),
                "params": {code: e.profile.params_of(code) for code, _ in e.profile.active},
                "matchMode": e.match_mode,
                "status": e.status,
                "minimal": e.minimal,
            }

        return {
            "verdict": self.verdict,
            "explanations": [render(e) for e in self.explanations],
            "maskedCandidates": [render(e) for e in self.masked_candidates],
            "ambiguity": self.ambiguity,
            "searched": self.searched,
        }


def iter_profiles(
    registry: tax.Registry,
    candidates: list[str],
    cardinality: int,
) -> Iterator[va.SemanticProfile]:
    """All valid profiles of exactly this cardinality over the candidate
    codes, in deterministic order: code combinations lexicographically,
    then parameter grids with defaults first."""
    if cardinality == 0:
        yield va.EMPTY_PROFILE
        return
    for combo in combinations(candidates, cardinality):
        slots: list[str] = []
        ok = True
        for code in combo:
            for slot in registry.lookup(code).slots:
                if slot in slots:
                    ok = False
                    break
                slots.append(slot)
            if not ok:
                break
        if not ok:
            continue
        grids = []
        for code in combo:
            entry = registry.lookup(code)
            names = sorted(entry.params)
            values = [entry.params[n].values() for n in names]
            grids.append([tuple(zip(names, vs)) for vs in product(*values)])
        for bindings in product(*grids):
            active = tuple((code, bound) for code, bound in zip(combo, bindings))
            yield va.SemanticProfile(active=active)


def _simulate(
    program: ml.Program,
    profile: va.SemanticProfile,
    obs: Observation,
    limits: ec.Limits,
) -> ec.ExecResult:
    expected: Optional[tuple[str, ...]] = None
    exact_len = False
    if obs.match_mode in ("exact", "prefix"):
        expected = obs.transcript
        exact_len = obs.match_mode == "exact"
    return va.run_variant(
        program,
        profile,
        limits=limits,
        expected_prefix=expected,
        expected_exact_length=exact_len,
    )


def diagnose(
    program: ml.Program,
    obs: Observation,
    cfg: Optional[SearchConfig] = None,
    registry: Optional[tax.Registry] = None,
) -> DiagnosisReport:
    """Search profiles up to the cardinality bound for the observation."""
    cfg = cfg or SearchConfig()
    registry = registry or tax.default_registry()
    searched = 0

    reference = ec.run_reference(program, cfg.limits)
    searched += 1
    candidates = va.applicable_variants(registry, ml.features(program))

    if match_transcript(obs, reference):
        masked = []
        for profile in iter_profiles(registry, candidates, 1):
            result = _simulate(program, profile, obs, cfg.limits)
            searched += 1
            if match_transcript(obs, result):
                masked.append(Explanation(profile, result.status, obs.match_mode))
        return DiagnosisReport(
            verdict="correct",
            explanations=(),
            masked_candidates=tuple(masked),
            ambiguity=0,
            searched=searched,
        )

    matches: list[Explanation] = []
    matched_sets: list[frozenset[str]] = []
    for cardinality in range(1, cfg.max_cardinality + 1):
        for profile in iter_profiles(registry, candidates, cardinality):
            result = _simulate(program, profile, obs, cfg.limits)
            searched += 1
            if not match_transcript(obs, result):
                continue
            codes = frozenset(profile.codes)
            minimal = not any(prior < codes for prior in matched_sets)
            matched_sets.append(codes)
            matches.append(Explanation(profile, result.status, obs.match_mode, minimal))

    matches.sort(
        key=lambda e: (
            len(e.profile),
            e.profile.non_default_param_count(registry),
            tuple(tax.MisconceptionCode.parse(c).sort_key for c in e.profile.codes),
        )
    )
    ambiguity = sum(1 for e in matches if e.minimal)
    return DiagnosisReport(
        verdict="explained" if matches else "unexplained",
        explanations=tuple(matches),
        masked_candidates=(),
        ambiguity=ambiguity,
        searched=searched,
    )


def equivalence_classes(
    program: ml.Program,
    profiles: list[va.SemanticProfile],
    limits: Optional[ec.Limits] = None,
) -> list[list[va.SemanticProfile]]:
    """Group profiles by identical (transcript, status), ordered by first
    appearance."""
    limits = limits or ec.Limits()
    keys: dict[tuple, int] = {}
    classes: list[list[va.SemanticProfile]] = []
    for profile in profiles:
        result = va.run_variant(program, profile, limits=limits)
        key = (result.transcript, result.status)
        if key in keys:
            classes[keys[key]].append(profile)
        else:
            keys[key] = len(classes)
            classes.append([profile])
    return classes
