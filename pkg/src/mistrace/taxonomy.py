"""Machine-readable misconception catalog: codes, entries, registry.

Codes are hierarchical, mirroring a two-root classification (SEL for
selection, ITER for iteration) with up to four further levels: arabic
numbers, lowercase letters, lowercase roman numerals, uppercase letters,
and uppercase roman numerals, printed dot-joined ("ITER.3.b.ii.A").
Every leaf is an entry; non-leaf levels are lightweight category nodes.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import total_ordering
from importlib import resources
from typing import Optional

from .exec_core import HOOK_SLOTS
from .minilang import FEATURE_NAMES


class TaxonomyError(Exception):
    """Malformed code, document, or registry content."""


class UnknownCodeError(TaxonomyError):
    pass


_ROMAN_VALUES = {"i": 1, "v": 5, "x": 10, "l": 50, "c": 100}
_ROMAN_RE = re.compile(r"^[ivxlc]+$")
_LATIN_RE = re.compile(r"^[a-z]+$")
_ARABIC_RE = re.compile(r"^[0-9]+$")

ROOTS = ("SEL", "ITER")


def _roman_to_int(text: str) -> int:
    total = 0
    prev = 0
    for ch in reversed(text):
        v = _ROMAN_VALUES[ch]
        total += v if v >= prev else -v
        prev = max(prev, v)
    return total


def _segment_key(depth: int, segment: str) -> int:
    """Numeric sort key of one path segment; also validates its shape."""
    if depth == 0:
        if segment not in ROOTS:
            raise TaxonomyError(f"code must start with SEL or ITER, got {segment!r}")
        return ROOTS.index(segment)
    if depth == 1:
        if not _ARABIC_RE.match(segment):
            raise TaxonomyError(f"level 2 segment must be a number, got {segment!r}")
        return int(segment)
    if depth == 2:
        if not _LATIN_RE.match(segment):
            raise TaxonomyError(f"level 3 segment must be lowercase letters, got {segment!r}")
        key = 0
        for ch in segment:
            key = key * 27 + (ord(ch) - ord("a") + 1)
        return key
    if depth == 3:
        if not _ROMAN_RE.match(segment):
            raise TaxonomyError(f"level 4 segment must be a roman numeral, got {segment!r}")
        return _roman_to_int(segment)
    if depth == 4:
        if not _LATIN_RE.match(segment.lower()) or segment != segment.upper():
            raise TaxonomyError(f"level 5 segment must be uppercase letters, got {segment!r}")
        key = 0
        for ch in segment.lower():
            key = key * 27 + (ord(ch) - ord("a") + 1)
        return key
    if depth == 5:
        low = segment.lower()
        if segment != segment.upper() or not _ROMAN_RE.match(low):
            raise TaxonomyError(f"level 6 segment must be an uppercase roman numeral, got {segment!r}")
        return _roman_to_int(low)
    raise TaxonomyError(f"code nests too deep at segment {segment!r}")


@total_ordering
@dataclass(frozen=True)
class MisconceptionCode:
    """A hierarchical catalog code such as ITER.3.b.ii.A."""

    path: tuple[str, ...]

    def __post_init__(self):
        if not self.path:
            raise TaxonomyError("empty code")
        for depth, seg in enumerate(self.path):
            _segment_key(depth, seg)

    @staticmethod
    def parse(text: str) -> "MisconceptionCode":
        return MisconceptionCode(tuple(text.split(".")))

    def __str__(self) -> str:
        return ".".join(self.path)

    @property
    def sort_key(self) -> tuple[int, ...]:
        return tuple(_segment_key(d, s) for d, s in enumerate(self.path))

    def __lt__(self, other: "MisconceptionCode") -> bool:
        return self.sort_key < other.sort_key

    def is_proper_prefix_of(self, other: "MisconceptionCode") -> bool:
        return len(self.path) < len(other.path) and other.path[: len(self.path)] == self.path

    def prefixes(self) -> list["MisconceptionCode"]:
        return [MisconceptionCode(self.path[:n]) for n in range(1, len(self.path))]


@dataclass(frozen=True)
class ParamSpec:
    type: str                      # "int" or "string"
    default: object
    min: Optional[int] = None
    max: Optional[int] = None
    choices: Optional[tuple[str, ...]] = None

    def in_range(self, value: object) -> bool:
        if self.type == "int":
            if type(value) is not int:
                return False
            if self.min is not None and value < self.min:
                return False
            if self.max is not None and value > self.max:
                return False
            return True
        if not isinstance(value, str):
            return False
        return self.choices is None or value in self.choices

    def values(self) -> list[object]:
        """All allowed values, default first (used as diagnosis grids)."""
        if self.type == "int":
            assert self.min is not None and self.max is not None
            rest = [v for v in range(self.min, self.max + 1) if v != self.default]
            return [self.default] + rest
        assert self.choices is not None
        return [self.default] + [c for c in self.choices if c != self.default]


STATUSES = ("executable", "parameterized", "descriptive")
KINDS = ("runtime-hook", "structural-rewrite")


@dataclass(frozen=True)
class CategoryNode:
    code: MisconceptionCode
    title: str
    quote: str


@dataclass(frozen=True)
class CatalogEntry:
    code: MisconceptionCode
    title: str
    quote: str
    status: str
    slots: tuple[str, ...] = ()
    kind: Optional[str] = None
    params: dict[str, ParamSpec] = field(default_factory=dict)
    applicability: tuple[str, ...] = ()
    rationale: Optional[str] = None


@dataclass(frozen=True)
class Registry:
    version: str
    categories: tuple[CategoryNode, ...]
    entries: tuple[CatalogEntry, ...]

    def __post_init__(self):
        object.__setattr__(self, "_by_code", {str(e.code): e for e in self.entries})

    def lookup(self, code) -> CatalogEntry:
        entry = self._by_code.get(str(code))  # type: ignore[attr-defined]
        if entry is None:
            raise UnknownCodeError(f"unknown catalog code {code}")
        return entry

    def has(self, code) -> bool:
        return str(code) in self._by_code  # type: ignore[attr-defined]

    def children(self, prefix) -> tuple[CatalogEntry, ...]:
        p = prefix if isinstance(prefix, MisconceptionCode) else MisconceptionCode.parse(str(prefix))
        return tuple(e for e in self.entries if p.is_proper_prefix_of(e.code))


def lookup(registry: Registry, code) -> CatalogEntry:
    return registry.lookup(code)


def children(registry: Registry, prefix) -> tuple[CatalogEntry, ...]:
    return registry.children(prefix)


def validate_registry(registry: Registry) -> list[str]:
    """Structural invariant check; one issue string per violation."""
    issues: list[str] = []
    seen: set[str] = set()
    category_codes = set()
    for cat in registry.categories:
        text = str(cat.code)
        if text in category_codes:
            issues.append(f"duplicate category code {text}")
        category_codes.add(text)
    for entry in registry.entries:
        text = str(entry.code)
        if text in seen:
            issues.append(f"duplicate code {text}")
            continue
        seen.add(text)
        if text in category_codes:
            issues.append(f"code {text} is both an entry and a category")
        if entry.status not in STATUSES:
            issues.append(f"{text}: unknown status {entry.status!r}")
            continue
        if entry.status == "descriptive":
            if entry.slots:
                issues.append(f"{text}: descriptive entry must not name a slot")
            if not entry.rationale:
                issues.append(f"{text}: descriptive entry needs a rationale")
            if entry.params:
                issues.append(f"{text}: descriptive entry must not have parameters")
        else:
            if not entry.slots:
                issues.append(f"{text}: {entry.status} entry must name a slot")
            for slot in entry.slots:
                if slot not in HOOK_SLOTS:
                    issues.append(f"{text}: unknown slot {slot!r}")
            if entry.kind not in KINDS:
                issues.append(f"{text}: unknown kind {entry.kind!r}")
            if entry.status == "parameterized" and not entry.params:
                issues.append(f"{text}: parameterized entry needs parameters")
            if entry.status == "executable" and entry.params:
                issues.append(f"{text}: executable entry must not have parameters")
            for name, spec in entry.params.items():
                if spec.type not in ("int", "string"):
                    issues.append(f"{text}: parameter {name} has unknown type {spec.type!r}")
                elif not spec.in_range(spec.default):
                    issues.append(f"{text}: parameter {name} default outside its range")
        for feature in entry.applicability:
            if feature not in FEATURE_NAMES:
                issues.append(f"{text}: unknown applicability feature {feature!r}")
    known = seen | category_codes
    for entry in registry.entries:
        for prefix in entry.code.prefixes():
            if str(prefix) not in known:
                issues.append(f"{entry.code}: dangling prefix {prefix}")
    return issues


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def _param_to_json(spec: ParamSpec) -> dict:
    out: dict = {"type": spec.type, "default": spec.default, "min": spec.min, "max": spec.max}
    if spec.choices is not None:
        out["choices"] = list(spec.choices)
    return out


def _entry_to_json(entry: CatalogEntry) -> dict:
    return {
        "code": str(entry.code),
        "title": entry.title,
        "quote": entry.quote,
        "status": entry.status,
        "slot": "+".join(entry.slots) if entry.slots else None,
        "kind": entry.kind,
        "params": {name: _param_to_json(spec) for name, spec in entry.params.items()},
        "applicability": list(entry.applicability),
        "rationale": entry.rationale,
    }


def dump_registry(registry: Registry) -> str:
    """Canonical JSON form; stable byte-for-byte across dumps."""
    doc = {
        "version": registry.version,
        "categories": [
            {"code": str(c.code), "title": c.title, "quote": c.quote}
            for c in registry.categories
        ],
        "entries": [_entry_to_json(e) for e in registry.entries],
    }
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _param_from_json(name: str, raw: dict, where: str) -> ParamSpec:
    try:
        choices = raw.get("choices")
        return ParamSpec(
            type=raw["type"],
            default=raw["default"],
            min=raw.get("min"),
            max=raw.get("max"),
            choices=tuple(choices) if choices is not None else None,
        )
    except (KeyError, TypeError) as exc:
        raise TaxonomyError(f"{where}: malformed parameter {name!r}: {exc}") from exc


def load_registry(source: str) -> Registry:
    """Parse and validate a registry document.  Raises TaxonomyError."""
    try:
        doc = json.loads(source)
    except json.JSONDecodeError as exc:
        raise TaxonomyError(f"malformed registry document: {exc}") from exc
    if not isinstance(doc, dict) or "entries" not in doc:
        raise TaxonomyError("malformed registry document: missing entries")
    categories = []
    for raw in doc.get("categories", []):
        try:
            categories.append(
                CategoryNode(
                    MisconceptionCode.parse(raw["code"]),
                    raw.get("title", ""),
                    raw.get("quote", ""),
                )
            )
        except (KeyError, TypeError) as exc:
            raise TaxonomyError(f"malformed category: {exc}") from exc
    entries = []
    for raw in doc["entries"]:
        try:
            code = MisconceptionCode.parse(raw["code"])
            slot = raw.get("slot")
            params = {
                name: _param_from_json(name, p, raw["code"])
                for name, p in (raw.get("params") or {}).items()
            }
            entries.append(
                CatalogEntry(
                    code=code,
                    title=raw.get("title", ""),
                    quote=raw.get("quote", ""),
                    status=raw["status"],
                    slots=tuple(slot.split("+")) if slot else (),
                    kind=raw.get("kind"),
                    params=params,
                    applicability=tuple(raw.get("applicability") or ()),
                    rationale=raw.get("rationale"),
                )
            )
        except (KeyError, TypeError) as exc:
            raise TaxonomyError(f"malformed entry: {exc}") from exc
    entries.sort(key=lambda e: e.code.sort_key)
    registry = Registry(
        version=str(doc.get("version", "")),
        categories=tuple(sorted(categories, key=lambda c: c.code.sort_key)),
        entries=tuple(entries),
    )
    issues = validate_registry(registry)
    if issues:
        raise TaxonomyError("invalid registry: " + "; ".join(issues))
    return registry


def default_registry() -> Registry:
    """The bundled full catalog."""
    text = resources.files(__package__).joinpath("catalog.json").read_text("utf-8")
    return load_registry(text)
