"""mistrace: an executable catalog of control-flow misconceptions.

Parse small imperative tracing programs, run them under reference
semantics or under simulated misconceptions, diagnose observed student
answers as minimal misconception sets, and generate distractors for
tracing quizzes.
"""

from .authoring import (
    AggregateStats,
    CorpusError,
    Distractor,
    Response,
    TaskRecord,
    batch_diagnose,
    gen_distractors,
    load_corpus,
    save_corpus,
)
from .diagnosis import (
    DiagnosisReport,
    Explanation,
    Observation,
    SearchConfig,
    diagnose,
    equivalence_classes,
    match_transcript,
)
from .exec_core import (
    ExecResult,
    Limits,
    RuntimeFault,
    State,
    eval_expr,
    run_reference,
)
from .minilang import ParseError, Program, features, parse, pretty_print, tokenize
from .taxonomy import (
    CatalogEntry,
    MisconceptionCode,
    Registry,
    TaxonomyError,
    UnknownCodeError,
    children,
    default_registry,
    dump_registry,
    load_registry,
    lookup,
    validate_registry,
)
from .variants import (
    EMPTY_PROFILE,
    ProfileError,
    SemanticProfile,
    applicable_variants,
    compile_profile,
    parse_profile_literal,
    rewrite_structural,
    run_variant,
)

__version__ = "0.1.0"

__all__ = [
    "AggregateStats",
    "CatalogEntry",
    "CorpusError",
    "DiagnosisReport",
    "Distractor",
    "EMPTY_PROFILE",
    "ExecResult",
    "Explanation",
    "Limits",
    "MisconceptionCode",
    "Observation",
    "ParseError",
    "ProfileError",
    "Program",
    "Registry",
    "Response",
    "RuntimeFault",
    "SearchConfig",
    "SemanticProfile",
    "State",
    "TaskRecord",
    "TaxonomyError",
    "UnknownCodeError",
    "applicable_variants",
    "batch_diagnose",
    "children",
    "compile_profile",
    "default_registry",
    "diagnose",
    "dump_registry",
    "equivalence_classes",
    "eval_expr",
    "features",
    "gen_distractors",
    "load_corpus",
    "load_registry",
    "lookup",
    "match_transcript",
    "parse",
    "parse_profile_literal",
    "pretty_print",
    "rewrite_structural",
    "run_reference",
    "run_variant",
    "save_corpus",
    "tokenize",
    "validate_registry",
]
