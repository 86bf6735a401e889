"""Learn short ALC class expressions that explain a black-box classifier's labels.

The pipeline: annotations for classified inputs are ingested into an ABox
linked to a background ontology, the labels split the inputs into positive
and negative examples, and a refinement-operator search finds short class
expressions that cover the positives and exclude the negatives under
closed-world retrieval.
"""

from .model import (
    And,
    Assertion,
    Atomic,
    Axiom,
    Bottom,
    BOTTOM,
    ClassAssertion,
    ClassExpression,
    DlError,
    Exists,
    Forall,
    KnowledgeBase,
    LearningProblem,
    Not,
    Or,
    RoleAssertion,
    Signature,
    Top,
    TOP,
    canonicalize,
    check_well_formed,
    hierarchy_cycles,
    length,
    render_expression,
    subclass_closure,
)
from .text import (
    ParseError,
    SourceSpan,
    parse_expression,
    parse_kb,
    parse_problem,
    render_dl,
    serialize_kb,
    serialize_problem,
)
from .fol import FolFormula, render_fol, translate_class, translate_gci
from .reasoner import (
    Coverage,
    MaterializedKb,
    UnknownIndividualError,
    coverage,
    instance_check,
    materialize,
    retrieve,
)
from .learner import (
    SearchConfig,
    SearchResult,
    Solution,
    rho,
    score,
    search,
    top_refinements,
    verify_solution,
)
from .ingest import (
    AnnotationRecord,
    IngestError,
    MappingTable,
    build_abox,
    emit_problem,
    parse_annotations,
    parse_mapping,
)

__version__ = "0.1.0"
