"""Turn per-input object annotations into an ABox over a background ontology.

Each annotated input becomes an individual; each recorded object term becomes
a fresh individual typed with the class the mapping table assigns to the
term, and linked to its input through a single connecting role.  Duplicate
terms within one record yield distinct individuals.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .model import (
    ClassAssertion,
    DlError,
    IDENTIFIER_RE,
    KnowledgeBase,
    LearningProblem,
    RoleAssertion,
    Signature,
)


class IngestError(DlError):
    pass


@dataclass(frozen=True)
class AnnotationRecord:
    input_id: str
    terms: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.input_id:
            raise IngestError("annotation record with empty input id")
        if not self.terms:
            raise IngestError(f"annotation record {self.input_id!r} lists no terms")


@dataclass(frozen=True)
class MappingTable:
    entries: dict[str, str]

    def class_for(self, term: str) -> str:
        return self.entries[term]


def parse_annotations(text: str) -> list[AnnotationRecord]:
    """One record per line: ``input_id<TAB>term, term, ...``."""
    records = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        if "\t" not in line:
            raise IngestError(f"line {lineno}: expected '<input_id><TAB><terms>'")
        input_id, _, term_part = line.partition("\t")
        input_id = input_id.strip()
        terms = tuple(term.strip() for term in term_part.split(",") if term.strip())
        if not input_id:
            raise IngestError(f"line {lineno}: empty input id")
        if not terms:
            raise IngestError(f"line {lineno}: record {input_id!r} lists no terms")
        records.append(AnnotationRecord(input_id, terms))
    return records


def parse_mapping(text: str) -> MappingTable:
    """One entry per line: ``term<TAB>ClassName``."""
    entries: dict[str, str] = {}
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        if "\t" not in line:
            raise IngestError(f"line {lineno}: expected '<term><TAB><ClassName>'")
        term, _, class_name = line.partition("\t")
        term, class_name = term.strip(), class_name.strip()
        if not term or not class_name:
            raise IngestError(f"line {lineno}: empty term or class name")
        if entries.get(term, class_name) != class_name:
            raise IngestError(f"line {lineno}: term {term!r} mapped to both {entries[term]} and {class_name}")
        entries[term] = class_name
    return MappingTable(entries)


def build_abox(
    records: list[AnnotationRecord],
    mapping: MappingTable,
    role: str,
    background: KnowledgeBase,
) -> KnowledgeBase:
    """Extend the background KB with one individual per input and per term occurrence.

    Object individuals are named ``<term>_<input_id>``, with ``_<k>`` appended
    from the second occurrence of the same term within a record onward.
    """
    unmapped = sorted({term for record in records for term in record.terms} - set(mapping.entries))
    if unmapped:
        raise IngestError("unmapped terms: " + ", ".join(unmapped))
    missing_classes = sorted(
        {mapping.entries[term] for record in records for term in record.terms}
        - background.signature.atomic_classes
    )
    if missing_classes:
        raise IngestError("mapped classes missing from background signature: " + ", ".join(missing_classes))
    if role not in background.signature.roles:
        raise IngestError(f"connecting role {role!r} not declared in background signature")

    new_individuals: list[str] = []
    assertions = []
    for record in records:
        new_individuals.append(record.input_id)
        occurrences: dict[str, int] = {}
        for term in record.terms:
            occurrences[term] = occurrences.get(term, 0) + 1
            name = f"{term}_{record.input_id}"
            if occurrences[term] > 1:
                name = f"{name}_{occurrences[term]}"
            new_individuals.append(name)
            assertions.append(ClassAssertion(mapping.entries[term], name))
            assertions.append(RoleAssertion(role, record.input_id, name))

    for name in new_individuals:
        if not IDENTIFIER_RE.match(name):
            raise IngestError(f"derived individual name is not a valid identifier: {name!r}")
    collisions = sorted(set(new_individuals) & background.signature.individuals)
    if collisions:
        raise IngestError("individual names collide with background: " + ", ".join(collisions))
    duplicate_ids = sorted(name for name, count in Counter(new_individuals).items() if count > 1)
    if duplicate_ids:
        raise IngestError("derived individual names collide with each other: " + ", ".join(duplicate_ids))

    sig = Signature(
        background.signature.atomic_classes,
        background.signature.roles,
        background.signature.individuals | frozenset(new_individuals),
    )
    return KnowledgeBase.create(sig, background.tbox, background.abox | frozenset(assertions))


def emit_problem(records: list[AnnotationRecord], positive_ids: set[str]) -> LearningProblem:
    """Split record ids into positives (as given) and negatives (the rest)."""
    ids = [record.input_id for record in records]
    unknown = sorted(positive_ids - set(ids))
    if unknown:
        raise IngestError("positive ids not among the records: " + ", ".join(unknown))
    positives = frozenset(positive_ids)
    negatives = frozenset(ids) - positives
    if not positives:
        raise IngestError("no positive examples given")
    if not negatives:
        raise IngestError("every record is positive; need at least one negative")
    return LearningProblem(positives, negatives)
