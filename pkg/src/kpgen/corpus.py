"""Benchmark corpus loading, source-text construction, and training pairs.

Input records are JSONL objects ``{"id"?, "title", "abstract", "keywords"}``
where ``keywords`` is either a JSON array of strings or one
semicolon-delimited string (both forms occur in community releases of the
standard benchmarks). Text surfaces are kept raw: no lowercasing and no
digit normalization at preparation time.
"""

import json
import logging
import os
from dataclasses import dataclass, field

from . import codec
from .errors import CorpusError
from .segmenter import DEFAULT_BUDGET, TokenCounter, pack_paragraphs, split_sentences

logger = logging.getLogger(__name__)

_SENTENCE_FINAL = (".", "!", "?")


@dataclass
class Document:
    """One benchmark record: title, abstract, and its gold keyphrases."""

    id: str
    title: str
    abstract: str
    gold: list[str] = field(default_factory=list)


@dataclass
class TrainingPair:
    """One paragraph paired with the serialized gold list of its document."""

    source: str
    target: str
    origin_doc_id: str
    paragraph_index: int

    def to_json(self) -> str:
        return json.dumps(
            {
                "source": self.source,
                "target": self.target,
                "origin_doc_id": self.origin_doc_id,
                "paragraph_index": self.paragraph_index,
            },
            ensure_ascii=False,
        )


@dataclass
class LoadIssue:
    """A skipped record and why it was skipped."""

    line: int
    doc_id: str | None
    reason: str


def _parse_keywords(raw, line: int) -> list[str]:
    if raw is None:
        return []
    if isinstance(raw, str):
        items = raw.split(";")
    elif isinstance(raw, list):
        items = []
        for item in raw:
            if not isinstance(item, str):
                raise CorpusError(f"line {line}: keywords array holds a non-string", line)
            items.append(item)
    else:
        raise CorpusError(f"line {line}: keywords must be a string or array", line)
    return [item.strip() for item in items if item.strip()]


def _text_field(obj: dict, key: str) -> str:
    value = obj.get(key)
    if value is None:
        return ""
    if not isinstance(value, str):
        value = str(value)
    return value.strip()


def load_split(path, fmt: str = "jsonl", issues: list[LoadIssue] | None = None) -> list[Document]:
    """Load one dataset split, one document per JSONL line.

    Malformed JSON aborts with the offending line number. Record-level
    problems (no usable text, bad keywords value, duplicate id) skip the
    record: they are appended to ``issues`` when a list is passed,
    otherwise logged. Missing ids are synthesized as
    ``<filename>:<line-number>``. Loading is order-preserving and
    deterministic.
    """
    if fmt != "jsonl":
        raise CorpusError(f"unsupported corpus format: {fmt!r}")
    if issues is None:
        issues = []
        log_issues = True
    else:
        log_issues = False
    filename = os.path.basename(str(path))
    docs: list[Document] = []
    seen_ids: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"{filename}:{line_no}: malformed JSON: {exc}", line_no) from exc
            if not isinstance(obj, dict):
                raise CorpusError(f"{filename}:{line_no}: expected a JSON object", line_no)
            raw_id = obj.get("id")
            doc_id = str(raw_id).strip() if raw_id is not None else ""
            if not doc_id:
                doc_id = f"{filename}:{line_no}"
            title = _text_field(obj, "title")
            abstract = _text_field(obj, "abstract")
            if not title and not abstract:
                issues.append(LoadIssue(line_no, doc_id, "missing both title and abstract"))
                continue
            try:
                gold = _parse_keywords(obj.get("keywords"), line_no)
            except CorpusError as exc:
                issues.append(LoadIssue(line_no, doc_id, str(exc)))
                continue
            if doc_id in seen_ids:
                issues.append(LoadIssue(line_no, doc_id, f"duplicate id {doc_id!r}"))
                continue
            seen_ids.add(doc_id)
            docs.append(Document(id=doc_id, title=title, abstract=abstract, gold=gold))
    if log_issues:
        for issue in issues:
            logger.warning("%s:%d: skipped record %s: %s", filename, issue.line, issue.doc_id, issue.reason)
    return docs


def build_source_text(doc: Document) -> str:
    """Concatenate title and abstract; full texts are never used.

    A ``. `` joiner is inserted unless the title already ends in
    sentence-final punctuation, so sentence splitting sees a boundary.
    """
    title = doc.title.strip()
    abstract = doc.abstract.strip()
    if not title and not abstract:
        raise CorpusError(f"document {doc.id!r} has neither title nor abstract")
    if not title:
        return abstract
    if not abstract:
        return title
    if title.endswith(_SENTENCE_FINAL):
        return title + " " + abstract
    return title + ". " + abstract


@dataclass
class PrepareResult:
    pairs: list[TrainingPair]
    skipped_no_gold: list[str]


def prepare_training_pairs(
    docs: list[Document],
    counter: TokenCounter | None = None,
    budget: int = DEFAULT_BUDGET,
) -> PrepareResult:
    """Build one training pair per packed paragraph of each document.

    Every paragraph of a document carries the document's full gold list,
    serialized once, as its target, so each paragraph is an independent
    training instance. Documents whose gold list is empty (or empties out
    under sanitization) produce no pairs and are reported as skipped.
    """
    pairs: list[TrainingPair] = []
    skipped: list[str] = []
    for doc in docs:
        if not codec.canonical_keyphrases(doc.gold):
            skipped.append(doc.id)
            continue
        target = codec.serialize_keyphrases(doc.gold)
        sentences = split_sentences(build_source_text(doc))
        for paragraph in pack_paragraphs(sentences, counter=counter, budget=budget):
            pairs.append(
                TrainingPair(
                    source=paragraph.text,
                    target=target,
                    origin_doc_id=doc.id,
                    paragraph_index=paragraph.index,
                )
            )
    return PrepareResult(pairs=pairs, skipped_no_gold=skipped)
