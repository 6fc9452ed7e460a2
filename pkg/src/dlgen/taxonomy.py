"""Collection model: classification tree, documents, facets, token indexes.

A loaded Dataset is immutable by convention; every transformation elsewhere
in the package builds new values on top of it, so one collection can back
any number of concurrent dialog sessions.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import IO, Iterator

from .errors import ParseError, ValidationError

_TOKEN_RE = re.compile(r"[^\W_]+")
_EDGE_RE = re.compile(r"^[\W_]+|[\W_]+$")


def normalize_token(raw: str) -> str:
    """Lowercase and strip surrounding punctuation/whitespace.

    Idempotent. Returns "" when nothing survives, which callers treat as
    "not a token".
    """
    return _EDGE_RE.sub("", raw.lower())


def tokenize(raw: str) -> list[str]:
    """Split on whitespace and punctuation (hyphens split) into normalized tokens.

    Order preserved, duplicates retained, empty pieces dropped.
    """
    return _TOKEN_RE.findall(raw.lower())


def label_key(label: str) -> str:
    """Whole-label normal form: used for sibling uniqueness and child lookup."""
    return " ".join(tokenize(label))


@dataclass(frozen=True)
class Document:
    id: str
    title: str
    uri: str
    facet_values: dict[str, tuple[str, ...]]
    terms: frozenset[str]


@dataclass(frozen=True)
class TaxonomyNode:
    """One tree node. Internal nodes carry children, leaves carry document ids.

    ``nid`` is a stable identity: tree transformations preserve it for nodes
    they keep, so sets of nids can name nodes across derived trees.
    """

    nid: int
    label: str
    label_tokens: frozenset[str]
    children: tuple["TaxonomyNode", ...] = ()
    documents: tuple[str, ...] = ()

    @property
    def is_leaf(self) -> bool:
        return not self.children


@dataclass
class Dataset:
    root: TaxonomyNode
    documents: tuple[Document, ...]
    facet_schema: tuple[str, ...]
    doc_by_id: dict[str, Document]
    term_index: dict[str, frozenset[str]]
    label_index: dict[str, frozenset[int]]
    node_count: int
    # one display spelling per label key, shared by every derived tree; see
    # canonical_spelling() for why this exists
    canonical_label: dict[str, str] = field(default_factory=dict)


def canonical_spelling(ds: Dataset, raw: str) -> str:
    """Pick the dataset-wide display spelling for ``raw``'s label key.

    Labels and facet values that differ only in case or punctuation share a
    key and can end up merged into a single node by tree transformations.
    Which spelling survives a merge would otherwise depend on the order the
    merge happened in, so every tree shown to the user renders a key the same
    way: the lexicographically smallest spelling that appears anywhere in the
    collection (taxonomy labels and facet values both count).
    """
    return ds.canonical_label.get(label_key(raw), raw)


def iter_nodes(node: TaxonomyNode) -> Iterator[TaxonomyNode]:
    yield node
    for child in node.children:
        yield from iter_nodes(child)


def lookup_term(ds: Dataset, token: str) -> tuple[frozenset[int], frozenset[str]]:
    """Return (node ids whose label contains token, doc ids whose terms contain it)."""
    return (
        ds.label_index.get(token, frozenset()),
        ds.term_index.get(token, frozenset()),
    )


def _require(cond: bool, message: str, location: str = ""):
    if not cond:
        raise ValidationError(message, location)


def _check_keys(obj: dict, required: set[str], optional: set[str], what: str):
    keys = set(obj)
    missing = required - keys
    if missing:
        raise ParseError(f"{what} missing key(s): {', '.join(sorted(missing))}")
    unknown = keys - required - optional
    if unknown:
        raise ParseError(f"{what} has unknown key(s): {', '.join(sorted(unknown))}")


def _parse_document(obj, index: int, schema: tuple[str, ...]) -> Document:
    what = f"documents[{index}]"
    if not isinstance(obj, dict):
        raise ParseError(f"{what} must be an object")
    _check_keys(obj, {"id", "title", "uri"}, {"facets", "terms"}, what)
    for key in ("id", "title", "uri"):
        if not isinstance(obj[key], str):
            raise ParseError(f"{what}.{key} must be a string")
    doc_id = obj["id"]
    _require(doc_id != "", "document id must be non-empty", what)

    raw_facets = obj.get("facets", {})
    if not isinstance(raw_facets, dict):
        raise ParseError(f"{what}.facets must be an object")
    for name in raw_facets:
        _require(name in schema, f"document {doc_id}: facet '{name}' not in schema", what)
    facet_values: dict[str, tuple[str, ...]] = {}
    for name in schema:
        _require(name in raw_facets, f"document {doc_id}: missing facet '{name}'", what)
        values = raw_facets[name]
        if not isinstance(values, list) or not all(isinstance(v, str) for v in values):
            raise ParseError(f"{what}.facets.{name} must be a list of strings")
        _require(bool(values), f"document {doc_id}: facet '{name}' has no values", what)
        for v in values:
            # pivoted trees use facet values as addressable labels
            _require(
                bool(tokenize(v)),
                f"document {doc_id}: facet '{name}' value {v!r} contains no tokens",
                what,
            )
        facet_values[name] = tuple(values)

    raw_terms = obj.get("terms", [])
    if not isinstance(raw_terms, list) or not all(isinstance(t, str) for t in raw_terms):
        raise ParseError(f"{what}.terms must be a list of strings")
    terms = frozenset(tok for t in raw_terms for tok in tokenize(t))
    return Document(id=doc_id, title=obj["title"], uri=obj["uri"],
                    facet_values=facet_values, terms=terms)


class _NodeBuilder:
    def __init__(self, doc_ids: set[str]):
        self.doc_ids = doc_ids
        self.referenced: list[str] = []
        self.next_nid = 0

    def build(self, obj, path: str, is_root: bool) -> TaxonomyNode:
        what = f"taxonomy node at '{path or '/'}'"
        if not isinstance(obj, dict):
            raise ParseError(f"{what} must be an object")
        has_children = "children" in obj
        has_docs = "docs" in obj
        _check_keys(obj, {"label"}, {"children", "docs"}, what)
        if not isinstance(obj["label"], str):
            raise ParseError(f"{what}.label must be a string")
        label = obj["label"]
        if is_root:
            _require(label == "", "root label must be empty", "/")
        else:
            _require(bool(tokenize(label)), f"node label {label!r} contains no tokens", path)
        _require(not (has_children and has_docs),
                 f"node '{label}' has both children and docs", path)
        _require(has_children or has_docs,
                 f"node '{label}' has neither children nor docs", path)

        nid = self.next_nid
        self.next_nid += 1
        if has_children:
            raw_children = obj["children"]
            if not isinstance(raw_children, list):
                raise ParseError(f"{what}.children must be a list")
            _require(bool(raw_children), f"node '{label}' has neither children nor docs", path)
            children = tuple(
                self.build(c, f"{path}/{c.get('label', '?') if isinstance(c, dict) else '?'}", False)
                for c in raw_children
            )
            seen: dict[str, str] = {}
            for c in children:
                key = label_key(c.label)
                _require(key not in seen,
                         f"duplicate sibling label '{c.label}' under '{label or '/'}'", path)
                seen[key] = c.label
            return TaxonomyNode(nid=nid, label=label,
                                label_tokens=frozenset(tokenize(label)), children=children)

        raw_docs = obj["docs"]
        if not isinstance(raw_docs, list) or not all(isinstance(d, str) for d in raw_docs):
            raise ParseError(f"{what}.docs must be a list of document ids")
        _require(bool(raw_docs), f"node '{label}' has neither children nor docs", path)
        for d in raw_docs:
            _require(d in self.doc_ids, f"leaf references unknown document id '{d}'", path)
        self.referenced.extend(raw_docs)
        return TaxonomyNode(nid=nid, label=label,
                            label_tokens=frozenset(tokenize(label)), documents=tuple(raw_docs))


def load_dataset(source: str | bytes | IO) -> Dataset:
    """Parse and validate a collection file.

    Raises ParseError for malformed input and ValidationError (with a
    location) for structural violations.
    """
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    try:
        data = json.loads(source)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError("top level must be an object")
    _check_keys(data, {"facets", "taxonomy", "documents"}, set(), "collection")

    raw_schema = data["facets"]
    if not isinstance(raw_schema, list) or not all(isinstance(f, str) for f in raw_schema):
        raise ParseError("facets must be a list of strings")
    seen_facets = set()
    for name in raw_schema:
        _require(name != "", "facet names must be non-empty")
        _require(name not in seen_facets, f"duplicate facet '{name}' in schema")
        seen_facets.add(name)
    schema = tuple(raw_schema)

    if not isinstance(data["documents"], list):
        raise ParseError("documents must be a list")
    documents = tuple(_parse_document(d, i, schema) for i, d in enumerate(data["documents"]))
    _require(bool(documents), "empty dataset: no documents")
    doc_by_id: dict[str, Document] = {}
    for d in documents:
        _require(d.id not in doc_by_id, f"duplicate document id {d.id}")
        doc_by_id[d.id] = d

    builder = _NodeBuilder(set(doc_by_id))
    root = builder.build(data["taxonomy"], "", True)
    counts: dict[str, int] = {d: 0 for d in doc_by_id}
    for d in builder.referenced:
        counts[d] += 1
    for doc_id, n in counts.items():
        _require(n == 1, f"document {doc_id} referenced by {n} leaves (expected exactly one)")

    term_index: dict[str, set[str]] = {}
    for d in documents:
        for t in d.terms:
            term_index.setdefault(t, set()).add(d.id)
    label_index: dict[str, set[int]] = {}
    for node in iter_nodes(root):
        if node.nid == root.nid:
            continue
        for t in node.label_tokens:
            label_index.setdefault(t, set()).add(node.nid)

    canonical: dict[str, str] = {}

    def consider(raw: str):
        k = label_key(raw)
        if k and (k not in canonical or raw < canonical[k]):
            canonical[k] = raw

    for node in iter_nodes(root):
        consider(node.label)
    for d in documents:
        for values in d.facet_values.values():
            for v in values:
                consider(v)

    return Dataset(
        root=root,
        documents=documents,
        facet_schema=schema,
        doc_by_id=doc_by_id,
        term_index={t: frozenset(s) for t, s in term_index.items()},
        label_index={t: frozenset(s) for t, s in label_index.items()},
        node_count=builder.next_nid,
        canonical_label=canonical,
    )


def load_dataset_path(path: str) -> Dataset:
    with open(path, "rb") as fh:
        return load_dataset(fh)


def _node_to_obj(node: TaxonomyNode) -> dict:
    if node.is_leaf:
        return {"label": node.label, "docs": list(node.documents)}
    return {"label": node.label, "children": [_node_to_obj(c) for c in node.children]}


def serialize_dataset(ds: Dataset) -> dict:
    """Inverse of load_dataset up to term normalization (already applied)."""
    return {
        "facets": list(ds.facet_schema),
        "taxonomy": _node_to_obj(ds.root),
        "documents": [
            {
                "id": d.id,
                "title": d.title,
                "uri": d.uri,
                "facets": {name: list(vals) for name, vals in d.facet_values.items()},
                "terms": sorted(d.terms),
            }
            for d in ds.documents
        ],
    }


def dataset_depth(ds: Dataset) -> int:
    def depth(node: TaxonomyNode) -> int:
        if node.is_leaf or not node.children:
            return 0
        return 1 + max(depth(c) for c in node.children)

    return depth(ds.root)
