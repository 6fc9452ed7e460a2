"""Pure transformations over derived classification trees.

Pruning by label or by leaf term, splicing out consumed choices, purview
recounting, flattening, and facet pivoting. No function mutates its input;
node identities (nids) are preserved for nodes an operation keeps, so sets
of nids remain meaningful across derived trees.

Merging rules: when a splice promotes siblings whose labels collide (equal
label_key), they merge into one node. Merged children are ordered by label
key and merged leaf documents by id, which makes the result a function of
the set of inputs rather than of the order operations happened to run in.
Documents that would sit beside remaining child links are carried by a
synthetic leaf with an empty label; views fold those back into their parent.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import Iterable, Iterator

from .errors import (
    DuplicateFacet,
    EmptyDocumentSet,
    EmptyFacetOrder,
    EmptyResult,
    UnknownFacet,
)
from .taxonomy import (
    Dataset,
    Document,
    TaxonomyNode,
    canonical_spelling,
    iter_nodes,
    label_key,
    tokenize,
)


@dataclass(frozen=True)
class DerivedTree:
    """A pruned/restructured view of a collection tree plus per-node purviews."""

    root: TaxonomyNode
    purview: dict[int, int]
    next_nid: int

    def nodes(self) -> Iterator[TaxonomyNode]:
        return iter_nodes(self.root)


def subtree_doc_ids(node: TaxonomyNode) -> set[str]:
    ids: set[str] = set()
    for n in iter_nodes(node):
        ids.update(n.documents)
    return ids


def _purviews(root: TaxonomyNode) -> dict[int, int]:
    purview: dict[int, int] = {}

    def walk(node: TaxonomyNode) -> set[str]:
        docs = set(node.documents)
        for child in node.children:
            docs |= walk(child)
        purview[node.nid] = len(docs)
        return docs

    walk(root)
    return purview


def recount(tree: DerivedTree) -> DerivedTree:
    """Recompute distinct-document purviews for every node."""
    return DerivedTree(tree.root, _purviews(tree.root), tree.next_nid)


def initial_tree(ds: Dataset) -> DerivedTree:
    """Fresh working tree: canonical label spellings, siblings key-sorted.

    Transformations preserve both properties, which is what makes a sequence
    of prunes land on the same tree regardless of the order the inputs
    arrived in: merged and unmerged survivors of a label key are spelled and
    positioned identically either way.
    """

    def rebuild(node: TaxonomyNode) -> TaxonomyNode:
        label = canonical_spelling(ds, node.label)
        children = tuple(
            sorted((rebuild(c) for c in node.children), key=lambda c: label_key(c.label))
        )
        return replace(
            node,
            label=label,
            label_tokens=frozenset(tokenize(label)),
            children=children,
            documents=tuple(sorted(node.documents)),
        )

    root = rebuild(ds.root)
    return DerivedTree(root, _purviews(root), ds.node_count)


def label_nodes(tree: DerivedTree, token: str) -> frozenset[int]:
    """nids of nodes whose label tokens contain ``token``."""
    return frozenset(n.nid for n in tree.nodes() if token in n.label_tokens)


def retain_by_label(tree: DerivedTree, token: str) -> tuple[DerivedTree, frozenset[int]]:
    """Keep exactly the root-to-leaf paths passing through a node whose label
    contains ``token``. Returns the pruned tree and the matched node ids."""
    matched = label_nodes(tree, token)
    if not matched:
        raise EmptyResult(token)

    def keep(node: TaxonomyNode, hit: bool) -> TaxonomyNode | None:
        hit = hit or node.nid in matched
        if node.is_leaf:
            return node if hit else None
        kept = tuple(c for c in (keep(child, hit) for child in node.children) if c)
        if not kept:
            return None
        if kept == node.children:
            return node
        return _rebuild_internal(node, kept)

    root = keep(tree.root, False)
    if root is None:
        raise EmptyResult(token)
    return DerivedTree(root, _purviews(root), tree.next_nid), matched


def retain_by_leaf_term(
    tree: DerivedTree, token: str, ds: Dataset
) -> tuple[DerivedTree, frozenset[int]]:
    """Like retain_by_label, but paths also survive through leaf documents
    whose term bag contains ``token``; within a leaf kept only by terms, the
    documents that individually fail both tests are dropped."""
    matched = label_nodes(tree, token)
    term_docs = frozenset(
        i for i in subtree_doc_ids(tree.root) if token in ds.doc_by_id[i].terms
    )

    def keep(node: TaxonomyNode, hit: bool) -> TaxonomyNode | None:
        hit = hit or node.nid in matched
        if node.is_leaf:
            if hit:
                return node
            docs = tuple(i for i in node.documents if i in term_docs)
            if not docs:
                return None
            return replace(node, documents=docs)
        kept = tuple(c for c in (keep(child, hit) for child in node.children) if c)
        if not kept:
            return None
        if kept == node.children:
            return node
        return _rebuild_internal(node, kept)

    root = keep(tree.root, False)
    if root is None:
        raise EmptyResult(token)
    return DerivedTree(root, _purviews(root), tree.next_nid), matched


def _rebuild_internal(node: TaxonomyNode, kept: tuple[TaxonomyNode, ...]) -> TaxonomyNode:
    # pruning can strand a synthetic carrier as the only child; fold it back
    # in so the shape never depends on which conjunct arrived first
    if all(c.is_leaf and not c.label_tokens for c in kept):
        docs = tuple(sorted({i for c in kept for i in c.documents}))
        return replace(node, children=(), documents=docs)
    return replace(node, children=kept)


class _Bundle:
    """Documents freed by splicing a matched leaf, awaiting a new parent."""

    __slots__ = ("docs",)

    def __init__(self, docs: Iterable[str]):
        self.docs = list(docs)


def _dedup(ids: Iterable[str]) -> list[str]:
    seen: set[str] = set()
    out: list[str] = []
    for i in ids:
        if i not in seen:
            seen.add(i)
            out.append(i)
    return out


def _merge_group(members: list[TaxonomyNode], fresh: Iterator[int]) -> TaxonomyNode:
    label = min((m.label for m in members if label_key(m.label)), default=members[0].label)
    children = [c for m in members for c in m.children]
    docs = _dedup(i for m in members for i in m.documents)
    if children:
        if docs:
            children.append(_leaf("", next(fresh), tuple(sorted(docs))))
            docs = []
        children = _normalize_siblings(children, fresh)
    else:
        docs = sorted(set(docs))
    return TaxonomyNode(
        nid=members[0].nid,
        label=label,
        label_tokens=frozenset(tokenize(label)),
        children=tuple(children),
        documents=tuple(docs),
    )


def _normalize_siblings(nodes: list[TaxonomyNode], fresh: Iterator[int]) -> list[TaxonomyNode]:
    groups: dict[str, list[TaxonomyNode]] = {}
    order: list[str] = []
    for n in nodes:
        key = label_key(n.label)
        if key not in groups:
            groups[key] = []
            order.append(key)
        groups[key].append(n)
    out: list[TaxonomyNode] = []
    for key in order:
        members = groups[key]
        out.append(members[0] if len(members) == 1 else _merge_group(members, fresh))
    # canonical sibling order: the final arrangement must not depend on which
    # splice promoted a node here first
    out.sort(key=lambda n: label_key(n.label))
    return out


def _leaf(label: str, nid: int, docs: tuple[str, ...]) -> TaxonomyNode:
    return TaxonomyNode(nid=nid, label=label,
                        label_tokens=frozenset(tokenize(label)), documents=docs)


def _assemble(node: TaxonomyNode, slots: list, fresh: Iterator[int]) -> TaxonomyNode:
    if not any(isinstance(s, TaxonomyNode) for s in slots):
        # every child was a spliced leaf: documents attach directly
        docs = tuple(sorted({i for b in slots for i in b.docs}))
        return replace(node, children=(), documents=docs)
    children = [
        s if isinstance(s, TaxonomyNode)
        else _leaf("", next(fresh), tuple(sorted(set(s.docs))))
        for s in slots
    ]
    children = _normalize_siblings(children, fresh)
    if all(not label_key(c.label) for c in children):
        docs = tuple(sorted({i for c in children for i in c.documents}))
        return replace(node, children=(), documents=docs)
    return replace(node, children=tuple(children), documents=())


def splice_consumed(tree: DerivedTree, matched: Iterable[int]) -> DerivedTree:
    """Replace each matched node by its children (documents of matched leaves
    attach to the grandparent), merging any sibling label collisions."""
    matched = frozenset(matched)
    if not matched:
        return tree
    if tree.root.nid in matched:
        raise ValueError("cannot splice the root")
    fresh = itertools.count(tree.next_nid)

    def rebuild(node: TaxonomyNode) -> list:
        if node.is_leaf:
            return [_Bundle(node.documents)] if node.nid in matched else [node]
        slots: list = []
        for child in node.children:
            slots.extend(rebuild(child))
        if node.nid in matched:
            return slots
        return [_assemble(node, slots, fresh)]

    (root,) = rebuild(tree.root)
    return DerivedTree(root, _purviews(root), next(fresh))


def flatten_node(node: TaxonomyNode, ds: Dataset) -> list[Document]:
    """Distinct documents of a subtree, sorted by id."""
    return [ds.doc_by_id[i] for i in sorted(subtree_doc_ids(node))]


def flatten(tree: DerivedTree, ds: Dataset) -> list[Document]:
    return flatten_node(tree.root, ds)


def pivot(docs: Iterable[Document], facet_order: Iterable[str], ds: Dataset) -> DerivedTree:
    """Rebuild a tree over ``docs`` grouping by each facet of ``facet_order``
    in turn; level k holds the distinct values of facet k, leaves carry the
    documents. A multi-valued document appears under each of its values."""
    facet_order = list(facet_order)
    if not facet_order:
        raise EmptyFacetOrder()
    seen: set[str] = set()
    for name in facet_order:
        if name not in ds.facet_schema:
            raise UnknownFacet(name)
        if name in seen:
            raise DuplicateFacet(name)
        seen.add(name)
    docs = sorted(docs, key=lambda d: d.id)
    if not docs:
        raise EmptyDocumentSet()

    counter = itertools.count(1)

    def build(subset: list[Document], level: int) -> tuple[TaxonomyNode, ...]:
        facet = facet_order[level]
        groups: dict[str, list[Document]] = {}
        for d in subset:
            for value in d.facet_values[facet]:
                bucket = groups.setdefault(label_key(value), [])
                if not bucket or bucket[-1] is not d:
                    bucket.append(d)
        nodes = []
        for key in sorted(groups):
            label = canonical_spelling(ds, key)
            nid = next(counter)
            if level + 1 == len(facet_order):
                nodes.append(_leaf(label, nid, tuple(sorted({d.id for d in groups[key]}))))
            else:
                nodes.append(TaxonomyNode(
                    nid=nid, label=label, label_tokens=frozenset(tokenize(label)),
                    children=build(groups[key], level + 1)))
        return tuple(nodes)

    root = TaxonomyNode(nid=0, label="", label_tokens=frozenset(),
                        children=build(docs, 0))
    return DerivedTree(root, _purviews(root), next(counter))


def tree_signature(node: TaxonomyNode) -> tuple:
    """Structural identity: labels, document ids, child order. Ignores nids."""
    return (node.label, node.documents, tuple(tree_signature(c) for c in node.children))
