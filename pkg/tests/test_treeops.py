import json
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from dlgen.errors import (
    DuplicateFacet,
    EmptyDocumentSet,
    EmptyFacetOrder,
    EmptyResult,
    UnknownFacet,
)
from dlgen.taxonomy import load_dataset
from dlgen.treeops import (
    flatten,
    initial_tree,
    pivot,
    recount,
    retain_by_label,
    retain_by_leaf_term,
    splice_consumed,
    subtree_doc_ids,
    tree_signature,
)

from conftest import dataset_from_seed


def leaf_counter(node) -> Counter:
    c = Counter(node.documents)
    for child in node.children:
        c += leaf_counter(child)
    return c


def shape(node):
    """(label, sorted doc ids, child shapes) for readable assertions."""
    return (node.label, tuple(node.documents),
            tuple(shape(c) for c in node.children))


def test_initial_purviews(ds_a):
    tree = initial_tree(ds_a)
    assert tree.purview[tree.root.nid] == 4
    info = next(c for c in tree.root.children if c.label == "Information Systems")
    assert tree.purview[info.nid] == 2


def test_retain_by_label_belkin(ds_a):
    tree, matched = retain_by_label(initial_tree(ds_a), "belkin")
    assert [c.label for c in tree.root.children] == ["Information Systems"]
    info = tree.root.children[0]
    assert [c.label for c in info.children] == ["Belkin"]
    assert info.children[0].documents == ("d2", "d3")
    assert tree.purview[tree.root.nid] == 2
    assert matched == {info.children[0].nid}


def test_retain_by_label_smith(ds_a):
    tree, matched = retain_by_label(initial_tree(ds_a), "smith")
    assert [c.label for c in tree.root.children] == ["Hardware", "Theory"]
    assert tree.purview[tree.root.nid] == 2
    assert len(matched) == 2


def test_retain_by_label_no_match(ds_a):
    with pytest.raises(EmptyResult):
        retain_by_label(initial_tree(ds_a), "xyzzy")


def test_retain_by_label_multiword(ds_a):
    # one token of a two-word label is enough to keep its paths
    tree, matched = retain_by_label(initial_tree(ds_a), "systems")
    assert [c.label for c in tree.root.children] == ["Information Systems"]
    assert len(matched) == 1


def test_retain_by_leaf_term_retrieval(ds_a):
    tree, matched = retain_by_leaf_term(initial_tree(ds_a), "retrieval", ds_a)
    assert [c.label for c in tree.root.children] == ["Information Systems"]
    info = tree.root.children[0]
    assert info.children[0].documents == ("d2",)
    assert tree.purview[tree.root.nid] == 1
    assert tree.purview[info.nid] == 1
    assert matched == frozenset()


def test_retain_by_leaf_term_falls_back_to_labels(ds_a):
    by_label, m1 = retain_by_label(initial_tree(ds_a), "belkin")
    by_term, m2 = retain_by_leaf_term(initial_tree(ds_a), "belkin", ds_a)
    assert tree_signature(by_label.root) == tree_signature(by_term.root)
    assert {by_label.root.nid} | m1 == {by_term.root.nid} | m2


def test_retain_by_leaf_term_complexity(ds_a):
    tree, _ = retain_by_leaf_term(initial_tree(ds_a), "complexity", ds_a)
    assert [c.label for c in tree.root.children] == ["Theory"]
    assert subtree_doc_ids(tree.root) == {"d4"}


def test_splice_belkin(ds_a):
    tree, matched = retain_by_label(initial_tree(ds_a), "belkin")
    out = splice_consumed(tree, matched)
    assert shape(out.root) == ("", (), (("Information Systems", ("d2", "d3"), ()),))
    assert out.purview[out.root.nid] == 2


def test_splice_empty_is_identity(ds_a):
    tree = initial_tree(ds_a)
    out = splice_consumed(tree, frozenset())
    assert tree_signature(out.root) == tree_signature(tree.root)
    assert out.purview == tree.purview


def test_splice_smith(ds_a):
    tree, matched = retain_by_label(initial_tree(ds_a), "smith")
    out = splice_consumed(tree, matched)
    assert shape(out.root) == (
        "", (),
        (("Hardware", ("d1",), ()), ("Theory", ("d4",), ())),
    )


def test_splice_root_rejected(ds_a):
    tree = initial_tree(ds_a)
    with pytest.raises(ValueError):
        splice_consumed(tree, frozenset({tree.root.nid}))


def test_splice_merges_equal_labels():
    ds = load_dataset(json.dumps({
        "facets": [],
        "taxonomy": {"label": "", "children": [
            {"label": "A", "children": [{"label": "X", "docs": ["p"]}]},
            {"label": "B", "children": [{"label": "X", "docs": ["q"]}]},
        ]},
        "documents": [
            {"id": "p", "title": "P", "uri": "u:p", "facets": {}, "terms": []},
            {"id": "q", "title": "Q", "uri": "u:q", "facets": {}, "terms": []},
        ],
    }))
    tree = initial_tree(ds)
    a, b = tree.root.children
    out = splice_consumed(tree, frozenset({a.nid, b.nid}))
    assert shape(out.root) == ("", (), (("X", ("p", "q"), ()),))
    assert out.purview[out.root.children[0].nid] == 2


def test_recount_examples(ds_a):
    tree = initial_tree(ds_a)
    again = recount(tree)
    assert again.purview == tree.purview
    assert tree_signature(again.root) == tree_signature(tree.root)


def test_recount_single_leaf():
    ds = load_dataset(json.dumps({
        "facets": [],
        "taxonomy": {"label": "", "docs": ["only"]},
        "documents": [{"id": "only", "title": "One", "uri": "u:1",
                       "facets": {}, "terms": []}],
    }))
    tree = initial_tree(ds)
    assert tree.purview[tree.root.nid] == 1


def test_flatten(ds_a):
    tree = initial_tree(ds_a)
    assert [d.id for d in flatten(tree, ds_a)] == ["d1", "d2", "d3", "d4"]
    pruned, _ = retain_by_label(tree, "belkin")
    assert [d.id for d in flatten(pruned, ds_a)] == ["d2", "d3"]


def test_pivot_author_category(ds_a):
    tree = pivot(list(ds_a.documents), ["author", "category"], ds_a)
    assert shape(tree.root) == (
        "", (),
        (
            ("Belkin", (), (("Information Systems", ("d2", "d3"), ()),)),
            ("Smith", (), (("Hardware", ("d1",), ()), ("Theory", ("d4",), ()))),
        ),
    )
    assert tree.purview[tree.root.nid] == 4


def test_pivot_single_facet(ds_a):
    tree = pivot(list(ds_a.documents), ["category"], ds_a)
    assert [c.label for c in tree.root.children] == [
        "Hardware", "Information Systems", "Theory",
    ]
    assert [c.documents for c in tree.root.children] == [
        ("d1",), ("d2", "d3"), ("d4",),
    ]


def test_pivot_errors(ds_a):
    docs = list(ds_a.documents)
    with pytest.raises(UnknownFacet):
        pivot(docs, ["journal", "author"], ds_a)
    with pytest.raises(DuplicateFacet):
        pivot(docs, ["author", "author"], ds_a)
    with pytest.raises(EmptyFacetOrder):
        pivot(docs, [], ds_a)
    with pytest.raises(EmptyDocumentSet):
        pivot([], ["author"], ds_a)


def test_multivalued_doc_counted_once_at_root():
    ds = load_dataset(json.dumps({
        "facets": ["color"],
        "taxonomy": {"label": "", "children": [
            {"label": "Things", "docs": ["m"]},
        ]},
        "documents": [{"id": "m", "title": "M", "uri": "u:m",
                       "facets": {"color": ["red", "blue"]}, "terms": []}],
    }))
    tree = pivot(list(ds.documents), ["color"], ds)
    assert [c.label for c in tree.root.children] == ["blue", "red"]
    assert tree.purview[tree.root.nid] == 1
    assert all(tree.purview[c.nid] == 1 for c in tree.root.children)


def test_retain_purity(ds_a):
    tree = initial_tree(ds_a)
    before_sig = tree_signature(tree.root)
    before_purview = dict(tree.purview)
    retain_by_label(tree, "smith")
    retain_by_leaf_term(tree, "retrieval", ds_a)
    t2, m = retain_by_label(tree, "belkin")
    splice_consumed(t2, m)
    assert tree_signature(tree.root) == before_sig
    assert tree.purview == before_purview


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10_000), st.data())
def test_purview_matches_flatten_everywhere(seed, data):
    raw = dataset_from_seed(seed, small=True)
    ds = load_dataset(json.dumps(raw))
    tree = initial_tree(ds)
    tokens = sorted(set(ds.label_index) | set(ds.term_index))
    token = data.draw(st.sampled_from(tokens)) if tokens else None
    if token:
        try:
            tree, matched = retain_by_leaf_term(tree, token, ds)
            tree = splice_consumed(
                tree,
                frozenset(
                    n.nid for n in tree.nodes()
                    if n.nid in matched and n.label_tokens <= {token}
                ),
            )
        except EmptyResult:
            pass
    def walk(node):
        assert tree.purview[node.nid] == len(subtree_doc_ids(node))
        for c in node.children:
            walk(c)
    walk(tree.root)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10_000), st.data())
def test_splice_soundness(seed, data):
    raw = dataset_from_seed(seed, small=True)
    ds = load_dataset(json.dumps(raw))
    tree = initial_tree(ds)
    tokens = sorted(ds.label_index)
    if not tokens:
        return
    token = data.draw(st.sampled_from(tokens))
    try:
        pruned, matched = retain_by_label(tree, token)
    except EmptyResult:
        return
    before = leaf_counter(pruned.root)
    out = splice_consumed(pruned, matched)
    assert not (matched & {n.nid for n in out.nodes()})
    # base trees hold each doc once, so merging can never collapse copies
    assert leaf_counter(out.root) == before
