"""Mixed-initiative dialog sessions over a loaded collection.

A session walks the classification tree one level at a time (navigate) while
accepting unsolicited partial input at any point (out_of_turn). Unsolicited
tokens prune the whole tree, not just the branch in focus, and a consumed
choice is spliced out once every token of its label has been supplied.
States are immutable; every operation returns a new state or raises an
EngineError leaving the input state untouched.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import (
    BadArgument,
    DialogTerminated,
    EmptyResult,
    EmptyUtterance,
    NoMatch,
    NoSuchChild,
    NotFaceted,
    UnknownAction,
)
from .taxonomy import Dataset, Document, TaxonomyNode, label_key, tokenize
from .treeops import (
    DerivedTree,
    flatten_node,
    initial_tree,
    label_nodes,
    pivot,
    retain_by_label,
    retain_by_leaf_term,
    splice_consumed,
    subtree_doc_ids,
)

MODES = ("basic", "generalized")


@dataclass(frozen=True)
class ConsumedToken:
    token: str
    kind: str  # "label" | "leaf-term"


@dataclass(frozen=True)
class TranscriptEntry:
    action: str
    payload: object
    outcome: str  # "ok" | error code
    remaining: int


@dataclass(frozen=True)
class DialogState:
    dataset: Dataset
    tree: DerivedTree
    focus: tuple[str, ...]
    consumed: tuple[ConsumedToken, ...]
    mode: str
    status: str  # "active" | "terminated"
    transcript: tuple[TranscriptEntry, ...]
    results: tuple[str, ...] | None = None


def new_dialog(ds: Dataset, mode: str = "basic") -> DialogState:
    if mode not in MODES:
        raise BadArgument(f"mode must be one of {MODES}, got {mode!r}")
    return DialogState(
        dataset=ds,
        tree=initial_tree(ds),
        focus=(),
        consumed=(),
        mode=mode,
        status="active",
        transcript=(),
    )


def _check_active(state: DialogState):
    if state.status != "active":
        raise DialogTerminated()


def _remaining(state_tree: DerivedTree) -> int:
    return state_tree.purview[state_tree.root.nid]


def _entry(action: str, payload, tree: DerivedTree) -> TranscriptEntry:
    return TranscriptEntry(action=action, payload=payload, outcome="ok",
                           remaining=_remaining(tree))


def focus_node(state: DialogState) -> TaxonomyNode:
    node = state.tree.root
    for label in state.focus:
        node = next(c for c in node.children if c.label == label)
    return node


def navigate(state: DialogState, child_label: str) -> DialogState:
    _check_active(state)
    key = label_key(child_label)
    if not key:
        raise NoSuchChild(child_label)
    node = focus_node(state)
    match = next((c for c in node.children if label_key(c.label) == key), None)
    if match is None:
        raise NoSuchChild(child_label)
    return replace(
        state,
        focus=state.focus + (match.label,),
        transcript=state.transcript + (_entry("navigate", child_label, state.tree),),
    )


def _still_matches(tree: DerivedTree, token: str, ds: Dataset, mode: str) -> bool:
    if label_nodes(tree, token):
        return True
    if mode == "generalized":
        return any(token in ds.doc_by_id[i].terms for i in subtree_doc_ids(tree.root))
    return False


def out_of_turn(state: DialogState, utterance: str) -> DialogState:
    """Apply unsolicited input as a bag of words, each token conjunctively
    against the entire current tree. Atomic: if any token matches nothing,
    the whole utterance is rejected and the state is unchanged."""
    _check_active(state)
    tokens: list[str] = []
    for t in tokenize(utterance):
        if t not in tokens:  # a repeated conjunct adds nothing
            tokens.append(t)
    if not tokens:
        raise EmptyUtterance()

    ds = state.dataset
    tree = state.tree
    consumed_set = {c.token for c in state.consumed}
    gained: list[ConsumedToken] = []
    for token in tokens:
        if token in consumed_set:
            # already-consumed input: accepted as a no-op while it still
            # matches something that remains, rejected otherwise
            if not _still_matches(tree, token, ds, state.mode):
                raise NoMatch(token)
            continue
        try:
            if state.mode == "basic":
                tree2, matched = retain_by_label(tree, token)
            else:
                tree2, matched = retain_by_leaf_term(tree, token, ds)
        except EmptyResult:
            raise NoMatch(token) from None
        consumed_set.add(token)
        by_nid = {n.nid: n for n in tree2.nodes()}
        # splice only choices whose label is now fully consumed; a label with
        # unconsumed tokens left must stay visible (and sayable)
        spent = frozenset(
            nid for nid in matched if by_nid[nid].label_tokens <= consumed_set
        )
        tree = splice_consumed(tree2, spent)
        gained.append(ConsumedToken(token, "label" if matched else "leaf-term"))

    return replace(
        state,
        tree=tree,
        focus=(),
        consumed=state.consumed + tuple(gained),
        transcript=state.transcript + (_entry("out_of_turn", utterance, tree),),
    )


def vocabulary(state: DialogState) -> dict:
    """What may be said next: every non-root label still present (with its
    distinct-document purview) and, in generalized mode, every remaining
    document term (with its remaining-document count)."""
    _check_active(state)
    by_label: dict[str, set[str]] = {}
    for node in state.tree.nodes():
        if node.label == "":
            continue
        by_label.setdefault(node.label, set()).update(subtree_doc_ids(node))
    labels = [(label, len(ids)) for label, ids in sorted(by_label.items())]
    terms: list[tuple[str, int]] = []
    if state.mode == "generalized":
        counts: dict[str, int] = {}
        for doc_id in subtree_doc_ids(state.tree.root):
            for t in state.dataset.doc_by_id[doc_id].terms:
                counts[t] = counts.get(t, 0) + 1
        terms = sorted(counts.items())
    return {"labels": labels, "terms": terms}


def collect(state: DialogState) -> tuple[DialogState, list[Document]]:
    """Terminate the dialog, flattening the focus subtree into a result list."""
    _check_active(state)
    docs = flatten_node(focus_node(state), state.dataset)
    new = replace(
        state,
        status="terminated",
        results=tuple(d.id for d in docs),
        transcript=state.transcript + (_entry("collect", None, state.tree),),
    )
    return new, docs


def restructure(state: DialogState, facet_order) -> DialogState:
    """Pivot the remaining documents into a fresh hierarchy, one level per
    facet of ``facet_order``. Consumed tokens are kept; focus resets."""
    _check_active(state)
    if not isinstance(facet_order, (list, tuple)) or not all(
        isinstance(f, str) for f in facet_order
    ):
        raise BadArgument("facet order must be a list of facet names")
    ds = state.dataset
    if not ds.facet_schema:
        raise NotFaceted()
    docs = [ds.doc_by_id[i] for i in sorted(subtree_doc_ids(state.tree.root))]
    tree = pivot(docs, facet_order, ds)
    return replace(
        state,
        tree=tree,
        focus=(),
        transcript=state.transcript + (_entry("restructure", tuple(facet_order), tree),),
    )


def reset(state: DialogState) -> DialogState:
    """Back to a fresh dialog over the same collection; transcript is kept."""
    tree = initial_tree(state.dataset)
    return replace(
        state,
        tree=tree,
        focus=(),
        consumed=(),
        status="active",
        results=None,
        transcript=state.transcript + (_entry("reset", None, tree),),
    )


def _doc_json(doc: Document) -> dict:
    return {"id": doc.id, "title": doc.title, "uri": doc.uri}


def view(state: DialogState) -> dict:
    """Serializable snapshot of what a presentation layer needs to render."""
    node = focus_node(state)
    children = [
        {"label": c.label, "purview": state.tree.purview[c.nid]}
        for c in node.children
        if c.label != ""
    ]
    doc_ids = list(node.documents)
    for c in node.children:
        if c.label == "":
            doc_ids.extend(i for i in c.documents if i not in doc_ids)
    ds = state.dataset
    return {
        "focus": list(state.focus),
        "children": children,
        "documents": [_doc_json(ds.doc_by_id[i]) for i in doc_ids],
        "status": state.status,
        "mode": state.mode,
        "consumed": [{"token": c.token, "kind": c.kind} for c in state.consumed],
        "remaining": _remaining(state.tree),
        "results": [_doc_json(ds.doc_by_id[i]) for i in state.results]
        if state.results is not None
        else None,
    }


def remaining_doc_ids(state: DialogState) -> set[str]:
    return subtree_doc_ids(state.tree.root)


ACTIONS = ("navigate", "out_of_turn", "vocabulary", "collect", "restructure", "reset")


def apply_action(state: DialogState, action: str, arg=None) -> tuple[DialogState, dict]:
    """Uniform dispatcher used by the HTTP service and the replayer: returns
    the new state and a serializable result payload."""
    if action == "navigate":
        if not isinstance(arg, str):
            raise BadArgument("navigate needs a child label string")
        new = navigate(state, arg)
        return new, {"view": view(new)}
    if action == "out_of_turn":
        if not isinstance(arg, str):
            raise BadArgument("out_of_turn needs an utterance string")
        new = out_of_turn(state, arg)
        return new, {"view": view(new)}
    if action == "vocabulary":
        if arg is not None:
            raise BadArgument("vocabulary takes no argument")
        vocab = vocabulary(state)
        new = replace(
            state,
            transcript=state.transcript + (_entry("vocabulary", None, state.tree),),
        )
        payload = {
            "labels": [[l, n] for l, n in vocab["labels"]],
            "terms": [[t, n] for t, n in vocab["terms"]],
        }
        return new, {"view": view(new), "vocabulary": payload}
    if action == "collect":
        if arg is not None:
            raise BadArgument("collect takes no argument")
        new, docs = collect(state)
        return new, {"view": view(new), "results": [_doc_json(d) for d in docs]}
    if action == "restructure":
        new = restructure(state, arg)
        return new, {"view": view(new)}
    if action == "reset":
        if arg is not None:
            raise BadArgument("reset takes no argument")
        new = reset(state)
        return new, {"view": view(new)}
    raise UnknownAction(action)
