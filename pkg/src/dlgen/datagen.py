"""Synthetic collections and action scripts for fuzzing and benchmarks.

Labels, terms, and facet values draw from one shared word pool per
collection so that utterances cross-match tree labels, leaf terms, and
pivoted facet values the way real vocabularies do. All randomness comes
from the caller's random.Random, so every collection is reproducible
from its seed.
"""
from __future__ import annotations

import random

from .taxonomy import label_key

WORDS = [
    "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "theta", "kappa",
    "systems", "information", "theory", "hardware", "retrieval", "logic",
    "smith", "jones", "belkin", "data", "web", "agent", "model", "index",
    "archive", "survey",
]

FACET_NAMES = ["kind", "author", "region", "venue", "topic", "era"]

_DECORATIONS = ("{}", "{}", "{}", "{},", "({})", "{}-{}")


class _Builder:
    def __init__(self, rng: random.Random, pool: list[str], max_depth: int,
                 doc_budget: int):
        self.rng = rng
        self.pool = pool
        self.max_depth = max_depth
        self.doc_budget = doc_budget
        self.doc_ids: list[str] = []

    def _label(self) -> str:
        shape = self.rng.choice(_DECORATIONS)
        words = [self.rng.choice(self.pool) for _ in range(shape.count("{}"))]
        words = [w.capitalize() if self.rng.random() < 0.5 else w for w in words]
        return shape.format(*words)

    def _leaf(self, label: str) -> dict:
        count = min(self.rng.randint(1, 3), self.doc_budget)
        docs = []
        for _ in range(max(count, 1)):
            doc_id = f"d{len(self.doc_ids)}"
            self.doc_ids.append(doc_id)
            docs.append(doc_id)
        self.doc_budget -= len(docs)
        return {"label": label, "docs": docs}

    def node(self, label: str, depth: int) -> dict:
        leafy = depth >= self.max_depth or self.doc_budget <= 1 \
            or self.rng.random() < 0.25 + 0.15 * depth
        if leafy:
            return self._leaf(label)
        children = []
        seen_keys = set()
        for _ in range(self.rng.randint(1, 4)):
            if self.doc_budget <= 0:
                break
            child_label = self._label()
            if label_key(child_label) in seen_keys:
                continue
            seen_keys.add(label_key(child_label))
            children.append(self.node(child_label, depth + 1))
        if not children:
            return self._leaf(label)
        return {"label": label, "children": children}


def generate_dataset(rng: random.Random, *, max_docs: int = 200, max_depth: int = 5,
                     max_facets: int = 6, max_terms: int = 8,
                     small: bool = False) -> dict:
    """Build a valid collection file as a plain dict."""
    pool = rng.sample(WORDS, k=rng.randint(6, 14))
    if small:
        budget = rng.randint(1, 14)
    else:
        roll = rng.random()
        if roll < 0.80:
            budget = rng.randint(1, 30)
        elif roll < 0.97:
            budget = rng.randint(31, 80)
        else:
            budget = rng.randint(81, max_docs)
    n_facets = rng.choice([0, 0, 1, 1, 2, 2, 3, min(4, max_facets), min(max_facets, 6)])
    schema = rng.sample(FACET_NAMES, n_facets)

    builder = _Builder(rng, pool, max_depth=rng.randint(1, max_depth), doc_budget=budget)
    if rng.random() < 0.03:
        taxonomy = builder._leaf("")
        taxonomy["label"] = ""
    else:
        children = []
        seen_keys = set()
        for _ in range(rng.randint(1, 4)):
            label = builder._label()
            if label_key(label) in seen_keys:
                continue
            seen_keys.add(label_key(label))
            children.append(builder.node(label, 1))
        taxonomy = {"label": "", "children": children}

    documents = []
    for doc_id in builder.doc_ids:
        terms = rng.sample(pool, k=min(rng.randint(0, max_terms), len(pool)))
        facets = {}
        for name in schema:
            values = []
            for _ in range(rng.choice([1, 1, 1, 2])):
                value = " ".join(rng.choice(pool) for _ in range(rng.choice([1, 1, 2])))
                if rng.random() < 0.4:
                    value = value.title()
                values.append(value)
            facets[name] = values
        documents.append({
            "id": doc_id,
            "title": " ".join(rng.choice(pool) for _ in range(2)).title(),
            "uri": f"urn:x:{doc_id}",
            "facets": facets,
            "terms": terms,
        })
    return {"facets": schema, "taxonomy": taxonomy, "documents": documents}


def _collect_strings(raw: dict) -> list[str]:
    out: list[str] = []

    def walk(node: dict):
        if node["label"]:
            out.append(node["label"])
        for child in node.get("children", []):
            walk(child)

    walk(raw["taxonomy"])
    for doc in raw["documents"]:
        out.extend(doc.get("terms", []))
        for values in doc.get("facets", {}).values():
            out.extend(values)
    return out or ["nothing"]


def generate_actions(rng: random.Random, raw: dict, count: int = 8) -> list[tuple[str, object]]:
    """A plausible mixed action script: mostly utterances, with navigation,
    pivots, vocabulary checks, resets, and the occasional bad input."""
    strings = _collect_strings(raw)
    schema = list(raw["facets"])
    actions: list[tuple[str, object]] = []
    for _ in range(count):
        roll = rng.random()
        if roll < 0.45:
            parts = [rng.choice(strings) for _ in range(rng.choice([1, 1, 1, 2]))]
            if rng.random() < 0.10:
                parts.append("zzgarbage")
            actions.append(("out_of_turn", " ".join(parts)))
        elif roll < 0.60:
            label = rng.choice(strings) if rng.random() < 0.8 else "no such child"
            actions.append(("navigate", label))
        elif roll < 0.72:
            if schema and rng.random() < 0.85:
                order = rng.sample(schema, k=rng.randint(1, len(schema)))
                if rng.random() < 0.1:
                    order.append(rng.choice(order))  # duplicate facet
            else:
                order = ["bogus_facet"]
            actions.append(("restructure", order))
        elif roll < 0.80:
            actions.append(("vocabulary", None))
        elif roll < 0.90:
            actions.append(("collect", None))
        else:
            actions.append(("reset", None))
    return actions
