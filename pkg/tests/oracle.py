"""Independent reference model for cross-checking the dialog engine.

Works straight off the raw collection dict, never through the package's
tree code. A document is represented by its placements: one list of
token sets per root-to-leaf path the document sits under (one placement
in the base tree, one per facet-value combination after a pivot). Every
dialog rule is then a set-level statement:

  * a token retains a placement if some node set on it contains the
    token, or (generalized mode) the document's term bag does;
  * a consumed choice disappears once its whole token set has been
    supplied, so a node set s is dropped when t ∈ s and s ⊆ consumed;
  * re-supplying a consumed token is a no-op while anything it matches
    remains, and an error once nothing does;
  * utterances are atomic: one dead token rejects the lot.

Deliberately duplicates the tokenizer: the point is agreement between
two codebases, not shared helpers.
"""
from __future__ import annotations

import itertools
import re


def oracle_tokens(raw: str) -> list[str]:
    return re.findall(r"[^\W_]+", raw.lower())


class OracleReject(Exception):
    def __init__(self, code: str):
        super().__init__(code)
        self.code = code


class OracleDialog:
    def __init__(self, raw: dict, mode: str):
        self.mode = mode
        self.schema = list(raw["facets"])
        self.terms = {}
        self.facets = {}
        for doc in raw["documents"]:
            bag = set()
            for term in doc.get("terms", []):
                bag.update(oracle_tokens(term))
            self.terms[doc["id"]] = bag
            self.facets[doc["id"]] = doc.get("facets", {})
        self.base = self._base_placements(raw["taxonomy"])
        self.reset()

    def _base_placements(self, node, path=()):  # one placement per doc
        out = {}
        if "docs" in node:
            for doc_id in node["docs"]:
                out[doc_id] = [list(path)]
            return out
        for child in node["children"]:
            step = frozenset(oracle_tokens(child["label"]))
            out.update(self._base_placements(child, path + (step,)))
        return out

    def reset(self):
        self.placements = {d: [list(p) for p in ps] for d, ps in self.base.items()}
        self.consumed: list[str] = []
        self.terminated = False

    # -- op helpers ---------------------------------------------------

    def _alive(self, token: str) -> bool:
        for doc_id, plist in self.placements.items():
            if any(token in s for p in plist for s in p):
                return True
            if self.mode == "generalized" and token in self.terms[doc_id]:
                return True
        return False

    def remaining(self) -> set[str]:
        return set(self.placements)

    # -- dialog operators ----------------------------------------------

    def out_of_turn(self, utterance: str):
        if self.terminated:
            raise OracleReject("DialogTerminated")
        tokens = list(dict.fromkeys(oracle_tokens(utterance)))
        if not tokens:
            raise OracleReject("EmptyUtterance")
        placements = {d: [list(p) for p in ps] for d, ps in self.placements.items()}
        consumed = set(self.consumed)
        gained = []
        for token in tokens:
            if token in consumed:
                alive = any(
                    token in s for ps in placements.values() for p in ps for s in p
                ) or (
                    self.mode == "generalized"
                    and any(token in self.terms[d] for d in placements)
                )
                if not alive:
                    raise OracleReject("NoMatch")
                continue
            survivors = {}
            for doc_id, plist in placements.items():
                by_term = self.mode == "generalized" and token in self.terms[doc_id]
                keep = [p for p in plist if by_term or any(token in s for s in p)]
                if keep:
                    survivors[doc_id] = keep
            if not survivors:
                raise OracleReject("NoMatch")
            consumed.add(token)
            placements = {
                doc_id: [
                    [s for s in p if not (token in s and s <= consumed)] for p in plist
                ]
                for doc_id, plist in survivors.items()
            }
            gained.append(token)
        self.placements = placements
        self.consumed.extend(gained)

    def restructure(self, order):
        if self.terminated:
            raise OracleReject("DialogTerminated")
        if not isinstance(order, (list, tuple)) or not all(
            isinstance(f, str) for f in order
        ):
            raise OracleReject("BadArgument")
        if not self.schema:
            raise OracleReject("NotFaceted")
        if not list(order):
            raise OracleReject("EmptyFacetOrder")
        seen = set()
        for name in order:
            if name not in self.schema:
                raise OracleReject("UnknownFacet")
            if name in seen:
                raise OracleReject("DuplicateFacet")
            seen.add(name)
        new = {}
        for doc_id in self.placements:
            level_values = [self.facets[doc_id][name] for name in order]
            new[doc_id] = [
                [frozenset(oracle_tokens(v)) for v in combo]
                for combo in itertools.product(*level_values)
            ]
        self.placements = new

    def collect(self):
        if self.terminated:
            raise OracleReject("DialogTerminated")
        self.terminated = True

    def vocabulary(self):
        if self.terminated:
            raise OracleReject("DialogTerminated")

    def apply(self, action: str, arg):
        """Mirror of the engine dispatcher; returns None, or "unknown" for
        outcomes this model cannot predict (navigate against live tree)."""
        if action == "navigate":
            if not isinstance(arg, str):
                raise OracleReject("BadArgument")
            if self.terminated:
                raise OracleReject("DialogTerminated")
            return "unknown"
        if action == "out_of_turn":
            if not isinstance(arg, str):
                raise OracleReject("BadArgument")
            return self.out_of_turn(arg)
        if action == "vocabulary":
            if arg is not None:
                raise OracleReject("BadArgument")
            return self.vocabulary()
        if action == "collect":
            if arg is not None:
                raise OracleReject("BadArgument")
            return self.collect()
        if action == "restructure":
            return self.restructure(arg)
        if action == "reset":
            if arg is not None:
                raise OracleReject("BadArgument")
            return self.reset()
        raise OracleReject("UnknownAction")
