"""Faceted dialog engine and interface generator for classification-tree collections."""

from .dialog import (
    DialogState,
    apply_action,
    collect,
    navigate,
    new_dialog,
    out_of_turn,
    reset,
    restructure,
    view,
    vocabulary,
)
from .otml import compile_manifest, load_manifest, manifest_to_json, parse_otml, serialize_otml
from .taxonomy import Dataset, Document, TaxonomyNode, load_dataset, load_dataset_path
from .treeops import (
    DerivedTree,
    flatten,
    initial_tree,
    pivot,
    recount,
    retain_by_label,
    retain_by_leaf_term,
    splice_consumed,
)

__version__ = "0.1.0"
