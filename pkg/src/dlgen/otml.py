"""Interface descriptors (.otml) and their compiled UI manifests.

A descriptor is a small XML document naming a collection, the dialog
techniques to enable, and optional widget customizations. Compilation
checks the techniques against what the collection can support and emits a
deterministic JSON manifest that presentation layers consume verbatim.
"""
from __future__ import annotations

import json
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field

from .errors import (
    CapabilityError,
    OTMLParseError,
    OTMLValidationError,
    UnknownElement,
    UnknownTechnique,
    UnknownWidget,
)
from .taxonomy import Dataset

FORMAT_VERSION = "1"
DEFAULT_TITLE = "Faceted Dialog"

TECHNIQUES = ("basic_oot", "generalized_oot", "what_may_i_say", "collect", "restructure")
WIDGET_IDS = ("oot_input", "vocab_button", "collect_button", "restructure_picker")
WIDGET_ATTRS = ("label", "tooltip", "placeholder")

WIDGET_DEFAULTS: dict[str, dict[str, str]] = {
    "oot_input": {
        "label": "Out-of-turn input",
        "tooltip": "Say something the dialog has not asked for yet",
        "placeholder": "Type a word or phrase",
    },
    "vocab_button": {
        "label": "What may I say?",
        "tooltip": "List every label and term that still leads somewhere",
        "placeholder": "",
    },
    "collect_button": {
        "label": "Collect results",
        "tooltip": "End the dialog and list the remaining documents",
        "placeholder": "",
    },
    "restructure_picker": {
        "label": "Reorganize by facet",
        "tooltip": "Rebuild the tree in a different facet order",
        "placeholder": "",
    },
}


@dataclass(frozen=True)
class OTMLDescriptor:
    title: str
    dataset_path: str
    techniques: tuple[str, ...]
    widgets: dict[str, dict[str, str]] = field(default_factory=dict)


@dataclass(frozen=True)
class Finding:
    severity: str  # "error" | "warning"
    code: str
    message: str


@dataclass(frozen=True)
class UIManifest:
    title: str
    mode: str
    enabled_actions: tuple[str, ...]
    widgets: dict[str, dict[str, str]]
    facet_schema: tuple[str, ...]
    format_version: str = FORMAT_VERSION


def _reject_text(elem: ET.Element):
    if (elem.text or "").strip() or (elem.tail or "").strip():
        raise OTMLParseError(f"unexpected text content near <{elem.tag}>")


def _check_attrs(elem: ET.Element, allowed: tuple[str, ...]):
    for name in elem.attrib:
        if name not in allowed:
            raise UnknownElement(f"unknown attribute '{name}' on <{elem.tag}>")


def parse_otml(source: bytes | str) -> OTMLDescriptor:
    """Parse a descriptor. Defaults are not applied here; compile resolves them."""
    try:
        root = ET.fromstring(source)
    except ET.ParseError as exc:
        line, column = exc.position if exc.position else (None, None)
        raise OTMLParseError(f"malformed XML: {exc.msg}", line, column) from exc

    if root.tag != "otml":
        raise UnknownElement(f"unexpected root element <{root.tag}>")
    _check_attrs(root, ("title",))
    _reject_text(root)

    dataset_path: str | None = None
    techniques: list[str] = []
    widgets: dict[str, dict[str, str]] = {}
    for elem in root:
        _reject_text(elem)
        if elem.tag == "dataset":
            _check_attrs(elem, ("path",))
            if "path" not in elem.attrib:
                raise OTMLParseError("<dataset> requires a path attribute")
            if dataset_path is not None:
                raise OTMLValidationError("exactly one <dataset> element is required")
            dataset_path = elem.attrib["path"]
        elif elem.tag == "technique":
            _check_attrs(elem, ("name",))
            name = elem.attrib.get("name")
            if name not in TECHNIQUES:
                raise UnknownTechnique(f"unknown technique {name!r}")
            if name not in techniques:
                techniques.append(name)
        elif elem.tag == "widget":
            _check_attrs(elem, ("id",) + WIDGET_ATTRS)
            wid = elem.attrib.get("id")
            if wid not in WIDGET_IDS:
                raise UnknownWidget(f"unknown widget id {wid!r}")
            if wid in widgets:
                raise OTMLValidationError(f"duplicate widget '{wid}'")
            widgets[wid] = {k: v for k, v in elem.attrib.items() if k != "id"}
        else:
            raise UnknownElement(f"unexpected element <{elem.tag}>")

    if dataset_path is None:
        raise OTMLValidationError("exactly one <dataset> element is required")
    if not techniques:
        raise OTMLValidationError("at least one technique must be enabled")
    if "basic_oot" in techniques and "generalized_oot" in techniques:
        raise OTMLValidationError(
            "techniques 'basic_oot' and 'generalized_oot' are mutually exclusive"
        )
    return OTMLDescriptor(
        title=root.attrib.get("title", ""),
        dataset_path=dataset_path,
        techniques=tuple(t for t in TECHNIQUES if t in techniques),
        widgets=widgets,
    )


def serialize_otml(descriptor: OTMLDescriptor) -> bytes:
    root = ET.Element("otml")
    if descriptor.title:
        root.set("title", descriptor.title)
    ET.SubElement(root, "dataset", {"path": descriptor.dataset_path})
    for name in descriptor.techniques:
        ET.SubElement(root, "technique", {"name": name})
    for wid in WIDGET_IDS:
        if wid in descriptor.widgets:
            attrs = {"id": wid}
            for key in WIDGET_ATTRS:
                if key in descriptor.widgets[wid]:
                    attrs[key] = descriptor.widgets[wid][key]
            ET.SubElement(root, "widget", attrs)
    ET.indent(root)
    return ET.tostring(root, encoding="UTF-8", xml_declaration=True) + b"\n"


def validate_descriptor(descriptor: OTMLDescriptor, ds: Dataset) -> list[Finding]:
    """Capability findings: errors block compilation, warnings do not."""
    findings: list[Finding] = []
    enabled = set(descriptor.techniques)
    if "restructure" in enabled and not ds.facet_schema:
        findings.append(Finding("error", "restructure_unfaceted",
                                "restructure requires categorical facets"))
    if "generalized_oot" in enabled and not any(d.terms for d in ds.documents):
        findings.append(Finding("warning", "no_terms",
                                "generalized matching enabled but no document carries terms"))
    if "collect" not in enabled:
        findings.append(Finding("warning", "no_collect",
                                "no collect technique: dialogs cannot deliver a result list"))
    if not enabled & {"basic_oot", "generalized_oot"}:
        findings.append(Finding("warning", "no_out_of_turn",
                                "no out-of-turn technique enabled; sessions run in basic mode"))
    return findings


def compile_manifest(descriptor: OTMLDescriptor, ds: Dataset) -> UIManifest:
    errors = [f for f in validate_descriptor(descriptor, ds) if f.severity == "error"]
    if errors:
        raise CapabilityError(errors)
    mode = "generalized" if "generalized_oot" in descriptor.techniques else "basic"
    widgets = {}
    for wid in WIDGET_IDS:
        resolved = dict(WIDGET_DEFAULTS[wid])
        resolved.update(descriptor.widgets.get(wid, {}))
        widgets[wid] = resolved
    return UIManifest(
        title=descriptor.title or DEFAULT_TITLE,
        mode=mode,
        enabled_actions=tuple(t for t in TECHNIQUES if t in descriptor.techniques),
        widgets=widgets,
        facet_schema=ds.facet_schema,
    )


def manifest_to_dict(manifest: UIManifest) -> dict:
    return {
        "enabled_actions": list(manifest.enabled_actions),
        "facet_schema": list(manifest.facet_schema),
        "format_version": manifest.format_version,
        "mode": manifest.mode,
        "title": manifest.title,
        "widgets": {wid: dict(attrs) for wid, attrs in sorted(manifest.widgets.items())},
    }


def manifest_to_json(manifest: UIManifest) -> str:
    """Stable serialization: key order, indentation, and trailing newline fixed."""
    return json.dumps(manifest_to_dict(manifest), sort_keys=True, indent=2,
                      ensure_ascii=False) + "\n"


def load_manifest(source: bytes | str) -> UIManifest:
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    try:
        data = json.loads(source)
    except json.JSONDecodeError as exc:
        raise OTMLValidationError(f"manifest is not valid JSON: {exc}") from exc
    try:
        if data["format_version"] != FORMAT_VERSION:
            raise OTMLValidationError(
                f"unsupported manifest format_version {data['format_version']!r}")
        actions = tuple(data["enabled_actions"])
        for a in actions:
            if a not in TECHNIQUES:
                raise OTMLValidationError(f"manifest enables unknown technique {a!r}")
        if data["mode"] not in ("basic", "generalized"):
            raise OTMLValidationError(f"manifest has unknown mode {data['mode']!r}")
        widgets = {wid: dict(WIDGET_DEFAULTS[wid]) for wid in WIDGET_IDS}
        for wid, attrs in data["widgets"].items():
            if wid not in WIDGET_IDS:
                raise OTMLValidationError(f"manifest names unknown widget {wid!r}")
            widgets[wid].update({k: attrs[k] for k in WIDGET_ATTRS if k in attrs})
        return UIManifest(
            title=data["title"],
            mode=data["mode"],
            enabled_actions=actions,
            widgets=widgets,
            facet_schema=tuple(data["facet_schema"]),
        )
    except KeyError as exc:
        raise OTMLValidationError(f"manifest missing key {exc}") from exc
