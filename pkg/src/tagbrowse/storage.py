"""Load and save collections in the versioned JSON interchange format.

Document layout (format_version 1):

    {
      "format_version": 1,
      "resources": [
        {"id": "R1", "title": "...", "uri": "...", "tags": ["a", "b"]},
        ...
      ],
      "categories": {"name": "...", "tags": [...], "children": [...]},
      "workload": { ... benchmark parameters, see the bench module ... }
    }

``title``, ``uri``, ``categories`` and ``workload`` are optional; everything
else is mandatory. Saving is canonical: resources keep insertion order, tag
lists are sorted, indentation is two spaces, so re-saving a loaded document
is byte-stable.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Optional

from .errors import ParseError, UnknownCategoryTag
from .model import (
    CategoryNode,
    CategoryTree,
    Collection,
    normalize_tag,
)

FORMAT_VERSION = 1

_TOP_KEYS = {"format_version", "resources", "categories", "workload"}
_RESOURCE_KEYS = {"id", "title", "uri", "tags"}
_CATEGORY_KEYS = {"name", "tags", "children"}


def _expect(condition: bool, message: str, location: str) -> None:
    if not condition:
        raise ParseError(message, location)


def _reject_unknown_keys(raw: dict, allowed: set[str], location: str) -> None:
    unknown = set(raw) - allowed
    if unknown:
        raise ParseError(f"unknown key {sorted(unknown)[0]!r}", location)


def _parse_tags(raw: Any, location: str) -> list[str]:
    _expect(isinstance(raw, list), "tags must be a list", location)
    tags = []
    for j, label in enumerate(raw):
        where = f"{location}[{j}]"
        _expect(isinstance(label, str), "tag must be a string", where)
        try:
            tags.append(normalize_tag(label))
        except ValueError as exc:
            raise ParseError(str(exc), where) from None
    return tags


def _parse_category(raw: Any, location: str) -> CategoryNode:
    _expect(isinstance(raw, dict), "category must be an object", location)
    _reject_unknown_keys(raw, _CATEGORY_KEYS, location)
    name = raw.get("name")
    _expect(isinstance(name, str) and bool(name.strip()), "category name must be a nonempty string", f"{location}.name")
    tags = _parse_tags(raw.get("tags", []), f"{location}.tags")
    children_raw = raw.get("children", [])
    _expect(isinstance(children_raw, list), "children must be a list", f"{location}.children")
    children = [
        _parse_category(child, f"{location}.children[{i}]")
        for i, child in enumerate(children_raw)
    ]
    return CategoryNode(name, tags, children)


def collection_from_document(doc: Any) -> Collection:
    """Build a collection from a parsed document, validating the schema.

    Malformed documents raise typed errors (ParseError, DuplicateResource,
    UnknownCategoryTag) and never yield a partial collection.
    """
    _expect(isinstance(doc, dict), "document must be a JSON object", "$")
    _reject_unknown_keys(doc, _TOP_KEYS, "$")
    _expect("format_version" in doc, "format_version is required", "$")
    _expect(
        doc["format_version"] == FORMAT_VERSION,
        f"unsupported format_version {doc['format_version']!r}",
        "$.format_version",
    )
    resources = doc.get("resources")
    _expect(isinstance(resources, list), "resources must be a list", "$.resources")

    collection = Collection()
    for i, entry in enumerate(resources):
        where = f"resources[{i}]"
        _expect(isinstance(entry, dict), "resource must be an object", where)
        _reject_unknown_keys(entry, _RESOURCE_KEYS, where)
        rid = entry.get("id")
        _expect(
            isinstance(rid, str) and bool(rid.strip()),
            "resource id must be a nonempty string",
            f"{where}.id",
        )
        for opt in ("title", "uri"):
            if opt in entry:
                _expect(
                    isinstance(entry[opt], str),
                    f"{opt} must be a string",
                    f"{where}.{opt}",
                )
        _expect("tags" in entry, "tags is required", where)
        tags = _parse_tags(entry["tags"], f"{where}.tags")
        # DuplicateResource propagates with the offending id.
        collection.add_resource(
            rid, tags, title=entry.get("title"), uri=entry.get("uri")
        )

    if "categories" in doc and doc["categories"] is not None:
        root = _parse_category(doc["categories"], "categories")
        try:
            tree = CategoryTree(root)
        except ValueError as exc:
            raise ParseError(str(exc), "categories") from None
        cloud = collection.cloud()
        for node in tree.nodes():
            for tag in sorted(node.tags):
                if tag not in cloud:
                    raise UnknownCategoryTag(tag, node.name)
        collection.categories = tree
    return collection


def _category_to_document(node: CategoryNode) -> dict[str, Any]:
    return {
        "name": node.name,
        "tags": sorted(node.tags),
        "children": [_category_to_document(c) for c in node.children],
    }


def document_from_collection(collection: Collection) -> dict[str, Any]:
    """Canonical document for a collection (insertion order, sorted tags)."""
    resources = []
    for rid in collection.resource_ids():
        entry: dict[str, Any] = {"id": rid}
        meta = collection.meta(rid)
        if meta.title is not None:
            entry["title"] = meta.title
        if meta.uri is not None:
            entry["uri"] = meta.uri
        entry["tags"] = sorted(collection.tags(rid))
        resources.append(entry)
    doc: dict[str, Any] = {"format_version": FORMAT_VERSION, "resources": resources}
    if collection.categories.root is not None:
        doc["categories"] = _category_to_document(collection.categories.root)
    return doc


def load(path: str | Path) -> Collection:
    """Read and validate a collection document from disk."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"invalid JSON: {exc.msg}", f"line {exc.lineno} column {exc.colno}"
        ) from None
    return collection_from_document(doc)


def load_document(path: str | Path) -> dict[str, Any]:
    """Read the raw document (for callers that also need the workload block)."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"invalid JSON: {exc.msg}", f"line {exc.lineno} column {exc.colno}"
        ) from None
    return doc


def save(collection: Collection, path: str | Path) -> None:
    """Write the canonical document form; stable byte-for-byte on re-save."""
    dumps = json.dumps(
        document_from_collection(collection), indent=2, ensure_ascii=False
    )
    Path(path).write_text(dumps + "\n", encoding="utf-8")


def dumps(collection: Collection) -> str:
    return json.dumps(
        document_from_collection(collection), indent=2, ensure_ascii=False
    ) + "\n"
