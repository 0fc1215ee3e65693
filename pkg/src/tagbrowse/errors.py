"""Typed errors shared by every layer of the engine."""

from __future__ import annotations


class TagBrowseError(Exception):
    """Base class for all domain errors."""

    code = "error"


class EmptyId(TagBrowseError):
    code = "empty_id"


class DuplicateResource(TagBrowseError):
    code = "duplicate_resource"

    def __init__(self, resource_id: str):
        super().__init__(f"resource {resource_id!r} already exists")
        self.resource_id = resource_id


class UnknownResource(TagBrowseError):
    code = "unknown_resource"

    def __init__(self, resource_id: str):
        super().__init__(f"unknown resource {resource_id!r}")
        self.resource_id = resource_id


class EmptyScope(TagBrowseError):
    code = "empty_scope"


class EmptyCollection(TagBrowseError):
    code = "empty_collection"


class InfeasibleTag(TagBrowseError):
    """Selecting the tag would not strictly narrow the current resource set."""

    code = "infeasible_tag"

    def __init__(self, tag: str):
        super().__init__(f"tag {tag!r} is not selectable in the current state")
        self.tag = tag


class UnknownNode(TagBrowseError):
    code = "unknown_node"

    def __init__(self, name: str):
        super().__init__(f"unknown category node {name!r}")
        self.name = name


class CycleError(TagBrowseError):
    code = "cycle"

    def __init__(self, name: str, new_parent: str):
        super().__init__(
            f"moving category {name!r} under {new_parent!r} would create a cycle"
        )
        self.name = name
        self.new_parent = new_parent


class StateLimitExceeded(TagBrowseError):
    """The deterministic automaton would exceed its state budget."""

    code = "state_limit_exceeded"

    def __init__(self, limit: int):
        super().__init__(f"automaton construction exceeded the {limit}-state limit")
        self.limit = limit


class AtRoot(TagBrowseError):
    code = "at_root"


class StaleSession(TagBrowseError):
    """The collection changed after the session pinned its revision."""

    code = "stale_session"


class InvalidSpec(TagBrowseError):
    code = "invalid_spec"


class EngineFailure(TagBrowseError):
    """A differential or structural invariant broke during a benchmark run."""

    code = "engine_failure"


class ParseError(TagBrowseError):
    """Schema or syntax violation in a collection document.

    ``location`` points at the offending element, either a JSON path such as
    ``resources[2].tags[0]`` or a ``line L column C`` position for syntax
    errors.
    """

    code = "parse_error"

    def __init__(self, message: str, location: str = ""):
        self.location = location
        self.reason = message
        super().__init__(f"{message} (at {location})" if location else message)


class UnknownCategoryTag(TagBrowseError):
    """A category assigns a tag that no resource carries."""

    code = "unknown_category_tag"

    def __init__(self, tag: str, category: str):
        super().__init__(
            f"category {category!r} assigns tag {tag!r} which annotates no resource"
        )
        self.tag = tag
        self.category = category
