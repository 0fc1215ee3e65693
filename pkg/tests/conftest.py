from __future__ import annotations

from pathlib import Path

import pytest

from tagbrowse.model import CategoryNode, CategoryTree, Collection

# The six-resource sample collection used throughout the docs and tests.
FIG1_ROWS = [
    ("R1", "Resource 1", ("Cave-Painting", "Cantabrian", "Prehistoric")),
    ("R2", "Resource 2", ("Cave-Painting", "Levant", "Prehistoric")),
    ("R3", "Resource 3", ("Megalithic", "Cantabrian", "Prehistoric")),
    ("R4", "Resource 4", ("Tartesian", "Plateau", "Protohistoric")),
    ("R5", "Resource 5", ("Phoenician", "Penibaetic", "Protohistoric")),
    ("R6", "Resource 6", ("Punic", "Levant", "Protohistoric")),
]

FIG1_TAGS = sorted({t for _, _, tags in FIG1_ROWS for t in tags})

FIXTURES_DIR = Path(__file__).resolve().parent.parent / "fixtures"


def make_fig1(categories: CategoryTree | None = None) -> Collection:
    c = Collection(categories=categories)
    for rid, title, tags in FIG1_ROWS:
        c.add_resource(rid, tags, title=title)
    return c


def make_period_style_tree() -> CategoryTree:
    """A small category tree over the sample tags, for reconfiguration tests."""
    period = CategoryNode("Period", {"Prehistoric", "Protohistoric"})
    style = CategoryNode("Style", {"Cave-Painting", "Megalithic"})
    region = CategoryNode(
        "Region", {"Cantabrian", "Levant", "Plateau", "Penibaetic"}
    )
    root = CategoryNode("Topics", (), [period, style, region])
    return CategoryTree(root)


@pytest.fixture
def fig1() -> Collection:
    return make_fig1()


@pytest.fixture
def fig1_path() -> Path:
    return FIXTURES_DIR / "fig1.json"
