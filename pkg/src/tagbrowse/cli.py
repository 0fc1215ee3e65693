"""Command-line entry points: serve the HTTP API, run benchmarks, export
diagnostic views of the automata."""

from __future__ import annotations

import os
import sys
from pathlib import Path

import click

from .bench import emit_csv, run, run_lockstep
from .dfa import DEFAULT_STATE_LIMIT, build_dfa
from .engines import AutomatonEngine
from .storage import load, load_document, collection_from_document
from .workload import (
    SyntheticSource,
    WorkloadSpec,
    workload_from_document,
)

BIND_ENV_VAR = "TAGBROWSE_BIND"


@click.group()
def main() -> None:
    """Multilevel tag browsing over folksonomy-annotated collections."""


@main.command()
@click.option("--collection", "collection_path", type=click.Path(exists=True), required=True, help="Collection JSON document to serve.")
@click.option("--port", default=8000, show_default=True, help="TCP port.")
@click.option("--host", default=None, help=f"Bind address; defaults to ${BIND_ENV_VAR} or 127.0.0.1.")
@click.option("--allow-mutation", is_flag=True, help="Enable the add/remove resource endpoints.")
@click.option("--session-ttl", default=1800.0, show_default=True, help="Idle session expiry, seconds.")
@click.option("--ui-dir", type=click.Path(), default=None, help="Static frontend directory to mount under /ui.")
def serve(collection_path, port, host, allow_mutation, session_ttl, ui_dir):
    """Serve a collection over HTTP."""
    import uvicorn

    from .server import ServerConfig, create_app

    if ui_dir is None and Path("frontend/dist").is_dir():
        ui_dir = "frontend/dist"
    config = ServerConfig(
        allow_mutation=allow_mutation,
        session_ttl=session_ttl,
        ui_dir=Path(ui_dir) if ui_dir else None,
    )
    app = create_app(config)
    collection = load(collection_path)
    cid = app.state.store.add_collection(collection)
    click.echo(f"collection {collection_path} loaded as {cid}")
    if ui_dir:
        click.echo(f"ui mounted from {ui_dir} at /ui")
    bind = host or os.environ.get(BIND_ENV_VAR, "127.0.0.1")
    uvicorn.run(app, host=bind, port=port)


def _spec_from_options(
    collection_path, synthetic, vocab, tags_min, tags_max, zipf, categories,
    round_size, browse_factor, reconfig_factor, seed,
) -> WorkloadSpec:
    overrides = {
        "insertion_round_size": round_size,
        "browse_factor": browse_factor,
        "reconfig_factor": reconfig_factor,
        "seed": seed,
    }
    if synthetic is not None:
        source = SyntheticSource(
            resources=synthetic,
            vocab=vocab,
            tags_min=tags_min,
            tags_max=tags_max,
            zipf_exponent=zipf,
            categories=categories,
        )
        base = WorkloadSpec(source=source)
    elif collection_path is not None:
        doc = load_document(collection_path)
        collection_from_document({k: v for k, v in doc.items() if k != "workload"})
        base = workload_from_document(doc, collection_path)
    else:
        raise click.UsageError("provide --collection or --synthetic")
    fields = {k: v for k, v in overrides.items() if v is not None}
    if fields:
        from dataclasses import replace

        base = replace(base, **fields)
    base.validate()
    return base


@main.command()
@click.option("--collection", "collection_path", type=click.Path(exists=True), default=None, help="Collection document (insertion source, may embed a workload block).")
@click.option("--synthetic", type=int, default=None, help="Generate N synthetic resources instead of reading a file.")
@click.option("--vocab", default=400, show_default=True, help="Synthetic tag vocabulary size.")
@click.option("--tags-min", default=2, show_default=True)
@click.option("--tags-max", default=6, show_default=True)
@click.option("--zipf", default=1.0, show_default=True, help="Synthetic tag-popularity Zipf exponent.")
@click.option("--categories", default=12, show_default=True, help="Synthetic category node count.")
@click.option("--round-size", type=int, default=None, help="Insertions per round (default 100).")
@click.option("--browse-factor", type=float, default=None, help="Browse ops per resource per round (default 0.1).")
@click.option("--reconfig-factor", type=float, default=None, help="Reconfig ops per resource per round (default 0.01).")
@click.option("--seed", type=int, default=None, help="Workload seed (default 0).")
@click.option("--engine", "engine_name", type=click.Choice(["automaton", "inverted", "both"]), default="both", show_default=True)
@click.option("--out", "out_path", type=click.Path(), default="bench.csv", show_default=True, help="CSV output path.")
@click.option("--validate", is_flag=True, help="Run engines in lockstep and cross-check every step (slower; timings not comparable).")
def bench(collection_path, synthetic, vocab, tags_min, tags_max, zipf, categories,
          round_size, browse_factor, reconfig_factor, seed, engine_name, out_path, validate):
    """Replay an interleaved insert/browse/reconfig workload and emit timings."""
    spec = _spec_from_options(
        collection_path, synthetic, vocab, tags_min, tags_max, zipf, categories,
        round_size, browse_factor, reconfig_factor, seed,
    )
    if validate:
        by_engine = run_lockstep(spec)
        click.echo("lockstep validation passed: engines agree on every step")
    else:
        names = ["automaton", "inverted"] if engine_name == "both" else [engine_name]
        by_engine = {name: run(spec, name) for name in names}
    records = [r for name in sorted(by_engine) for r in by_engine[name]]
    emit_csv(records, out_path)
    for name in sorted(by_engine):
        series = by_engine[name]
        total = series[-1].cumulative_seconds if series else 0.0
        click.echo(f"{name}: {len(series)} ops, {total:.3f}s cumulative")
    click.echo(f"wrote {out_path}")


@main.command("export-dfa")
@click.option("--collection", "collection_path", type=click.Path(exists=True), required=True)
@click.option("--out", "out_path", type=click.Path(), default="-", help="Output file; '-' for stdout.")
@click.option("--state-limit", default=DEFAULT_STATE_LIMIT, show_default=True)
def export_dfa_cmd(collection_path, out_path, state_limit):
    """Write the deterministic automaton as 'state TAB tag TAB state' lines."""
    dfa = build_dfa(load(collection_path), state_limit=state_limit)
    if out_path == "-":
        dfa.export_transitions(sys.stdout)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            dfa.export_transitions(fh)
    click.echo(f"{dfa.count_states()} states", err=True)


@main.command("export-tree")
@click.option("--collection", "collection_path", type=click.Path(exists=True), required=True)
@click.option("--select", "selections", multiple=True, help="Tag to select before exporting; repeatable.")
@click.option("--out", "out_path", type=click.Path(), default="-", help="Output file; '-' for stdout.")
def export_tree_cmd(collection_path, selections, out_path):
    """Materialize splits for a tag sequence, then dump the split tree."""
    engine = AutomatonEngine(load(collection_path))
    state = engine.initial()
    for tag in selections:
        state = engine.select(state, tag)
    if out_path == "-":
        engine.automaton.export_tree(sys.stdout)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            engine.automaton.export_tree(fh)


if __name__ == "__main__":
    main()
