"""Command-line surface for the pipeline.

    fec-forge stats CORPUS...
    fec-forge make-corruptor-data --corpus train.jsonl --out corruptor.jsonl
    fec-forge corrupt --corpus train.jsonl --out pairs.jsonl --mock
    fec-forge filter --pairs pairs.jsonl --out kept.jsonl --report audit.json --mock
    fec-forge make-corrector-data --pairs kept.jsonl --out corrector.jsonl
    fec-forge evaluate --corpus test.jsonl --predictions preds.jsonl
    fec-forge prompt --claim "..." --evidence "Page; Sentence"

Every command resolves its configuration from defaults, an optional TOML
file (--config or $FEC_FORGE_CONFIG), and flags, in that order; the
resolved config and seed are echoed to stderr and hashed into every
emitted artifact's sidecar for provenance. Failures exit non-zero with a
one-line JSON error on stderr.
"""

from __future__ import annotations

import functools
import json
import sys
from dataclasses import replace
from pathlib import Path

import click

from fec_forge import __version__
from fec_forge.backends import (
    BackendEndpoint,
    HttpClassifyBackend,
    HttpGenerateBackend,
    MockClassifyBackend,
    MockGenerateBackend,
)
from fec_forge.config import PipelineConfig, config_hash, resolve_config
from fec_forge.corpus import corpus_stats, iter_corpus, load_corpus
from fec_forge.corruption import (
    EmitSummary,
    corrupt_batch,
    emit_corrector_training_data,
    emit_corruptor_training_data,
    iter_pairs,
    load_pairs,
    pair_to_json,
    write_pairs,
)
from fec_forge.errors import ConfigError, FecForgeError
from fec_forge.filtering import FilterConfig, apply_filters
from fec_forge.masking import Granularity, Strategy, default_subword_splitter
from fec_forge.metrics import evaluate_run, load_predictions
from fec_forge.prompts import build_fec_prompt, default_exemplars
from fec_forge.corpus import Evidence

CHUNK_SIZE = 512


def fail(message: str, **detail) -> None:
    print(json.dumps({"error": message, **detail}), file=sys.stderr)
    raise SystemExit(1)


def guarded(fn):
    """Convert pipeline errors into machine-readable non-zero exits."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except FecForgeError as exc:
            fail(str(exc), kind=type(exc).__name__)
        except (ValueError, OSError) as exc:
            fail(str(exc), kind=type(exc).__name__)

    return wrapper


def config_options(fn):
    decorators = [
        click.option(
            "--config",
            "config_path",
            type=click.Path(),
            envvar="FEC_FORGE_CONFIG",
            default=None,
            help="TOML config file (env fallback: FEC_FORGE_CONFIG).",
        ),
        click.option("--seed", type=int, default=None, help="Global random seed."),
        click.option("--parallelism", type=int, default=None, help="Worker threads."),
    ]
    for dec in reversed(decorators):
        fn = dec(fn)
    return fn


def backend_options(fn):
    decorators = [
        click.option("--backend-url", default=None, help="Model backend base URL."),
        click.option(
            "--mock/--no-mock",
            default=None,
            help="Use the deterministic in-process mock backend.",
        ),
    ]
    for dec in reversed(decorators):
        fn = dec(fn)
    return fn


def mask_options(fn):
    decorators = [
        click.option("--mask-ratio", type=float, default=None),
        click.option(
            "--granularity",
            type=click.Choice(["word", "subword"]),
            default=None,
        ),
        click.option("--merge-adjacent/--no-merge-adjacent", default=None),
    ]
    for dec in reversed(decorators):
        fn = dec(fn)
    return fn


def gen_options(fn):
    decorators = [
        click.option("--beam-size", type=int, default=None),
        click.option("--top-k-evidence", type=int, default=None),
    ]
    for dec in reversed(decorators):
        fn = dec(fn)
    return fn


def filter_options(fn):
    decorators = [
        click.option("--t-l", type=float, default=None, help="Edit-ratio threshold."),
        click.option("--t-c", type=float, default=None, help="NEI-probability threshold."),
    ]
    for dec in reversed(decorators):
        fn = dec(fn)
    return fn


def resolve(config_path, **flags) -> tuple[PipelineConfig, str]:
    overrides = {
        "seed": flags.get("seed"),
        "parallelism": flags.get("parallelism"),
        "mock": flags.get("mock"),
        "backend.base_url": flags.get("backend_url"),
        "masking.ratio": flags.get("mask_ratio"),
        "masking.granularity": flags.get("granularity"),
        "masking.merge_adjacent": flags.get("merge_adjacent"),
        "generation.beam_size": flags.get("beam_size"),
        "generation.top_k_evidence": flags.get("top_k_evidence"),
        "filtering.t_l": flags.get("t_l"),
        "filtering.t_c": flags.get("t_c"),
    }
    cfg = resolve_config(config_path, overrides)
    digest = config_hash(cfg)
    print(
        f"resolved config {digest} seed={cfg.seed}: "
        + json.dumps(cfg.as_dict(), sort_keys=True),
        file=sys.stderr,
    )
    return cfg, digest


def write_meta(artifact: Path, command: str, digest: str, cfg: PipelineConfig, **counts):
    meta = {"command": command, "config_hash": digest, "seed": cfg.seed, **counts}
    meta_path = Path(str(artifact) + ".meta.json")
    meta_path.write_text(json.dumps(meta, sort_keys=True) + "\n", encoding="utf-8")


def generate_backend(cfg: PipelineConfig):
    if cfg.mock:
        return MockGenerateBackend(cfg.seed, cfg.generation.separator)
    if not cfg.backend.base_url:
        raise ConfigError("no backend configured: pass --mock or --backend-url")
    return HttpGenerateBackend(endpoint(cfg))


def classify_backend(cfg: PipelineConfig):
    if cfg.mock:
        return MockClassifyBackend(cfg.seed)
    if not cfg.backend.base_url:
        raise ConfigError("no classifier configured: pass --mock, --backend-url, "
                          "or --no-classifier")
    return HttpClassifyBackend(endpoint(cfg))


def endpoint(cfg: PipelineConfig) -> BackendEndpoint:
    b = cfg.backend
    return BackendEndpoint(
        base_url=b.base_url,
        timeout=b.timeout,
        max_in_flight=b.max_in_flight,
        retries=b.retries,
        backoff=b.backoff,
        batch_size=b.batch_size,
    )


def splitter_for(cfg: PipelineConfig):
    if cfg.masking.granularity is Granularity.SUBWORD:
        return default_subword_splitter
    return None


@click.group()
@click.version_option(version=__version__, prog_name="fec-forge")
def cli():
    """Build and score factual error correction data."""


@cli.command()
@click.argument("corpora", nargs=-1, required=True, type=click.Path())
@click.option("--lenient", is_flag=True, help="Skip and count invalid lines.")
@config_options
@guarded
def stats(corpora, lenient, config_path, seed, parallelism):
    """Per-label record counts for one or more corpus files."""
    _, _ = resolve(config_path, seed=seed, parallelism=parallelism)
    files = []
    totals = {"SUPPORTED": 0, "REFUTED": 0, "total": 0}
    for path in corpora:
        errors: list = []
        stats_ = corpus_stats(iter_corpus(path, strict=not lenient, errors=errors))
        row = {"path": str(path), **stats_.as_dict(), "skipped": len(errors)}
        files.append(row)
        for key in totals:
            totals[key] += row[key]
    click.echo(json.dumps({"files": files, "totals": totals}, indent=2))


@cli.command("make-corruptor-data")
@click.option("--corpus", "corpus_path", required=True, type=click.Path())
@click.option("--out", "out_path", required=True, type=click.Path())
@config_options
@mask_options
@gen_options
@guarded
def make_corruptor_data(corpus_path, out_path, config_path, **flags):
    """Emit (masked false claim, false claim) training pairs for a corruptor."""
    cfg, digest = resolve(config_path, **flags)
    refuted = (r for r in iter_corpus(corpus_path) if r.label == "REFUTED")
    mask_cfg = replace(cfg.masking, strategy=Strategy.HEURISTIC, seed=cfg.seed)
    summary = emit_corruptor_training_data(
        refuted, mask_cfg, cfg.generation, out_path,
        subword_splitter=splitter_for(cfg),
    )
    write_meta(Path(out_path), "make-corruptor-data", digest, cfg, **summary.as_dict())
    click.echo(json.dumps({"out": str(out_path), **summary.as_dict()}))


@cli.command()
@click.option("--corpus", "corpus_path", required=True, type=click.Path())
@click.option("--out", "out_path", required=True, type=click.Path())
@config_options
@backend_options
@mask_options
@gen_options
@guarded
def corrupt(corpus_path, out_path, config_path, **flags):
    """Generate false claims for every SUPPORTED record."""
    cfg, digest = resolve(config_path, **flags)
    backend = generate_backend(cfg)
    mask_cfg = replace(cfg.masking, seed=cfg.seed)
    total = EmitSummary()
    out = Path(out_path)
    with out.open("w", encoding="utf-8", newline="\n") as fh:
        chunk = []

        def flush():
            pairs, summary = corrupt_batch(
                chunk, mask_cfg, cfg.generation, backend,
                parallelism=cfg.parallelism, subword_splitter=splitter_for(cfg),
            )
            for pair in pairs:
                fh.write(json.dumps(pair_to_json(pair), ensure_ascii=False) + "\n")
            total.written += summary.written
            total.failed += summary.failed
            total.failures.extend(summary.failures)
            chunk.clear()

        for record in iter_corpus(corpus_path):
            if record.label != "SUPPORTED":
                continue
            chunk.append(record)
            if len(chunk) >= CHUNK_SIZE:
                flush()
        if chunk:
            flush()
    write_meta(out, "corrupt", digest, cfg, **total.as_dict())
    click.echo(json.dumps({"out": str(out), **total.as_dict()}))


@cli.command("filter")
@click.option("--pairs", "pairs_path", required=True, type=click.Path())
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--report", "report_path", default=None, type=click.Path())
@click.option("--no-classifier", is_flag=True, help="Skip the verdict-based stage.")
@config_options
@backend_options
@filter_options
@guarded
def filter_cmd(pairs_path, out_path, report_path, no_classifier, config_path, **flags):
    """Run the exact / edit-ratio / verdict filter cascade over synthetic pairs."""
    cfg, digest = resolve(config_path, **flags)
    classifier = None if no_classifier else classify_backend(cfg)
    filter_cfg = FilterConfig(
        t_l=cfg.t_l, t_c=cfg.t_c, classifier=classifier,
        max_in_flight=cfg.backend.max_in_flight,
    )
    pairs = load_pairs(pairs_path)
    outcome = apply_filters(pairs, filter_cfg)
    write_pairs(outcome.kept, out_path)
    report = {**outcome.audit_report(filter_cfg), "config_hash": digest}
    if report_path:
        Path(report_path).write_text(
            json.dumps(report, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
    write_meta(Path(out_path), "filter", digest, cfg,
               kept=len(outcome.kept), input=outcome.input_count)
    click.echo(json.dumps(report, sort_keys=True))


@cli.command("make-corrector-data")
@click.option("--pairs", "pairs_path", required=True, type=click.Path())
@click.option("--out", "out_path", required=True, type=click.Path())
@config_options
@gen_options
@guarded
def make_corrector_data(pairs_path, out_path, config_path, **flags):
    """Emit (false claim + evidence, correct claim) pairs for corrector training."""
    cfg, digest = resolve(config_path, **flags)
    summary = emit_corrector_training_data(
        iter_pairs(pairs_path), cfg.generation, out_path
    )
    write_meta(Path(out_path), "make-corrector-data", digest, cfg, **summary.as_dict())
    click.echo(json.dumps({"out": str(out_path), **summary.as_dict()}))


@cli.command()
@click.option("--corpus", "corpus_path", required=True, type=click.Path())
@click.option("--predictions", "predictions_path", required=True, type=click.Path())
@click.option("--out", "out_path", default=None, type=click.Path())
@config_options
@guarded
def evaluate(corpus_path, predictions_path, out_path, config_path, seed, parallelism):
    """Score predictions with SARI and ROUGE-2."""
    cfg, digest = resolve(config_path, seed=seed, parallelism=parallelism)
    records = load_corpus(corpus_path)
    predictions = load_predictions(predictions_path)
    report = evaluate_run(records, predictions)
    payload = {**report.as_dict(), "config_hash": digest}
    text = json.dumps(payload, indent=2, sort_keys=True)
    if out_path:
        Path(out_path).write_text(text + "\n", encoding="utf-8")
    click.echo(text)


@cli.command()
@click.option("--claim", required=True, help="The mutated claim to correct.")
@click.option(
    "--evidence",
    "evidence_lines",
    multiple=True,
    required=True,
    help='Evidence as "page; sentence" (repeatable).',
)
@click.option("--out", "out_path", default=None, type=click.Path())
@config_options
@guarded
def prompt(claim, evidence_lines, out_path, config_path, seed, parallelism):
    """Emit the 8-shot correction prompt for an LLM."""
    resolve(config_path, seed=seed, parallelism=parallelism)
    evidence = []
    for line in evidence_lines:
        page, sep, sentence = line.partition("; ")
        if not sep:
            raise ValueError(f'evidence must look like "page; sentence": {line!r}')
        evidence.append(Evidence(page_title=page, sentence=sentence))
    text = build_fec_prompt(default_exemplars(), evidence, claim)
    if out_path:
        Path(out_path).write_text(text, encoding="utf-8")
    else:
        click.echo(text, nl=False)


def main():
    cli(prog_name="fec-forge")


if __name__ == "__main__":
    main()
