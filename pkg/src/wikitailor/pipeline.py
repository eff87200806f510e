"""Batch runs: vocabulary, extractions, metrics and alignment for many
(language, domain) units, with a manifest of every artifact written."""

from __future__ import annotations

import hashlib
import json
import logging
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Mapping, Sequence

from .align import intersect_languages, union_languages, write_aligned, write_titles
from .errors import TailorError
from .graph import DEFAULT_PROBE_DEPTH, WtExtraction, traverse_and_extract, write_wt_outputs
from .metrics import (MetricsConfig, build_esa_space, compute_report, shared_reference_ids, with_dom,
                      write_report_json, write_report_table)
from .retrieval import IrExtraction, build_index, extract_ir, write_ir_outputs
from .store import CorpusStore, load_store
from .systems import SystemSpec, parse_system_name
from .textprep import PreprocessConfig, preprocess
from .vocabulary import Vocabulary, build_vocabulary, find_root_category, select_seed_articles

log = logging.getLogger(__name__)

__all__ = ["RunConfig", "extract_system", "run_batch", "domain_vocabulary"]


@dataclass
class RunConfig:
    """Everything a batch run depends on.

    ``stores`` maps language code to a persisted store directory. ``domains``
    maps a domain key to per-language root category titles; a language missing
    from the inner mapping uses the key itself.
    """

    stores: dict[str, str]
    domains: dict[str, dict[str, str]]
    out: str
    systems: list[str] = field(default_factory=lambda: ["50-WT100", "100-IR10"])
    seed: int = 0
    jobs: int = 1
    align: list[str] = field(default_factory=lambda: ["intersection", "union"])
    metrics: bool = True
    esa_reference: str = "all"          # "all" articles of the store, or "shared" (langlinked everywhere)
    esa_floor: int = 10_000
    probe_depth: int = DEFAULT_PROBE_DEPTH
    metric_vocab_size: int = 100

    def __post_init__(self):
        self.systems = list(self.systems)
        for name in self.systems:
            parse_system_name(name)
        if self.esa_reference not in ("all", "shared"):
            raise TailorError("esa_reference must be 'all' or 'shared'")
        bad = [m for m in self.align if m not in ("intersection", "union")]
        if bad:
            raise TailorError(f"unknown alignment mode(s): {', '.join(bad)}")

    def root_title(self, domain: str, lang: str) -> str:
        return self.domains.get(domain, {}).get(lang, domain)

    def describe(self) -> dict:
        d = asdict(self)
        d.pop("jobs")
        return d


def domain_vocabulary(store: CorpusStore, root_title: str, cfg: PreprocessConfig, cap_mode: str = "top10pct"):
    """Root category, seed articles and vocabulary for one domain."""
    root = find_root_category(store, root_title)
    seeds = select_seed_articles(store, root)
    vocab = build_vocabulary(store, seeds, cfg, cap_mode, domain=root.title)
    return root, seeds, vocab


def extract_system(store: CorpusStore, root_title: str, spec: SystemSpec | str, cfg: PreprocessConfig,
                   index=None, probe_depth: int = DEFAULT_PROBE_DEPTH):
    """Run one named system (e.g. ``50-WT100``) for one domain of one store.

    Returns ``(extraction, vocabulary, seed_ids)``.
    """
    if isinstance(spec, str):
        spec = parse_system_name(spec)
    if spec.model == "WT":
        root, seeds, vocab = domain_vocabulary(store, root_title, cfg, spec.cap_mode)
        return traverse_and_extract(store, root, vocab, spec.k, cfg, probe_depth), vocab, seeds
    root, seeds, vocab = domain_vocabulary(store, root_title, cfg, "top10pct")
    if index is None:
        index = build_index(store, cfg)
    return extract_ir(index, vocab, spec.query_size, spec.threshold, store.edition), vocab, seeds


# per-process caches so a worker loads each store and builds each index once
@lru_cache(maxsize=8)
def _store(path: str) -> CorpusStore:
    return load_store(path)


@lru_cache(maxsize=8)
def _index(path: str):
    store = _store(path)
    return build_index(store, PreprocessConfig.for_language(store.edition))


@lru_cache(maxsize=8)
def _esa(path: str, reference: str, floor: int, others: tuple[str, ...]):
    store = _store(path)
    cfg = PreprocessConfig.for_language(store.edition)
    if reference == "shared":
        ids = shared_reference_ids([store] + [_store(p) for p in others])
    else:
        ids = sorted(store.articles)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        if len(ids) < floor:
            log.warning("%s: ESA reference of %d articles is below the floor of %d", store.edition, len(ids), floor)
        return build_esa_space(store, ids, cfg, floor=floor)


def _run_unit(cfg: RunConfig, lang: str, domain: str) -> dict:
    """Process one (language, domain) unit; returns selections and written files."""
    out_dir = Path(cfg.out) / lang / domain
    store_path = cfg.stores[lang]
    store = _store(store_path)
    pcfg = PreprocessConfig.for_language(lang)
    title = cfg.root_title(domain, lang)
    out_dir.mkdir(parents=True, exist_ok=True)
    selections: dict[str, list[int]] = {}
    reports = []
    base_vocab = None
    others = tuple(p for l, p in sorted(cfg.stores.items()) if l != lang)
    mcfg = MetricsConfig(vocab_size=cfg.metric_vocab_size)
    for name in cfg.systems:
        spec = parse_system_name(name)
        index = _index(store_path) if spec.model == "IR" else None
        extraction, vocab, seeds = extract_system(store, title, spec, pcfg, index, cfg.probe_depth)
        if spec.model == "WT":
            vocab.to_tsv(out_dir / f"vocab-{spec.cap_mode}.tsv")
            write_wt_outputs(extraction, out_dir / name, {"system": name})
        else:
            write_ir_outputs(extraction, out_dir / name, {"system": name})
        if base_vocab is None or spec.model == "IR":
            base_vocab = vocab
        selections[name] = sorted(extraction.article_ids)
        if cfg.metrics:
            full_vocab = vocab if spec.model == "IR" else domain_vocabulary(store, title, pcfg)[2]
            docs = [preprocess(store.articles[a].body, pcfg) for a in sorted(extraction.article_ids)]
            root_docs = [preprocess(store.articles[a].body, pcfg) for a in sorted(seeds)]
            space = _esa(store_path, cfg.esa_reference, cfg.esa_floor, others)
            reports.append(compute_report(name, docs, root_docs, full_vocab.words, mcfg, space))
    if reports:
        reports = with_dom(reports)
        for r in reports:
            write_report_json(r, out_dir / r.collection / "report.json")
        write_report_table(reports, out_dir / "report.csv")
    return {"lang": lang, "domain": domain, "selections": selections}


def _unit_safe(args) -> dict:
    cfg, lang, domain = args
    try:
        return _run_unit(cfg, lang, domain)
    except TailorError as exc:
        log.error("%s/%s failed: %s", lang, domain, exc)
        return {"lang": lang, "domain": domain, "error": f"{type(exc).__name__}: {exc}"}


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def run_batch(cfg: RunConfig) -> int:
    """Run every (language, domain) unit and write ``manifest.json``.

    Returns the process exit status: 0 when every unit succeeded, 1 otherwise.
    A failing unit never stops the others.
    """
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    units = [(cfg, lang, domain) for domain in sorted(cfg.domains) for lang in sorted(cfg.stores)]
    if cfg.jobs > 1 and len(units) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_unit_safe, units))
    else:
        results = [_unit_safe(u) for u in units]

    failures = [{"lang": r["lang"], "domain": r["domain"], "error": r["error"]} for r in results if "error" in r]
    done = {(r["lang"], r["domain"]): r["selections"] for r in results if "error" not in r}

    langs = sorted(cfg.stores)
    if len(langs) >= 2 and cfg.align:
        stores = {l: _store(cfg.stores[l]) for l in langs}
        for domain in sorted(cfg.domains):
            if not all((l, domain) in done for l in langs):
                log.warning("alignment of %s skipped: not every language succeeded", domain)
                continue
            for name in cfg.systems:
                extractions = [(l, done[(l, domain)][name]) for l in langs]
                for mode in cfg.align:
                    fn = intersect_languages if mode == "intersection" else union_languages
                    aligned = fn(extractions, stores)
                    target = out / "aligned" / domain / name / mode
                    target.mkdir(parents=True, exist_ok=True)
                    write_aligned(aligned, target / "aligned.tsv")
                    write_titles(aligned, stores, target / "titles.tsv")

    artifacts = {}
    for path in sorted(out.rglob("*")):
        if path.is_file() and path.name != "manifest.json":
            artifacts[path.relative_to(out).as_posix()] = _sha256(path)
    manifest = {
        "config": cfg.describe(),
        "units": [{"lang": r["lang"], "domain": r["domain"], "ok": "error" not in r} for r in results],
        "failures": failures,
        "artifacts": artifacts,
    }
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
                                       encoding="utf-8")
    return 1 if failures else 0
