"""``tailor`` command-line entry point.

Each subcommand parses its flags, calls the library and writes files under
``--out``. Logs go to stderr. Exit status: 0 success, 1 failure (or partial
failure in ``batch``), 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .align import intersect_languages, union_languages, write_aligned, write_titles
from .errors import SystemNameError, TailorError
from .evalstats import (build_eval_set, category_matrix, fleiss_kappa, group_judgments, pearson, precision,
                        read_judgments, write_eval_set)
from .graph import DEFAULT_PROBE_DEPTH, write_wt_outputs
from .metrics import (MetricsConfig, build_esa_space, compute_report, shared_reference_ids, with_dom,
                      write_report_json, write_report_table)
from .retrieval import write_ir_outputs
from .pipeline import RunConfig, domain_vocabulary, extract_system, run_batch
from .store import load_store, parse_dump, persist_store
from .systems import GRAMMAR, SystemSpec
from .textprep import PreprocessConfig, preprocess

log = logging.getLogger("wikitailor")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
_CAPS = {"all": "top10pct", "100": "top100-of-10pct", "500": "top500-of-10pct"}


class UsageError(Exception):
    pass


def _need(args, *names):
    missing = [n for n in names if getattr(args, n, None) in (None, [], "")]
    if missing:
        raise UsageError("missing required option(s): " + ", ".join("--" + m.replace("_", "-") for m in missing))


def _out_dir(args) -> Path:
    _need(args, "out")
    path = Path(args.out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _pairs(items, what: str) -> dict[str, str]:
    """Parse repeated ``key=value`` options."""
    out = {}
    for item in items or ():
        key, sep, value = item.partition("=")
        if not sep or not key or not value:
            raise UsageError(f"{what} must look like KEY=VALUE, got {item!r}")
        out[key] = value
    return out


def _read_ids(path) -> list[int]:
    return sorted({int(x) for x in Path(path).read_text(encoding="utf-8").split()})


def _dump_json(obj, path: Path) -> None:
    path.write_text(json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n", encoding="utf-8")


# ---------------------------------------------------------------- subcommands

def cmd_ingest(args) -> int:
    _need(args, "dump", "lang", "store")
    store = parse_dump(args.dump, args.lang, args.categorylinks, args.langlinks)
    persist_store(store, args.store)
    log.info("ingested %s: %s", args.lang, store.summary())
    return EXIT_OK


def cmd_vocab(args) -> int:
    _need(args, "store", "domain")
    store = load_store(args.store)
    cfg = PreprocessConfig.for_language(store.edition)
    _, seeds, vocab = domain_vocabulary(store, args.domain, cfg, _CAPS[args.vocab_cap])
    out = _out_dir(args)
    vocab.to_tsv(out / "vocab.tsv")
    log.info("%d seed articles, %d vocabulary terms", len(seeds), len(vocab))
    return EXIT_OK


def cmd_extract_wt(args) -> int:
    _need(args, "store", "domain")
    store = load_store(args.store)
    cfg = PreprocessConfig.for_language(store.edition)
    spec = SystemSpec(f"{args.k}-WT{args.vocab_cap}", "WT", k=args.k, cap_mode=_CAPS[args.vocab_cap])
    if not 0 < args.k <= 100:
        raise UsageError("--k must lie in (0, 100]")
    extraction, vocab, _ = extract_system(store, args.domain, spec, cfg, probe_depth=args.probe_depth)
    out = _out_dir(args)
    vocab.to_tsv(out / "vocab.tsv")
    write_wt_outputs(extraction, out, {"system": spec.name})
    log.info("%s: %d articles, stop depth %s", spec.name, len(extraction.article_ids), extraction.stop_depth)
    return EXIT_OK


def cmd_extract_ir(args) -> int:
    _need(args, "store", "domain")
    store = load_store(args.store)
    cfg = PreprocessConfig.for_language(store.edition)
    spec = SystemSpec(f"{args.query_size}-IR{args.threshold}", "IR", query_size=args.query_size,
                      threshold=args.threshold)
    extraction, vocab, _ = extract_system(store, args.domain, spec, cfg)
    out = _out_dir(args)
    vocab.to_tsv(out / "vocab.tsv")
    write_ir_outputs(extraction, out, {"system": spec.name})
    log.info("%s: %d of %d retrieved articles kept", spec.name, len(extraction.article_ids), len(extraction.scored))
    return EXIT_OK


def cmd_align(args) -> int:
    stores_arg = _pairs(args.lang_store, "--lang-store")
    sel_arg = _pairs(args.selection, "--selection")
    if len(sel_arg) < 2:
        raise UsageError("align needs --selection LANG=articles.txt for at least two languages")
    if set(sel_arg) - set(stores_arg):
        raise UsageError("every --selection language needs a --lang-store")
    stores = {lang: load_store(stores_arg[lang]) for lang in sorted(sel_arg)}
    extractions = [(lang, _read_ids(sel_arg[lang])) for lang in sorted(sel_arg)]
    out = _out_dir(args)
    for mode in args.mode:
        fn = intersect_languages if mode == "intersection" else union_languages
        aligned = fn(extractions, stores)
        target = out / mode
        target.mkdir(parents=True, exist_ok=True)
        write_aligned(aligned, target / "aligned.tsv")
        write_titles(aligned, stores, target / "titles.tsv")
        log.info("%s: %d tuples", mode, len(aligned.tuples))
    return EXIT_OK


def cmd_domainness(args) -> int:
    _need(args, "store", "domain")
    collections = _pairs(args.collection, "--collection")
    if not collections:
        raise UsageError("domainness needs at least one --collection NAME=articles.txt")
    store = load_store(args.store)
    cfg = PreprocessConfig.for_language(store.edition)
    _, seeds, vocab = domain_vocabulary(store, args.domain, cfg)
    mcfg = MetricsConfig(epsilon=args.epsilon, K=args.K, aggregation=args.aggregation,
                         vocab_size=args.vocab_size, esa_floor=args.esa_floor)
    if args.esa_reference == "shared":
        others = [load_store(p) for p in _pairs(args.lang_store, "--lang-store").values()]
        ref = shared_reference_ids([store] + others)
    else:
        ref = sorted(store.articles)
    space = build_esa_space(store, ref, cfg, floor=args.esa_floor)
    root_docs = [preprocess(store.articles[a].body, cfg) for a in seeds]
    reports = []
    for name in sorted(collections):
        ids = [a for a in _read_ids(collections[name]) if a in store.articles]
        docs = [preprocess(store.articles[a].body, cfg) for a in ids]
        reports.append(compute_report(name, docs, root_docs, vocab.words, mcfg, space))
    reports = with_dom(reports)
    out = _out_dir(args)
    for r in reports:
        write_report_json(r, out / f"{r.collection}.report.json")
    write_report_table(reports, out / "report.csv")
    return EXIT_OK


def cmd_evalset(args) -> int:
    _need(args, "a", "b")
    evalset = build_eval_set(_read_ids(args.a), _read_ids(args.b), args.per_stratum, args.seed)
    out = _out_dir(args)
    write_eval_set(evalset, out / "evalset.csv")
    log.info("strata sizes: %s", evalset.sizes)
    return EXIT_OK


def cmd_evaluate(args) -> int:
    _need(args, "judgments")
    labels = group_judgments(read_judgments(args.judgments))
    if args.articles:
        keep = set(_read_ids(args.articles))
        labels = {a: l for a, l in labels.items() if a in keep}
    result = {"articles": len(labels),
              "precision_hard": precision(labels, "hard", args.raters),
              "precision_soft": precision(labels, "soft", args.raters)}
    try:
        result["fleiss_kappa"] = fleiss_kappa(category_matrix(labels))
    except TailorError as exc:
        log.warning("kappa undefined: %s", exc)
        result["fleiss_kappa"] = None
    _dump_json(result, _out_dir(args) / "evaluation.json")
    return EXIT_OK


def cmd_stats(args) -> int:
    _need(args, "table", "x", "y")
    xs, ys = [], []
    with open(args.table, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        for col in (args.x, args.y):
            if col not in (reader.fieldnames or ()):
                raise UsageError(f"column {col!r} not in {args.table}")
        for row in reader:
            if row[args.x] == "" or row[args.y] == "":
                continue
            xs.append(float(row[args.x]))
            ys.append(float(row[args.y]))
    _dump_json({"x": args.x, "y": args.y, "n": len(xs), "pearson": pearson(xs, ys)},
               _out_dir(args) / "stats.json")
    return EXIT_OK


def _parse_domain(spec: str) -> tuple[str, dict[str, str]]:
    """``Astronomy`` or ``Astronomy:fr=Astronomie,es=Astronomía``."""
    key, _, rest = spec.partition(":")
    return key, _pairs([p for p in rest.split(",") if p], "--domain title") if rest else {}


def cmd_batch(args) -> int:
    stores = dict(args.batch_stores or {})
    stores.update(_pairs(args.lang_store, "--lang-store"))
    domains = {k: dict(v) for k, v in (args.batch_domains or {}).items()}
    for d in args.domain_list or ():
        key, titles = _parse_domain(d)
        domains.setdefault(key, {}).update(titles)
    if not stores or not domains:
        raise UsageError("batch needs stores (--lang-store or [stores]) and domains (--domain or [domains])")
    _need(args, "out")
    cfg = RunConfig(stores=stores, domains=domains, out=args.out, systems=args.system or ["50-WT100", "100-IR10"],
                    seed=args.seed, jobs=args.jobs, align=args.mode, metrics=not args.no_metrics,
                    esa_reference=args.esa_reference, esa_floor=args.esa_floor, probe_depth=args.probe_depth)
    status = run_batch(cfg)
    if status:
        log.error("batch finished with failures; see %s/manifest.json", args.out)
    return status


# ---------------------------------------------------------------- parser

def build_parser(explicit_only: bool = False):
    """The argument parser, plus each subparser by name.

    With ``explicit_only`` every default is suppressed, so parsing yields only
    the options actually typed; ``main`` uses that to let flags beat the config.
    """
    def arg(p, *names, default=None, **kw):
        if explicit_only or p is not parser and names[0] in _GLOBAL_FLAGS:
            default = argparse.SUPPRESS
        p.add_argument(*names, default=default, **kw)

    def add_globals(p):
        arg(p, "--store", help="store directory")
        arg(p, "--out", help="output directory")
        arg(p, "--seed", type=int, default=0)
        arg(p, "--jobs", type=int, default=1, help="parallel (language, domain) units in batch")
        arg(p, "--config", help="TOML file whose keys mirror the flags; flags win")
        arg(p, "-v", "--verbose", action="store_true", default=False)

    parser = argparse.ArgumentParser(prog="tailor",
                                     description="Domain-specific comparable corpora from Wikipedia dumps.")
    add_globals(parser)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    subs: dict[str, argparse.ArgumentParser] = {}

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        add_globals(p)
        p.set_defaults(func=fn)
        subs[name] = p
        return p

    p = add("ingest", cmd_ingest, "parse a dump into a store")
    arg(p, "--dump")
    arg(p, "--lang")
    arg(p, "--categorylinks", help="categorylinks SQL dump")
    arg(p, "--langlinks", help="langlinks SQL dump")

    p = add("vocab", cmd_vocab, "build a domain vocabulary")
    arg(p, "--domain")
    arg(p, "--vocab-cap", choices=sorted(_CAPS), default="all")

    p = add("extract-wt", cmd_extract_wt, "graph-based extraction")
    arg(p, "--domain")
    arg(p, "--k", type=int, default=50)
    arg(p, "--vocab-cap", choices=sorted(_CAPS), default="100")
    arg(p, "--probe-depth", type=int, default=DEFAULT_PROBE_DEPTH)

    p = add("extract-ir", cmd_extract_ir, "retrieval-based extraction")
    arg(p, "--domain")
    arg(p, "--query-size", type=int, choices=(50, 100), default=100)
    arg(p, "--threshold", choices=("all", "100", "10"), default="10")

    p = add("align", cmd_align, "align selections across languages")
    arg(p, "--lang-store", action="append", metavar="LANG=DIR")
    arg(p, "--selection", action="append", metavar="LANG=FILE")
    arg(p, "--mode", action="append", choices=("intersection", "union"))

    p = add("domainness", cmd_domainness, "metric reports for collections")
    arg(p, "--domain")
    arg(p, "--collection", action="append", metavar="NAME=FILE")
    arg(p, "--epsilon", type=float, default=1e-12)
    arg(p, "--K", type=float, default=0.0)
    arg(p, "--aggregation", choices=("median", "mean"), default="median")
    arg(p, "--vocab-size", type=int, default=100)
    arg(p, "--esa-floor", type=int, default=10_000)
    arg(p, "--esa-reference", choices=("all", "shared"), default="all")
    arg(p, "--lang-store", action="append", metavar="LANG=DIR")

    p = add("evalset", cmd_evalset, "sample an evaluation set from two selections")
    arg(p, "--a")
    arg(p, "--b")
    arg(p, "--per-stratum", type=int, default=100)

    p = add("evaluate", cmd_evaluate, "precision and agreement from judgments")
    arg(p, "--judgments")
    arg(p, "--articles", help="restrict to these article ids")
    arg(p, "--raters", type=int, default=3)

    p = add("stats", cmd_stats, "Pearson correlation of two table columns")
    arg(p, "--table")
    arg(p, "--x")
    arg(p, "--y")

    p = add("batch", cmd_batch, "full run over languages and domains")
    arg(p, "--lang-store", action="append", metavar="LANG=DIR")
    arg(p, "--domain", action="append", dest="domain_list", metavar="KEY[:LANG=TITLE,...]")
    arg(p, "--system", action="append", help=GRAMMAR)
    arg(p, "--mode", action="append", choices=("intersection", "union"))
    arg(p, "--no-metrics", action="store_true", default=False)
    arg(p, "--esa-floor", type=int, default=10_000)
    arg(p, "--esa-reference", choices=("all", "shared"), default="all")
    arg(p, "--probe-depth", type=int, default=DEFAULT_PROBE_DEPTH)
    return parser, subs


_PLURALS = {"systems": "system", "modes": "mode", "collections": "collection", "selections": "selection"}
_GLOBAL_FLAGS = ("--store", "--out", "--seed", "--jobs", "--config", "-v")


def _config_values(path: str, command: str, sub: argparse.ArgumentParser) -> dict:
    """Top-level keys plus a table named after the subcommand; dashes or
    underscores both accepted. ``batch`` also reads [stores] and [domains]."""
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except (OSError, tomllib.TOMLDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    dests = {a.dest for a in sub._actions} - {"help", "config"}
    flat = {k: v for k, v in data.items() if not isinstance(v, dict)}
    flat.update(data.get(command, {}))
    out = {}
    for key, value in flat.items():
        dest = key.replace("-", "_")
        dest = _PLURALS.get(dest, dest)
        if dest == "domain" and command == "batch":
            dest = "domain_list"
        if dest not in dests:
            raise UsageError(f"unknown config key {key!r} for {command}")
        out[dest] = value
    if command == "batch":
        out["batch_stores"] = data.get("stores")
        out["batch_domains"] = data.get("domains")
    return out


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, subs = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    if not args.command:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    args.batch_stores = args.batch_domains = None
    try:
        if args.config:
            explicit = vars(build_parser(explicit_only=True)[0].parse_args(argv))
            for dest, value in _config_values(args.config, args.command, subs[args.command]).items():
                if dest not in explicit:
                    setattr(args, dest, value)
        if args.command in ("align", "batch") and not args.mode:
            args.mode = ["intersection", "union"]
        return args.func(args)
    except (UsageError, SystemNameError) as exc:
        log.error("%s", exc)
        return EXIT_USAGE
    except TailorError as exc:
        log.error("%s: %s", type(exc).__name__, exc)
        return EXIT_FAIL
    except OSError as exc:
        log.error("%s", exc)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
