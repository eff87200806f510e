import json
import shutil

import pytest

from wikitailor.cli import main
from wikitailor.pipeline import RunConfig, run_batch


def config(dirs, out, **kw):
    base = dict(stores={k: str(v) for k, v in dirs.items()},
                domains={"Astronomy": {"fr": "Astronomie"}, "Football": {}},
                out=str(out), esa_floor=100)
    base.update(kw)
    return RunConfig(**base)


@pytest.fixture(scope="module")
def batch_out(minidump_stores, tmp_path_factory):
    out = tmp_path_factory.mktemp("batch")
    assert run_batch(config(minidump_stores[1], out)) == 0
    return out


def manifest(out):
    return json.loads((out / "manifest.json").read_text())


def test_layout(batch_out):
    for lang in ("en", "fr"):
        for domain in ("Astronomy", "Football"):
            unit = batch_out / lang / domain
            assert (unit / "vocab-top100-of-10pct.tsv").exists()
            assert (unit / "50-WT100" / "levels.csv").exists()
            assert (unit / "100-IR10" / "scores.tsv").exists()
            assert (unit / "report.csv").exists()
    for domain in ("Astronomy", "Football"):
        for mode in ("intersection", "union"):
            assert (batch_out / "aligned" / domain / "50-WT100" / mode / "aligned.tsv").exists()
    m = manifest(batch_out)
    assert m["failures"] == [] and len(m["units"]) == 4
    assert all(len(h) == 64 for h in m["artifacts"].values())


def test_rerun_and_jobs_are_identical(minidump_stores, batch_out, tmp_path):
    again = tmp_path / "again"
    assert run_batch(config(minidump_stores[1], again)) == 0
    parallel = tmp_path / "parallel"
    assert run_batch(config(minidump_stores[1], parallel, jobs=2)) == 0
    first = manifest(batch_out)
    for other in (again, parallel):
        m = manifest(other)
        assert m["artifacts"] == first["artifacts"]
        assert dict(m["config"], out=None) == dict(first["config"], out=None)


def test_failed_unit_does_not_stop_others(minidump_stores, tmp_path):
    cfg = config(minidump_stores[1], tmp_path, domains={"Astronomy": {"fr": "Astronomie"},
                                                        "Football": {"fr": "Soccer inexistant"}})
    assert run_batch(cfg) == 1
    m = manifest(tmp_path)
    ok = [(u["lang"], u["domain"]) for u in m["units"] if u["ok"]]
    assert sorted(ok) == [("en", "Astronomy"), ("en", "Football"), ("fr", "Astronomy")]
    assert m["failures"][0]["lang"] == "fr" and "CategoryNotFound" in m["failures"][0]["error"]
    assert (tmp_path / "aligned" / "Astronomy").is_dir()
    assert not (tmp_path / "aligned" / "Football").exists()


def test_batch_cli_with_config(minidump_stores, batch_out, tmp_path):
    dirs = minidump_stores[1]
    cfg = tmp_path / "run.toml"
    cfg.write_text(
        f'out = "{tmp_path / "out"}"\n'
        "[batch]\nesa-floor = 100\n"
        f'[stores]\nen = "{dirs["en"]}"\nfr = "{dirs["fr"]}"\n'
        '[domains]\nAstronomy = { fr = "Astronomie" }\nFootball = {}\n'
    )
    assert main(["batch", "--config", str(cfg)]) == 0
    assert manifest(tmp_path / "out")["artifacts"] == manifest(batch_out)["artifacts"]
    # a flag beats the config; a single system shrinks the output
    assert main(["batch", "--config", str(cfg), "--system", "50-WT100", "--no-metrics",
                 "--out", str(tmp_path / "wt_only")]) == 0
    names = manifest(tmp_path / "wt_only")["artifacts"]
    assert not any("IR" in n for n in names)
    shutil.rmtree(tmp_path / "wt_only")
