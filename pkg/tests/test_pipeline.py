import json

import pytest

from expdioph.sieve import pipeline as P
from expdioph.sieve.lt2z import (
    k1_solutions,
    kbig_excluded,
    search_x1y1_Z_lt_2z,
    triple_solutions,
    x2_excluded,
    y_large_triples,
)
from expdioph.sieve.resolve import Hit

# a quick slice of the x = y = 1 small-c branch that still holds a solution
SLICE = dict(branch="x1", variant="small", c_range=(2, 2), z_range=(3, 4))


def _run(tmp_path, name, workers=1):
    path = tmp_path / name
    res = P.run_pipeline(**SLICE, workers=workers, checkpoint=str(path))
    return res, path


def test_slice_finds_known_solutions(tmp_path):
    res, _ = _run(tmp_path, "a.jsonl")
    want = {Hit(5, 3, 2, 1, 1, 3, 1, 3, 5), Hit(5, 3, 2, 1, 1, 3, 3, 1, 7), Hit(13, 3, 2, 1, 1, 4, 1, 5, 8)}
    assert set(res.solutions) == want
    assert res.stats["solutions"] == 3


def test_checkpoint_is_deterministic(tmp_path):
    _, a = _run(tmp_path, "a.jsonl")
    _, b = _run(tmp_path, "b.jsonl")
    assert a.read_bytes() == b.read_bytes()
    header = json.loads(a.read_text().splitlines()[0])
    assert header["schema"] == P.SCHEMA and header["version"] == "1"
    for line in a.read_text().splitlines()[1:]:
        rec = json.loads(line)
        assert set(rec) == {"unit", "candidates", "hits"}
        assert isinstance(rec["candidates"], str)


def test_resume_after_truncation(tmp_path):
    full, path = _run(tmp_path, "a.jsonl")
    lines = path.read_text().splitlines()
    path.write_text("\n".join(lines[: len(lines) // 2]) + "\n")
    calls = []
    res = P.run_pipeline(**SLICE, checkpoint=str(path), progress=lambda i, n: calls.append(n))
    assert res.solutions == full.solutions
    assert res.stats == full.stats
    assert calls and calls[0] < len(lines) - 1


def test_corrupt_record_is_rejected(tmp_path):
    _, path = _run(tmp_path, "a.jsonl")
    with open(path, "a") as f:
        f.write("{not json\n")
    with pytest.raises(P.CheckpointError):
        P.run_pipeline(**SLICE, checkpoint=str(path))


def test_foreign_checkpoint_is_rejected(tmp_path):
    _, path = _run(tmp_path, "a.jsonl")
    with pytest.raises(P.CheckpointError):
        P.run_pipeline("x1", "small", c_range=(2, 2), z_range=(3, 3), checkpoint=str(path))


def test_worker_count_does_not_change_output(tmp_path):
    one, _ = _run(tmp_path, "a.jsonl", workers=1)
    two, _ = _run(tmp_path, "b.jsonl", workers=2)
    assert one.solutions == two.solutions
    assert one.stats == two.stats


def test_workers_env(monkeypatch):
    monkeypatch.setenv(P.WORKERS_ENV, "3")
    assert P.default_workers() == 3
    monkeypatch.setenv(P.WORKERS_ENV, "many")
    assert P.default_workers() == 1


def test_bad_branch():
    with pytest.raises(ValueError):
        P.build_units("x2", "small")


# x = y = 1 with Z < 2z


def test_lt2z_pieces():
    assert x2_excluded()
    assert kbig_excluded()
    assert set(y_large_triples()) == {(3, 2, 4), (6, 3, 4), (6, 3, 5)}
    assert all(triple_solutions(*t) == [] for t in y_large_triples())
    assert k1_solutions() == [(3, 2, 3, 5)]


def test_lt2z_result():
    rep = search_x1y1_Z_lt_2z()
    assert rep.hits == [Hit(5, 3, 2, 1, 1, 3, 1, 3, 5)]
