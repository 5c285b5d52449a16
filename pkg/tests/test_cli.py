import json

import pytest

from expdioph.cli import EXIT_FAIL, EXIT_IO, EXIT_OK, EXIT_USAGE, encode, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    recs = [json.loads(l) for l in out.splitlines() if l]
    return code, recs


def _all_scalars_are_strings(v):
    if isinstance(v, dict):
        return all(_all_scalars_are_strings(x) for x in v.values())
    if isinstance(v, list):
        return all(_all_scalars_are_strings(x) for x in v)
    return v is None or isinstance(v, (str, bool))


def test_encode_stringifies_numbers():
    assert encode({"a": 1, "b": [2.5, True, None]}) == {"a": "1", "b": ["2.5", True, None]}


def test_verify_exceptional(capsys):
    code, recs = run(capsys, "verify-exceptional")
    assert code == EXIT_OK
    assert recs[-1] == {"record": "summary", "check": "exceptional", "passed": True}
    assert all(_all_scalars_are_strings(r) for r in recs)


def test_orders_fail_exit(capsys):
    code, recs = run(capsys, "orders")
    assert code == EXIT_FAIL
    assert any(r["record"] == "failure" for r in recs)


def test_oracle_count(capsys):
    code, recs = run(capsys, "oracle", "count", "3", "5", "2", "--zmax", "10")
    assert code == EXIT_OK
    assert recs[-1]["count"] == "3"


def test_lt2z(capsys):
    code, recs = run(capsys, "x1y1-lt2z")
    assert code == EXIT_OK
    sols = [r for r in recs if r["record"] == "solution"]
    assert len(sols) == 1 and sols[0]["a"] == "5"


def test_fermat_zsmall_and_jacobi(capsys):
    assert run(capsys, "fermat", "--c", "17", "zsmall")[0] == EXIT_OK
    code, recs = run(capsys, "fermat", "--c", "257", "jacobi")
    assert code == EXIT_OK
    assert [r["Z"] for r in recs] == ["4", "5", "6"]


def test_sieve_slice_and_resume_errors(capsys, tmp_path):
    ck = tmp_path / "ck.jsonl"
    args = ["sieve", "--branch", "x-eq-1", "--variant", "small-c", "--c-min", "2", "--c-max", "2",
            "--z-min", "3", "--z-max", "4",
            "--checkpoint", str(ck)]
    code, recs = run(capsys, *args)
    assert code == EXIT_OK
    assert recs[-1]["passed"] is True
    assert len([r for r in recs if r["record"] == "solution"]) == 3
    ck.write_text(ck.read_text() + "garbage\n")
    assert run(capsys, *args)[0] == EXIT_IO
    bad = tmp_path / "missing" / "ck.jsonl"
    assert run(capsys, *args[:-1], str(bad))[0] == EXIT_IO


@pytest.mark.parametrize("argv", [
    [],
    ["sieve", "--branch", "big-x"],
    ["fermat", "--c", "7", "zsmall"],
    ["oracle", "count", "1", "5", "2"],
    ["sieve", "--branch", "big-x", "--variant", "small-c", "--workers", "0"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_USAGE
