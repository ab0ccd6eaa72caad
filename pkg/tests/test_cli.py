import io
import json

import pytest

from permlimits.cache import ENGINE_VERSION, CountCache
from permlimits.cli import main


def run(*argv, cache=None):
    out = io.StringIO()
    args = list(argv)
    args = (["--cache", str(cache)] if cache else ["--no-cache"]) + ["--workers", "1"] + args
    code = main(args, out=out)
    return code, out.getvalue()


@pytest.fixture
def cache_file(tmp_path):
    return tmp_path / "counts.jsonl"


# -- cache -----------------------------------------------------------------

def test_cache_roundtrip(cache_file):
    c = CountCache(cache_file)
    c.put("1,2,3", 4, 14)
    c.put("1,2,3", 4, 14)
    c.put("1,3,4,2", 20, 10 ** 30)
    lines = cache_file.read_text().splitlines()
    assert len(lines) == 2
    rec = json.loads(lines[1])
    assert rec == {"pattern": "1,3,4,2", "n": 20, "count": str(10 ** 30),
                   "engine_version": ENGINE_VERSION}
    again = CountCache(cache_file)
    assert again.get("1,3,4,2", 20) == 10 ** 30


def test_corrupt_lines_are_skipped(cache_file, caplog):
    cache_file.write_text('{"pattern": "1,2", "n": 3, "count": "1", "engine_version": "1"}\n'
                          "not json\n"
                          '{"pattern": "1,2", "n": 4, "count": "x1", "engine_version": "1"}\n'
                          '{"pattern": "2,1", "n": 3}\n')
    c = CountCache(cache_file)
    assert c.get("1,2", 3) == 1
    assert c.get("1,2", 4) is None
    assert c.skipped == 3


def test_cache_coherence(cache_file):
    code, cold = run("count", "--pattern", "1342", "--n", "7", cache=cache_file)
    assert code == 0 and cold.strip() == "2740"
    assert CountCache(cache_file).get("1,3,4,2", 7) == 2740
    _, warm = run("count", "--pattern", "1342", "--n", "7", cache=cache_file)
    _, none = run("count", "--pattern", "1342", "--n", "7")
    assert cold == warm == none


# -- count -----------------------------------------------------------------

def test_count_examples():
    assert run("count", "--pattern", "123", "--n", "4") == (0, "14\n")
    assert run("count", "--pattern", "21", "--n", "5") == (0, "1\n")
    assert run("count", "--pattern", "1342", "--n", "6") == (0, "512\n")


def test_count_formats():
    _, out = run("--format", "csv", "count", "--pattern", "123", "--n", "4")
    assert out == 'pattern,n,count\n"1,2,3",4,14\n'
    _, out = run("--format", "json", "count", "--pattern", "123", "--n", "4")
    assert json.loads(out) == {"pattern": "1,2,3", "n": 4, "count": "14"}
    _, out = run("--format", "csv", "count", "--pattern", "123", "--n", "4", "--by-lr-minima")
    assert out.splitlines() == ["pattern,n,m,count", '"1,2,3",4,1,1', '"1,2,3",4,2,6',
                                '"1,2,3",4,3,6', '"1,2,3",4,4,1']


def test_global_flags_after_subcommand():
    code, out = run("count", "--pattern", "123", "--n", "4", "--format", "json")
    assert code == 0 and json.loads(out)["count"] == "14"


def test_counts_are_plain_decimal_strings(cache_file):
    _, out = run("--format", "csv", "count", "--pattern", "1342", "--n", "9", cache=cache_file)
    assert out.splitlines()[1] == '"1,3,4,2",9,91245'
    CountCache(cache_file).put("1,2,3", 40, 10 ** 25)
    rec = json.loads(cache_file.read_text().splitlines()[-1])
    assert rec["count"] == "1" + "0" * 25


def test_output_is_deterministic_across_workers():
    outs = set()
    for w in ("1", "2"):
        code, out = run("--format", "json", "--workers", w, "count", "--pattern", "1342", "--n", "9")
        assert code == 0
        outs.add(out)
    assert len(outs) == 1


# -- errors ----------------------------------------------------------------

def test_exit_codes(capsys):
    assert run("count", "--pattern", "1,1", "--n", "3")[0] == 2
    assert "duplicate" in capsys.readouterr().err
    assert run("count", "--pattern", "123", "--n", "13")[0] == 3
    assert run("--ceiling", "5", "count", "--pattern", "123", "--n", "6")[0] == 3
    assert run("--force", "count", "--pattern", "21", "--n", "13") == (0, "1\n")
    assert run("verify", "nope")[0] == 2
    assert run("construct", "qk", "--k", "3")[0] == 2
    assert run("construct", "qprime")[0] == 2
    assert run("--workers", "0", "count", "--pattern", "1", "--n", "1")[0] == 2


# -- other commands --------------------------------------------------------

def test_avoiders():
    assert run("avoiders", "--pattern", "123", "--n", "3") == (0, "1,3,2\n2,1,3\n2,3,1\n3,1,2\n3,2,1\n")
    assert run("avoiders", "--pattern", "12", "--n", "9")[0] == 3


def test_classify():
    code, out = run("--format", "json", "classify", "--pattern", "3412")
    rec = json.loads(out)
    assert code == 0 and rec["indecomposable"] is False and rec["cuts"] == [2]
    _, out = run("--format", "json", "classify", "--pattern", "3217654")
    assert json.loads(out)["layers"] == [3, 4]


def test_wilf():
    _, out = run("--format", "json", "wilf", "--pattern", "1234", "--other", "1342", "--max-n", "7")
    rec = json.loads(out)
    assert rec["agree"] is False and rec["first_difference"] == 6 and rec["counts"] == ["513", "512"]
    _, out = run("--format", "json", "wilf", "--pattern", "123", "--other", "321", "--max-n", "8")
    assert json.loads(out)["agree"] is True


@pytest.mark.parametrize("argv, expected", [
    (("construct", "qk", "--k", "5"), "1,2,4,5,3"),
    (("construct", "layered", "--layers", "3,4"), "3,2,1,7,6,5,4"),
    (("construct", "qprime", "--pattern", "1342"), "1,2,4,5,3"),
    (("construct", "sandwich", "--pattern", "21"), "1,3,2,4"),
    (("construct", "block", "--blocks", "21", "12"), "4,3,1,2"),
    (("construct", "witness", "--p-prime", "3142", "--N", "2", "--blocks", "12", "21"), "3,1,5,6,4,2"),
    (("construct", "witness", "--p-prime", "21", "--N", "1"), "2,1,3"),
])
def test_construct(argv, expected):
    assert run(*argv) == (0, expected + "\n")


def test_limit():
    code, out = run("--format", "json", "limit", "--pattern", "12453", "--max-n", "8")
    rec = json.loads(out)
    assert code == 0
    assert rec["closed_form"] == "9+4*sqrt(2)"
    assert rec["closed_form_decimal"] == "14.6568542495"
    assert float(rec["finite_lower"]) < 14.66 and rec["finite_lower_n"] == 8
    assert rec["upper_chain"] == "9+4*sqrt(2)" and len(rec["upper_chain_trace"]) == 2
    _, out = run("--format", "json", "limit", "--pattern", "123")
    assert json.loads(out)["closed_form"] == "4"
    _, out = run("--format", "json", "limit", "--pattern", "1324", "--max-n", "7")
    rec = json.loads(out)
    assert rec["closed_form"] == "unknown" and rec["upper_chain"] == ""


@pytest.mark.parametrize("suite, max_n", [("bwx", 7), ("layered", 7), ("narayana", 6),
                                          ("recprop", 6), ("witness", 7), ("supermult", 7)])
def test_verify(suite, max_n):
    code, out = run("--format", "json", "verify", suite, "--max-n", str(max_n))
    rec = json.loads(out)
    assert code == 0 and rec["passed"] and rec["checks"] > 0 and rec["failures"] == []


def test_verify_table_output():
    code, out = run("verify", "narayana", "--max-n", "4")
    assert code == 0 and out.startswith("narayana: pass")
    assert "note: n=4: enumerated [1, 6, 6, 1] vs formula at m=1..n [6, 6, 1, 0]" in out
