import csv
import io
import json

import pytest

from omegasynth.automata import NBA, degeneralize
from omegasynth.bench import CSV_COLUMNS, BenchRecord, format_summary, run_bench, summarize
from omegasynth.cli import main
from omegasynth.formats import emit_hoa, emit_json, load
from omegasynth.oracle import random_nba

GOLDEN = "(a+ba*b)((c)*da*b)^w+(b+ac*d)((a)*bc*d)^w"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def b1_path(fixtures):
    return fixtures / "b1.hoa"


def test_synth_golden(capsys, b1_path):
    code, out, _ = run(capsys, "synth", b1_path, "--method", "transition")
    assert code == 0
    assert out.splitlines()[0] == GOLDEN


def test_synth_json_input(capsys, fixtures):
    code, out, _ = run(capsys, "synth", fixtures / "b1.json")
    assert code == 0 and out.splitlines()[0] == GOLDEN


def test_synth_simplify_never_grows(capsys, b1_path):
    code, out, _ = run(capsys, "synth", b1_path, "--simplify", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["simplified"] is True
    assert doc["rpn"] <= doc["unsimplified"]["rpn"]


def test_synth_json_fields(capsys, b1_path):
    code, out, _ = run(capsys, "synth", b1_path, "--format", "json")
    doc = json.loads(out)
    assert doc["expression"] == GOLDEN
    assert (doc["rpn"], doc["tllen"], doc["h"]) == (39, 7, 1)
    assert (doc["states"], doc["acc_sources"], doc["pairs"], doc["status"]) == (3, 2, 2, "ok")


def test_synth_empty(capsys, fixtures):
    code, out, _ = run(capsys, "synth", fixtures / "empty.hoa")
    assert code == 0
    assert "%0^w-equivalent: empty language" in out


def test_synth_state_and_auto(capsys, b1_path, tmp_path):
    code, out, _ = run(capsys, "synth", b1_path, "--method", "state")
    assert code == 0 and "method=state" in out
    code, out, _ = run(capsys, "synth", b1_path, "--method", "auto", "--format", "json")
    assert code == 0 and "selection" in json.loads(out)


def test_synth_method_mismatch(capsys, b1_path, tmp_path):
    sb = tmp_path / "b1.sba.hoa"
    sb.write_text(emit_hoa(degeneralize(load(b1_path))))
    code, _, err = run(capsys, "synth", sb, "--method", "transition")
    assert code == 3 and "transition-based" in err


def test_synth_parse_error(capsys, tmp_path):
    bad = tmp_path / "bad.hoa"
    bad.write_text("HOA: v1\nStates: 1\n--BODY--\n")
    code, _, err = run(capsys, "synth", bad)
    assert code == 3 and err.startswith("error:")


def test_usage_errors(capsys, b1_path):
    assert run(capsys)[0] == 2
    assert run(capsys, "synth", b1_path, "--method", "magic")[0] == 2
    assert run(capsys, "verify", b1_path, "--bounds", "4")[0] == 2
    assert run(capsys, "verify", b1_path, "--bounds", "1,0")[0] == 2


def _slow_automaton(tmp_path):
    nba = random_nba(0, num_states=40, alphabet_size=3, edge_density=0.3, acc_prob=0.3)
    path = tmp_path / "big.hoa"
    path.write_text(emit_hoa(nba))
    return path


def test_synth_timeout(capsys, tmp_path):
    code, _, err = run(capsys, "synth", _slow_automaton(tmp_path), "--timeout", "0.05")
    assert code == 4 and "synthesis" in err


def test_timeout_env_var(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("OMEGA_SYNTH_TIMEOUT_SECS", "0.05")
    code, _, _ = run(capsys, "synth", _slow_automaton(tmp_path))
    assert code == 4


def test_timeout_env_var_invalid(monkeypatch):
    from omegasynth.timeouts import default_timeout

    monkeypatch.setenv("OMEGA_SYNTH_TIMEOUT_SECS", "soon")
    with pytest.raises(ValueError):
        default_timeout()


@pytest.mark.parametrize("bounds", ["4,4", "0,1"])
def test_verify_equal(capsys, b1_path, bounds):
    code, out, _ = run(capsys, "verify", b1_path, "--bounds", bounds)
    assert code == 0 and out.startswith("equal")


def test_verify_mutant_against_golden(capsys, b1_path, tmp_path):
    b1 = load(b1_path)
    c_loop = b1.alphabet.index("c")
    mutant = NBA(
        b1.num_states,
        b1.alphabet,
        [t._replace(accepting=True) if (t.src, t.sym, t.dst) == (1, c_loop, 1) else t for t in b1.transitions],
        b1.initial,
    )
    path = tmp_path / "mutant.hoa"
    path.write_text(emit_hoa(mutant))
    code, out, _ = run(capsys, "verify", path, "--expr", GOLDEN, "--bounds", "1,1")
    assert code == 1
    assert out.strip() == 'counterexample: u="a" v="c"'


def test_verify_flipped_edge_is_still_equal(capsys, b1_path, tmp_path):
    # every accepting cycle of B1 also crosses 2->1, so this flip keeps the language
    b1 = load(b1_path)
    d = b1.alphabet.index("d")
    flipped = NBA(
        b1.num_states,
        b1.alphabet,
        [t._replace(accepting=False) if (t.src, t.sym, t.dst) == (1, d, 2) else t for t in b1.transitions],
        b1.initial,
    )
    path = tmp_path / "flipped.hoa"
    path.write_text(emit_hoa(flipped))
    assert run(capsys, "verify", path, "--expr", GOLDEN)[0] == 0
    assert run(capsys, "verify", path)[0] == 0


def test_verify_bad_expression(capsys, b1_path):
    assert run(capsys, "verify", b1_path, "--expr", "(")[0] == 3
    assert run(capsys, "verify", b1_path, "--expr", "(z)^w")[0] == 3


def test_triplet_all(capsys, b1_path):
    code, out, _ = run(capsys, "triplet", b1_path, 0, 1, "all", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["num_states"] == 4 and doc["accepting"] == [3] and doc["copy_state"] == 3


def test_triplet_rej(capsys, b1_path):
    code, out, _ = run(capsys, "triplet", b1_path, 1, 1, "rej", "--format", "json")
    doc = json.loads(out)
    from_one = [t for t in doc["transitions"] if t["src"] == 1]
    assert code == 0
    assert from_one == [{"src": 1, "sym": 2, "dst": 3}]


def test_triplet_hoa(capsys, b1_path):
    code, out, _ = run(capsys, "triplet", b1_path, 1, 1, "acc")
    assert code == 0 and out.startswith("HOA: v1") and "State: 3 {0}" in out


def test_triplet_invalid_state(capsys, b1_path):
    code, _, err = run(capsys, "triplet", b1_path, 9, 0, "all")
    assert code == 3 and "invalid state" in err


def test_convert(capsys, b1_path):
    code, out, _ = run(capsys, "convert", b1_path, "--to", "json")
    assert code == 0 and json.loads(out)["num_states"] == 3
    code, out, _ = run(capsys, "convert", b1_path, "--degeneralize")
    assert code == 0 and "state-acc" in out


# ------------------------------------------------------------------ bench

def _corpus(tmp_path, n=20):
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    for k in range(n):
        nba = random_nba(("corpus", k), num_states=4, alphabet_size=2, edge_density=0.35, acc_prob=0.3)
        (corpus / f"r{k:02d}.hoa").write_text(emit_hoa(nba))
    return corpus


def _rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_bench_row_arithmetic(capsys, tmp_path):
    corpus = _corpus(tmp_path)
    out_csv = tmp_path / "bench.csv"
    code, out, _ = run(capsys, "bench", corpus, "--methods", "transition,state", "--simplify", "both", "--out", out_csv)
    rows = _rows(out_csv.read_text())
    assert code == 0
    assert len(rows) == 20 * 2 * 2
    assert list(rows[0]) == CSV_COLUMNS
    assert {r["status"] for r in rows} == {"ok"}
    assert "↓" in out and "=" in out and "↑" in out


def test_bench_malformed_file(capsys, tmp_path):
    corpus = _corpus(tmp_path, n=3)
    (corpus / "broken.hoa").write_text("HOA: v1\nthis is not hoa\n")
    code, out, err = run(capsys, "bench", corpus)
    rows = _rows(out)
    assert code == 0
    broken = [r for r in rows if r["file"] == "broken.hoa"]
    assert len(broken) == 4 and {r["status"] for r in broken} == {"error"}
    assert sum(r["status"] == "ok" for r in rows) == 12
    assert "simplified=no" in err


def test_bench_timeout_rows(tmp_path):
    corpus = tmp_path / "slow"
    corpus.mkdir()
    (corpus / "big.hoa").write_text(_slow_automaton(tmp_path).read_text())
    rows = run_bench(corpus, ["transition"], [False], timeout=0.05)
    assert [r.status for r in rows] == ["timeout"]


def test_bench_b1_direction(fixtures, tmp_path):
    corpus = tmp_path / "one"
    corpus.mkdir()
    (corpus / "b1.hoa").write_text((fixtures / "b1.hoa").read_text())
    rows = {(r.method, r.simplified): r for r in run_bench(corpus)}
    assert rows["transition", False].rpn <= rows["state", False].rpn
    assert rows["state", False].source == "degeneralized"


def test_bench_uses_paired_files(fixtures, tmp_path):
    corpus = tmp_path / "paired"
    corpus.mkdir()
    b1 = load(fixtures / "b1.hoa")
    (corpus / "x.tba.hoa").write_text(emit_hoa(b1))
    (corpus / "x.sba.hoa").write_text(emit_hoa(degeneralize(b1)))
    (corpus / "y.json").write_text(emit_json(b1))
    records = run_bench(corpus, simplify_modes=[False])
    assert sorted({r.file for r in records}) == ["x.tba.hoa", "y.json"]
    state = {r.file: r.source for r in records if r.method == "state"}
    assert state == {"x.tba.hoa": "paired", "y.json": "degeneralized"}
    assert summarize(records)["no"]["sources"] == {"degeneralized": 1, "paired": 1}


def test_bench_unknown_method(capsys, tmp_path):
    assert run(capsys, "bench", _corpus(tmp_path, 1), "--methods", "magic")[0] == 2


def test_bench_missing_corpus(capsys, tmp_path):
    assert run(capsys, "bench", tmp_path / "nowhere")[0] == 3


def test_bench_parallel_matches_serial(tmp_path):
    corpus = _corpus(tmp_path, n=4)
    key = lambda r: (r.file, r.method, r.simplified, r.rpn, r.tllen, r.h)
    assert [key(r) for r in run_bench(corpus, jobs=2)] == [key(r) for r in run_bench(corpus)]


def test_summary_counts():
    recs = [
        BenchRecord("f1", "state", False, rpn=10, tllen=4, h=1),
        BenchRecord("f1", "transition", False, rpn=5, tllen=4, h=2),
        BenchRecord("f2", "state", False, rpn=8, tllen=2, h=1),
        BenchRecord("f2", "transition", False, rpn=8, tllen=3, h=1),
        BenchRecord("f3", "state", False, status="timeout"),
        BenchRecord("f3", "transition", False, rpn=1, tllen=1, h=0),
    ]
    s = summarize(recs)["no"]
    assert s["files"] == 2
    assert (s["rpn"]["down"], s["rpn"]["equal"], s["rpn"]["up"]) == (1, 1, 0)
    assert s["rpn"]["mean_decrease_pct"] == pytest.approx(25.0)
    assert (s["tllen"]["down"], s["tllen"]["equal"], s["tllen"]["up"]) == (0, 1, 1)
    text = format_summary({"no": s})
    assert text.splitlines()[1].split()[:5] == ["metric", "mean", "%dec", "↓", "="]


def test_bench_record_requires_metrics():
    with pytest.raises(ValueError):
        BenchRecord("f", "state", False, rpn=1)
