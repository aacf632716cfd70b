import json
import subprocess
import sys

import pytest

from ontosem import load_reference
from ontosem.cli import Repl, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_ok(capsys):
    code, out, _ = run(capsys, "analyze", "sheba is hungry")
    assert code == 0
    assert out.strip() == '(E! s:animal)(Noo(s,"sheba") & Hungry(s))'


def test_analyze_anomaly(capsys):
    code, out, _ = run(capsys, "analyze", "an artificial car")
    assert code == 1
    assert "⊥" in out and "(naturalObj • car)" in out


def test_missing_lexicon(capsys, tmp_path):
    code, _, err = run(capsys, "analyze", "--lexicon", str(tmp_path / "no.lex"), "sheba is hungry")
    assert code == 2 and "error" in err


def test_bad_lexicon_reports_position(capsys, tmp_path):
    bad = tmp_path / "bad.lex"
    bad.write_text("name sheba\nadj hungry Hungry nothing\n")
    code, _, err = run(capsys, "analyze", "--lexicon", str(bad), "sheba is hungry")
    assert code == 2
    assert f"{bad}:2:" in err


def test_unanalyzable_sentence(capsys):
    code, _, err = run(capsys, "analyze", "sheba is")
    assert code == 2 and "matched prefix" in err


def test_jsonl(capsys):
    code, out, _ = run(capsys, "analyze", "--format", "jsonl", "--mode", "reified",
                       "john planned the trip. it was exhausting", "sheba is hungry")
    assert code == 0
    records = [json.loads(line) for line in out.splitlines()]
    assert [list(r) for r in records] == [["input", "readings", "anomalous", "trace"]] * 2
    assert len(records[0]["readings"]) == 2
    assert records[1]["anomalous"] is False


def test_trace_and_file(capsys, tmp_path):
    f = tmp_path / "in.txt"
    f.write_text("# comment\njohn painted a large elephant\n\n")
    code, out, _ = run(capsys, "analyze", "--trace", "--file", str(f))
    assert code == 0
    assert "[bridge: PaintingOf(p,e), p:painting]" in out


@pytest.fixture
def repl():
    o, lex = load_reference()
    return Repl(o, lex)


def test_repl_assume(repl):
    assert "(E!a t:trip)" in repl.handle("john planned the trip")
    assert "(E! t:trip)" in repl.handle(":assume t event")


def test_repl_mode_and_commands(repl):
    assert repl.handle("") == ""
    assert repl.handle(":mode reified") == "mode reified"
    assert "Planning(a) & Subject(a,j)" in repl.handle("john planned the trip")
    assert repl.handle(":trace on") == "trace on"
    assert "=>" in repl.handle("sheba is hungry")
    assert repl.handle(":bogus").startswith("error")
    assert repl.handle("zzz").startswith("error")
    assert repl.handle(":assume q event").startswith("error")
    repl.handle(":quit")
    assert repl.done


def test_repl_assume_before_analysis(repl):
    assert repl.handle(":assume t event").startswith("error")


def test_golden_shipped(capsys):
    code, out, _ = run(capsys, "golden")
    assert code == 0
    assert "FAIL" not in out


def test_golden_empty(capsys, tmp_path):
    f = tmp_path / "g.tsv"
    f.write_text("")
    code, out, _ = run(capsys, "golden", str(f))
    assert code == 0 and out.strip() == "0 cases"


def test_golden_wrong_type(capsys, tmp_path):
    f = tmp_path / "g.tsv"
    f.write_text('sheba is hungry\t(E! x:human)(Noo(x,"sheba") & Hungry(x))\n')
    code, out, _ = run(capsys, "golden", str(f))
    assert code == 1
    assert "FAIL" in out and "quantifier 1: expected" in out and "0/1 passed" in out


def test_golden_malformed_line(capsys, tmp_path):
    f = tmp_path / "g.tsv"
    f.write_text("# ok\nsheba is hungry\n")
    code, _, err = run(capsys, "golden", str(f))
    assert code == 2 and ":2:" in err


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "ontosem", "analyze", "running is fun"],
                       capture_output=True, text=True)
    assert p.returncode == 0
    assert 'Noo(r,"running")' in p.stdout
