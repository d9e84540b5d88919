import json
import subprocess
import sys

import pytest

from lexscan.cli import main
from conftest import GOLDEN


def records(out):
    return [json.loads(line) for line in out.splitlines() if line]


def test_extract_money(capsys):
    assert main(["extract", "--kinds", "money", str(GOLDEN / "example2.txt")]) == 0
    recs = records(capsys.readouterr().out)
    assert len(recs) == 6 and {r["kind"] for r in recs} == {"money"}
    assert recs[0]["value"] == {"amount": "1250000", "currency": "USD"}


def test_unknown_kind_exits_2(capsys):
    assert main(["extract", "--kinds", "none-such", str(GOLDEN / "example1.txt")]) == 2
    assert "supported kinds" in capsys.readouterr().err


def test_empty_file(tmp_path, capsys):
    empty = tmp_path / "empty.txt"
    empty.write_text("")
    assert main(["extract", str(empty)]) == 0
    assert capsys.readouterr().out == ""


def test_unreadable_input_continues(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_bytes(b"\xff\xfe\x00")
    assert main(["extract", "--kinds", "date", str(bad), str(GOLDEN / "example1.txt")]) == 1
    assert [r["text"] for r in records(capsys.readouterr().out)] == ["October 12, 2012"]
    assert main(["segment", str(bad)]) == 1


def test_records_contiguous_and_ordered(capsys):
    main(["extract", str(GOLDEN)])
    recs = records(capsys.readouterr().out)
    ids = [r["doc_id"] for r in recs]
    assert ids == sorted(ids)
    for doc_id in set(ids):
        mine = [r for r in recs if r["doc_id"] == doc_id]
        for a, b in zip(mine, mine[1:]):
            if a["kind"] == b["kind"]:
                assert (a["start"], a["end"]) <= (b["start"], b["end"])


def test_segment(tmp_path, capsys):
    assert main(["segment", "--sentences", "--count", str(GOLDEN / "example3.txt")]) == 0
    assert capsys.readouterr().out == "3\n"
    ab = tmp_path / "ab.txt"
    ab.write_text("a\n\nb")
    main(["segment", "--paragraphs", str(ab)])
    assert len(records(capsys.readouterr().out)) == 2


def test_bad_config(capsys):
    assert main(["extract", "--jobs", "0", str(GOLDEN)]) == 2
    assert main(["extract", "--model", "nonsense", str(GOLDEN)]) == 2
    assert main(["extract", "--model", "parser=x.json", str(GOLDEN)]) == 2
    assert main(["extract", "--lexicon", "missing.csv", str(GOLDEN)]) == 2


def test_extra_lexicon_and_locales(tmp_path, capsys):
    lex = tmp_path / "extra.csv"
    lex.write_text("entity_kind,canonical,aliases,locale,attributes\ngeoentity,Atlantis,,en,\n")
    doc = tmp_path / "d.txt"
    doc.write_text("Atlantis and Island")
    main(["extract", "--kinds", "geoentity", "--lexicon", str(lex), str(doc)])
    assert [r["text"] for r in records(capsys.readouterr().out)] == ["Atlantis"]
    main(["extract", "--kinds", "geoentity", "--locales", "en,de", str(doc)])
    assert [r["value"]["canonical"] for r in records(capsys.readouterr().out)] == ["Iceland"]


def test_redact(tmp_path, capsys):
    doc = tmp_path / "p.txt"
    doc.write_text("SSN 123-45-6789, phone (312) 555-0142.")
    out_dir = tmp_path / "red"
    assert main(["extract", "--kinds", "pii", "--redact", str(out_dir), str(doc)]) == 0
    masked = (out_dir / "p.txt.redacted").read_text()
    assert masked == "SSN XXXXXXXXXXX, phone XXXXXXXXXXXXXX."
    assert len(masked) == len(doc.read_text())


def test_allow_partial_dates(tmp_path, capsys):
    doc = tmp_path / "d.txt"
    doc.write_text("Payment is due on March 3 each year.")
    main(["extract", "--kinds", "date", str(doc)])
    assert records(capsys.readouterr().out) == []
    main(["extract", "--kinds", "date", "--allow-partial-dates", "--model", f"date={tmp_path / 'm.json'}", str(doc)])
    # the model file does not exist: configuration error
    assert "m.json" in capsys.readouterr().err


def test_train_date_filter(tmp_path, capsys):
    from lexscan.lexicons import data_dir

    out = tmp_path / "model.json"
    assert main(["train", "date_filter", str(data_dir() / "date_filter_labels.csv"), "--out", str(out),
                 "--epochs", "50"]) == 0
    model = json.loads(out.read_text())
    assert all(isinstance(w, float) for w in model["weights"])
    assert "final loss" in capsys.readouterr().out
    single = tmp_path / "single.csv"
    single.write_text("text,context,window_start,window_end,label\n2018-01-01,2018-01-01,0,10,1\n")
    assert main(["train", "date_filter", str(single), "--out", str(out)]) == 2
    malformed = tmp_path / "malformed.csv"
    malformed.write_text("text,context,window_start,window_end,label\n2018-01-01,2018-01-01,0\n")
    assert main(["train", "date_filter", str(malformed), "--out", str(out)]) == 2
    assert "line 2" in capsys.readouterr().err


def test_train_sentence_abbrevs(tmp_path, capsys):
    out = tmp_path / "sent.json"
    assert main(["train", "sentence_abbrevs", str(GOLDEN), "--out", str(out)]) == 0
    assert "u.s.c" in json.loads(out.read_text())["abbreviations"]
    assert main(["segment", "--count", "--model", f"sentence={out}", str(GOLDEN / "example3.txt")]) == 0


def test_collocations(tmp_path, capsys):
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["collocations", "--n", "2", "--top", "100", str(GOLDEN), "--out", str(out1)]) == 0
    main(["collocations", "--n", "2", "--top", "100", str(GOLDEN), "--out", str(out2)])
    lines = out1.read_text().splitlines()
    assert lines[0] == "rank,gram,count,score" and len(lines) - 1 <= 100
    assert out1.read_bytes() == out2.read_bytes()
    assert main(["collocations", "--n", "4", str(GOLDEN)]) == 2
    assert main(["collocations"]) == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lexscan", "segment", "--count", str(GOLDEN / "example3.txt")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "3\n"


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["train", "bogus", "x", "--out", "y"])
    assert exc.value.code == 2
