import hashlib
import random
import re
import subprocess
import sys

import pytest

from sofic import formats
from sofic.cli import main
from sofic.games import magic_square
from sofic.instances import corrupt
from sofic.strategies import magic_square_strategy


@pytest.fixture
def gallery(tmp_path):
    assert main(["gallery", "--out", str(tmp_path)]) == 0
    return tmp_path


def test_gallery_files(gallery):
    names = {p.name for p in gallery.iterdir()}
    assert {"verification_commutator.sgt", "separation_square.sgt", "cnf_contradiction.sgt", "magic_square.tng"} <= names


def test_sandwich_report(gallery, tmp_path, capsys):
    report = tmp_path / "cnf.tsv"
    code = main(["sandwich", "--test", str(gallery / "cnf_contradiction.sgt"), "--report", str(report)])
    assert code == 0
    out = capsys.readouterr().out
    assert "alpha 1/2  beta 1/2  closed true" in out
    text = report.read_text()
    digest = hashlib.sha256((gallery / "cnf_contradiction.sgt").read_bytes()).hexdigest()
    assert f"sha256={digest}" in text and "# config:" in text
    assert text.splitlines()[-1].startswith("1\t1/2\t1/2\t")
    # byte-identical reruns
    again = tmp_path / "again.tsv"
    main(["sandwich", "--test", str(gallery / "cnf_contradiction.sgt"), "--report", str(again)])
    strip = lambda t: [ln for ln in t.splitlines() if not ln.startswith("# command")]
    assert strip(again.read_text().replace("again.stage", "cnf.stage")) == strip(text)


def test_no_floats_in_reports(gallery, tmp_path, capsys):
    main(["sandwich", "--test", str(gallery / "separation_square.sgt"), "--report", str(tmp_path / "s.tsv")])
    act = tmp_path / "bad.act"
    g = magic_square()
    act.write_text(formats.write_action(corrupt(magic_square_strategy(g), random.Random(1), 0.1)))
    main(["transfer", "--game", str(gallery / "magic_square.tng"), "--action", str(act), "--report", str(tmp_path / "t.tsv")])
    for f in ("s.tsv", "t.tsv"):
        body = [ln for ln in (tmp_path / f).read_text().splitlines() if not ln.startswith("#")]
        assert not any(re.search(r"\d\.\d", ln) for ln in body)
    assert "soundness holds" in capsys.readouterr().out


def test_eval_commands(gallery, tmp_path, capsys):
    assert main(["eval-strategy", "--game", str(gallery / "magic_square.tng"),
                 "--strategy", str(gallery / "magic_square.pst"), "--sample", "200", "--seed", "3"]) == 0
    out = capsys.readouterr().out
    assert "value 1/1" in out and "empirical 200/200" in out
    compiled = tmp_path / "ms.sgt"
    assert main(["compile-game", "--game", str(gallery / "magic_square.tng"), "--out", str(compiled)]) == 0
    assert main(["eval-test", "--test", str(compiled), "--action", str(gallery / "magic_square.pst")]) == 0
    assert capsys.readouterr().out.strip() == "1/1"
    assert main(["significance", "--test", str(compiled)]) == 0
    assert "J\t67/6" in capsys.readouterr().out


def test_check_pseudo(tmp_path, capsys):
    (tmp_path / "A").write_text("a\na a\n")
    (tmp_path / "B").write_text("a\na a\na a a\n")
    code = main(["check-pseudo", "--alphabet", "a", "--set-a", str(tmp_path / "A"), "--set-b", str(tmp_path / "B")])
    captured = capsys.readouterr()
    assert code == 1 and captured.out.strip() == "false" and "a a a" in captured.err
    (tmp_path / "A").write_text("a a\n")
    (tmp_path / "B").write_text("a\na a\n")
    assert main(["check-pseudo", "--alphabet", "a", "--set-a", str(tmp_path / "A"), "--set-b", str(tmp_path / "B")]) == 0


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.sgt"
    bad.write_text("alphabet a\nchallenge 1/1 { window: q accept: }\n")
    act = tmp_path / "a.act"
    act.write_text("degree 1\na: 0\n")
    assert main(["eval-test", "--test", str(bad), "--action", str(act)]) == 2
    assert "line 2" in capsys.readouterr().err


def test_resource_cap_exit_code(gallery, tmp_path):
    # the commutator window is too small to close within a tiny window budget
    code = main(["sandwich", "--test", str(gallery / "separation_conjugate.sgt"), "--max-window", "5",
                 "--budget", "5", "--report", str(tmp_path / "r.tsv")])
    assert code == 3


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "sofic", "gallery", "--out", str(tmp_path)], capture_output=True, text=True)
    assert proc.returncode == 0 and "magic_square.tng" in proc.stdout
