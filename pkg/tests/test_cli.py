import io
import subprocess
import sys


from statekit.cli import main
from statekit.lexicon import load_seed, serialize_bundle


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_generate():
    assert run("generate", "--bundle", "rif.bundle", "--lexeme", "qzin", "--context", "GEN") == (0, "uqzin\n", "")


def test_generate_from_file(tmp_path):
    path = tmp_path / "rif.bundle"
    path.write_text(serialize_bundle(load_seed("rif")), encoding="utf-8")
    code, out, _ = run("generate", "--bundle", str(path), "--lexeme", "qzin", "--pushed", "+PL,+F", "--context", "GEN")
    assert (code, out) == (0, "θeqzinin\n")


def test_generate_trace():
    code, out, _ = run("generate", "--bundle", "rif", "--lexeme", "qzin", "--context", "GEN", "--trace")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("unmarked:") and lines[-1] == "surface: uqzin"
    assert any("we-to-u" in l for l in lines)


def test_generate_missing_lexeme():
    code, out, err = run("generate", "--bundle", "rif", "--lexeme", "missing", "--context", "GEN")
    assert code == 1 and out == "" and "not found" in err


def test_usage_errors_exit_2(capsys):
    assert run("generate", "--bundle", "rif")[0] == 2
    assert "usage: statekit generate" in capsys.readouterr().err
    assert run()[0] == 2
    assert run("frobnicate")[0] == 2


def test_check_all():
    code, out, _ = run("check", "--bundle", "all", "--corpus", "gold.tsv")
    assert code == 0
    assert "0 hard failures" in out


def test_check_tsv_single_bundle():
    code, out, _ = run("check", "--bundle", "fr", "--format", "tsv")
    assert code == 0
    rows = out.splitlines()[1:]
    assert rows and all(r.split("\t")[1] == "fr" for r in rows)


def test_check_failure_exit_1(tmp_path):
    corpus = tmp_path / "bad.tsv"
    corpus.write_text("lang\tlexeme\tpushed\tcontext\texpected\tnote\tsource\nrif\tqzin\t\tOBJ\tx\t\tt\n")
    assert run("check", "--corpus", str(corpus))[0] == 1


def test_state():
    code, out, _ = run("state", "--bundle", "rif", "--context", "GEN", "--cogset", "countable")
    assert code == 0 and "AS (annexation)" in out and "+COL" in out.split("->")[1]
    code, out, _ = run("state", "--bundle", "rif", "--context", "OBJ", "--cogset", "countable",
                       "--template", "+SING,-COL")
    assert code == 0 and "\tFS\t" in out


def test_select(tmp_path):
    cands = tmp_path / "c.tsv"
    cands.write_text("layer1-sign\ta\ttree\nlayer2-lexical\tx\tman,old\n")
    code, out, _ = run("select", "--query", "man", "--candidates", str(cands))
    assert (code, out) == (0, "x\tcost=1\tlayer=layer2-lexical\texact=true\n")
    code, out, _ = run("select", "--query", "man", "--candidates", str(cands), "--mode", "heuristic", "--seed", "4")
    assert code == 0 and out.startswith("x\tcost=1")
    assert run("select", "--query", "man", "--candidates", str(cands), "--mode", "heuristic")[0] == 2
    assert run("select", "--query", "zzz", "--candidates", str(cands))[0] == 1


def test_inspect():
    code, out, _ = run("inspect", "--bundle", "rif", "--lexeme", "rgaz")
    assert code == 0 and "countability: unmarked SING, marked COL" in out
    code, out, _ = run("inspect", "--bundle", "rif")
    assert code == 0 and "markers\t13" in out
    assert run("inspect", "--bundle", "all")[0] == 1


def test_deterministic_stdout():
    args = ("check", "--format", "tsv")
    assert run(*args) == run(*args)


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "statekit.cli", "generate", "--bundle", "fr",
                           "--lexeme", "âme", "--pushed", "+POSS1SG", "--context", "OBJ"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "mon âme\n"
