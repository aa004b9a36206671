"""End-to-end command tests through main(); no subprocesses."""

import json

import pytest

from gboxes.cli import main

from conftest import (
    ABC_LANG,
    CHAIN_LEFT_GBOX,
    CHAIN_RIGHT_GBOX,
    INTRO_GBOX,
    INTRO_LANG,
    INTRO_ONTOLOGY,
    MAGGY_GBOX,
    MAGGY_LANG,
    MAGGY_ONTOLOGY,
    NONUNIQUE_GBOX,
    NONUNIQUE_LANG,
    NONUNIQUE_ONTOLOGY,
    write_files,
)


@pytest.fixture
def intro_files(tmp_path):
    return write_files(tmp_path, o2_onto=INTRO_ONTOLOGY, g_gbx=INTRO_GBOX,
                       cats_lang=INTRO_LANG)


@pytest.fixture
def maggy_files(tmp_path):
    return write_files(tmp_path, m_onto=MAGGY_ONTOLOGY, m_gbx=MAGGY_GBOX,
                       m_lang=MAGGY_LANG)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# expand
# ---------------------------------------------------------------------------

def test_expand_reports_steps_and_additions(capsys, intro_files):
    code, out, _ = run(capsys, "expand",
                       "--ontology", intro_files["o2_onto"],
                       "--gbox", intro_files["g_gbx"],
                       "--lang", intro_files["cats_lang"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "steps: 2"
    assert lines[1] == "consistent: true"
    assert sum(1 for l in lines if l.startswith("step 1: +")) == 4
    assert "  Animal SubClassOf hasChild only Animal" in lines


def test_expand_writes_the_result_file(capsys, intro_files, tmp_path):
    out_path = tmp_path / "result.onto"
    code, out, _ = run(capsys, "expand",
                       "--ontology", intro_files["o2_onto"],
                       "--gbox", intro_files["g_gbx"],
                       "--lang", intro_files["cats_lang"],
                       "--out", str(out_path))
    assert code == 0
    text = out_path.read_text()
    assert "Animal SubClassOf hasChild only Animal" in text
    assert "axioms:" not in out  # listing goes to the file instead


def test_expand_warns_on_unstratifiable_inconsistency(capsys, maggy_files):
    code, out, _ = run(capsys, "expand",
                       "--ontology", maggy_files["m_onto"],
                       "--gbox", maggy_files["m_gbx"],
                       "--lang", maggy_files["m_lang"])
    assert code == 0  # the expansion itself completed
    assert "consistent: false" in out
    assert "warning: result inconsistent; GBox unstratifiable" in out


def test_expand_step_limit_exits_with_resource_code(capsys, tmp_path):
    files = write_files(
        tmp_path,
        o_onto="Seed SubClassOf A\n",
        g_gbx=("var ?X concept\n"
               "gen ab: { ?X SubClassOf A } => { ?X SubClassOf B }\n"
               "gen bc: { ?X SubClassOf B } => { ?X SubClassOf C }\n"),
        l_lang="concepts:\nSeed\nA\nB\nC\n")
    code, out, _ = run(capsys, "expand", "--ontology", files["o_onto"],
                       "--gbox", files["g_gbx"], "--lang", files["l_lang"],
                       "--max-steps", "1")
    assert code == 3
    assert "limit hit: max_steps" in out


def test_expand_rejects_inconsistent_input_without_flag(capsys, tmp_path):
    files = write_files(tmp_path, o_onto="A SubClassOf not A\nA(s)\n",
                        g_gbx="gen g: { A(s) } => { B(s) }\n",
                        l_lang="concepts:\nA\nB\nindividuals:\ns\n")
    args = ("expand", "--ontology", files["o_onto"], "--gbox", files["g_gbx"],
            "--lang", files["l_lang"])
    code, _, err = run(capsys, *args)
    assert code == 1
    assert "inconsistent" in err
    code, out, _ = run(capsys, *args, "--allow-inconsistent")
    assert code == 0
    assert "consistent: false" in out


def test_expand_machine_format_is_json_lines(capsys, intro_files):
    code, out, _ = run(capsys, "expand", "--format", "machine",
                       "--ontology", intro_files["o2_onto"],
                       "--gbox", intro_files["g_gbx"],
                       "--lang", intro_files["cats_lang"])
    assert code == 0
    records = [json.loads(l) for l in out.splitlines()]
    kinds = {r["record"] for r in records}
    assert kinds == {"expansion", "added", "axiom"}
    (summary,) = [r for r in records if r["record"] == "expansion"]
    assert summary["steps"] == 2
    assert summary["axiom_count"] == 7


def test_repeated_runs_are_byte_identical(capsys, intro_files):
    argv = ("expand", "--format", "machine",
            "--ontology", intro_files["o2_onto"],
            "--gbox", intro_files["g_gbx"],
            "--lang", intro_files["cats_lang"])
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------

def test_check_classifies_positive_gboxes(capsys, intro_files):
    code, out, _ = run(capsys, "check",
                       "--ontology", intro_files["o2_onto"],
                       "--gbox", intro_files["g_gbx"],
                       "--lang", intro_files["cats_lang"])
    assert code == 0
    assert out.splitlines()[0] == "positive"


def test_check_classifies_guarded_gboxes(capsys, tmp_path):
    files = write_files(tmp_path, o_onto=NONUNIQUE_ONTOLOGY,
                        g_gbx=NONUNIQUE_GBOX, l_lang=NONUNIQUE_LANG)
    code, out, _ = run(capsys, "check", "--ontology", files["o_onto"],
                       "--gbox", files["g_gbx"], "--lang", files["l_lang"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "semi-positive; stratifiable, 2 strata"
    assert any(l.startswith("edge: {B(?X)} -> {C(?X)} [negative]") for l in lines)
    assert "stratum 2: {C(?X)}" in lines


def test_check_reports_the_negative_cycle(capsys, maggy_files):
    code, out, _ = run(capsys, "check",
                       "--ontology", maggy_files["m_onto"],
                       "--gbox", maggy_files["m_gbx"],
                       "--lang", maggy_files["m_lang"])
    assert code == 1
    lines = out.splitlines()
    assert lines[0] == "unstratifiable"
    assert any(l.startswith("cycle:") and "[negative]" in l for l in lines)


# ---------------------------------------------------------------------------
# contains / ground
# ---------------------------------------------------------------------------

def test_contains_both_directions(capsys, tmp_path):
    files = write_files(tmp_path, g1_gbx=CHAIN_LEFT_GBOX,
                        g2_gbx=CHAIN_RIGHT_GBOX, l_lang=ABC_LANG)
    code, out, _ = run(capsys, "contains", "--left", files["g1_gbx"],
                       "--right", files["g2_gbx"], "--lang", files["l_lang"])
    assert code == 0
    assert out.splitlines()[0] == "contained"
    assert "  c1: head entailed" in out.splitlines()

    code, out, _ = run(capsys, "contains", "--left", files["g2_gbx"],
                       "--right", files["g1_gbx"], "--lang", files["l_lang"])
    assert code == 1
    assert out.splitlines()[0] == "not contained"
    assert any("does not entail" in l for l in out.splitlines())


def test_contains_rejects_negation(capsys, tmp_path, maggy_files):
    files = write_files(tmp_path, g1_gbx=CHAIN_LEFT_GBOX, l_lang=ABC_LANG)
    code, _, err = run(capsys, "contains", "--left", maggy_files["m_gbx"],
                       "--right", files["g1_gbx"], "--lang", files["l_lang"])
    assert code == 2
    assert "negat" in err


def test_ground_emits_the_instantiations(capsys, tmp_path):
    files = write_files(tmp_path, g1_gbx=CHAIN_LEFT_GBOX, l_lang=ABC_LANG)
    code, out, _ = run(capsys, "ground", "--gbox", files["g1_gbx"],
                       "--lang", files["l_lang"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "generators: 3"
    assert any(l.startswith("gen c1_0 :") for l in lines)


# ---------------------------------------------------------------------------
# entails / eval
# ---------------------------------------------------------------------------

def test_entails_checks_each_axiom(capsys, tmp_path):
    files = write_files(tmp_path, o_onto="A SubClassOf B\nB SubClassOf C\n")
    code, out, _ = run(capsys, "entails", "--ontology", files["o_onto"],
                       "--axiom", "A SubClassOf C")
    assert code == 0
    assert out.splitlines() == ["A SubClassOf C: entailed"]

    code, out, _ = run(capsys, "entails", "--ontology", files["o_onto"],
                       "--axiom", "A SubClassOf C", "--axiom", "C SubClassOf A")
    assert code == 1
    assert "C SubClassOf A: not entailed" in out.splitlines()


def test_eval_lists_bindings(capsys, tmp_path):
    files = write_files(tmp_path, o_onto="A SubClassOf B\nB SubClassOf C\n",
                        l_lang=ABC_LANG)
    code, out, _ = run(capsys, "eval", "--ontology", files["o_onto"],
                       "--lang", files["l_lang"],
                       "--template", "?X SubClassOf C")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "bindings: 3"
    assert lines[1:] == ["{?X -> A}", "{?X -> B}", "{?X -> C}"]


# ---------------------------------------------------------------------------
# error handling
# ---------------------------------------------------------------------------

def test_parse_errors_exit_with_usage_code(capsys, tmp_path):
    files = write_files(tmp_path, bad_onto="A SubClassOf\n",
                        g_gbx=CHAIN_LEFT_GBOX, l_lang=ABC_LANG)
    code, _, err = run(capsys, "expand", "--ontology", files["bad_onto"],
                       "--gbox", files["g_gbx"], "--lang", files["l_lang"])
    assert code == 2
    assert "parse error" in err


def test_out_may_not_overwrite_an_input(capsys, intro_files):
    code, _, err = run(capsys, "expand",
                       "--ontology", intro_files["o2_onto"],
                       "--gbox", intro_files["g_gbx"],
                       "--lang", intro_files["cats_lang"],
                       "--out", intro_files["o2_onto"])
    assert code == 2
    assert "error" in err


def test_nonpositive_max_steps_is_a_usage_error(capsys, intro_files):
    code, _, err = run(capsys, "expand",
                       "--ontology", intro_files["o2_onto"],
                       "--gbox", intro_files["g_gbx"],
                       "--lang", intro_files["cats_lang"],
                       "--max-steps", "0")
    assert code == 2


def test_budget_exhaustion_exits_with_resource_code(capsys, tmp_path):
    files = write_files(tmp_path, o_onto="A SubClassOf B\nB SubClassOf C\n",
                        l_lang=ABC_LANG)
    code, _, err = run(capsys, "eval", "--ontology", files["o_onto"],
                       "--lang", files["l_lang"],
                       "--template", "?X SubClassOf C", "--budget", "1")
    assert code == 3
    assert "resource limit" in err


def test_missing_file_is_a_usage_error(capsys, tmp_path):
    files = write_files(tmp_path, g_gbx=CHAIN_LEFT_GBOX, l_lang=ABC_LANG)
    code, _, err = run(capsys, "expand",
                       "--ontology", str(tmp_path / "absent.onto"),
                       "--gbox", files["g_gbx"], "--lang", files["l_lang"])
    assert code == 2
