import xml.etree.ElementTree as ET

import pytest

from ddna.cli import main
from _oracles import FIXTURES, fixture_text


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestRevcomp:
    def test_word(self, capsys):
        assert run(capsys, "revcomp", "ACG") == (0, "CGT\n", "")

    @pytest.mark.parametrize("empty", ["", "-"])
    def test_empty_word(self, capsys, empty):
        assert run(capsys, "revcomp", empty) == (0, "\n", "")

    def test_bad_alphabet(self, capsys):
        code, out, err = run(capsys, "revcomp", "ACGX")
        assert code == 1 and out == "" and "invalid letters" in err


class TestValidate:
    def test_ok_files(self, capsys):
        for name in ("stack_upper.ddna", "hairpin.dbn", "displacement_invader.ddna"):
            code, out, _ = run(capsys, "validate", FIXTURES / name)
            assert (code, out) == (0, "ok\n"), name

    def test_crossing_arcs_listed(self, capsys, tmp_path):
        bad = tmp_path / "bad.ddna"
        bad.write_text("ATAT\n-\nS 1 3\nS 2 4\n")
        code, out, err = run(capsys, "validate", bad)
        assert code == 1 and out == ""
        assert "arc-arc-crossing" in err and "(1,3)" in err

    def test_dotbracket_error(self, capsys, tmp_path):
        bad = tmp_path / "bad.dbn"
        bad.write_text("ACGT\n.(.)\n")
        code, _, err = run(capsys, "validate", bad)
        assert code == 1 and "complementarity" in err

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "validate", "no-such-file.ddna")
        assert code == 1 and "no-such-file" in err


class TestCompose:
    def test_stacking_instance(self, capsys):
        code, out, err = run(
            capsys, "compose", FIXTURES / "stack_upper.ddna", FIXTURES / "stack_lower.ddna"
        )
        assert code == 0 and err == ""
        assert out == fixture_text("stack_composite.ddna")

    def test_report_goes_to_stderr(self, capsys):
        code, out, err = run(
            capsys,
            "compose",
            FIXTURES / "displacement_substrate.ddna",
            FIXTURES / "displacement_invader.ddna",
            "--report",
        )
        assert code == 0
        assert out == "TCTCTC\n-\n"
        assert "dangled_endpoints: 6" in err

    def test_identity_law_via_files(self, capsys, tmp_path):
        f = fixture_text("bend_input.ddna")
        upper = tmp_path / "id.ddna"
        upper.write_text("ATCGC\nATCGC\nT 1 1\nT 2 2\nT 3 3\nT 4 4\nT 5 5\n")
        code, out, _ = run(capsys, "compose", upper, FIXTURES / "bend_input.ddna")
        assert code == 0 and out == f

    def test_interface_mismatch_names_both_words(self, capsys):
        code, _, err = run(
            capsys, "compose", FIXTURES / "stack_upper.ddna", FIXTURES / "stack_upper.ddna"
        )
        assert code == 1
        assert "ACGATCGATCGATC" in err and "ACCATGGACT" in err

    def test_output_file(self, capsys, tmp_path):
        out_path = tmp_path / "composite.ddna"
        code, out, _ = run(
            capsys,
            "compose",
            FIXTURES / "stack_upper.ddna",
            FIXTURES / "stack_lower.ddna",
            "-o",
            out_path,
        )
        assert code == 0 and out == ""
        assert out_path.read_text() == fixture_text("stack_composite.ddna")


class TestBendUnbend:
    def test_bend_instance(self, capsys):
        code, out, _ = run(capsys, "bend", FIXTURES / "bend_input.ddna")
        assert code == 0 and out == fixture_text("bend_straightened.dbn")

    def test_unbend_instance(self, capsys, tmp_path):
        code, out, _ = run(
            capsys, "unbend", FIXTURES / "bend_straightened.dbn", "--source-len", "5"
        )
        assert code == 0 and out == fixture_text("bend_input.ddna")

    def test_file_roundtrip(self, capsys, tmp_path):
        bent = tmp_path / "s.dbn"
        code, out, _ = run(capsys, "bend", FIXTURES / "stack_upper.ddna")
        bent.write_text(out)
        code, out, _ = run(capsys, "unbend", bent, "--source-len", "10")
        assert code == 0 and out == fixture_text("stack_upper.ddna")

    def test_unbend_source_len_zero(self, capsys):
        code, out, _ = run(
            capsys, "unbend", FIXTURES / "hairpin.dbn", "--source-len", "0"
        )
        assert code == 0
        assert out.startswith("-\nACGTAGGGTACGT\n") and "A 1 13" in out


class TestFolding:
    def test_enumerate(self, capsys):
        code, out, _ = run(capsys, "enumerate", "ACGT")
        assert code == 0
        records = out.strip().split("\n\n")
        assert len(records) == 4
        assert records[0] == "ACGT\n...."

    def test_count(self, capsys):
        assert run(capsys, "count", "ACGT") == (0, "4\n", "")
        assert run(capsys, "count", "") == (0, "1\n", "")

    def test_count_respects_theta_flag_and_env(self, capsys, monkeypatch):
        assert run(capsys, "count", "ACGT", "--theta", "3") == (0, "1\n", "")
        monkeypatch.setenv("DDNA_THETA", "3")
        assert run(capsys, "count", "ACGT") == (0, "1\n", "")
        monkeypatch.setenv("DDNA_THETA", "nope")
        code, _, err = run(capsys, "count", "ACGT")
        assert code == 1 and "DDNA_THETA" in err

    def test_fold_finds_hairpin(self, capsys):
        code, out, _ = run(capsys, "fold", "ACGTAGGGTACGT", "--theta", "3")
        assert code == 0
        assert out.startswith("max_bonds: 5\n")
        assert "(((((...)))))" in out

    def test_bad_word(self, capsys):
        code, _, err = run(capsys, "count", "AXG")
        assert code == 1 and "invalid letters" in err


class TestGrammar:
    def test_parse_sentence(self, capsys):
        code, out, _ = run(
            capsys,
            "parse",
            "Cats",
            "chase",
            "mice",
            "--lexicon",
            FIXTURES / "lexicon.yaml",
            "--goal",
            "s",
        )
        assert code == 0
        assert out == "links: (1,2) (4,5)\nsurvivors: 3\n"

    def test_parse_single_word(self, capsys):
        code, out, _ = run(
            capsys, "parse", "Cats", "--lexicon", FIXTURES / "lexicon.yaml", "--goal", "n"
        )
        assert code == 0 and out == "links: -\nsurvivors: 1\n"

    def test_parse_all_proofs(self, capsys):
        code, out, _ = run(
            capsys,
            "parse",
            "Cats",
            "mice",
            "--lexicon",
            FIXTURES / "lexicon.yaml",
            "--goal",
            "n n",
            "--all-proofs",
        )
        assert code == 0 and out.count("links:") == 1

    def test_parse_ungrammatical(self, capsys):
        code, _, err = run(
            capsys,
            "parse",
            "Cats",
            "Cats",
            "--lexicon",
            FIXTURES / "lexicon.yaml",
            "--goal",
            "s",
        )
        assert code == 1 and "no reduction" in err

    def test_meaning_sentence(self, capsys):
        code, out, err = run(
            capsys,
            "meaning",
            "Cats",
            "chase",
            "mice",
            "--lexicon",
            FIXTURES / "lexicon.yaml",
            "--goal",
            "s",
            "--report",
        )
        assert code == 0
        assert out == fixture_text("meaning_sentence.dbn")
        assert "closed_loops: 2" in err

    def test_meaning_single_word_is_lexical_state(self, capsys):
        code, out, _ = run(
            capsys,
            "meaning",
            "Cats",
            "--lexicon",
            FIXTURES / "lexicon.yaml",
            "--goal",
            "n",
        )
        assert code == 0 and out == "AGGAACTGGAAG\n((...)).....\n"

    def test_meaning_unknown_word(self, capsys):
        code, _, err = run(
            capsys,
            "meaning",
            "dogs",
            "--lexicon",
            FIXTURES / "lexicon.yaml",
            "--goal",
            "n",
        )
        assert code == 1 and "dogs" in err


class TestRender:
    def test_svg_structure(self, capsys):
        code, out, _ = run(capsys, "render", FIXTURES / "hairpin.dbn")
        assert code == 0
        ET.fromstring(out)

    def test_svg_diagram_with_style(self, capsys):
        code, out, _ = run(
            capsys,
            "render",
            FIXTURES / "rectangle.ddna",
            "--at-color",
            "#ff0000",
            "--arrows",
        )
        assert code == 0 and "#ff0000" in out
        ET.fromstring(out)

    def test_text_structure(self, capsys):
        code, out, _ = run(capsys, "render", FIXTURES / "hairpin.dbn", "--format", "text")
        assert code == 0 and out.splitlines()[1] == "(((((...)))))"

    def test_text_of_diagram_rejected(self, capsys):
        code, _, err = run(
            capsys, "render", FIXTURES / "rectangle.ddna", "--format", "text"
        )
        assert code == 1 and "structures" in err
