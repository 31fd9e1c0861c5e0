import pytest
from hypothesis import given, strategies as st

from ddna import (
    AlphabetError,
    DotBracketError,
    SecondaryStructure,
    StructureError,
    canonical_word,
    complement,
    emit_dotbracket,
    parse_dotbracket,
    reverse_complement,
    structure_from_brackets,
)

words = st.text(alphabet="ACGT", max_size=12)


@pytest.mark.parametrize("base,partner", [("A", "T"), ("T", "A"), ("C", "G"), ("G", "C")])
def test_complement_pairs(base, partner):
    assert complement(base) == partner
    assert complement(complement(base)) == base


def test_complement_rejects_garbage():
    with pytest.raises(AlphabetError):
        complement("N")


def test_canonical_word_uppercases_and_validates():
    assert canonical_word("acgt") == "ACGT"
    with pytest.raises(AlphabetError):
        canonical_word("ACGN")
    with pytest.raises(AlphabetError):
        canonical_word("ACGU")


@pytest.mark.parametrize(
    "word,expected",
    [("ACG", "CGT"), ("", ""), ("GAATCTCTC", "GAGAGATTC"), ("A", "T")],
)
def test_reverse_complement_examples(word, expected):
    assert reverse_complement(word) == expected


@given(words)
def test_reverse_complement_is_an_involution(w):
    assert reverse_complement(reverse_complement(w)) == w


@given(words, words)
def test_reverse_complement_antihomomorphism(u, v):
    assert reverse_complement(u + v) == reverse_complement(v) + reverse_complement(u)


class TestStructureValidation:
    def test_valid_pair(self):
        s = SecondaryStructure("AT", {(1, 2)})
        assert s.sorted_arcs() == ((1, 2),)

    def test_rejects_noncomplementary(self):
        with pytest.raises(StructureError) as err:
            SecondaryStructure("ACGT", {(2, 4)})
        assert any(v.rule == "complementarity" for v in err.value.violations)

    def test_rejects_crossing(self):
        with pytest.raises(StructureError) as err:
            SecondaryStructure("ATAT", {(1, 3), (2, 4)})  # T-A and A-T, but crossing
        assert any(v.rule == "crossing" for v in err.value.violations)

    def test_rejects_shared_position(self):
        with pytest.raises(StructureError) as err:
            SecondaryStructure("ATT", {(1, 2), (1, 3)})
        assert any(v.rule == "uniqueness" for v in err.value.violations)

    def test_rejects_bad_indices(self):
        with pytest.raises(StructureError) as err:
            SecondaryStructure("AT", {(0, 2), (2, 1)})
        rules = {v.rule for v in err.value.violations}
        assert "index-range" in rules

    def test_unchecked_defers_validation(self):
        raw = SecondaryStructure.unchecked("ATTA", {(1, 3), (2, 4)})
        assert {v.rule for v in raw.violations()} == {"crossing"}


class TestDotBracket:
    def test_single_pair(self):
        assert parse_dotbracket("AT\n()\n").sorted_arcs() == ((1, 2),)

    def test_hairpin(self):
        s = parse_dotbracket("ACGTAGGGTACGT\n(((((...)))))\n")
        assert s.sorted_arcs() == ((1, 13), (2, 12), (3, 11), (4, 10), (5, 9))

    def test_noncomplementary_pair_is_rejected(self):
        with pytest.raises(StructureError):
            parse_dotbracket("ACGT\n.(.)\n")  # C-T is not a Watson-Crick pair

    def test_length_mismatch(self):
        with pytest.raises(DotBracketError):
            structure_from_brackets("ACGT", "(..")

    @pytest.mark.parametrize("brackets", ["(...", "...)", "())("])
    def test_unbalanced_brackets(self, brackets):
        with pytest.raises(DotBracketError):
            structure_from_brackets("ATAT", brackets)

    def test_invalid_bracket_character(self):
        with pytest.raises(DotBracketError):
            structure_from_brackets("AT", "(]")

    def test_extra_lines_rejected(self):
        with pytest.raises(DotBracketError):
            parse_dotbracket("AT\n()\nAT\n")

    def test_empty_word(self):
        s = parse_dotbracket("\n\n")
        assert s.word == "" and not s.arcs

    def test_emit_examples(self):
        assert emit_dotbracket(SecondaryStructure("AT", {(1, 2)})) == "AT\n()\n"
        assert emit_dotbracket(SecondaryStructure("GAGAGA", set())) == "GAGAGA\n......\n"

    def test_emit_parse_roundtrip_on_hairpin(self):
        text = "ACGTAGGGTACGT\n(((((...)))))\n"
        assert emit_dotbracket(parse_dotbracket(text)) == text


@given(st.data())
def test_parse_emit_are_mutually_inverse(data):
    from _oracles import structures_of

    word = data.draw(words)
    structure = data.draw(st.sampled_from(structures_of(word)))
    assert parse_dotbracket(emit_dotbracket(structure)) == structure
