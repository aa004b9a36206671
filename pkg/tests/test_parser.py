"""Surface syntax: concepts, axioms, ontology/gbox/language files, errors."""

import pytest

from gboxes.errors import GBoxError, ParseError, UnsafeGeneratorError
from gboxes.parser import (
    gbox_to_text,
    parse_axiom_line,
    parse_concept_text,
    parse_gbox,
    parse_language,
    parse_ontology,
    parse_template,
)
from gboxes.syntax import (
    And,
    Bottom,
    ConceptAssertion,
    ConceptInclusion,
    ConceptName,
    ConceptVar,
    Exists,
    Forall,
    Inverse,
    Not,
    Or,
    RoleAssertion,
    RoleInclusion,
    RoleName,
    Top,
    axiom_to_text,
)

A, B, C = ConceptName("A"), ConceptName("B"), ConceptName("C")


def test_precedence_not_binds_tightest_then_and_then_or():
    c = parse_concept_text("not A and B or C")
    assert c == Or((And((Not(A), B)), C))


def test_restrictions_bind_tighter_than_and():
    c = parse_concept_text("r some A and r only B")
    assert c == And((Exists(RoleName("r"), A), Forall(RoleName("r"), B)))


def test_parentheses_override():
    c = parse_concept_text("not (A or B)")
    assert c == Not(Or((A, B)))


def test_inverse_roles_and_nesting():
    c = parse_concept_text("inverse r some (A and Thing)")
    assert c == Exists(Inverse(RoleName("r")), And((A, Top())))


def test_top_and_bottom_keywords():
    assert parse_concept_text("Thing") == Top()
    assert parse_concept_text("Nothing") == Bottom()


@pytest.mark.parametrize("text,expected", [
    ("A SubClassOf B", [ConceptInclusion(A, B)]),
    ("r SubRoleOf s", [RoleInclusion(RoleName("r"), RoleName("s"))]),
    ("A(joe)", [ConceptAssertion(A, "joe")]),
    ("r(joe, ann)", [RoleAssertion("r", "joe", "ann")]),
    ("(A and B)(joe)", [ConceptAssertion(And((A, B)), "joe")]),
])
def test_axiom_forms(text, expected):
    assert parse_axiom_line(text) == expected


def test_equivalence_desugars_to_two_inclusions():
    axioms = parse_axiom_line("A EquivalentTo B and C")
    assert axioms == [ConceptInclusion(A, And((B, C))),
                      ConceptInclusion(And((B, C)), A)]


def test_round_trip_through_text():
    source = [
        "A SubClassOf r some (B or not C)",
        "inverse r SubRoleOf s",
        "(r only A)(joe)",
        "r(joe, ann)",
    ]
    for line in source:
        axioms = parse_axiom_line(line)
        for a in axioms:
            assert parse_axiom_line(axiom_to_text(a)) == [a]


def test_ontology_files_allow_comments_and_blank_lines():
    o = parse_ontology("# header\n\nA SubClassOf B  # trailing\nB(joe)\n")
    assert len(o) == 2


def test_ontology_rejects_variables():
    with pytest.raises(ParseError):
        parse_ontology("?X SubClassOf B\n")


def test_template_accepts_variables():
    t = parse_template("?X SubClassOf A\nB(?u)\n")
    assert t.variables.concept_vars == frozenset({"?X"})
    assert t.variables.individual_vars == frozenset({"?u"})


def test_parse_error_reports_position():
    with pytest.raises(ParseError) as err:
        parse_ontology("A SubClassOf B\nA SubClassOf\n")
    assert err.value.line == 2


def test_language_file_is_sectioned_one_entry_per_line():
    lang = parse_language(
        "concepts:\nA\nB and C\nroles:\ninverse r\nindividuals:\njoe\n")
    assert lang.concepts == (A, And((B, C)))
    assert lang.roles == (Inverse(RoleName("r")),)
    assert lang.individuals == ("joe",)


def test_language_entry_before_any_section_fails():
    with pytest.raises(ParseError):
        parse_language("A\n")


def test_gbox_declarations_and_negation():
    g = parse_gbox(
        "var ?X individual\n"
        "gen g1: { Person(?X) }, not { Minor(?X) } => { Adult(?X) }\n")
    (gen,) = g.generators
    assert gen.name == "g1"
    assert len(gen.negative_bodies) == 1
    assert g.has_negation


def test_gbox_head_variables_must_occur_in_the_body():
    with pytest.raises(UnsafeGeneratorError):
        parse_gbox("gen g: { ?X SubClassOf A } => { ?Y SubClassOf B }\n")


def test_gbox_duplicate_names_rejected():
    text = ("gen g: { ?X SubClassOf A } => { ?X SubClassOf B }\n"
            "gen g: { ?X SubClassOf B } => { ?X SubClassOf C }\n")
    with pytest.raises(GBoxError):
        parse_gbox(text)


def test_gbox_declared_type_mismatch_rejected():
    with pytest.raises(ParseError):
        parse_gbox("var ?X role\n"
                   "gen g: { ?X SubClassOf A } => { ?X SubClassOf B }\n")


def test_gbox_round_trip(maggy_example):
    _, g, _ = maggy_example
    assert parse_gbox(gbox_to_text(g)) == g
