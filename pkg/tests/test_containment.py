"""Grounding, the freeze procedure, and GBox containment."""

import random

import pytest

from gboxes.containment import (
    FROZEN_PREFIX,
    freeze,
    ground_gbox,
    ground_generator,
    is_contained,
    is_equivalent_gbox,
)
from gboxes.engine import GBox, Generator, expand_fixpoint, one_step_expand, satisfies_gbox
from gboxes.errors import NegationNotSupportedError
from gboxes.parser import (
    parse_gbox,
    parse_language,
    parse_ontology,
    parse_template,
)
from gboxes.reasoner import entails_ontology, equivalent
from gboxes.syntax import (
    ConceptName,
    LanguageSpec,
    Ontology,
    Template,
    axiom_to_text,
)

from conftest import (
    sample_language,
    sample_ontology,
    sample_positive_gbox,
)

ABC = parse_language("concepts:\nA\nB\nC\n")

FLIPPED = parse_gbox("var ?X concept\n"
                     "gen flip: { ?X SubClassOf A } => { B SubClassOf ?X }\n")


# ---------------------------------------------------------------------------
# grounding
# ---------------------------------------------------------------------------

def test_grounding_multiplies_by_the_language(chain_pair):
    left, right, lang = chain_pair
    assert len(ground_gbox(left, lang)) == 3
    assert len(ground_gbox(right, lang)) == 6
    names = [g.name for g in ground_gbox(left, lang).generators]
    assert names == ["c1_0", "c1_1", "c1_2"]


def test_grounding_a_ground_generator_is_a_copy():
    gen = Generator("g", Template.of(parse_template("A SubClassOf B\n")),
                    (), Template.of(parse_template("A SubClassOf C\n")))
    (only,) = ground_generator(gen, ABC)
    assert only.positive_body == gen.positive_body
    assert only.head == gen.head


def test_grounding_drops_collapsed_duplicates():
    g = parse_gbox("var ?X concept\nvar ?Y concept\n"
                   "gen twin: { ?X SubClassOf A ; ?Y SubClassOf A } "
                   "=> { A SubClassOf B }\n")
    lang = parse_language("concepts:\nC\nD\n")
    # (C,D) and (D,C) instantiate the body to the same axiom set
    assert len(ground_gbox(g, lang)) == 3


def test_grounding_preserves_the_one_step_effect(intro_ontology, intro_gbox,
                                                 intro_lang):
    grounded = ground_gbox(intro_gbox, intro_lang)
    assert len(grounded) == 4
    direct = one_step_expand(intro_gbox, intro_ontology, intro_lang)
    via_ground = one_step_expand(grounded, intro_ontology, intro_lang)
    assert direct == via_ground


def test_grounding_preserves_expansions_under_smaller_languages():
    rng = random.Random(31)
    for _ in range(10):
        big = sample_language(rng, max_concepts=3)
        small = LanguageSpec.of(big.concepts[:1])
        g = sample_positive_gbox(rng, big, max_generators=2, max_vars=1)
        o = sample_ontology(rng, big, max_axioms=2)
        grounded = ground_gbox(g, big)
        a = expand_fixpoint(grounded, o, small).result
        b = expand_fixpoint(g, o, big).result
        assert equivalent(a, b)


# ---------------------------------------------------------------------------
# freezing
# ---------------------------------------------------------------------------

def test_freeze_replaces_variables_with_reserved_names():
    frozen = freeze(parse_template("?X SubClassOf Animal\n"))
    assert [axiom_to_text(a) for a in frozen.ontology] == [
        "__frozen_X SubClassOf Animal"]


def test_freeze_is_consistent_across_axioms():
    frozen = freeze(parse_template("?Y SubClassOf hasHunter some ?X\n"))
    assert [axiom_to_text(a) for a in frozen.ontology] == [
        "__frozen_Y SubClassOf hasHunter some __frozen_X"]


def test_freeze_of_a_ground_template_is_the_identity():
    t = parse_template("A SubClassOf B\n")
    frozen = freeze(t)
    assert frozen.ontology.axioms == t.axioms
    assert frozen.frozen_map.bindings == ()


def test_freeze_avoids_reserved_collisions():
    frozen = freeze(parse_template("?X SubClassOf A\n"),
                    reserved=frozenset({FROZEN_PREFIX + "X"}))
    assert [axiom_to_text(a) for a in frozen.ontology] == [
        "__frozen_X0 SubClassOf A"]


# ---------------------------------------------------------------------------
# containment
# ---------------------------------------------------------------------------

def test_one_hop_is_contained_in_the_two_hop_chain(chain_pair):
    left, right, lang = chain_pair
    forward = is_contained(left, right, lang)
    assert forward.holds
    assert bool(forward)
    assert all(c.holds for c in forward.certificates)


def test_two_hop_chain_is_not_contained_backwards(chain_pair):
    left, right, lang = chain_pair
    backward = is_contained(right, left, lang)
    assert not backward.holds
    failing = {c.generator: c for c in backward.certificates if not c.holds}
    assert set(failing) == {"c2a", "c2b"}
    assert axiom_to_text(failing["c2a"].missing) == "__frozen_X SubClassOf B"


def test_chain_directions_agree_with_frozen_names_in_the_language(chain_pair):
    left, right, lang = chain_pair
    assert is_contained(left, right, lang, freeze_into_lang=True).holds
    assert not is_contained(right, left, lang, freeze_into_lang=True).holds


def test_reflexivity_holds_for_body_driven_heads(chain_pair):
    left, right, lang = chain_pair
    for g in (left, right):
        assert is_contained(g, g, lang).holds
        assert is_contained(g, g, lang, freeze_into_lang=True).holds


def test_reflexivity_needs_the_frozen_names_for_flipped_heads():
    # the frozen body {__frozen_X SubClassOf A} admits no substitution over
    # {A, B, C} matching the body unless the frozen name itself is in range
    assert not is_contained(FLIPPED, FLIPPED, ABC).holds
    assert is_contained(FLIPPED, FLIPPED, ABC, freeze_into_lang=True).holds


def test_empty_gbox_is_contained_in_everything(chain_pair):
    left, _, lang = chain_pair
    empty = GBox(())
    assert is_contained(empty, left, lang).holds
    assert is_contained(empty, empty, lang).holds


def test_containment_rejects_negation(maggy_example, chain_pair):
    _, maggy, _ = maggy_example
    left, _, lang = chain_pair
    with pytest.raises(NegationNotSupportedError):
        is_contained(maggy, left, lang)
    with pytest.raises(NegationNotSupportedError):
        is_contained(left, maggy, lang)


def test_equivalence_is_mutual_containment(chain_pair):
    left, right, lang = chain_pair
    assert is_equivalent_gbox(left, left, lang)
    assert not is_equivalent_gbox(left, right, lang)


def test_a_gbox_is_equivalent_to_its_grounding(chain_pair):
    left, _, lang = chain_pair
    assert is_equivalent_gbox(left, ground_gbox(left, lang), lang)


# ---------------------------------------------------------------------------
# semantic properties behind the procedure
# ---------------------------------------------------------------------------

def test_positive_verdicts_are_sound_for_expansion_entailment(chain_pair):
    left, right, lang = chain_pair
    assert is_contained(left, right, lang).holds
    rng = random.Random(7)
    for _ in range(8):
        o = sample_ontology(rng, lang, max_axioms=3)
        bigger = expand_fixpoint(right, o, lang).result
        smaller = expand_fixpoint(left, o, lang).result
        assert entails_ontology(bigger, smaller).holds


def test_expansion_is_monotone_in_the_theory():
    rng = random.Random(17)
    for _ in range(8):
        lang = sample_language(rng, max_concepts=3)
        g = sample_positive_gbox(rng, lang, max_generators=2, max_vars=1)
        weak = sample_ontology(rng, lang, max_axioms=2)
        strong = weak.union(sample_ontology(rng, lang, max_axioms=1))
        a = expand_fixpoint(g, strong, lang).result
        b = expand_fixpoint(g, weak, lang).result
        assert entails_ontology(a, b).holds


def test_satisfying_supertheories_entail_the_expansion():
    rng = random.Random(19)
    for _ in range(8):
        lang = sample_language(rng, max_concepts=3)
        g = sample_positive_gbox(rng, lang, max_generators=2, max_vars=1)
        o = sample_ontology(rng, lang, max_axioms=2)
        extra = sample_ontology(rng, lang, max_axioms=1)
        t = expand_fixpoint(g, o.union(extra), lang).result
        assert satisfies_gbox(t, g, lang)
        assert entails_ontology(t, expand_fixpoint(g, o, lang).result).holds


def test_containment_is_transitive_on_nested_gboxes():
    rng = random.Random(29)
    for _ in range(6):
        lang = sample_language(rng, max_concepts=3)
        g3 = sample_positive_gbox(rng, lang, max_generators=3, max_vars=1)
        g2 = GBox(g3.generators[:max(1, len(g3) - 1)])
        g1 = GBox(g2.generators[:1])
        assert is_contained(g1, g2, lang, freeze_into_lang=True).holds
        assert is_contained(g2, g3, lang, freeze_into_lang=True).holds
        assert is_contained(g1, g3, lang, freeze_into_lang=True).holds
