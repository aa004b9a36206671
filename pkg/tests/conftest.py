"""Shared fixtures: the worked examples used across the suite, plus seeded
samplers for random small instances.

Samplers take an explicit random.Random so every test pins its own seed.
Sampled ontologies stay inside the negation-free fragment and are therefore
always consistent.
"""

import random

import pytest

from gboxes.syntax import (
    ConceptAssertion,
    ConceptInclusion,
    ConceptName,
    ConceptVar,
    LanguageSpec,
    Ontology,
    Template,
)
from gboxes.engine import GBox, Generator
from gboxes.parser import parse_gbox, parse_language, parse_ontology

# ---------------------------------------------------------------------------
# worked examples (shared input texts; CLI tests write these to disk)
# ---------------------------------------------------------------------------

INTRO_ONTOLOGY = """\
# the depleted hierarchy
Jaguar SubClassOf Animal
Tiger SubClassOf Animal
Lion SubClassOf Animal
"""

INTRO_FULL_ONTOLOGY = INTRO_ONTOLOGY + """\
Jaguar SubClassOf hasChild only Jaguar
Tiger SubClassOf hasChild only Tiger
Lion SubClassOf hasChild only Lion
"""

INTRO_GBOX = """\
var ?X concept
gen habitat: { ?X SubClassOf Animal } => { ?X SubClassOf hasChild only ?X }
"""

INTRO_LANG = """\
concepts:
Jaguar
Tiger
Lion
Animal
"""

TURTLE_ONTOLOGY = """\
Turtle SubClassOf Mammal
Mammal SubClassOf Animal
"""

TURTLE_LANG = """\
concepts:
Turtle
Mammal
Animal
"""

# one generator guarded by negation; B occurs in no head
NONUNIQUE_ONTOLOGY = "A(s)\n"

NONUNIQUE_GBOX = """\
var ?X individual
gen g6: { A(?X) }, not { B(?X) } => { C(?X) }
"""

NONUNIQUE_LANG = """\
concepts:
A
B
C
individuals:
s
"""

# two generators guarding each other; no stratification exists
MAGGY_ONTOLOGY = """\
Single SubClassOf Person
Spouse SubClassOf Person
Single SubClassOf not Spouse
Person(Maggy)
"""

MAGGY_GBOX = """\
var ?X individual
gen gSingle: { Person(?X) }, not { Spouse(?X) } => { Single(?X) }
gen gSpouse: { Person(?X) }, not { Single(?X) } => { Spouse(?X) }
"""

MAGGY_LANG = """\
concepts:
Person
Single
Spouse
individuals:
Maggy
"""

# one-hop versus two-hop derivation of the same subsumption
CHAIN_LEFT_GBOX = """\
var ?X concept
gen c1: { ?X SubClassOf A } => { ?X SubClassOf C }
"""

CHAIN_RIGHT_GBOX = """\
var ?X concept
gen c2a: { ?X SubClassOf A } => { ?X SubClassOf B }
gen c2b: { ?X SubClassOf B } => { ?X SubClassOf C }
"""

ABC_LANG = """\
concepts:
A
B
C
"""


@pytest.fixture
def intro_ontology():
    return parse_ontology(INTRO_ONTOLOGY)


@pytest.fixture
def intro_full_ontology():
    return parse_ontology(INTRO_FULL_ONTOLOGY)


@pytest.fixture
def intro_gbox():
    return parse_gbox(INTRO_GBOX)


@pytest.fixture
def intro_lang():
    return parse_language(INTRO_LANG)


@pytest.fixture
def turtle_ontology():
    return parse_ontology(TURTLE_ONTOLOGY)


@pytest.fixture
def turtle_lang():
    return parse_language(TURTLE_LANG)


@pytest.fixture
def nonunique_example():
    return (parse_ontology(NONUNIQUE_ONTOLOGY),
            parse_gbox(NONUNIQUE_GBOX),
            parse_language(NONUNIQUE_LANG))


@pytest.fixture
def maggy_example():
    return (parse_ontology(MAGGY_ONTOLOGY),
            parse_gbox(MAGGY_GBOX),
            parse_language(MAGGY_LANG))


@pytest.fixture
def chain_pair():
    return (parse_gbox(CHAIN_LEFT_GBOX),
            parse_gbox(CHAIN_RIGHT_GBOX),
            parse_language(ABC_LANG))


def write_files(tmp_path, **named):
    """Write keyword texts to tmp_path; returns {name: str(path)}.

    Underscores in keyword names become dots, so onto_txt -> onto.txt is
    wrong but o2_onto -> o2.onto is right; keep suffixes last.
    """
    out = {}
    for name, text in named.items():
        stem, _, suffix = name.rpartition("_")
        path = tmp_path / f"{stem}.{suffix}"
        path.write_text(text)
        out[name] = str(path)
    return out


# ---------------------------------------------------------------------------
# samplers
# ---------------------------------------------------------------------------

CONCEPT_POOL = ("A", "B", "C", "D")
INDIVIDUAL_POOL = ("a", "b")


def sample_language(rng: random.Random, max_concepts: int = 4,
                    max_individuals: int = 0) -> LanguageSpec:
    """Language of 1..max_concepts concept names, optionally individuals."""
    concepts = [ConceptName(n)
                for n in CONCEPT_POOL[:rng.randint(1, max_concepts)]]
    individuals = ()
    if max_individuals:
        individuals = INDIVIDUAL_POOL[:rng.randint(1, max_individuals)]
    return LanguageSpec.of(concepts, individuals=individuals)


def sample_ontology(rng: random.Random, lang: LanguageSpec,
                    max_axioms: int = 3) -> Ontology:
    """Inclusions between language concepts, plus assertions when the
    language carries individuals."""
    names = list(lang.concepts)
    axioms = []
    for _ in range(rng.randint(1, max_axioms)):
        if lang.individuals and rng.random() < 0.5:
            axioms.append(ConceptAssertion(rng.choice(names),
                                           rng.choice(lang.individuals)))
        else:
            axioms.append(ConceptInclusion(rng.choice(names),
                                           rng.choice(names)))
    return Ontology.of(axioms)


def _var_axiom(rng: random.Random, var: ConceptVar, names) -> ConceptInclusion:
    other = rng.choice(names)
    if rng.random() < 0.5:
        return ConceptInclusion(var, other)
    return ConceptInclusion(other, var)


def sample_positive_gbox(rng: random.Random, lang: LanguageSpec,
                         max_generators: int = 3,
                         max_vars: int = 2) -> GBox:
    """Negation-free GBox over concept variables of the given language."""
    names = list(lang.concepts)
    generators = []
    for i in range(rng.randint(1, max_generators)):
        variables = [ConceptVar(v)
                     for v in ("?X", "?Y")[:rng.randint(1, max_vars)]]
        body = Template.of(_var_axiom(rng, v, names) for v in variables)
        head_vars = rng.sample(variables, rng.randint(1, len(variables)))
        head = Template.of(_var_axiom(rng, v, names) for v in head_vars)
        generators.append(Generator(f"g{i}", body, (), head))
    return GBox(tuple(generators))


def sample_semipositive_gbox(rng: random.Random, lang: LanguageSpec) -> GBox:
    """GBox whose negated bodies test base concepts that no head produces.

    Callers pair it with ontologies from sample_base_ontology, which only
    mention the base half of the pool, so head instances never make a
    negated body newly entailed.
    """
    base = [c for c in lang.concepts if c.name in ("A", "B")]
    derived = [ConceptName("C"), ConceptName("D")]
    x = ConceptVar("?X")
    generators = []
    for i in range(rng.randint(1, 2)):
        if lang.individuals and rng.random() < 0.7:
            var = f"?{rng.choice('uv')}"
            body = Template.of([ConceptAssertion(rng.choice(base), var)])
            neg = Template.of([ConceptAssertion(rng.choice(base), var)])
            head = Template.of([ConceptAssertion(rng.choice(derived), var)])
        else:
            body = Template.of([ConceptInclusion(x, rng.choice(base))])
            neg = Template.of([ConceptInclusion(x, rng.choice(base))])
            head = Template.of([ConceptInclusion(x, rng.choice(derived))])
        negatives = (neg,) if rng.random() < 0.8 else ()
        generators.append(Generator(f"g{i}", body, negatives, head))
    return GBox(tuple(generators))


def sample_base_ontology(rng: random.Random, lang: LanguageSpec,
                         max_axioms: int = 2) -> Ontology:
    """Ontology over the A/B half of the concept pool only."""
    base = [c for c in lang.concepts if c.name in ("A", "B")]
    axioms = []
    for _ in range(rng.randint(1, max_axioms)):
        if lang.individuals and rng.random() < 0.6:
            axioms.append(ConceptAssertion(rng.choice(base),
                                           rng.choice(lang.individuals)))
        else:
            axioms.append(ConceptInclusion(rng.choice(base), rng.choice(base)))
    return Ontology.of(axioms)
