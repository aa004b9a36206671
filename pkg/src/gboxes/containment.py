"""Language-relative grounding, containment, and equivalence of GBoxes.

Grounding replaces a generator by the finite set of its instantiations
over a language.  Containment between negation-free GBoxes reduces to
entailment checks on frozen bodies: for each generator of the candidate
subsumee, its body variables are replaced by reserved fresh names, the
frozen body is used as an ontology and expanded under the candidate
subsumer, and the frozen head must be entailed by the fixpoint.

By default frozen names are not added to the language for the expansion:
the frozen body only seeds the ontology.  ``freeze_into_lang=True`` adds
them, which makes containment reflexive on every GBox (the freeze
assignment itself then fires the matching generator); without it,
generators whose head mentions a variable in a position the body axioms
never force can fail their own containment check.
"""

from __future__ import annotations

from dataclasses import dataclass

from .engine import EntailmentCache, GBox, Generator, enumerate_substitutions, expand_fixpoint
from .errors import NegationNotSupportedError
from .syntax import (
    Axiom,
    ConceptName,
    LanguageSpec,
    Ontology,
    RoleName,
    Substitution,
    Template,
    axiom_to_text,
    fresh_name,
    signature_of,
)

FROZEN_PREFIX = "__frozen_"


# ---------------------------------------------------------------------------
# grounding
# ---------------------------------------------------------------------------


def ground_generator(gen: Generator, lang: LanguageSpec) -> list[Generator]:
    """All instantiations of ``gen`` over ``lang``, duplicates removed.

    Ground generators keep the original name suffixed with the index of
    the substitution that produced them.
    """
    out: list[Generator] = []
    seen: set[tuple] = set()
    for i, sub in enumerate(enumerate_substitutions(gen.variables, lang)):
        grounded = Generator(
            f"{gen.name}_{i}",
            gen.positive_body.substitute(sub),
            tuple(neg.substitute(sub) for neg in gen.negative_bodies),
            gen.head.substitute(sub))
        key = (grounded.positive_body, grounded.negative_bodies, grounded.head)
        if key not in seen:
            seen.add(key)
            out.append(grounded)
    return out


def ground_gbox(g: GBox, lang: LanguageSpec) -> GBox:
    return GBox(tuple(gg for gen in g.generators
                      for gg in ground_generator(gen, lang)))


# ---------------------------------------------------------------------------
# freezing
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FrozenTemplate:
    """A template with its variables replaced by reserved fresh names,
    plus the assignment that did it (reusable on other templates sharing
    the variables)."""

    ontology: Ontology
    frozen_map: Substitution


def freeze(t: Template, reserved: frozenset[str] = frozenset()) -> FrozenTemplate:
    """Replace each variable by a fresh ground name of matching type.

    Names live in the ``__frozen_`` namespace and avoid everything in
    ``reserved`` as well as the names already in the template.
    """
    vs = t.variables
    used = set(reserved) | set(signature_of(t.axioms).names)
    bindings: dict[str, object] = {}
    for var in sorted(vs.concept_vars):
        name = fresh_name(FROZEN_PREFIX + var.lstrip("?"), used)
        used.add(name)
        bindings[var] = ConceptName(name)
    for var in sorted(vs.role_vars):
        name = fresh_name(FROZEN_PREFIX + var.lstrip("?"), used)
        used.add(name)
        bindings[var] = RoleName(name)
    for var in sorted(vs.individual_vars):
        name = fresh_name(FROZEN_PREFIX + var.lstrip("?"), used)
        used.add(name)
        bindings[var] = name
    sub = Substitution(tuple(sorted(bindings.items())))
    return FrozenTemplate(t.apply(sub), sub)


def _reserved_names(lang: LanguageSpec, *gboxes: GBox) -> frozenset[str]:
    names: set[str] = set(lang.names())
    for g in gboxes:
        for gen in g.generators:
            for t in (gen.positive_body, *gen.negative_bodies, gen.head):
                names |= signature_of(t.axioms).names
    return frozenset(names)


def _frozen_language(lang: LanguageSpec, frozen_map: Substitution) -> LanguageSpec:
    concepts = list(lang.concepts)
    roles = list(lang.roles)
    individuals = list(lang.individuals)
    for _, value in frozen_map.bindings:
        if isinstance(value, ConceptName):
            concepts.append(value)
        elif isinstance(value, RoleName):
            roles.append(value)
        else:
            individuals.append(value)
    return LanguageSpec.of(concepts, roles, individuals)


# ---------------------------------------------------------------------------
# containment
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GeneratorCertificate:
    """Outcome of the frozen-body check for one generator of the
    candidate subsumee."""

    generator: str
    holds: bool
    frozen_body: Ontology
    frozen_head: Ontology
    missing: Axiom | None = None

    def describe(self) -> str:
        if self.holds:
            return f"{self.generator}: head entailed"
        return (f"{self.generator}: expansion of the frozen body does not "
                f"entail {axiom_to_text(self.missing)}")


@dataclass(frozen=True)
class ContainmentResult:
    holds: bool
    certificates: tuple[GeneratorCertificate, ...]

    def __bool__(self) -> bool:
        return self.holds


def _require_positive(g: GBox, side: str) -> None:
    for gen in g.generators:
        if gen.negative_bodies:
            raise NegationNotSupportedError(
                f"containment is defined for negation-free GBoxes; "
                f"generator {gen.name} of {side} has a negated body")


def is_contained(g1: GBox, g2: GBox, lang: LanguageSpec, *,
                 freeze_into_lang: bool = False,
                 max_steps: int | None = None,
                 cache: EntailmentCache | None = None) -> ContainmentResult:
    """Whether every ontology's fixpoint under ``g2`` entails its fixpoint
    under ``g1``, decided generator-wise on frozen bodies."""
    _require_positive(g1, "the left GBox")
    _require_positive(g2, "the right GBox")
    cache = cache or EntailmentCache()
    reserved = _reserved_names(lang, g1, g2)
    certificates: list[GeneratorCertificate] = []
    holds = True
    for gen in g1.generators:
        frozen_body = freeze(gen.positive_body, reserved)
        frozen_head = gen.head.apply(frozen_body.frozen_map)
        expansion_lang = (_frozen_language(lang, frozen_body.frozen_map)
                          if freeze_into_lang else lang)
        report = expand_fixpoint(g2, frozen_body.ontology, expansion_lang,
                                 max_steps, allow_inconsistent=True, cache=cache)
        missing = next((a for a in frozen_head
                        if not cache.entails(report.result, a)), None)
        ok = missing is None
        holds = holds and ok
        certificates.append(GeneratorCertificate(
            gen.name, ok, frozen_body.ontology, frozen_head, missing))
    return ContainmentResult(holds, tuple(certificates))


def is_equivalent_gbox(g1: GBox, g2: GBox, lang: LanguageSpec, *,
                       freeze_into_lang: bool = False,
                       max_steps: int | None = None,
                       cache: EntailmentCache | None = None) -> bool:
    cache = cache or EntailmentCache()
    forward = is_contained(g1, g2, lang, freeze_into_lang=freeze_into_lang,
                           max_steps=max_steps, cache=cache)
    if not forward.holds:
        return False
    return is_contained(g2, g1, lang, freeze_into_lang=freeze_into_lang,
                        max_steps=max_steps, cache=cache).holds
