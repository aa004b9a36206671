"""Generator evaluation: matching templates against an ontology by
entailment and expanding a GBox to its fixpoint.

A generator fires for a substitution when the instantiated positive body is
entailed and no instantiated negative body is; firing contributes the
instantiated head.  One expansion step collects the contributions of every
generator under every substitution, all judged against the ontology as it
was at the start of the step.  The fixpoint iterates steps until the
canonical axiom set stops changing, which for a finite language always
happens: steps only ever add instances drawn from a fixed finite pool.

Substitution enumeration is canonical (variable names sorted, candidate
values in language order), so expansion results and logs are deterministic
and independent of generator order.

Entailment checks are memoized per (ontology, axiom); an axiom that is a
member of the ontology is entailed without running the tableau.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator

from . import reasoner
from .errors import (
    BudgetExceededError,
    GBoxError,
    InconsistentOntologyError,
    NegationNotAcknowledgedError,
    ResourceLimitError,
    UnsafeGeneratorError,
)
from .reasoner import TableauConfig
from .syntax import (
    Axiom,
    LanguageSpec,
    Ontology,
    Substitution,
    Template,
    VarSet,
    axiom_key,
)

# ---------------------------------------------------------------------------
# rule types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Generator:
    """One rule: a positive body, optional negated bodies, and a head.

    Safety is enforced at construction: head variables and negative-body
    variables must all occur in the positive body, with consistent types
    across all parts.
    """

    name: str
    positive_body: Template
    negative_bodies: tuple[Template, ...]
    head: Template

    def __post_init__(self):
        merged = self.positive_body.variables
        for part in self.negative_bodies + (self.head,):
            merged = merged.merge(part.variables)  # raises on type conflicts
        pos = self.positive_body.variables
        if not self.head.variables.issubset(pos):
            loose = sorted(self.head.variables.names() - pos.names())
            raise UnsafeGeneratorError(
                f"generator '{self.name}': head variables {', '.join(loose)} "
                f"do not occur in the positive body")
        for i, neg in enumerate(self.negative_bodies):
            if not neg.variables.issubset(pos):
                loose = sorted(neg.variables.names() - pos.names())
                raise UnsafeGeneratorError(
                    f"generator '{self.name}': negated body {i + 1} variables "
                    f"{', '.join(loose)} do not occur in the positive body")

    @cached_property
    def variables(self) -> VarSet:
        return self.positive_body.variables

    @property
    def is_positive(self) -> bool:
        return not self.negative_bodies

    def __str__(self) -> str:
        parts = [f"{self.positive_body}"]
        parts += [f", not {neg}" for neg in self.negative_bodies]
        return f"{self.name}: {''.join(parts)} => {self.head}"


@dataclass(frozen=True)
class GBox:
    """A named, duplicate-free collection of generators."""

    generators: tuple[Generator, ...] = ()

    def __post_init__(self):
        seen = set()
        for g in self.generators:
            if g.name in seen:
                raise GBoxError(f"duplicate generator name '{g.name}'")
            seen.add(g.name)

    @property
    def has_negation(self) -> bool:
        return any(g.negative_bodies for g in self.generators)

    def __iter__(self) -> Iterator[Generator]:
        return iter(self.generators)

    def __len__(self) -> int:
        return len(self.generators)


@dataclass(frozen=True)
class AddedAxiom:
    """One axiom added during a step, with the first generator/substitution
    pair (in canonical order) that produced it."""

    axiom: Axiom
    generator: str
    substitution: Substitution


@dataclass(frozen=True)
class ExpansionReport:
    result: Ontology
    steps: int
    added_axioms: tuple[tuple[AddedAxiom, ...], ...]
    consistent: bool
    limits_hit: str | None = None

    @property
    def all_added(self) -> tuple[AddedAxiom, ...]:
        return tuple(entry for step in self.added_axioms for entry in step)


# ---------------------------------------------------------------------------
# memoized entailment
# ---------------------------------------------------------------------------


class EntailmentCache:
    """Memoizes tableau verdicts per (ontology, axiom) and per ontology.

    An optional budget caps the number of tableau runs; exceeding it raises
    BudgetExceededError rather than returning a possibly wrong answer.
    """

    def __init__(self, cfg: TableauConfig | None = None, budget: int | None = None):
        self.cfg = cfg or reasoner.DEFAULT_CONFIG
        self.budget = budget
        self.tableau_calls = 0
        self._entails: dict[tuple[Ontology, Axiom], bool] = {}
        self._consistent: dict[Ontology, bool] = {}

    def _spend(self) -> None:
        self.tableau_calls += 1
        if self.budget is not None and self.tableau_calls > self.budget:
            raise BudgetExceededError(
                f"tableau call budget of {self.budget} exceeded")

    def entails(self, o: Ontology, a: Axiom) -> bool:
        if a in o:
            return True
        key = (o, a)
        hit = self._entails.get(key)
        if hit is None:
            self._spend()
            hit = reasoner.entails_axiom(o, a, self.cfg).holds
            self._entails[key] = hit
        return hit

    def entails_all(self, o: Ontology, axioms: Iterable[Axiom]) -> bool:
        return all(self.entails(o, a) for a in axioms)

    def consistent(self, o: Ontology) -> bool:
        hit = self._consistent.get(o)
        if hit is None:
            self._spend()
            hit = reasoner.is_consistent(o, self.cfg).holds
            self._consistent[o] = hit
        return hit


# ---------------------------------------------------------------------------
# substitution enumeration and template evaluation
# ---------------------------------------------------------------------------


def enumerate_substitutions(variables: VarSet, lang: LanguageSpec) -> list[Substitution]:
    """All type-respecting substitutions over the language, in canonical
    order: variable names sorted, values in language order.

    No variables yields exactly the empty substitution.  A variable whose
    type has no language entries yields no substitutions at all.
    """
    names = sorted(variables.names())
    if not names:
        return [Substitution.empty()]
    pools = []
    for name in names:
        if name in variables.concept_vars:
            pools.append(lang.concepts)
        elif name in variables.role_vars:
            pools.append(lang.roles)
        else:
            pools.append(lang.individuals)
        if not pools[-1]:
            return []
    out = []
    for combo in itertools.product(*pools):
        out.append(Substitution(tuple(zip(names, combo))))
    return out


def eval_template(t: Template, o: Ontology, lang: LanguageSpec, *,
                  allow_inconsistent: bool = False,
                  cache: EntailmentCache | None = None) -> list[Substitution]:
    """Substitutions over the language whose instantiation of ``t`` is
    entailed by ``o``, in canonical order.

    A ground template (or an empty one) has a single candidate, the empty
    substitution.  The ontology must be consistent unless
    ``allow_inconsistent`` is set.
    """
    cache = cache or EntailmentCache()
    if not allow_inconsistent and not cache.consistent(o):
        raise InconsistentOntologyError(
            "eval over an inconsistent ontology is degenerate; "
            "pass allow_inconsistent to proceed")
    out = []
    for sub in enumerate_substitutions(t.variables, lang):
        try:
            if cache.entails_all(o, t.apply(sub)):
                out.append(sub)
        except ResourceLimitError as e:
            e.substitution = sub  # which candidate hit the limit
            raise
    return out


def satisfies_generator(o: Ontology, g: Generator, lang: LanguageSpec, *,
                        allow_inconsistent: bool = False,
                        cache: EntailmentCache | None = None) -> bool:
    """True when every unblocked match of the body has its head entailed."""
    cache = cache or EntailmentCache()
    matches = eval_template(g.positive_body, o, lang,
                            allow_inconsistent=allow_inconsistent, cache=cache)
    for sub in matches:
        if any(cache.entails_all(o, neg.apply(sub)) for neg in g.negative_bodies):
            continue
        if not cache.entails_all(o, g.head.apply(sub)):
            return False
    return True


def satisfies_gbox(o: Ontology, g: GBox, lang: LanguageSpec, *,
                   allow_inconsistent: bool = False,
                   cache: EntailmentCache | None = None) -> bool:
    cache = cache or EntailmentCache()
    return all(satisfies_generator(o, gen, lang,
                                   allow_inconsistent=allow_inconsistent,
                                   cache=cache)
               for gen in g.generators)


# ---------------------------------------------------------------------------
# expansion
# ---------------------------------------------------------------------------


def _one_step(g: GBox, o: Ontology, lang: LanguageSpec,
              cache: EntailmentCache) -> tuple[Ontology, tuple[AddedAxiom, ...]]:
    additions: dict[Axiom, AddedAxiom] = {}
    for gen in g.generators:
        for sub in eval_template(gen.positive_body, o, lang,
                                 allow_inconsistent=True, cache=cache):
            if any(cache.entails_all(o, neg.apply(sub))
                   for neg in gen.negative_bodies):
                continue
            for a in gen.head.apply(sub):
                if a not in o and a not in additions:
                    additions[a] = AddedAxiom(a, gen.name, sub)
    if not additions:
        return o, ()
    result = o.union(additions.keys())
    added = tuple(additions[a] for a in sorted(additions, key=axiom_key))
    return result, added


def one_step_expand(g: GBox, o: Ontology, lang: LanguageSpec, *,
                    allow_inconsistent: bool = False,
                    cache: EntailmentCache | None = None) -> Ontology:
    """One simultaneous expansion step; all matching is judged against the
    incoming ontology."""
    cache = cache or EntailmentCache()
    if not allow_inconsistent and not cache.consistent(o):
        raise InconsistentOntologyError(
            "expansion of an inconsistent ontology is degenerate; "
            "pass allow_inconsistent to proceed")
    return _one_step(g, o, lang, cache)[0]


def expand_fixpoint(g: GBox, o: Ontology, lang: LanguageSpec,
                    max_steps: int | None = None, *,
                    allow_inconsistent: bool = False,
                    acknowledge_negation: bool = False,
                    cache: EntailmentCache | None = None) -> ExpansionReport:
    """Iterate one-step expansion until the axiom set stops changing.

    ``steps`` counts iterations performed, including the final confirming
    one, so an already-stable input reports one step.  When ``max_steps``
    runs out before stabilization the report carries ``limits_hit``.

    For a GBox with negation the iteration is inflationary and its result
    can overshoot every minimal expansion; callers must acknowledge this
    with ``acknowledge_negation``.
    """
    cache = cache or EntailmentCache()
    if g.has_negation and not acknowledge_negation:
        raise NegationNotAcknowledgedError(
            "GBox has negated bodies; pass acknowledge_negation to accept "
            "the inflationary fixpoint semantics")
    if not allow_inconsistent and not cache.consistent(o):
        raise InconsistentOntologyError(
            "expansion of an inconsistent ontology is degenerate; "
            "pass allow_inconsistent to proceed")
    current = o
    steps = 0
    log: list[tuple[AddedAxiom, ...]] = []
    while True:
        if max_steps is not None and steps >= max_steps:
            return ExpansionReport(current, steps, tuple(log),
                                   cache.consistent(current), "max_steps")
        nxt, added = _one_step(g, current, lang, cache)
        steps += 1
        log.append(added)
        if not added:
            break
        current = nxt
    return ExpansionReport(current, steps, tuple(log), cache.consistent(current))


def check_size_bound(g: GBox, lang: LanguageSpec, report: ExpansionReport) -> bool:
    """Added-axiom count never exceeds (number of generators) times
    (language size to the power of the largest per-generator variable
    count)."""
    added = {entry.axiom for step in report.added_axioms for entry in step}
    n = max((len(gen.variables) for gen in g.generators), default=0)
    bound = len(g.generators) * (lang.size ** n)
    return len(added) <= bound
