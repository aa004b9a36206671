"""Brute-force test instruments: finite-model search and a naive expansion.

``find_model_upto`` enumerates every finite interpretation over the
ontology's signature up to a domain size, in a fixed lexicographic order
(domain sizes ascending; individual assignments, then concept extensions,
then role extensions, each as ascending bit-vectors over sorted names), and
returns the first model.  The search space is guarded: beyond a configured
number of interpretations it refuses to run.

``oracle_entails`` reuses the reasoner's query reductions and searches for a
countermodel.  Finding one within ``max_size`` is a definite NotEntailed.
Exhausting every size up to a sound finite-model bound without finding one
is a definite Entailed; the bound is ``max(1, #individuals)`` for role-free
inputs and ``#individuals + 2**(#concept names + #quantified subconcepts)``
otherwise, capped at 2**12.  Anything else is Unknown.

``naive_expand`` is a deliberately simple second implementation of positive
GBox expansion: ground every generator up front, then rescan the ground
rules one at a time, adding a head as soon as its body is entailed, until a
full pass adds nothing.  It shares only the tableau with the engine, not
the iteration strategy.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

from . import reasoner
from .engine import GBox, enumerate_substitutions
from .errors import BudgetExceededError, NegationNotSupportedError
from .syntax import (
    And,
    Axiom,
    Bottom,
    Concept,
    ConceptAssertion,
    ConceptInclusion,
    ConceptName,
    Exists,
    Forall,
    Inverse,
    LanguageSpec,
    Not,
    Ontology,
    Or,
    Role,
    RoleAssertion,
    RoleInclusion,
    RoleName,
    Top,
    signature_of,
)

ENUMERATION_GUARD = 10_000_000
FILTRATION_CAP = 2 ** 12


class Verdict(enum.Enum):
    ENTAILED = "entailed"
    NOT_ENTAILED = "not_entailed"
    UNKNOWN = "unknown"


@dataclass
class FiniteInterpretation:
    """An interpretation over domain {0, ..., size-1}."""

    size: int
    concept_ext: dict[str, frozenset[int]]
    role_ext: dict[str, frozenset[tuple[int, int]]]
    individual_map: dict[str, int]

    # -- evaluation ---------------------------------------------------------

    def eval_concept(self, c: Concept) -> frozenset[int]:
        domain = frozenset(range(self.size))
        if isinstance(c, Top):
            return domain
        if isinstance(c, Bottom):
            return frozenset()
        if isinstance(c, ConceptName):
            return self.concept_ext.get(c.name, frozenset())
        if isinstance(c, Not):
            return domain - self.eval_concept(c.operand)
        if isinstance(c, And):
            out = domain
            for op in c.operands:
                out = out & self.eval_concept(op)
            return out
        if isinstance(c, Or):
            out: frozenset[int] = frozenset()
            for op in c.operands:
                out = out | self.eval_concept(op)
            return out
        if isinstance(c, Exists):
            pairs = self.eval_role(c.role)
            filler = self.eval_concept(c.filler)
            return frozenset(x for x, y in pairs if y in filler)
        if isinstance(c, Forall):
            pairs = self.eval_role(c.role)
            filler = self.eval_concept(c.filler)
            bad = frozenset(x for x, y in pairs if y not in filler)
            return domain - bad
        raise TypeError(f"not a ground concept: {c!r}")

    def eval_role(self, r: Role) -> frozenset[tuple[int, int]]:
        if isinstance(r, RoleName):
            return self.role_ext.get(r.name, frozenset())
        if isinstance(r, Inverse):
            return frozenset((y, x) for x, y in self.eval_role(r.role))
        raise TypeError(f"not a ground role: {r!r}")

    def satisfies_axiom(self, a: Axiom) -> bool:
        if isinstance(a, ConceptInclusion):
            return self.eval_concept(a.lhs) <= self.eval_concept(a.rhs)
        if isinstance(a, RoleInclusion):
            return self.eval_role(a.lhs) <= self.eval_role(a.rhs)
        if isinstance(a, ConceptAssertion):
            return self.individual_map[a.individual] in self.eval_concept(a.concept)
        if isinstance(a, RoleAssertion):
            pair = (self.individual_map[a.subject], self.individual_map[a.object])
            return pair in self.role_ext.get(a.role, frozenset())
        raise TypeError(f"not an axiom: {a!r}")

    def satisfies(self, o: Ontology) -> bool:
        return all(self.satisfies_axiom(a) for a in o)


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


def _bits(mask: int, width: int) -> frozenset[int]:
    return frozenset(i for i in range(width) if mask >> i & 1)


def _pair_bits(mask: int, n: int) -> frozenset[tuple[int, int]]:
    return frozenset((i, j) for i in range(n) for j in range(n)
                     if mask >> (i * n + j) & 1)


def _cost_at(n: int, n_concepts: int, n_roles: int, n_inds: int) -> float:
    exponent = n * n_concepts + n * n * n_roles
    if exponent > 60:
        return float("inf")
    return (n ** n_inds) * (2 ** exponent)


def _interpretations(n: int, concepts: list[str], roles: list[str],
                     individuals: list[str]):
    ind_space = itertools.product(range(n), repeat=len(individuals))
    for ind_combo in ind_space:
        ind_map = dict(zip(individuals, ind_combo))
        for c_masks in itertools.product(range(2 ** n), repeat=len(concepts)):
            c_ext = {name: _bits(m, n) for name, m in zip(concepts, c_masks)}
            for r_masks in itertools.product(range(2 ** (n * n)), repeat=len(roles)):
                r_ext = {name: _pair_bits(m, n) for name, m in zip(roles, r_masks)}
                yield FiniteInterpretation(n, c_ext, r_ext, ind_map)


def find_model_upto(o: Ontology, max_size: int) -> FiniteInterpretation | None:
    """First model (in enumeration order) with domain size at most
    ``max_size``, or None when there is none.  Raises BudgetExceededError
    when the search space exceeds the enumeration guard."""
    sig = signature_of(o.axioms)
    concepts = sorted(sig.concept_names)
    roles = sorted(sig.role_names)
    individuals = sorted(sig.individuals)
    total = sum(_cost_at(n, len(concepts), len(roles), len(individuals))
                for n in range(1, max_size + 1))
    if total > ENUMERATION_GUARD:
        raise BudgetExceededError(
            f"enumerating interpretations up to size {max_size} would need "
            f"{total:.0f} candidates (guard: {ENUMERATION_GUARD})")
    for n in range(1, max_size + 1):
        for interp in _interpretations(n, concepts, roles, individuals):
            if interp.satisfies(o):
                return interp
    return None


def _quantified_subconcepts(c: Concept, out: set[Concept]) -> None:
    if isinstance(c, Not):
        _quantified_subconcepts(c.operand, out)
    elif isinstance(c, (And, Or)):
        for op in c.operands:
            _quantified_subconcepts(op, out)
    elif isinstance(c, (Exists, Forall)):
        out.add(c)
        _quantified_subconcepts(c.filler, out)


def filtration_bound(o: Ontology) -> int:
    """A domain size at which model existence is decided for ``o``."""
    sig = signature_of(o.axioms)
    n_inds = len(sig.individuals)
    quantified: set[Concept] = set()
    for a in o:
        if isinstance(a, ConceptInclusion):
            _quantified_subconcepts(a.lhs, quantified)
            _quantified_subconcepts(a.rhs, quantified)
        elif isinstance(a, ConceptAssertion):
            _quantified_subconcepts(a.concept, quantified)
    if not sig.role_names and not quantified:
        return max(1, n_inds)
    exponent = len(sig.concept_names) + len(quantified)
    if exponent > 12:
        return FILTRATION_CAP + n_inds
    return min(FILTRATION_CAP, n_inds + 2 ** exponent)


def oracle_entails(o: Ontology, a: Axiom, max_size: int) -> Verdict:
    """Bounded-model entailment check; agrees with the tableau whenever it
    is not Unknown."""
    refutation = reasoner.refutation_ontology(o, a)
    sig = signature_of(refutation.axioms)
    concepts = sorted(sig.concept_names)
    roles = sorted(sig.role_names)
    individuals = sorted(sig.individuals)
    bound = filtration_bound(refutation)

    budget = float(ENUMERATION_GUARD)
    exhausted = 0  # largest fully enumerated size
    for n in range(1, max_size + 1):
        cost = _cost_at(n, len(concepts), len(roles), len(individuals))
        if cost > budget:
            break
        budget -= cost
        for interp in _interpretations(n, concepts, roles, individuals):
            if interp.satisfies(refutation):
                return Verdict.NOT_ENTAILED
        exhausted = n
    if exhausted >= bound:
        return Verdict.ENTAILED
    return Verdict.UNKNOWN


# ---------------------------------------------------------------------------
# naive expansion
# ---------------------------------------------------------------------------


def naive_expand(g: GBox, o: Ontology, lang: LanguageSpec,
                 cfg: reasoner.TableauConfig | None = None) -> Ontology:
    """Ground-first, one-rule-at-a-time expansion of a positive GBox."""
    if g.has_negation:
        raise NegationNotSupportedError(
            "naive_expand only handles negation-free GBoxes")
    ground_rules: list[tuple[Ontology, Ontology]] = []
    for gen in g.generators:
        for sub in enumerate_substitutions(gen.variables, lang):
            ground_rules.append((gen.positive_body.apply(sub),
                                 gen.head.apply(sub)))
    current = o
    changed = True
    while changed:
        changed = False
        for body, head in ground_rules:
            if all(a in current.axiom_set for a in head):
                continue
            if reasoner.entails_ontology(current, body, cfg).holds:
                current = current.union(head)
                changed = True
    return current
