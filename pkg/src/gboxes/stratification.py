"""Dependency analysis for GBoxes with negation.

A template S-set *activates* a template T when some instantiation of every
member of S, added to the ontology, makes some instantiation of T entailed.
Activation drives everything here:

* a GBox is *semi-positive* when no negative body template is activated by
  any subset of the head templates (the ontology alone counts, via the
  empty subset);
* the *precedence graph* has the GBox's templates as nodes, identified up
  to variable renaming.  Each generator adds a positive edge from its
  positive body to its head and a negative edge from each negated body to
  its head; additionally each member of a minimal head-subset activating a
  body template gets an edge to that template, with the polarity of the
  body position;
* a GBox is *stratifiable* when no precedence cycle goes through a negative
  edge; strongly connected components then yield the most granular strata,
  and stratified evaluation runs the per-stratum fixpoints bottom-up.

Activation searches are exhaustive over the language and are guarded by a
tableau-call budget; running out raises BudgetExceededError instead of
returning a silent "no".
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .engine import (
    EntailmentCache,
    ExpansionReport,
    GBox,
    Generator,
    enumerate_substitutions,
    expand_fixpoint,
)
from .errors import BudgetExceededError, InconsistentOntologyError, UnstratifiableGBoxError
from .syntax import (
    ConceptVar,
    LanguageSpec,
    Ontology,
    RoleVar,
    Substitution,
    Template,
    axiom_key,
    canonicalize_axiom,
    substitute_axiom,
)

DEFAULT_ACTIVATION_BUDGET = 1_000_000
DEFAULT_HEADS_BUDGET = 12

POSITIVE = "positive"
NEGATIVE = "negative"

# ---------------------------------------------------------------------------
# template identity up to variable renaming
# ---------------------------------------------------------------------------


def template_identity_key(t: Template) -> tuple:
    """A key equal for exactly the templates that coincide after a
    type-respecting renaming of variables.

    Computed as the least canonical axiom-key tuple over all renamings into
    positional placeholder names; per-type variable counts stay small, so
    trying every permutation is fine.
    """
    vs = t.variables
    best: tuple | None = None
    concept_names = sorted(vs.concept_vars)
    role_names = sorted(vs.role_vars)
    ind_names = sorted(vs.individual_vars)
    # NUL-prefixed individual placeholders cannot collide with parseable
    # ground names; concept and role placeholders stay variables, where the
    # leading "?" already separates them from ground names.
    for c_perm in itertools.permutations(range(len(concept_names))):
        for r_perm in itertools.permutations(range(len(role_names))):
            for i_perm in itertools.permutations(range(len(ind_names))):
                mapping: dict[str, object] = {}
                for name, idx in zip(concept_names, c_perm):
                    mapping[name] = ConceptVar(f"?\x00c{idx}")
                for name, idx in zip(role_names, r_perm):
                    mapping[name] = RoleVar(f"?\x00r{idx}")
                for name, idx in zip(ind_names, i_perm):
                    mapping[name] = f"\x00i{idx}"
                sub = Substitution(tuple(sorted(mapping.items())))
                key = tuple(sorted(
                    axiom_key(canonicalize_axiom(substitute_axiom(a, sub)))
                    for a in t.axioms))
                if best is None or key < best:
                    best = key
    return best if best is not None else ()


# ---------------------------------------------------------------------------
# activation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ActivationResult:
    activated: bool
    # instantiations of the activating templates, then the activated one
    witness: tuple[tuple[Substitution, ...], Substitution] | None = None


def activates(s: Sequence[Template], t: Template, o: Ontology,
              lang: LanguageSpec, *,
              cache: EntailmentCache | None = None,
              budget: int | None = DEFAULT_ACTIVATION_BUDGET) -> ActivationResult:
    """Whether instantiating every template of ``s`` (under some choice of
    substitutions) makes some instantiation of ``t`` entailed."""
    cache = cache or EntailmentCache(budget=budget)
    templates = _dedup_templates(s)
    target_subs = enumerate_substitutions(t.variables, lang)
    if not target_subs:
        return ActivationResult(False)
    member_subs: list[list[Substitution]] = []
    for member in templates:
        subs = enumerate_substitutions(member.variables, lang)
        if not subs:
            return ActivationResult(False)  # a member cannot be instantiated
        member_subs.append(subs)

    # The ontology alone sufficing is the cheapest witness: entailment is
    # monotone, so any instantiation of the members can be bolted on.
    for sub in target_subs:
        if cache.entails_all(o, t.apply(sub)):
            first = tuple(subs[0] for subs in member_subs)
            return ActivationResult(True, (first, sub))

    for combo in itertools.product(*member_subs):
        extended = o
        for member, sub in zip(templates, combo):
            extended = extended.union(member.apply(sub))
        if extended == o:
            continue  # already covered by the ontology-alone pass
        for sub in target_subs:
            if cache.entails_all(extended, t.apply(sub)):
                return ActivationResult(True, (tuple(combo), sub))
    return ActivationResult(False)


def _dedup_templates(templates: Iterable[Template]) -> tuple[Template, ...]:
    seen: dict[tuple, Template] = {}
    for t in templates:
        seen.setdefault(template_identity_key(t), t)
    return tuple(seen[k] for k in sorted(seen))


def minimal_activating_sets(t: Template, heads: Sequence[Template],
                            o: Ontology, lang: LanguageSpec, *,
                            cache: EntailmentCache | None = None,
                            budget: int | None = DEFAULT_ACTIVATION_BUDGET,
                            max_heads: int = DEFAULT_HEADS_BUDGET
                            ) -> list[tuple[Template, ...]]:
    """All inclusion-minimal subsets of ``heads`` that activate ``t``,
    ordered by size.  The empty set appears alone when the ontology already
    activates ``t``."""
    cache = cache or EntailmentCache(budget=budget)
    pool = _dedup_templates(heads)
    if len(pool) > max_heads:
        raise BudgetExceededError(
            f"{len(pool)} distinct head templates exceed the subset-search "
            f"budget of {max_heads}")
    minimal: list[tuple[Template, ...]] = []
    for size in range(len(pool) + 1):
        for subset in itertools.combinations(pool, size):
            chosen = set(subset)
            if any(set(m) <= chosen for m in minimal):
                continue
            if activates(subset, t, o, lang, cache=cache).activated:
                minimal.append(subset)
    return minimal


# ---------------------------------------------------------------------------
# precedence graph
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PrecedenceEdge:
    src: tuple
    dst: tuple
    polarity: str  # POSITIVE or NEGATIVE


@dataclass
class PrecedenceGraph:
    """Template dependency graph; nodes are identity keys with a
    representative template kept for display."""

    nodes: dict[tuple, Template]
    edges: tuple[PrecedenceEdge, ...]

    def successors(self, key: tuple) -> list[PrecedenceEdge]:
        return [e for e in self.edges if e.src == key]

    def display(self, key: tuple) -> str:
        return str(self.nodes[key])


def build_precedence_graph(g: GBox, o: Ontology, lang: LanguageSpec, *,
                           cache: EntailmentCache | None = None,
                           budget: int | None = DEFAULT_ACTIVATION_BUDGET,
                           max_heads: int = DEFAULT_HEADS_BUDGET) -> PrecedenceGraph:
    cache = cache or EntailmentCache(budget=budget)
    nodes: dict[tuple, Template] = {}

    def intern(t: Template) -> tuple:
        key = template_identity_key(t)
        nodes.setdefault(key, t)
        return key

    edge_set: set[tuple[tuple, tuple, str]] = set()
    positive_bodies: dict[tuple, Template] = {}
    negative_bodies: dict[tuple, Template] = {}
    heads: list[Template] = []
    for gen in g.generators:
        pos_key = intern(gen.positive_body)
        head_key = intern(gen.head)
        heads.append(gen.head)
        positive_bodies.setdefault(pos_key, gen.positive_body)
        edge_set.add((pos_key, head_key, POSITIVE))
        for neg in gen.negative_bodies:
            neg_key = intern(neg)
            negative_bodies.setdefault(neg_key, neg)
            edge_set.add((neg_key, head_key, NEGATIVE))

    # Activation edges; minimal sets are polarity-independent, so they are
    # computed once per distinct body template.
    minsets = _body_minimal_sets(g, o, lang, cache, max_heads)
    for bodies, polarity in ((positive_bodies, POSITIVE), (negative_bodies, NEGATIVE)):
        for key in bodies:
            for subset in minsets[key]:
                for member in subset:
                    edge_set.add((intern(member), key, polarity))

    edges = tuple(PrecedenceEdge(*e) for e in sorted(edge_set))
    ordered_nodes = {k: nodes[k] for k in sorted(nodes)}
    return PrecedenceGraph(ordered_nodes, edges)


def is_semi_positive(g: GBox, o: Ontology, lang: LanguageSpec, *,
                     cache: EntailmentCache | None = None,
                     budget: int | None = DEFAULT_ACTIVATION_BUDGET) -> bool:
    """Head templates never flip a negation check: no instantiation of a
    negative body template becomes entailed through head instances unless
    the ontology already entails it.

    An instantiation the ontology entails on its own stays entailed as the
    ontology grows, so it cannot make evaluation order-dependent and does
    not count against semi-positivity.  Activation is monotone in the
    activating set once every member is instantiable, so checking all
    instantiable heads at once covers every subset.
    """
    cache = cache or EntailmentCache(budget=budget)
    instantiable = _dedup_templates(
        gen.head for gen in g.generators
        if enumerate_substitutions(gen.head.variables, lang))
    negatives = _dedup_templates(
        neg for gen in g.generators for neg in gen.negative_bodies)
    for neg in negatives:
        if _newly_activated(instantiable, neg, o, lang, cache) is not None:
            return False
    return True


def _newly_activated(s: Sequence[Template], t: Template, o: Ontology,
                     lang: LanguageSpec, cache: EntailmentCache
                     ) -> Substitution | None:
    """An instantiation of ``t`` entailed with the members of ``s``
    instantiated but not by ``o`` alone, if one exists."""
    member_subs = []
    for member in s:
        subs = enumerate_substitutions(member.variables, lang)
        if not subs:
            return None
        member_subs.append(subs)
    fresh = [sub for sub in enumerate_substitutions(t.variables, lang)
             if not cache.entails_all(o, t.apply(sub))]
    if not fresh or not member_subs:
        return None
    for combo in itertools.product(*member_subs):
        extended = o
        for member, sub in zip(s, combo):
            extended = extended.union(member.apply(sub))
        if extended == o:
            continue
        for sub in fresh:
            if cache.entails_all(extended, t.apply(sub)):
                return sub
    return None


# ---------------------------------------------------------------------------
# stratification
# ---------------------------------------------------------------------------


@dataclass
class Stratification:
    """Stratum indices (1-based) per template identity key, and the
    generator partition in stratum order."""

    levels: dict[tuple, int]
    partition: tuple[GBox, ...]
    graph: PrecedenceGraph

    def level_of(self, t: Template) -> int:
        return self.levels[template_identity_key(t)]


@dataclass(frozen=True)
class NotStratifiable:
    """Witness: a precedence cycle through at least one negative edge."""

    cycle: tuple[PrecedenceEdge, ...]


def _tarjan_sccs(nodes: list[tuple],
                 succ: dict[tuple, list[tuple]]) -> list[list[tuple]]:
    """Strongly connected components, emitted in reverse topological order."""
    index: dict[tuple, int] = {}
    low: dict[tuple, int] = {}
    on_stack: set[tuple] = set()
    stack: list[tuple] = []
    sccs: list[list[tuple]] = []
    counter = itertools.count()

    def strongconnect(v: tuple) -> None:
        work = [(v, iter(succ.get(v, ())))]
        index[v] = low[v] = next(counter)
        stack.append(v)
        on_stack.add(v)
        while work:
            node, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = next(counter)
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ.get(w, ()))))
                    advanced = True
                    break
                if w in on_stack:
                    low[node] = min(low[node], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == node:
                        break
                sccs.append(sorted(comp))

    for v in nodes:
        if v not in index:
            strongconnect(v)
    return sccs


def _negative_cycle_witness(graph: PrecedenceGraph, comp: set[tuple],
                            neg_edge: PrecedenceEdge) -> tuple[PrecedenceEdge, ...]:
    """A cycle inside ``comp`` through ``neg_edge``: the edge itself plus a
    shortest path from its target back to its source."""
    if neg_edge.dst == neg_edge.src:
        return (neg_edge,)
    succ: dict[tuple, list[PrecedenceEdge]] = {}
    for e in graph.edges:
        if e.src in comp and e.dst in comp:
            succ.setdefault(e.src, []).append(e)
    frontier = [neg_edge.dst]
    via: dict[tuple, PrecedenceEdge] = {}
    seen = {neg_edge.dst}
    while frontier:
        nxt: list[tuple] = []
        for node in frontier:
            for e in succ.get(node, ()):
                if e.dst not in seen:
                    seen.add(e.dst)
                    via[e.dst] = e
                    nxt.append(e.dst)
        frontier = nxt
        if neg_edge.src in via:
            break
    path: list[PrecedenceEdge] = []
    cursor = neg_edge.src
    while cursor != neg_edge.dst:
        e = via[cursor]
        path.append(e)
        cursor = e.src
    return (neg_edge, *reversed(path))


def stratify(g: GBox, o: Ontology, lang: LanguageSpec, *,
             cache: EntailmentCache | None = None,
             budget: int | None = DEFAULT_ACTIVATION_BUDGET,
             max_heads: int = DEFAULT_HEADS_BUDGET,
             graph: PrecedenceGraph | None = None
             ) -> Stratification | NotStratifiable:
    """Most granular stratification from the precedence graph's strongly
    connected components, or a negative-cycle witness."""
    if graph is None:
        graph = build_precedence_graph(g, o, lang, cache=cache, budget=budget,
                                       max_heads=max_heads)
    node_list = sorted(graph.nodes)
    succ: dict[tuple, list[tuple]] = {k: [] for k in node_list}
    for e in graph.edges:
        succ[e.src].append(e.dst)
    for k in succ:
        succ[k] = sorted(set(succ[k]))
    sccs = _tarjan_sccs(node_list, succ)
    comp_of: dict[tuple, int] = {}
    for i, comp in enumerate(sccs):
        for node in comp:
            comp_of[node] = i
    for e in graph.edges:
        if e.polarity == NEGATIVE and comp_of[e.src] == comp_of[e.dst]:
            comp = set(sccs[comp_of[e.src]])
            return NotStratifiable(_negative_cycle_witness(graph, comp, e))

    # Components arrive in reverse topological order; level each component
    # at the largest negative-edge count along any incoming path.
    topo = list(reversed(range(len(sccs))))
    order = {i: pos for pos, i in enumerate(topo)}
    level = {i: 1 for i in range(len(sccs))}
    for i in sorted(range(len(sccs)), key=lambda i: order[i]):
        for e in graph.edges:
            if comp_of[e.src] == i and comp_of[e.dst] != i:
                bump = 1 if e.polarity == NEGATIVE else 0
                level[comp_of[e.dst]] = max(level[comp_of[e.dst]], level[i] + bump)
    levels = {node: level[comp_of[node]] for node in node_list}
    k = max(level.values(), default=0)
    buckets: list[list[Generator]] = [[] for _ in range(k)]
    for gen in g.generators:
        head_level = levels[template_identity_key(gen.head)]
        buckets[head_level - 1].append(gen)
    partition = tuple(GBox(tuple(b)) for b in buckets)
    return Stratification(levels, partition, graph)


def stratified_expand(g: GBox, o: Ontology, lang: LanguageSpec,
                      max_steps: int | None = None, *,
                      allow_inconsistent: bool = False,
                      stratification: Stratification | None = None,
                      cache: EntailmentCache | None = None,
                      budget: int | None = DEFAULT_ACTIVATION_BUDGET
                      ) -> ExpansionReport:
    """Fixpoint expansion stratum by stratum, bottom-up.

    With an explicit ``stratification`` the given partition is used as-is,
    which lets callers compare alternative valid stratifications.
    """
    cache = cache or EntailmentCache()
    if not allow_inconsistent and not cache.consistent(o):
        raise InconsistentOntologyError(
            "expansion of an inconsistent ontology is degenerate; "
            "pass allow_inconsistent to proceed")
    if stratification is None:
        result = stratify(g, o, lang, cache=EntailmentCache(budget=budget))
        if isinstance(result, NotStratifiable):
            raise UnstratifiableGBoxError(
                "GBox admits no stratification; a precedence cycle passes "
                "through a negative edge", result.cycle)
        stratification = result
    if not stratification.partition:
        return expand_fixpoint(GBox(()), o, lang, max_steps,
                               allow_inconsistent=True, cache=cache)
    current = o
    steps = 0
    log: list = []
    remaining = max_steps
    for sub_gbox in stratification.partition:
        rep = expand_fixpoint(sub_gbox, current, lang, remaining,
                              allow_inconsistent=True,
                              acknowledge_negation=True, cache=cache)
        current = rep.result
        steps += rep.steps
        log.extend(rep.added_axioms)
        if remaining is not None:
            remaining -= rep.steps
        if rep.limits_hit:
            return ExpansionReport(current, steps, tuple(log),
                                   cache.consistent(current), rep.limits_hit)
    return ExpansionReport(current, steps, tuple(log), cache.consistent(current))


# ---------------------------------------------------------------------------
# direct condition checking (independent of the precedence graph)
# ---------------------------------------------------------------------------


def _body_minimal_sets(g: GBox, o: Ontology, lang: LanguageSpec,
                       cache: EntailmentCache, max_heads: int
                       ) -> dict[tuple, list[tuple[Template, ...]]]:
    """Minimal activating sets of H(G) per distinct body template key."""
    bodies: dict[tuple, Template] = {}
    for gen in g.generators:
        for t in (gen.positive_body, *gen.negative_bodies):
            bodies.setdefault(template_identity_key(t), t)
    heads = [gen.head for gen in g.generators]
    return {key: minimal_activating_sets(t, heads, o, lang, cache=cache,
                                         max_heads=max_heads)
            for key, t in bodies.items()}


def satisfies_stratification_conditions(
        g: GBox, levels: Mapping[tuple, int], o: Ontology, lang: LanguageSpec, *,
        cache: EntailmentCache | None = None,
        budget: int | None = DEFAULT_ACTIVATION_BUDGET,
        max_heads: int = DEFAULT_HEADS_BUDGET,
        minsets: Mapping[tuple, list[tuple[Template, ...]]] | None = None) -> bool:
    """Check a level assignment against the stratification conditions
    directly: heads no lower than positive bodies, strictly above negated
    bodies, and every body template no lower (strictly higher, when the
    body is negated) than each member of each of its minimal activating
    head-sets."""
    if minsets is None:
        cache = cache or EntailmentCache(budget=budget)
        minsets = _body_minimal_sets(g, o, lang, cache, max_heads)
    strict_positions: set[tuple[tuple, bool]] = set()
    for gen in g.generators:
        head = levels[template_identity_key(gen.head)]
        pos_key = template_identity_key(gen.positive_body)
        if head < levels[pos_key]:
            return False
        strict_positions.add((pos_key, False))
        for neg in gen.negative_bodies:
            neg_key = template_identity_key(neg)
            if head <= levels[neg_key]:
                return False
            strict_positions.add((neg_key, True))
    for key, strict in strict_positions:
        for subset in minsets[key]:
            if not subset:
                continue
            peak = max(levels[template_identity_key(m)] for m in subset)
            if (strict and levels[key] <= peak) or levels[key] < peak:
                return False
    return True


def enumerate_valid_stratifications(g: GBox, o: Ontology, lang: LanguageSpec, *,
                                    max_level: int | None = None,
                                    cache: EntailmentCache | None = None,
                                    budget: int | None = DEFAULT_ACTIVATION_BUDGET,
                                    max_heads: int = DEFAULT_HEADS_BUDGET
                                    ) -> list[dict[tuple, int]]:
    """Every level assignment over the GBox's templates satisfying the
    stratification conditions, checked directly rather than via the
    precedence graph.  Exponential; test-sized inputs only."""
    cache = cache or EntailmentCache(budget=budget)
    keys: dict[tuple, Template] = {}
    for gen in g.generators:
        for t in (gen.positive_body, *gen.negative_bodies, gen.head):
            keys.setdefault(template_identity_key(t), t)
    node_keys = sorted(keys)
    if not node_keys:
        return [{}]
    minsets = _body_minimal_sets(g, o, lang, cache, max_heads)
    limit = max_level if max_level is not None else len(node_keys)
    out = []
    for combo in itertools.product(range(1, limit + 1), repeat=len(node_keys)):
        v = dict(zip(node_keys, combo))
        if satisfies_stratification_conditions(g, v, o, lang, minsets=minsets):
            out.append(v)
    return out


def partition_for_levels(g: GBox, levels: Mapping[tuple, int],
                         graph: PrecedenceGraph | None = None) -> Stratification:
    """Package an explicit level assignment as a Stratification."""
    k = max(levels.values(), default=0)
    buckets: list[list[Generator]] = [[] for _ in range(k)]
    for gen in g.generators:
        buckets[levels[template_identity_key(gen.head)] - 1].append(gen)
    partition = tuple(GBox(tuple(b)) for b in buckets)
    if graph is None:
        graph = PrecedenceGraph({}, ())
    return Stratification(dict(levels), partition, graph)
