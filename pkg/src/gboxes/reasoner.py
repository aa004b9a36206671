"""Tableau reasoner for the fragment: ALC with inverse roles and role
inclusions, GCIs allowed, no transitive roles.

Consistency is decided by a forest tableau over the ABox individuals (or a
single anonymous root when there are none).  Concepts are kept in negation
normal form.  Inclusions with a concept name on the left are unfolded lazily
when that name enters a node label; all other inclusions are internalized as
disjunctions added to every node.  Disjunctions branch chronologically;
existentials are generated only when no disjunction is open, and are subject
to equality blocking: a non-root node is blocked by a non-root ancestor with
an identical label, which keeps the procedure terminating and sound in the
presence of inverse roles.

Entailment queries reduce to inconsistency:

* ``C SubClassOf D``   -- assert ``(C and not D)(x0)`` for a fresh ``x0``;
* ``C(a)``             -- assert ``(not C)(a)``;
* ``R(a, b)``          -- assert ``B(b)`` and ``(not (R some B))(a)`` for a
                          fresh concept name ``B``;
* ``R SubRoleOf S``    -- assert ``((R some B) and (S only not B))(x0)``.

Rule application order is fixed (node creation index, then the canonical
concept order), so runs are deterministic for a given configuration.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Union

from .errors import ResourceLimitError
from .syntax import (
    And,
    Axiom,
    BOTTOM,
    Bottom,
    Concept,
    ConceptAssertion,
    ConceptInclusion,
    ConceptName,
    ConceptVar,
    Exists,
    Forall,
    Inverse,
    Not,
    Ontology,
    Or,
    Role,
    RoleAssertion,
    RoleInclusion,
    RoleName,
    TOP,
    Top,
    canonicalize_concept,
    concept_key,
    fresh_name,
    signature_of,
)

# ---------------------------------------------------------------------------
# configuration and results
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TableauConfig:
    max_nodes: int = 100_000
    blocking: str = "equality"  # the only supported strategy

    def __post_init__(self):
        if self.blocking != "equality":
            raise ValueError(f"unsupported blocking strategy: {self.blocking}")


@dataclass(frozen=True)
class EntailmentResult:
    holds: bool
    nodes_expanded: int = 0
    clash_count: int = 0


DEFAULT_CONFIG = TableauConfig()

# ---------------------------------------------------------------------------
# negation normal form
# ---------------------------------------------------------------------------


def nnf(c: Concept) -> Concept:
    if isinstance(c, (Top, Bottom, ConceptName)):
        return c
    if isinstance(c, ConceptVar):
        raise TypeError("the reasoner only accepts ground concepts")
    if isinstance(c, Not):
        return nnf_neg(c.operand)
    if isinstance(c, (And, Or)):
        return type(c)(tuple(nnf(op) for op in c.operands))
    if isinstance(c, Exists):
        return Exists(c.role, nnf(c.filler))
    if isinstance(c, Forall):
        return Forall(c.role, nnf(c.filler))
    raise TypeError(f"not a concept: {c!r}")


def nnf_neg(c: Concept) -> Concept:
    if isinstance(c, Top):
        return BOTTOM
    if isinstance(c, Bottom):
        return TOP
    if isinstance(c, ConceptName):
        return Not(c)
    if isinstance(c, ConceptVar):
        raise TypeError("the reasoner only accepts ground concepts")
    if isinstance(c, Not):
        return nnf(c.operand)
    if isinstance(c, And):
        return Or(tuple(nnf_neg(op) for op in c.operands))
    if isinstance(c, Or):
        return And(tuple(nnf_neg(op) for op in c.operands))
    if isinstance(c, Exists):
        return Forall(c.role, nnf_neg(c.filler))
    if isinstance(c, Forall):
        return Exists(c.role, nnf_neg(c.filler))
    raise TypeError(f"not a concept: {c!r}")


def _norm(c: Concept) -> Concept:
    return canonicalize_concept(nnf(c))


# ---------------------------------------------------------------------------
# preprocessing
# ---------------------------------------------------------------------------


def _inv(r: Role) -> Role:
    if isinstance(r, Inverse):
        return r.role
    return Inverse(r)


def _role_names_in_concept(c: Concept, out: set[str]) -> None:
    if isinstance(c, Not):
        _role_names_in_concept(c.operand, out)
    elif isinstance(c, (And, Or)):
        for op in c.operands:
            _role_names_in_concept(op, out)
    elif isinstance(c, (Exists, Forall)):
        r = c.role
        while isinstance(r, Inverse):
            r = r.role
        if isinstance(r, RoleName):
            out.add(r.name)
        _role_names_in_concept(c.filler, out)


class _Problem:
    """A preprocessed consistency problem."""

    def __init__(self, o: Ontology):
        self.unfold: dict[str, list[Concept]] = {}
        self.globals: list[Concept] = []
        self.assertions: list[tuple[str, Concept]] = []
        self.role_edges: list[tuple[str, str, Role]] = []
        role_names: set[str] = set()
        individuals: set[str] = set()
        inclusions: list[tuple[Role, Role]] = []

        for a in o:
            if isinstance(a, ConceptInclusion):
                _role_names_in_concept(a.lhs, role_names)
                _role_names_in_concept(a.rhs, role_names)
                if isinstance(a.lhs, ConceptName):
                    self.unfold.setdefault(a.lhs.name, []).append(_norm(a.rhs))
                elif isinstance(a.lhs, Top):
                    self.globals.append(_norm(a.rhs))
                elif isinstance(a.lhs, Bottom):
                    pass  # vacuous
                else:
                    clause = Or((nnf_neg(a.lhs), nnf(a.rhs)))
                    self.globals.append(canonicalize_concept(clause))
            elif isinstance(a, RoleInclusion):
                inclusions.append((a.lhs, a.rhs))
                for side in (a.lhs, a.rhs):
                    r = side
                    while isinstance(r, Inverse):
                        r = r.role
                    if isinstance(r, RoleName):
                        role_names.add(r.name)
            elif isinstance(a, ConceptAssertion):
                _role_names_in_concept(a.concept, role_names)
                individuals.add(a.individual)
                self.assertions.append((a.individual, _norm(a.concept)))
            elif isinstance(a, RoleAssertion):
                role_names.add(a.role)
                individuals.update((a.subject, a.object))
                self.role_edges.append((a.subject, a.object, RoleName(a.role)))

        self.individuals = sorted(individuals)
        self.super = _role_closure(role_names, inclusions)

    def super_of(self, r: Role) -> frozenset[Role]:
        return self.super.get(r, frozenset((r,)))


def _role_closure(role_names: set[str],
                  inclusions: list[tuple[Role, Role]]) -> dict[Role, frozenset[Role]]:
    nodes: set[Role] = set()
    for name in role_names:
        nodes.add(RoleName(name))
        nodes.add(Inverse(RoleName(name)))
    edges: dict[Role, set[Role]] = {}
    for lhs, rhs in inclusions:
        for a, b in ((lhs, rhs), (_inv(lhs), _inv(rhs))):
            nodes.add(a)
            nodes.add(b)
            edges.setdefault(a, set()).add(b)
    closure: dict[Role, frozenset[Role]] = {}
    for start in nodes:
        seen = {start}
        frontier = [start]
        while frontier:
            nxt = frontier.pop()
            for tgt in edges.get(nxt, ()):
                if tgt not in seen:
                    seen.add(tgt)
                    frontier.append(tgt)
        closure[start] = frozenset(seen)
    return closure


# ---------------------------------------------------------------------------
# tableau search
# ---------------------------------------------------------------------------


class _Stats:
    __slots__ = ("nodes", "clashes", "max_nodes")

    def __init__(self, max_nodes: int):
        self.nodes = 0
        self.clashes = 0
        self.max_nodes = max_nodes

    def new_node(self) -> None:
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise ResourceLimitError(
                f"tableau node limit of {self.max_nodes} exceeded", self.nodes)


class _Branch:
    __slots__ = ("labels", "out_edges", "in_edges", "parent", "universals",
                 "todo", "pending_or", "or_done", "pending_ex", "next_id", "clash")

    def __init__(self):
        self.labels: dict[int, set[Concept]] = {}
        self.out_edges: dict[int, list[tuple[Role, int]]] = {}
        self.in_edges: dict[int, list[tuple[Role, int]]] = {}
        self.parent: dict[int, int | None] = {}
        self.universals: dict[int, set[tuple[Role, Concept]]] = {}
        self.todo: list[tuple[int, tuple, Concept]] = []  # heap
        self.pending_or: set[tuple[int, Concept]] = set()
        self.or_done: set[tuple[int, Concept]] = set()
        self.pending_ex: set[tuple[int, Concept]] = set()
        self.next_id = 0
        self.clash = False

    def clone(self) -> "_Branch":
        c = _Branch.__new__(_Branch)
        c.labels = {k: set(v) for k, v in self.labels.items()}
        c.out_edges = {k: list(v) for k, v in self.out_edges.items()}
        c.in_edges = {k: list(v) for k, v in self.in_edges.items()}
        c.parent = dict(self.parent)
        c.universals = {k: set(v) for k, v in self.universals.items()}
        c.todo = list(self.todo)
        c.pending_or = set(self.pending_or)
        c.or_done = set(self.or_done)
        c.pending_ex = set(self.pending_ex)
        c.next_id = self.next_id
        c.clash = self.clash
        return c


class _Tableau:
    def __init__(self, problem: _Problem, stats: _Stats):
        self.problem = problem
        self.stats = stats

    # -- state manipulation -------------------------------------------------

    def new_node(self, br: _Branch, parent: int | None) -> int:
        self.stats.new_node()
        nid = br.next_id
        br.next_id += 1
        br.labels[nid] = set()
        br.out_edges[nid] = []
        br.in_edges[nid] = []
        br.parent[nid] = parent
        br.universals[nid] = set()
        for g in self.problem.globals:
            self.add(br, nid, g)
        return nid

    def add(self, br: _Branch, node: int, c: Concept) -> None:
        label = br.labels[node]
        if c in label:
            return
        label.add(c)
        if isinstance(c, Bottom):
            br.clash = True
            return
        if isinstance(c, ConceptName) and Not(c) in label:
            br.clash = True
            return
        if isinstance(c, Not) and c.operand in label:
            br.clash = True
            return
        heapq.heappush(br.todo, (node, concept_key(c), c))

    def add_edge(self, br: _Branch, src: int, dst: int, role: Role) -> None:
        br.out_edges[src].append((role, dst))
        br.in_edges[dst].append((role, src))
        sup = self.problem.super_of(role)
        for s, filler in br.universals[src]:
            if s in sup:
                self.add(br, dst, filler)
        sup_inv = self.problem.super_of(_inv(role))
        for s, filler in br.universals[dst]:
            if s in sup_inv:
                self.add(br, src, filler)

    # -- rule application ---------------------------------------------------

    def saturate(self, br: _Branch) -> None:
        while br.todo and not br.clash:
            node, _, c = heapq.heappop(br.todo)
            if isinstance(c, ConceptName):
                for d in self.problem.unfold.get(c.name, ()):
                    self.add(br, node, d)
            elif isinstance(c, And):
                for op in c.operands:
                    self.add(br, node, op)
            elif isinstance(c, Or):
                if (node, c) not in br.or_done:
                    br.pending_or.add((node, c))
            elif isinstance(c, Exists):
                br.pending_ex.add((node, c))
            elif isinstance(c, Forall):
                br.universals[node].add((c.role, c.filler))
                sup_sets = self.problem.super_of
                for role, dst in br.out_edges[node]:
                    if c.role in sup_sets(role):
                        self.add(br, dst, c.filler)
                for role, src in br.in_edges[node]:
                    if c.role in sup_sets(_inv(role)):
                        self.add(br, src, c.filler)
            # Top, Not, Bottom need no decomposition.

    def pick_disjunction(self, br: _Branch) -> tuple[int, Concept] | None:
        for node, c in sorted(br.pending_or, key=lambda nc: (nc[0], concept_key(nc[1]))):
            if (node, c) in br.or_done:
                br.pending_or.discard((node, c))
                continue
            if any(op in br.labels[node] for op in c.operands):
                br.pending_or.discard((node, c))
                br.or_done.add((node, c))
                continue
            return node, c
        return None

    def _witnessed(self, br: _Branch, node: int, ex: Exists) -> bool:
        sup = self.problem.super_of
        for role, dst in br.out_edges[node]:
            if ex.role in sup(role) and ex.filler in br.labels[dst]:
                return True
        for role, src in br.in_edges[node]:
            if ex.role in sup(_inv(role)) and ex.filler in br.labels[src]:
                return True
        return False

    def _blocked(self, br: _Branch, node: int) -> bool:
        """Equality blocking: some non-root ancestor of a non-root node (the
        node itself included) has a label identical to one of its own proper
        non-root ancestors."""
        z = node
        while br.parent[z] is not None:
            anc = br.parent[z]
            while anc is not None:
                if br.parent[anc] is not None and br.labels[anc] == br.labels[z]:
                    return True
                anc = br.parent[anc]
            z = br.parent[z]
        return False

    def apply_existential(self, br: _Branch) -> bool:
        for node, c in sorted(br.pending_ex, key=lambda nc: (nc[0], concept_key(nc[1]))):
            assert isinstance(c, Exists)
            if self._witnessed(br, node, c):
                br.pending_ex.discard((node, c))
                continue
            if self._blocked(br, node):
                continue  # stays pending; labels may still change
            child = self.new_node(br, node)
            self.add_edge(br, node, child, c.role)
            self.add(br, child, c.filler)
            return True
        return False

    # -- search -------------------------------------------------------------

    def initial_branch(self) -> _Branch:
        br = _Branch()
        ids: dict[str, int] = {}
        for ind in self.problem.individuals:
            ids[ind] = self.new_node(br, None)
        if not ids:
            self.new_node(br, None)  # interpretations have nonempty domains
        for ind, concept in self.problem.assertions:
            self.add(br, ids[ind], concept)
        for a, b, role in self.problem.role_edges:
            self.add_edge(br, ids[a], ids[b], role)
        return br

    def run(self) -> bool:
        stack = [self.initial_branch()]
        while stack:
            br = stack.pop()
            self.saturate(br)
            if br.clash:
                self.stats.clashes += 1
                continue
            choice = self.pick_disjunction(br)
            if choice is not None:
                node, c = choice
                for op in reversed(c.operands):
                    alt = br.clone()
                    alt.pending_or.discard((node, c))
                    alt.or_done.add((node, c))
                    self.add(alt, node, op)
                    stack.append(alt)
                continue
            if self.apply_existential(br):
                stack.append(br)
                continue
            return True
        return False


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def is_consistent(o: Ontology, cfg: TableauConfig | None = None) -> EntailmentResult:
    """Decide whether the ontology has a model."""
    cfg = cfg or DEFAULT_CONFIG
    stats = _Stats(cfg.max_nodes)
    sat = _Tableau(_Problem(o), stats).run()
    return EntailmentResult(sat, stats.nodes, stats.clashes)


def refutation_ontology(o: Ontology, a: Axiom) -> Ontology:
    """The ontology whose inconsistency is equivalent to ``o`` entailing ``a``."""
    sig_o = signature_of(o.axioms)
    sig_a = signature_of([a])
    used_concepts = sig_o.concept_names | sig_a.concept_names
    used_inds = sig_o.individuals | sig_a.individuals
    if isinstance(a, ConceptInclusion):
        x0 = fresh_name("_q_x", used_inds)
        extra: list[Axiom] = [ConceptAssertion(And((a.lhs, Not(a.rhs))), x0)]
    elif isinstance(a, ConceptAssertion):
        extra = [ConceptAssertion(Not(a.concept), a.individual)]
    elif isinstance(a, RoleAssertion):
        b = ConceptName(fresh_name("_q_B", used_concepts))
        extra = [ConceptAssertion(b, a.object),
                 ConceptAssertion(Not(Exists(RoleName(a.role), b)), a.subject)]
    elif isinstance(a, RoleInclusion):
        x0 = fresh_name("_q_x", used_inds)
        b = ConceptName(fresh_name("_q_B", used_concepts))
        extra = [ConceptAssertion(And((Exists(a.lhs, b), Forall(a.rhs, Not(b)))), x0)]
    else:
        raise TypeError(f"not an axiom: {a!r}")
    return o.union(extra)


def entails_axiom(o: Ontology, a: Axiom,
                  cfg: TableauConfig | None = None) -> EntailmentResult:
    """Decide whether the ontology entails the (ground) axiom."""
    cfg = cfg or DEFAULT_CONFIG
    stats = _Stats(cfg.max_nodes)
    sat = _Tableau(_Problem(refutation_ontology(o, a)), stats).run()
    return EntailmentResult(not sat, stats.nodes, stats.clashes)


def entails_ontology(o: Ontology, target: Union[Ontology, Iterable[Axiom]],
                     cfg: TableauConfig | None = None) -> EntailmentResult:
    """Conjunctive entailment of every axiom of ``target``; an empty target
    is vacuously entailed."""
    axioms = target.axioms if isinstance(target, Ontology) else tuple(target)
    nodes = 0
    clashes = 0
    for a in axioms:
        r = entails_axiom(o, a, cfg)
        nodes += r.nodes_expanded
        clashes += r.clash_count
        if not r.holds:
            return EntailmentResult(False, nodes, clashes)
    return EntailmentResult(True, nodes, clashes)


def equivalent(o1: Ontology, o2: Ontology, cfg: TableauConfig | None = None) -> bool:
    """Mutual entailment."""
    return (entails_ontology(o1, o2, cfg).holds
            and entails_ontology(o2, o1, cfg).holds)
