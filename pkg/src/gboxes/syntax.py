"""Core syntax for the supported description-logic fragment.

Concept and role expressions cover ALC plus inverse roles; axioms cover
concept/role inclusions and ABox assertions.  An Ontology is a finite set of
ground axioms, a Template is a finite set of axioms that may contain typed
variables, and a LanguageSpec fixes the finite ranges that substitutions for
those variables may draw from.

Conventions that the rest of the package relies on:

* every value is immutable and hashable;
* variable names keep their leading ``?`` (``ConceptVar("?X")``, individual
  variable ``"?X"``), ground individuals are plain names;
* axiom containers hold canonically sorted, duplicate-free tuples, so
  structural equality is set equality and serialization is deterministic;
* ``canonicalize_*`` flattens nested conjunctions/disjunctions, removes
  duplicate operands, sorts by a fixed total order, and collapses double
  negation and double inverse.  It is idempotent and purely syntactic: no
  logical simplification beyond the above is performed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Union

from .errors import (
    NotGroundError,
    SubstitutionTypeError,
    UnboundVariableError,
    VariableTypeError,
)

# ---------------------------------------------------------------------------
# concept and role expressions
# ---------------------------------------------------------------------------


class Concept:
    """Base class for concept expressions."""

    def __str__(self) -> str:
        return concept_to_text(self)


class Role:
    """Base class for role expressions."""

    def __str__(self) -> str:
        return role_to_text(self)


@dataclass(frozen=True)
class ConceptName(Concept):
    name: str


@dataclass(frozen=True)
class ConceptVar(Concept):
    name: str  # includes the leading '?'


@dataclass(frozen=True)
class Top(Concept):
    pass


@dataclass(frozen=True)
class Bottom(Concept):
    pass


@dataclass(frozen=True)
class Not(Concept):
    operand: Concept


@dataclass(frozen=True)
class And(Concept):
    operands: tuple[Concept, ...]


@dataclass(frozen=True)
class Or(Concept):
    operands: tuple[Concept, ...]


@dataclass(frozen=True)
class Exists(Concept):
    role: Role
    filler: Concept


@dataclass(frozen=True)
class Forall(Concept):
    role: Role
    filler: Concept


@dataclass(frozen=True)
class RoleName(Role):
    name: str


@dataclass(frozen=True)
class Inverse(Role):
    role: Role  # canonical form wraps a RoleName


@dataclass(frozen=True)
class RoleVar(Role):
    name: str  # includes the leading '?'


TOP = Top()
BOTTOM = Bottom()


def is_individual_var(name: str) -> bool:
    return name.startswith("?")


# ---------------------------------------------------------------------------
# axioms
# ---------------------------------------------------------------------------


class Axiom:
    """Base class for axioms."""

    def __str__(self) -> str:
        return axiom_to_text(self)


@dataclass(frozen=True)
class ConceptInclusion(Axiom):
    lhs: Concept
    rhs: Concept


@dataclass(frozen=True)
class RoleInclusion(Axiom):
    lhs: Role
    rhs: Role


@dataclass(frozen=True)
class ConceptAssertion(Axiom):
    concept: Concept
    individual: str


@dataclass(frozen=True)
class RoleAssertion(Axiom):
    role: str  # a role name; the grammar allows no variables or inverses here
    subject: str
    object: str


# ---------------------------------------------------------------------------
# total order used for canonical sorting
# ---------------------------------------------------------------------------


def concept_key(c: Concept) -> tuple:
    if isinstance(c, Top):
        return (0,)
    if isinstance(c, Bottom):
        return (1,)
    if isinstance(c, ConceptName):
        return (2, c.name)
    if isinstance(c, ConceptVar):
        return (3, c.name)
    if isinstance(c, Not):
        return (4, concept_key(c.operand))
    if isinstance(c, And):
        return (5,) + tuple(concept_key(x) for x in c.operands)
    if isinstance(c, Or):
        return (6,) + tuple(concept_key(x) for x in c.operands)
    if isinstance(c, Exists):
        return (7, role_key(c.role), concept_key(c.filler))
    if isinstance(c, Forall):
        return (8, role_key(c.role), concept_key(c.filler))
    raise TypeError(f"not a concept: {c!r}")


def role_key(r: Role) -> tuple:
    if isinstance(r, RoleName):
        return (0, r.name)
    if isinstance(r, Inverse):
        return (1, role_key(r.role))
    if isinstance(r, RoleVar):
        return (2, r.name)
    raise TypeError(f"not a role: {r!r}")


def axiom_key(a: Axiom) -> tuple:
    if isinstance(a, ConceptInclusion):
        return (0, concept_key(a.lhs), concept_key(a.rhs))
    if isinstance(a, RoleInclusion):
        return (1, role_key(a.lhs), role_key(a.rhs))
    if isinstance(a, ConceptAssertion):
        return (2, concept_key(a.concept), a.individual)
    if isinstance(a, RoleAssertion):
        return (3, a.role, a.subject, a.object)
    raise TypeError(f"not an axiom: {a!r}")


# ---------------------------------------------------------------------------
# canonicalization
# ---------------------------------------------------------------------------


def canonicalize_role(r: Role) -> Role:
    if isinstance(r, (RoleName, RoleVar)):
        return r
    if isinstance(r, Inverse):
        inner = canonicalize_role(r.role)
        if isinstance(inner, Inverse):
            return inner.role
        return Inverse(inner)
    raise TypeError(f"not a role: {r!r}")


def canonicalize_concept(c: Concept) -> Concept:
    if isinstance(c, (ConceptName, ConceptVar, Top, Bottom)):
        return c
    if isinstance(c, Not):
        inner = canonicalize_concept(c.operand)
        if isinstance(inner, Not):
            return inner.operand
        return Not(inner)
    if isinstance(c, (And, Or)):
        flat: list[Concept] = []
        for op in c.operands:
            cop = canonicalize_concept(op)
            if isinstance(cop, type(c)):
                flat.extend(cop.operands)  # nested operands are canonical
            else:
                flat.append(cop)
        if not flat:
            raise ValueError("conjunction/disjunction needs operands")
        dedup: dict[tuple, Concept] = {}
        for op in flat:
            dedup.setdefault(concept_key(op), op)
        ops = tuple(dedup[k] for k in sorted(dedup))
        if len(ops) == 1:
            return ops[0]
        return type(c)(ops)
    if isinstance(c, Exists):
        return Exists(canonicalize_role(c.role), canonicalize_concept(c.filler))
    if isinstance(c, Forall):
        return Forall(canonicalize_role(c.role), canonicalize_concept(c.filler))
    raise TypeError(f"not a concept: {c!r}")


def canonicalize_axiom(a: Axiom) -> Axiom:
    if isinstance(a, ConceptInclusion):
        return ConceptInclusion(canonicalize_concept(a.lhs), canonicalize_concept(a.rhs))
    if isinstance(a, RoleInclusion):
        return RoleInclusion(canonicalize_role(a.lhs), canonicalize_role(a.rhs))
    if isinstance(a, ConceptAssertion):
        return ConceptAssertion(canonicalize_concept(a.concept), a.individual)
    if isinstance(a, RoleAssertion):
        return a
    raise TypeError(f"not an axiom: {a!r}")


def _canonical_axiom_tuple(axioms: Iterable[Axiom]) -> tuple[Axiom, ...]:
    dedup: dict[tuple, Axiom] = {}
    for a in axioms:
        ca = canonicalize_axiom(a)
        dedup.setdefault(axiom_key(ca), ca)
    return tuple(dedup[k] for k in sorted(dedup))


# ---------------------------------------------------------------------------
# variables and their types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VarSet:
    """Variables split by the type their syntactic positions impose."""

    concept_vars: frozenset[str] = frozenset()
    role_vars: frozenset[str] = frozenset()
    individual_vars: frozenset[str] = frozenset()

    def names(self) -> frozenset[str]:
        return self.concept_vars | self.role_vars | self.individual_vars

    def __len__(self) -> int:
        return len(self.concept_vars) + len(self.role_vars) + len(self.individual_vars)

    def is_empty(self) -> bool:
        return len(self) == 0

    def issubset(self, other: "VarSet") -> bool:
        return (self.concept_vars <= other.concept_vars
                and self.role_vars <= other.role_vars
                and self.individual_vars <= other.individual_vars)

    def merge(self, other: "VarSet") -> "VarSet":
        merged = VarSet(self.concept_vars | other.concept_vars,
                        self.role_vars | other.role_vars,
                        self.individual_vars | other.individual_vars)
        seen: dict[str, str] = {}
        for kind, names in (("concept", merged.concept_vars),
                            ("role", merged.role_vars),
                            ("individual", merged.individual_vars)):
            for name in names:
                if name in seen and seen[name] != kind:
                    raise VariableTypeError(
                        f"variable {name} is used both as {seen[name]} and as {kind}")
                seen[name] = kind
        return merged


def concept_variables(c: Concept) -> VarSet:
    concepts: set[str] = set()
    roles: set[str] = set()

    def walk_role(r: Role) -> None:
        if isinstance(r, RoleVar):
            roles.add(r.name)
        elif isinstance(r, Inverse):
            walk_role(r.role)

    def walk(x: Concept) -> None:
        if isinstance(x, ConceptVar):
            concepts.add(x.name)
        elif isinstance(x, Not):
            walk(x.operand)
        elif isinstance(x, (And, Or)):
            for op in x.operands:
                walk(op)
        elif isinstance(x, (Exists, Forall)):
            walk_role(x.role)
            walk(x.filler)

    walk(c)
    vs = VarSet(frozenset(concepts), frozenset(roles), frozenset())
    return VarSet().merge(vs)  # merge re-checks type consistency


def role_variables(r: Role) -> VarSet:
    if isinstance(r, RoleVar):
        return VarSet(role_vars=frozenset({r.name}))
    if isinstance(r, Inverse):
        return role_variables(r.role)
    return VarSet()


def axiom_variables(a: Axiom) -> VarSet:
    if isinstance(a, ConceptInclusion):
        return concept_variables(a.lhs).merge(concept_variables(a.rhs))
    if isinstance(a, RoleInclusion):
        return role_variables(a.lhs).merge(role_variables(a.rhs))
    if isinstance(a, ConceptAssertion):
        vs = concept_variables(a.concept)
        if is_individual_var(a.individual):
            vs = vs.merge(VarSet(individual_vars=frozenset({a.individual})))
        return vs
    if isinstance(a, RoleAssertion):
        inds = frozenset(n for n in (a.subject, a.object) if is_individual_var(n))
        return VarSet(individual_vars=inds)
    raise TypeError(f"not an axiom: {a!r}")


def variables_of(axioms: Iterable[Axiom]) -> VarSet:
    """Typed variables of a collection of axioms.

    The type of a variable is inferred from its syntactic positions; a name
    used in positions of different types raises VariableTypeError.
    """
    vs = VarSet()
    for a in axioms:
        vs = vs.merge(axiom_variables(a))
    return vs


# ---------------------------------------------------------------------------
# substitutions
# ---------------------------------------------------------------------------

SubstValue = Union[Concept, Role, str]


@dataclass(frozen=True)
class Substitution:
    """A finite, type-respecting map from variable names to ground values."""

    bindings: tuple[tuple[str, SubstValue], ...] = ()

    @classmethod
    def of(cls, mapping: Mapping[str, SubstValue]) -> "Substitution":
        items = []
        for name in sorted(mapping):
            value = mapping[name]
            if isinstance(value, Concept):
                value = canonicalize_concept(value)
            elif isinstance(value, Role):
                value = canonicalize_role(value)
            items.append((name, value))
        return cls(tuple(items))

    @classmethod
    def empty(cls) -> "Substitution":
        return cls(())

    def domain(self) -> frozenset[str]:
        return frozenset(name for name, _ in self.bindings)

    def value(self, name: str) -> SubstValue:
        for n, v in self.bindings:
            if n == name:
                return v
        raise UnboundVariableError(f"variable {name} is not bound")

    def as_dict(self) -> dict[str, SubstValue]:
        return dict(self.bindings)

    def restrict(self, names: Iterable[str]) -> "Substitution":
        keep = set(names)
        return Substitution(tuple((n, v) for n, v in self.bindings if n in keep))

    def __str__(self) -> str:
        if not self.bindings:
            return "{}"
        parts = []
        for n, v in self.bindings:
            parts.append(f"{n} -> {v}")
        return "{" + ", ".join(parts) + "}"


def substitute_role(r: Role, sub: Substitution) -> Role:
    if isinstance(r, RoleVar):
        v = sub.value(r.name)
        if not isinstance(v, Role):
            raise SubstitutionTypeError(
                f"variable {r.name} occurs in role position but is bound to {v!r}")
        return v
    if isinstance(r, Inverse):
        return Inverse(substitute_role(r.role, sub))
    return r


def substitute_concept(c: Concept, sub: Substitution) -> Concept:
    if isinstance(c, ConceptVar):
        v = sub.value(c.name)
        if not isinstance(v, Concept):
            raise SubstitutionTypeError(
                f"variable {c.name} occurs in concept position but is bound to {v!r}")
        return v
    if isinstance(c, Not):
        return Not(substitute_concept(c.operand, sub))
    if isinstance(c, (And, Or)):
        return type(c)(tuple(substitute_concept(op, sub) for op in c.operands))
    if isinstance(c, (Exists, Forall)):
        return type(c)(substitute_role(c.role, sub), substitute_concept(c.filler, sub))
    return c


def _substitute_individual(name: str, sub: Substitution) -> str:
    if not is_individual_var(name):
        return name
    v = sub.value(name)
    if not isinstance(v, str) or is_individual_var(v):
        raise SubstitutionTypeError(
            f"variable {name} occurs in individual position but is bound to {v!r}")
    return v


def substitute_axiom(a: Axiom, sub: Substitution) -> Axiom:
    if isinstance(a, ConceptInclusion):
        return ConceptInclusion(substitute_concept(a.lhs, sub),
                                substitute_concept(a.rhs, sub))
    if isinstance(a, RoleInclusion):
        return RoleInclusion(substitute_role(a.lhs, sub), substitute_role(a.rhs, sub))
    if isinstance(a, ConceptAssertion):
        return ConceptAssertion(substitute_concept(a.concept, sub),
                                _substitute_individual(a.individual, sub))
    if isinstance(a, RoleAssertion):
        return RoleAssertion(a.role,
                             _substitute_individual(a.subject, sub),
                             _substitute_individual(a.object, sub))
    raise TypeError(f"not an axiom: {a!r}")


# ---------------------------------------------------------------------------
# ontologies and templates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Ontology:
    """A canonical, duplicate-free, ground set of axioms."""

    axioms: tuple[Axiom, ...] = ()

    @classmethod
    def of(cls, axioms: Iterable[Axiom]) -> "Ontology":
        canon = _canonical_axiom_tuple(axioms)
        for a in canon:
            vs = axiom_variables(a)
            if not vs.is_empty():
                raise NotGroundError(
                    f"ontologies must be ground; axiom '{a}' contains "
                    f"{', '.join(sorted(vs.names()))}")
        return cls(canon)

    @classmethod
    def _from_canonical(cls, axioms: tuple[Axiom, ...]) -> "Ontology":
        return cls(axioms)

    @cached_property
    def axiom_set(self) -> frozenset[Axiom]:
        return frozenset(self.axioms)

    def __contains__(self, a: Axiom) -> bool:
        return a in self.axiom_set

    def __iter__(self) -> Iterator[Axiom]:
        return iter(self.axioms)

    def __len__(self) -> int:
        return len(self.axioms)

    def union(self, other: Union["Ontology", Iterable[Axiom]]) -> "Ontology":
        extra = other.axioms if isinstance(other, Ontology) else tuple(other)
        if all(a in self.axiom_set for a in extra):
            return self
        return Ontology.of(self.axioms + tuple(extra))

    def difference(self, other: "Ontology") -> tuple[Axiom, ...]:
        return tuple(a for a in self.axioms if a not in other.axiom_set)

    def to_text(self) -> str:
        return "".join(axiom_to_text(a) + "\n" for a in self.axioms)


EMPTY_ONTOLOGY = Ontology()


@dataclass(frozen=True)
class Template:
    """A canonical, duplicate-free set of axioms, possibly with variables."""

    axioms: tuple[Axiom, ...] = ()

    @classmethod
    def of(cls, axioms: Iterable[Axiom]) -> "Template":
        t = cls(_canonical_axiom_tuple(axioms))
        t.variables  # force type-consistency checking at construction
        return t

    @cached_property
    def variables(self) -> VarSet:
        return variables_of(self.axioms)

    def is_ground(self) -> bool:
        return self.variables.is_empty()

    def apply(self, sub: Substitution) -> Ontology:
        return Ontology.of(substitute_axiom(a, sub) for a in self.axioms)

    def substitute(self, sub: Substitution) -> "Template":
        """Like apply, but without the groundness requirement on the
        result; bound values may themselves be variables."""
        return Template.of(substitute_axiom(a, sub) for a in self.axioms)

    def as_ontology(self) -> Ontology:
        return Ontology.of(self.axioms)

    def __iter__(self) -> Iterator[Axiom]:
        return iter(self.axioms)

    def __len__(self) -> int:
        return len(self.axioms)

    def to_text(self) -> str:
        return "".join(axiom_to_text(a) + "\n" for a in self.axioms)

    def __str__(self) -> str:
        return "{" + "; ".join(axiom_to_text(a) for a in self.axioms) + "}"


def apply_substitution(t: Template, sub: Substitution) -> Ontology:
    """Instantiate a template; the result must be ground."""
    return t.apply(sub)


# ---------------------------------------------------------------------------
# languages
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LanguageSpec:
    """Finite substitution ranges for concept, role, and individual variables.

    Entry order is preserved (after dropping duplicates) and is the
    enumeration order used everywhere, so runs are deterministic.
    """

    concepts: tuple[Concept, ...] = ()
    roles: tuple[Role, ...] = ()
    individuals: tuple[str, ...] = ()

    @classmethod
    def of(cls,
           concepts: Iterable[Concept] = (),
           roles: Iterable[Role] = (),
           individuals: Iterable[str] = ()) -> "LanguageSpec":
        cs: dict[tuple, Concept] = {}
        for c in concepts:
            cc = canonicalize_concept(c)
            vs = concept_variables(cc)
            if not vs.is_empty():
                raise NotGroundError(f"language concept entry '{cc}' contains variables")
            cs.setdefault(concept_key(cc), cc)
        rs: dict[tuple, Role] = {}
        for r in roles:
            cr = canonicalize_role(r)
            if not role_variables(cr).is_empty():
                raise NotGroundError(f"language role entry '{cr}' contains variables")
            rs.setdefault(role_key(cr), cr)
        inds: dict[str, str] = {}
        for i in individuals:
            if is_individual_var(i):
                raise NotGroundError(f"language individual entry '{i}' is a variable")
            inds.setdefault(i, i)
        return cls(tuple(cs.values()), tuple(rs.values()), tuple(inds.values()))

    @property
    def size(self) -> int:
        return len(self.concepts) + len(self.roles) + len(self.individuals)

    def extended(self,
                 concepts: Iterable[Concept] = (),
                 roles: Iterable[Role] = (),
                 individuals: Iterable[str] = ()) -> "LanguageSpec":
        return LanguageSpec.of(self.concepts + tuple(concepts),
                               self.roles + tuple(roles),
                               self.individuals + tuple(individuals))

    def names(self) -> frozenset[str]:
        """Every concept, role, and individual name mentioned by an entry."""
        out: set[str] = set(self.individuals)
        for c in self.concepts:
            out |= concept_names_of(c)
            out |= role_names_of_concept(c)
        for r in self.roles:
            out |= role_names_of_role(r)
        return frozenset(out)

    def to_text(self) -> str:
        lines = ["concepts:"]
        lines += [concept_to_text(c) for c in self.concepts]
        lines.append("roles:")
        lines += [role_to_text(r) for r in self.roles]
        lines.append("individuals:")
        lines += list(self.individuals)
        return "".join(line + "\n" for line in lines)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

# Precedence levels, loosest first.  'not' binds tighter than 'some'/'only',
# which bind tighter than 'and', which binds tighter than 'or'; the filler of
# a restriction sits at restriction level, so conjunctive fillers need parens.
_LEVEL_OR = 0
_LEVEL_AND = 1
_LEVEL_RESTRICTION = 2
_LEVEL_ATOM = 3


def _concept_level(c: Concept) -> int:
    if isinstance(c, Or):
        return _LEVEL_OR
    if isinstance(c, And):
        return _LEVEL_AND
    if isinstance(c, (Exists, Forall, Not)):
        return _LEVEL_RESTRICTION
    return _LEVEL_ATOM


def role_to_text(r: Role) -> str:
    if isinstance(r, RoleName):
        return r.name
    if isinstance(r, RoleVar):
        return r.name
    if isinstance(r, Inverse):
        return f"inverse {role_to_text(r.role)}"
    raise TypeError(f"not a role: {r!r}")


def _render_concept(c: Concept, min_level: int) -> str:
    if isinstance(c, Top):
        text = "Thing"
    elif isinstance(c, Bottom):
        text = "Nothing"
    elif isinstance(c, (ConceptName, ConceptVar)):
        text = c.name
    elif isinstance(c, Not):
        text = f"not {_render_concept(c.operand, _LEVEL_ATOM)}"
    elif isinstance(c, And):
        text = " and ".join(_render_concept(op, _LEVEL_RESTRICTION) for op in c.operands)
    elif isinstance(c, Or):
        text = " or ".join(_render_concept(op, _LEVEL_AND) for op in c.operands)
    elif isinstance(c, Exists):
        text = f"{role_to_text(c.role)} some {_render_concept(c.filler, _LEVEL_RESTRICTION)}"
    elif isinstance(c, Forall):
        text = f"{role_to_text(c.role)} only {_render_concept(c.filler, _LEVEL_RESTRICTION)}"
    else:
        raise TypeError(f"not a concept: {c!r}")
    if _concept_level(c) < min_level:
        return f"({text})"
    return text


def concept_to_text(c: Concept) -> str:
    return _render_concept(c, _LEVEL_OR)


def axiom_to_text(a: Axiom) -> str:
    if isinstance(a, ConceptInclusion):
        return f"{concept_to_text(a.lhs)} SubClassOf {concept_to_text(a.rhs)}"
    if isinstance(a, RoleInclusion):
        return f"{role_to_text(a.lhs)} SubRoleOf {role_to_text(a.rhs)}"
    if isinstance(a, ConceptAssertion):
        return f"{concept_to_text(a.concept)}({a.individual})"
    if isinstance(a, RoleAssertion):
        return f"{a.role}({a.subject}, {a.object})"
    raise TypeError(f"not an axiom: {a!r}")


# ---------------------------------------------------------------------------
# signature helpers
# ---------------------------------------------------------------------------


def concept_names_of(c: Concept) -> frozenset[str]:
    names: set[str] = set()

    def walk(x: Concept) -> None:
        if isinstance(x, ConceptName):
            names.add(x.name)
        elif isinstance(x, Not):
            walk(x.operand)
        elif isinstance(x, (And, Or)):
            for op in x.operands:
                walk(op)
        elif isinstance(x, (Exists, Forall)):
            walk(x.filler)

    walk(c)
    return frozenset(names)


def role_names_of_role(r: Role) -> frozenset[str]:
    if isinstance(r, RoleName):
        return frozenset({r.name})
    if isinstance(r, Inverse):
        return role_names_of_role(r.role)
    return frozenset()


def role_names_of_concept(c: Concept) -> frozenset[str]:
    names: set[str] = set()

    def walk(x: Concept) -> None:
        if isinstance(x, Not):
            walk(x.operand)
        elif isinstance(x, (And, Or)):
            for op in x.operands:
                walk(op)
        elif isinstance(x, (Exists, Forall)):
            names.update(role_names_of_role(x.role))
            walk(x.filler)

    walk(c)
    return frozenset(names)


@dataclass(frozen=True)
class Signature:
    concept_names: frozenset[str]
    role_names: frozenset[str]
    individuals: frozenset[str]

    @property
    def names(self) -> frozenset[str]:
        return self.concept_names | self.role_names | self.individuals


def signature_of(axioms: Iterable[Axiom]) -> Signature:
    concepts: set[str] = set()
    roles: set[str] = set()
    individuals: set[str] = set()
    for a in axioms:
        if isinstance(a, ConceptInclusion):
            for side in (a.lhs, a.rhs):
                concepts.update(concept_names_of(side))
                roles.update(role_names_of_concept(side))
        elif isinstance(a, RoleInclusion):
            roles.update(role_names_of_role(a.lhs))
            roles.update(role_names_of_role(a.rhs))
        elif isinstance(a, ConceptAssertion):
            concepts.update(concept_names_of(a.concept))
            roles.update(role_names_of_concept(a.concept))
            if not is_individual_var(a.individual):
                individuals.add(a.individual)
        elif isinstance(a, RoleAssertion):
            roles.add(a.role)
            for n in (a.subject, a.object):
                if not is_individual_var(n):
                    individuals.add(n)
    return Signature(frozenset(concepts), frozenset(roles), frozenset(individuals))


def fresh_name(base: str, used: Iterable[str]) -> str:
    """First name of the form base, base0, base1, ... not in `used`."""
    taken = set(used)
    if base not in taken:
        return base
    i = 0
    while f"{base}{i}" in taken:
        i += 1
    return f"{base}{i}"
