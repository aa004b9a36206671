"""Parsers for the four text formats.

Ontology and template files hold one axiom per line; ``#`` starts a comment.
Language files have ``concepts:``, ``roles:`` and ``individuals:`` sections
with one entry per line.  GBox files hold generator declarations

    gen NAME : { axiom ; ... } , not { ... } ... => { axiom ; ... }

which may span lines, plus optional ``var ?X concept|role|individual``
declarations that fix a variable's type ahead of inference (the only place
this matters is an EquivalentTo between two bare variables, which otherwise
defaults to a concept equivalence).

Operator precedence in concept expressions, tightest first:
``not``, then ``some``/``only``, then ``and``, then ``or``.  ``not`` applied
to a restriction therefore needs parentheses, and restriction fillers are
parsed at restriction level so they chain to the right.

Equivalences are sugar: ``A EquivalentTo B`` yields the two inclusions.  An
EquivalentTo whose sides are bare names is read as a concept equivalence;
role equivalence needs an ``inverse`` marker on one side (or a ``var``
declaration in a GBox file), otherwise write two SubRoleOf axioms.
"""

from __future__ import annotations

from dataclasses import dataclass

from .engine import GBox, Generator
from .errors import ParseError
from .syntax import (
    Axiom,
    BOTTOM,
    Concept,
    ConceptAssertion,
    ConceptInclusion,
    ConceptName,
    ConceptVar,
    Exists,
    Forall,
    Inverse,
    LanguageSpec,
    Not,
    Ontology,
    Or,
    And,
    Role,
    RoleAssertion,
    RoleInclusion,
    RoleName,
    RoleVar,
    TOP,
    Template,
    axiom_variables,
)

_KEYWORDS = {
    "SubClassOf", "EquivalentTo", "SubRoleOf",
    "Thing", "Nothing", "not", "and", "or", "some", "only", "inverse",
}

_PUNCT = ("=>", "(", ")", "{", "}", ",", ";", ":")


@dataclass(frozen=True)
class Token:
    kind: str  # NAME, VAR, KEYWORD, PUNCT, EOF
    value: str
    line: int
    column: int


def _is_name_start(ch: str) -> bool:
    return ch.isalpha() or ch == "_"


def _is_name_char(ch: str) -> bool:
    return ch.isalnum() or ch == "_"


def tokenize(text: str, first_line: int = 1) -> list[Token]:
    tokens: list[Token] = []
    line = first_line
    col = 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch == "?":
            j = i + 1
            if j >= n or not _is_name_start(text[j]):
                raise ParseError("'?' must be followed by a name", line, col)
            while j < n and _is_name_char(text[j]):
                j += 1
            tokens.append(Token("VAR", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if _is_name_start(ch):
            j = i
            while j < n and _is_name_char(text[j]):
                j += 1
            word = text[i:j]
            kind = "KEYWORD" if word in _KEYWORDS else "NAME"
            tokens.append(Token(kind, word, line, col))
            col += j - i
            i = j
            continue
        matched = False
        for p in _PUNCT:
            if text.startswith(p, i):
                tokens.append(Token("PUNCT", p, line, col))
                i += len(p)
                col += len(p)
                matched = True
                break
        if not matched:
            raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("EOF", "", line, col))
    return tokens


class _TokenStream:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self, ahead: int = 0) -> Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.peek()
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def at_keyword(self, *words: str) -> bool:
        tok = self.peek()
        return tok.kind == "KEYWORD" and tok.value in words

    def at_punct(self, *values: str) -> bool:
        tok = self.peek()
        return tok.kind == "PUNCT" and tok.value in values

    def expect_punct(self, value: str) -> Token:
        tok = self.peek()
        if not self.at_punct(value):
            raise ParseError(f"unexpected {_describe(tok)}", tok.line, tok.column,
                             expected=(f"'{value}'",))
        return self.next()

    def expect_name(self, what: str = "a name") -> Token:
        tok = self.peek()
        if tok.kind != "NAME":
            raise ParseError(f"unexpected {_describe(tok)}", tok.line, tok.column,
                             expected=(what,))
        return self.next()


def _describe(tok: Token) -> str:
    if tok.kind == "EOF":
        return "end of input"
    return f"'{tok.value}'"


# ---------------------------------------------------------------------------
# expression parsing
# ---------------------------------------------------------------------------


def _parse_role(ts: _TokenStream, allow_vars: bool) -> Role:
    tok = ts.peek()
    if tok.kind == "KEYWORD" and tok.value == "inverse":
        ts.next()
        inner = ts.expect_name("a role name after 'inverse'")
        return Inverse(RoleName(inner.value))
    if tok.kind == "VAR":
        if not allow_vars:
            raise ParseError("variables are not allowed here", tok.line, tok.column)
        ts.next()
        return RoleVar(tok.value)
    if tok.kind == "NAME":
        ts.next()
        return RoleName(tok.value)
    raise ParseError(f"unexpected {_describe(tok)}", tok.line, tok.column,
                     expected=("a role expression",))


def _starts_restriction(ts: _TokenStream) -> bool:
    tok = ts.peek()
    if tok.kind == "KEYWORD" and tok.value == "inverse":
        return True
    if tok.kind in ("NAME", "VAR"):
        nxt = ts.peek(1)
        return nxt.kind == "KEYWORD" and nxt.value in ("some", "only")
    return False


def _parse_concept_restriction(ts: _TokenStream, allow_vars: bool) -> Concept:
    if _starts_restriction(ts):
        role = _parse_role(ts, allow_vars)
        tok = ts.next()
        if tok.kind != "KEYWORD" or tok.value not in ("some", "only"):
            raise ParseError(f"unexpected {_describe(tok)}", tok.line, tok.column,
                             expected=("'some'", "'only'"))
        filler = _parse_concept_restriction(ts, allow_vars)
        return Exists(role, filler) if tok.value == "some" else Forall(role, filler)
    return _parse_concept_unary(ts, allow_vars)


def _parse_concept_unary(ts: _TokenStream, allow_vars: bool) -> Concept:
    tok = ts.peek()
    if tok.kind == "KEYWORD" and tok.value == "not":
        ts.next()
        return Not(_parse_concept_unary(ts, allow_vars))
    if tok.kind == "KEYWORD" and tok.value == "Thing":
        ts.next()
        return TOP
    if tok.kind == "KEYWORD" and tok.value == "Nothing":
        ts.next()
        return BOTTOM
    if tok.kind == "VAR":
        if not allow_vars:
            raise ParseError("variables are not allowed here", tok.line, tok.column)
        ts.next()
        return ConceptVar(tok.value)
    if tok.kind == "NAME":
        ts.next()
        return ConceptName(tok.value)
    if ts.at_punct("("):
        ts.next()
        inner = _parse_concept(ts, allow_vars)
        ts.expect_punct(")")
        return inner
    raise ParseError(f"unexpected {_describe(tok)}", tok.line, tok.column,
                     expected=("a concept expression",))


def _parse_concept_and(ts: _TokenStream, allow_vars: bool) -> Concept:
    first = _parse_concept_restriction(ts, allow_vars)
    if not ts.at_keyword("and"):
        return first
    operands = [first]
    while ts.at_keyword("and"):
        ts.next()
        operands.append(_parse_concept_restriction(ts, allow_vars))
    return And(tuple(operands))


def _parse_concept(ts: _TokenStream, allow_vars: bool) -> Concept:
    first = _parse_concept_and(ts, allow_vars)
    if not ts.at_keyword("or"):
        return first
    operands = [first]
    while ts.at_keyword("or"):
        ts.next()
        operands.append(_parse_concept_and(ts, allow_vars))
    return Or(tuple(operands))


def parse_concept_text(text: str, allow_vars: bool = False, line: int = 1) -> Concept:
    ts = _TokenStream(tokenize(text, line))
    c = _parse_concept(ts, allow_vars)
    tok = ts.peek()
    if tok.kind != "EOF":
        raise ParseError(f"unexpected {_describe(tok)} after concept expression",
                         tok.line, tok.column)
    return c


def parse_role_text(text: str, allow_vars: bool = False, line: int = 1) -> Role:
    ts = _TokenStream(tokenize(text, line))
    r = _parse_role(ts, allow_vars)
    tok = ts.peek()
    if tok.kind != "EOF":
        raise ParseError(f"unexpected {_describe(tok)} after role expression",
                         tok.line, tok.column)
    return r


# ---------------------------------------------------------------------------
# axiom parsing
# ---------------------------------------------------------------------------


def _is_role_shaped(ts: _TokenStream, role_typed_vars: frozenset[str]) -> bool:
    """Decide whether an EquivalentTo side starting at the cursor is a role.

    True when it starts with 'inverse' or with a variable declared role-typed.
    """
    tok = ts.peek()
    if tok.kind == "KEYWORD" and tok.value == "inverse":
        return True
    if tok.kind == "VAR" and tok.value in role_typed_vars:
        nxt = ts.peek(1)
        return not (nxt.kind == "KEYWORD" and nxt.value in ("some", "only"))
    return False


def _parse_individual(ts: _TokenStream, allow_vars: bool) -> str:
    tok = ts.peek()
    if tok.kind == "VAR":
        if not allow_vars:
            raise ParseError("variables are not allowed here", tok.line, tok.column)
        ts.next()
        return tok.value
    if tok.kind == "NAME":
        ts.next()
        return tok.value
    raise ParseError(f"unexpected {_describe(tok)}", tok.line, tok.column,
                     expected=("an individual name",))


def _parse_axiom(ts: _TokenStream, allow_vars: bool,
                 role_typed_vars: frozenset[str] = frozenset()) -> list[Axiom]:
    """Parse one axiom; equivalences expand to two inclusions."""
    start = ts.peek()
    if ts.at_keyword("inverse") or _is_role_shaped(ts, role_typed_vars):
        lhs_role = _parse_role(ts, allow_vars)
        op = ts.next()
        if op.kind == "KEYWORD" and op.value == "SubRoleOf":
            return [RoleInclusion(lhs_role, _parse_role(ts, allow_vars))]
        if op.kind == "KEYWORD" and op.value == "EquivalentTo":
            rhs_role = _parse_role(ts, allow_vars)
            return [RoleInclusion(lhs_role, rhs_role), RoleInclusion(rhs_role, lhs_role)]
        raise ParseError(f"unexpected {_describe(op)}", op.line, op.column,
                         expected=("'SubRoleOf'", "'EquivalentTo'"))

    # Role inclusions between plain names: look ahead for SubRoleOf.
    if start.kind in ("NAME", "VAR"):
        nxt = ts.peek(1)
        if nxt.kind == "KEYWORD" and nxt.value == "SubRoleOf":
            lhs_role = _parse_role(ts, allow_vars)
            ts.next()  # SubRoleOf
            return [RoleInclusion(lhs_role, _parse_role(ts, allow_vars))]

    lhs = _parse_concept(ts, allow_vars)
    tok = ts.peek()
    if tok.kind == "KEYWORD" and tok.value == "SubClassOf":
        ts.next()
        return [ConceptInclusion(lhs, _parse_concept(ts, allow_vars))]
    if tok.kind == "KEYWORD" and tok.value == "EquivalentTo":
        ts.next()
        if _is_role_shaped(ts, role_typed_vars) or ts.at_keyword("inverse"):
            if isinstance(lhs, ConceptName):
                lhs_role: Role = RoleName(lhs.name)
            elif isinstance(lhs, ConceptVar):
                lhs_role = RoleVar(lhs.name)
            else:
                raise ParseError(
                    "role equivalence requires a role name on the left",
                    tok.line, tok.column)
            rhs_role = _parse_role(ts, allow_vars)
            return [RoleInclusion(lhs_role, rhs_role), RoleInclusion(rhs_role, lhs_role)]
        rhs = _parse_concept(ts, allow_vars)
        return [ConceptInclusion(lhs, rhs), ConceptInclusion(rhs, lhs)]
    if ts.at_punct("("):
        ts.next()
        first = _parse_individual(ts, allow_vars)
        if ts.at_punct(","):
            ts.next()
            second = _parse_individual(ts, allow_vars)
            ts.expect_punct(")")
            if not isinstance(lhs, ConceptName):
                raise ParseError("a role assertion requires a plain role name",
                                 start.line, start.column)
            return [RoleAssertion(lhs.name, first, second)]
        ts.expect_punct(")")
        return [ConceptAssertion(lhs, first)]
    raise ParseError(f"unexpected {_describe(tok)}", tok.line, tok.column,
                     expected=("'SubClassOf'", "'EquivalentTo'", "'('",))


def parse_axiom_line(text: str, allow_vars: bool = False, line: int = 1) -> list[Axiom]:
    ts = _TokenStream(tokenize(text, line))
    axioms = _parse_axiom(ts, allow_vars)
    tok = ts.peek()
    if tok.kind != "EOF":
        raise ParseError(f"unexpected {_describe(tok)} after axiom", tok.line, tok.column)
    return axioms


def _parse_axiom_lines(text: str, allow_vars: bool) -> list[Axiom]:
    axioms: list[Axiom] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        axioms.extend(parse_axiom_line(raw.split("#", 1)[0], allow_vars, lineno))
    return axioms


def parse_ontology(text: str) -> Ontology:
    """Parse ontology text; any variable is an error with its position."""
    axioms: list[Axiom] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        parsed = parse_axiom_line(raw.split("#", 1)[0], allow_vars=True, line=lineno)
        for a in parsed:
            vs = axiom_variables(a)
            if not vs.is_empty():
                names = ", ".join(sorted(vs.names()))
                raise ParseError(f"variables ({names}) are not allowed in an ontology",
                                 lineno, 1)
        axioms.extend(parsed)
    return Ontology.of(axioms)


def parse_template(text: str) -> Template:
    """Parse template text: the ontology grammar plus variables."""
    return Template.of(_parse_axiom_lines(text, allow_vars=True))


# ---------------------------------------------------------------------------
# language files
# ---------------------------------------------------------------------------

_SECTIONS = ("concepts", "roles", "individuals")


def parse_language(text: str) -> LanguageSpec:
    concepts: list[Concept] = []
    roles: list[Role] = []
    individuals: list[str] = []
    section: str | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        header = stripped[:-1].strip() if stripped.endswith(":") else None
        if header in _SECTIONS:
            section = header
            continue
        if section is None:
            raise ParseError("expected a section header "
                             "('concepts:', 'roles:' or 'individuals:')", lineno, 1)
        if section == "concepts":
            concepts.append(parse_concept_text(raw.split("#", 1)[0], line=lineno))
        elif section == "roles":
            roles.append(parse_role_text(raw.split("#", 1)[0], line=lineno))
        else:
            ts = _TokenStream(tokenize(raw.split("#", 1)[0], lineno))
            name = ts.expect_name("an individual name")
            tok = ts.peek()
            if tok.kind != "EOF":
                raise ParseError(f"unexpected {_describe(tok)} after individual name",
                                 tok.line, tok.column)
            individuals.append(name.value)
    return LanguageSpec.of(concepts, roles, individuals)


# ---------------------------------------------------------------------------
# GBox files
# ---------------------------------------------------------------------------

_VAR_TYPES = ("concept", "role", "individual")


def _parse_block(ts: _TokenStream, role_typed_vars: frozenset[str]) -> Template:
    ts.expect_punct("{")
    axioms: list[Axiom] = []
    axioms.extend(_parse_axiom(ts, True, role_typed_vars))
    while ts.at_punct(";"):
        ts.next()
        axioms.extend(_parse_axiom(ts, True, role_typed_vars))
    ts.expect_punct("}")
    return Template.of(axioms)


def parse_gbox(text: str) -> GBox:
    """Parse generator declarations; newlines are insignificant here."""
    ts = _TokenStream(tokenize(text))
    generators: list[Generator] = []
    declared: dict[str, str] = {}
    while ts.peek().kind != "EOF":
        tok = ts.peek()
        if tok.kind == "NAME" and tok.value == "var":
            ts.next()
            var_tok = ts.peek()
            if var_tok.kind != "VAR":
                raise ParseError(f"unexpected {_describe(var_tok)}",
                                 var_tok.line, var_tok.column,
                                 expected=("a variable",))
            ts.next()
            type_tok = ts.peek()
            if type_tok.kind != "NAME" or type_tok.value not in _VAR_TYPES:
                raise ParseError(f"unexpected {_describe(type_tok)}",
                                 type_tok.line, type_tok.column,
                                 expected=tuple(f"'{t}'" for t in _VAR_TYPES))
            ts.next()
            declared[var_tok.value] = type_tok.value
            continue
        if tok.kind == "NAME" and tok.value == "gen":
            ts.next()
            name = ts.expect_name("a generator name")
            ts.expect_punct(":")
            role_typed = frozenset(v for v, t in declared.items() if t == "role")
            positive = _parse_block(ts, role_typed)
            negatives: list[Template] = []
            while ts.at_punct(","):
                ts.next()
                not_tok = ts.peek()
                if not ts.at_keyword("not"):
                    raise ParseError(f"unexpected {_describe(not_tok)}",
                                     not_tok.line, not_tok.column,
                                     expected=("'not' introducing a negated block",))
                ts.next()
                negatives.append(_parse_block(ts, role_typed))
            arrow = ts.peek()
            if not ts.at_punct("=>"):
                raise ParseError(f"unexpected {_describe(arrow)}",
                                 arrow.line, arrow.column, expected=("'=>'",))
            ts.next()
            head = _parse_block(ts, role_typed)
            gen = Generator(name.value, positive, tuple(negatives), head)
            _check_declared_types(gen, declared, name.line)
            generators.append(gen)
            continue
        raise ParseError(f"unexpected {_describe(tok)}", tok.line, tok.column,
                         expected=("'gen'", "'var'"))
    return GBox(tuple(generators))


def _check_declared_types(gen: Generator, declared: dict[str, str], line: int) -> None:
    vs = gen.variables
    inferred = {}
    for n in vs.concept_vars:
        inferred[n] = "concept"
    for n in vs.role_vars:
        inferred[n] = "role"
    for n in vs.individual_vars:
        inferred[n] = "individual"
    for name, kind in declared.items():
        got = inferred.get(name)
        if got is not None and got != kind:
            raise ParseError(
                f"variable {name} is declared {kind} but used as {got} "
                f"in generator '{gen.name}'", line, 1)


# ---------------------------------------------------------------------------
# GBox serialization
# ---------------------------------------------------------------------------


def gbox_to_text(g: GBox) -> str:
    lines = []
    for gen in g.generators:
        parts = [f"gen {gen.name} : {gen.positive_body}"]
        for neg in gen.negative_bodies:
            parts.append(f", not {neg}")
        parts.append(f" => {gen.head}")
        lines.append("".join(parts))
    return "".join(line + "\n" for line in lines)
