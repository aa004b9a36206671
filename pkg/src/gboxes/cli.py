"""Command-line front end.

Commands: ``expand`` (fixpoint expansion), ``check`` (GBox
classification), ``contains`` (containment between negation-free
GBoxes), ``ground`` (language-grounding), ``entails`` (axiom
entailment), ``eval`` (template evaluation).

Exit codes: 0 success or property holds, 1 property fails, 2 usage or
parse errors, 3 resource limits.  Output is deterministic: identical
inputs give byte-identical output.  ``--format machine`` emits
line-delimited JSON records discriminated by a ``record`` field.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .containment import ground_gbox, is_contained
from .engine import EntailmentCache, GBox, eval_template, expand_fixpoint
from .errors import (
    BudgetExceededError,
    GBoxError,
    InconsistentOntologyError,
    NegationNotSupportedError,
    ParseError,
    ResourceLimitError,
)
from .parser import (
    gbox_to_text,
    parse_axiom_line,
    parse_gbox,
    parse_language,
    parse_ontology,
    parse_template,
)
from .reasoner import TableauConfig, entails_axiom
from .stratification import (
    DEFAULT_ACTIVATION_BUDGET,
    NotStratifiable,
    build_precedence_graph,
    is_semi_positive,
    stratify,
)
from .syntax import (
    Concept,
    Role,
    axiom_to_text,
    concept_to_text,
    role_to_text,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_LIMIT = 3

DEFAULT_MAX_STEPS = 1000


class _UsageError(Exception):
    pass


@dataclass
class RunConfig:
    """Validated per-command settings."""

    ontology: str | None = None
    gbox: str | None = None
    lang: str | None = None
    left: str | None = None
    right: str | None = None
    out: str | None = None
    figures: str | None = None
    template: str | None = None
    axioms: tuple[str, ...] = ()
    max_steps: int = DEFAULT_MAX_STEPS
    budget: int | None = None
    allow_inconsistent: bool = False
    freeze_into_lang: bool = False
    format: str = "text"

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "RunConfig":
        cfg = cls(
            ontology=getattr(ns, "ontology", None),
            gbox=getattr(ns, "gbox", None),
            lang=getattr(ns, "lang", None),
            left=getattr(ns, "left", None),
            right=getattr(ns, "right", None),
            out=getattr(ns, "out", None),
            figures=getattr(ns, "figures", None),
            template=getattr(ns, "template", None),
            axioms=tuple(getattr(ns, "axiom", None) or ()),
            max_steps=getattr(ns, "max_steps", DEFAULT_MAX_STEPS),
            budget=getattr(ns, "budget", None),
            allow_inconsistent=getattr(ns, "allow_inconsistent", False),
            freeze_into_lang=getattr(ns, "freeze_into_lang", False),
            format=getattr(ns, "format", "text"),
        )
        if cfg.max_steps is not None and cfg.max_steps <= 0:
            raise _UsageError("--max-steps must be positive")
        if cfg.budget is not None and cfg.budget <= 0:
            raise _UsageError("--budget must be positive")
        inputs = {p for p in (cfg.ontology, cfg.gbox, cfg.lang, cfg.left, cfg.right)
                  if p is not None}
        if cfg.out is not None and cfg.out in inputs:
            raise _UsageError("--out must differ from every input path")
        return cfg

    def new_cache(self) -> EntailmentCache:
        return EntailmentCache(budget=self.budget)


# ---------------------------------------------------------------------------
# report emission
# ---------------------------------------------------------------------------


class _Report:
    """Collects (text line, machine record) pairs and prints one view."""

    def __init__(self, fmt: str):
        self.fmt = fmt
        self.lines: list[str] = []
        self.records: list[dict] = []

    def add(self, text: str | None, record: dict | None = None) -> None:
        if text is not None:
            self.lines.append(text)
        if record is not None:
            self.records.append(record)

    def print(self, stream=None) -> None:
        stream = stream or sys.stdout
        if self.fmt == "machine":
            for rec in self.records:
                stream.write(json.dumps(rec, sort_keys=True) + "\n")
        else:
            for line in self.lines:
                stream.write(line + "\n")


def _render_value(value) -> str:
    if isinstance(value, Concept):
        return concept_to_text(value)
    if isinstance(value, Role):
        return role_to_text(value)
    return str(value)


def _substitution_dict(sub) -> dict[str, str]:
    return {name: _render_value(value) for name, value in sub.bindings}


def _write_out(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _figures_dir(cfg: RunConfig) -> str | None:
    if cfg.figures is None:
        return None
    os.makedirs(cfg.figures, exist_ok=True)
    return cfg.figures


# ---------------------------------------------------------------------------
# input loading
# ---------------------------------------------------------------------------


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise _UsageError(f"cannot read {path}: {e.strerror}") from e


def _load_ontology(cfg: RunConfig):
    if cfg.ontology is None:
        raise _UsageError("--ontology is required")
    return parse_ontology(_read(cfg.ontology))


def _load_gbox(cfg: RunConfig, path: str | None = None):
    path = path if path is not None else cfg.gbox
    if path is None:
        raise _UsageError("--gbox is required")
    return parse_gbox(_read(path))


def _load_lang(cfg: RunConfig):
    if cfg.lang is None:
        raise _UsageError("--lang is required")
    return parse_language(_read(cfg.lang))


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_expand(cfg: RunConfig) -> int:
    o = _load_ontology(cfg)
    g = _load_gbox(cfg)
    lang = _load_lang(cfg)
    cache = cfg.new_cache()
    report = expand_fixpoint(g, o, lang, cfg.max_steps,
                             allow_inconsistent=cfg.allow_inconsistent,
                             acknowledge_negation=True, cache=cache)
    warning_parts = []
    if not report.consistent:
        warning_parts.append("result inconsistent")
    if g.has_negation:
        verdict = stratify(g, o, lang, budget=cfg.budget or DEFAULT_ACTIVATION_BUDGET)
        if isinstance(verdict, NotStratifiable):
            warning_parts.append("GBox unstratifiable")
    warning = "; ".join(warning_parts) or None

    out = _Report(cfg.format)
    out.add(f"steps: {report.steps}", None)
    out.add(f"consistent: {'true' if report.consistent else 'false'}", None)
    if report.limits_hit:
        out.add(f"limit hit: {report.limits_hit}", None)
    if warning:
        out.add(f"warning: {warning}", None)
    out.add(None, {
        "record": "expansion",
        "steps": report.steps,
        "consistent": report.consistent,
        "limits_hit": report.limits_hit,
        "warning": warning,
        "axiom_count": len(report.result),
    })
    for i, step in enumerate(report.added_axioms, start=1):
        for entry in step:
            out.add(f"step {i}: + {axiom_to_text(entry.axiom)}"
                    f"  [{entry.generator} {entry.substitution}]",
                    {"record": "added", "step": i,
                     "axiom": axiom_to_text(entry.axiom),
                     "generator": entry.generator,
                     "substitution": _substitution_dict(entry.substitution)})
    result_text = report.result.to_text()
    for a in report.result:
        out.add(None, {"record": "axiom", "text": axiom_to_text(a)})
    if cfg.out is not None:
        _write_out(cfg.out, result_text)
    else:
        out.lines.append("axioms:")
        out.lines.extend("  " + axiom_to_text(a) for a in report.result)
    out.print()

    figures = _figures_dir(cfg)
    if figures is not None:
        from .figures import render_growth_chart
        render_growth_chart(report, os.path.join(figures, "expansion_growth.png"))
    return EXIT_LIMIT if report.limits_hit else EXIT_OK


def _strata_phrase(k: int) -> str:
    return f"{k} stratum" if k == 1 else f"{k} strata"


def cmd_check(cfg: RunConfig) -> int:
    o = _load_ontology(cfg)
    g = _load_gbox(cfg)
    lang = _load_lang(cfg)
    budget = cfg.budget or DEFAULT_ACTIVATION_BUDGET
    cache = EntailmentCache(budget=budget)
    graph = build_precedence_graph(g, o, lang, cache=cache)
    verdict = stratify(g, o, lang, cache=cache, graph=graph)
    positive = not g.has_negation
    semi = positive or is_semi_positive(g, o, lang, cache=cache)
    stratifiable = not isinstance(verdict, NotStratifiable)

    out = _Report(cfg.format)
    if positive:
        classification = "positive"
    elif stratifiable:
        k = len(verdict.partition)
        classification = (f"semi-positive; stratifiable, {_strata_phrase(k)}"
                          if semi else f"stratifiable, {_strata_phrase(k)}")
    else:
        classification = "unstratifiable"
    out.add(classification, {
        "record": "classification",
        "positive": positive,
        "semi_positive": semi,
        "stratifiable": stratifiable,
        "strata": len(verdict.partition) if stratifiable else None,
    })
    for edge in graph.edges:
        out.add(f"edge: {graph.display(edge.src)} -> {graph.display(edge.dst)}"
                f" [{edge.polarity}]",
                {"record": "edge", "src": graph.display(edge.src),
                 "dst": graph.display(edge.dst), "polarity": edge.polarity})
    if stratifiable:
        for key in sorted(verdict.levels):
            out.add(f"stratum {verdict.levels[key]}: {graph.display(key)}",
                    {"record": "stratum", "template": graph.display(key),
                     "level": verdict.levels[key]})
    else:
        for edge in verdict.cycle:
            out.add(f"cycle: {graph.display(edge.src)} -> {graph.display(edge.dst)}"
                    f" [{edge.polarity}]",
                    {"record": "cycle", "src": graph.display(edge.src),
                     "dst": graph.display(edge.dst), "polarity": edge.polarity})
    out.print()

    figures = _figures_dir(cfg)
    if figures is not None:
        from .figures import render_precedence_graph
        levels = verdict.levels if stratifiable else None
        render_precedence_graph(graph, os.path.join(figures, "precedence_graph.png"),
                                levels)
    return EXIT_OK if stratifiable else EXIT_FAIL


def cmd_contains(cfg: RunConfig) -> int:
    if cfg.left is None or cfg.right is None:
        raise _UsageError("--left and --right are required")
    g1 = _load_gbox(cfg, cfg.left)
    g2 = _load_gbox(cfg, cfg.right)
    lang = _load_lang(cfg)
    result = is_contained(g1, g2, lang, freeze_into_lang=cfg.freeze_into_lang,
                          cache=cfg.new_cache())
    out = _Report(cfg.format)
    out.add("contained" if result.holds else "not contained", {
        "record": "containment",
        "holds": result.holds,
    })
    for cert in result.certificates:
        out.add("  " + cert.describe(), {
            "record": "generator",
            "name": cert.generator,
            "holds": cert.holds,
            "missing": axiom_to_text(cert.missing) if cert.missing else None,
        })
    out.print()
    return EXIT_OK if result.holds else EXIT_FAIL


def cmd_ground(cfg: RunConfig) -> int:
    g = _load_gbox(cfg)
    lang = _load_lang(cfg)
    grounded = ground_gbox(g, lang)
    text = gbox_to_text(grounded)
    out = _Report(cfg.format)
    out.add(f"generators: {len(grounded)}",
            {"record": "grounding", "generators": len(grounded)})
    for gen in grounded.generators:
        out.add(None, {"record": "generator", "name": gen.name,
                       "body": gen.positive_body.to_text(),
                       "head": gen.head.to_text()})
    if cfg.out is not None:
        _write_out(cfg.out, text)
    else:
        out.lines.append(text.rstrip("\n"))
    out.print()
    return EXIT_OK


def cmd_entails(cfg: RunConfig) -> int:
    o = _load_ontology(cfg)
    if not cfg.axioms:
        raise _UsageError("at least one --axiom is required")
    targets = []
    for text in cfg.axioms:
        targets.extend(parse_axiom_line(text))
    out = _Report(cfg.format)
    all_hold = True
    config = TableauConfig(max_nodes=cfg.budget) if cfg.budget else None
    for a in targets:
        res = entails_axiom(o, a, config)
        all_hold = all_hold and res.holds
        out.add(f"{axiom_to_text(a)}: {'entailed' if res.holds else 'not entailed'}",
                {"record": "entailment", "axiom": axiom_to_text(a),
                 "entailed": res.holds})
    out.print()
    return EXIT_OK if all_hold else EXIT_FAIL


def cmd_eval(cfg: RunConfig) -> int:
    o = _load_ontology(cfg)
    lang = _load_lang(cfg)
    if cfg.template is None:
        raise _UsageError("--template is required")
    t = parse_template(cfg.template)
    subs = eval_template(t, o, lang, allow_inconsistent=cfg.allow_inconsistent,
                         cache=cfg.new_cache())
    out = _Report(cfg.format)
    out.add(f"bindings: {len(subs)}", {"record": "evaluation", "bindings": len(subs)})
    for sub in subs:
        out.add(str(sub), {"record": "binding",
                           "substitution": _substitution_dict(sub)})
    out.print()
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gbox",
        description="Evaluate GBoxes: rule sets whose bodies are ontology "
                    "templates matched by entailment and whose heads add axioms.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, *, out: bool = False,
               figures: bool = False) -> None:
        p.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS,
                       help="iteration limit for fixpoints (default %(default)s)")
        p.add_argument("--budget", type=int, default=None,
                       help="resource budget: tableau calls for cached "
                            "reasoning, node cap for entails")
        p.add_argument("--allow-inconsistent", action="store_true",
                       help="proceed on inconsistent input ontologies")
        p.add_argument("--format", choices=("text", "machine"), default="text",
                       help="report format (default %(default)s)")
        if out:
            p.add_argument("--out", help="write the main artifact to this file")
        if figures:
            p.add_argument("--figures", metavar="DIR",
                           help="also render figures into DIR")

    p = sub.add_parser("expand", help="expand an ontology to the fixpoint")
    p.add_argument("--ontology", required=True)
    p.add_argument("--gbox", required=True)
    p.add_argument("--lang", required=True)
    common(p, out=True, figures=True)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("check", help="classify a GBox over an ontology and language")
    p.add_argument("--ontology", required=True)
    p.add_argument("--gbox", required=True)
    p.add_argument("--lang", required=True)
    common(p, figures=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("contains", help="decide GBox containment (left in right)")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--lang", required=True)
    p.add_argument("--freeze-into-lang", action="store_true",
                   help="add frozen names to the language during the check")
    common(p)
    p.set_defaults(func=cmd_contains)

    p = sub.add_parser("ground", help="emit the language-grounding of a GBox")
    p.add_argument("--gbox", required=True)
    p.add_argument("--lang", required=True)
    common(p, out=True)
    p.set_defaults(func=cmd_ground)

    p = sub.add_parser("entails", help="check axiom entailment")
    p.add_argument("--ontology", required=True)
    p.add_argument("--axiom", action="append", required=True,
                   help="axiom text; may be repeated")
    common(p)
    p.set_defaults(func=cmd_entails)

    p = sub.add_parser("eval", help="evaluate a template over an ontology")
    p.add_argument("--ontology", required=True)
    p.add_argument("--lang", required=True)
    p.add_argument("--template", required=True, help="template text")
    common(p)
    p.set_defaults(func=cmd_eval)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = RunConfig.from_args(ns)
        return ns.func(cfg)
    except _UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except NegationNotSupportedError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except InconsistentOntologyError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAIL
    except (BudgetExceededError, ResourceLimitError) as e:
        print(f"resource limit: {e}", file=sys.stderr)
        return EXIT_LIMIT
    except GBoxError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
