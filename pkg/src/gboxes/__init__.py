"""Generator rule sets over description-logic ontologies.

The package implements a small DL fragment (ALC with inverse roles and role
inclusions), a tableau reasoner for it, and an engine for GBoxes: rule sets
whose bodies are axiom templates matched by entailment and whose heads add
new axioms.  On top of the engine sit stratified evaluation for rules with
negation and a containment check between rule sets.
"""

from .containment import (
    ContainmentResult,
    FrozenTemplate,
    GeneratorCertificate,
    freeze,
    ground_gbox,
    ground_generator,
    is_contained,
    is_equivalent_gbox,
)
from .engine import (
    AddedAxiom,
    EntailmentCache,
    ExpansionReport,
    GBox,
    Generator,
    check_size_bound,
    enumerate_substitutions,
    eval_template,
    expand_fixpoint,
    one_step_expand,
    satisfies_gbox,
    satisfies_generator,
)
from .errors import (
    BudgetExceededError,
    GBoxError,
    InconsistentOntologyError,
    NegationNotAcknowledgedError,
    NegationNotSupportedError,
    NotGroundError,
    ParseError,
    ResourceLimitError,
    SubstitutionError,
    UnsafeGeneratorError,
    UnstratifiableGBoxError,
    VariableTypeError,
)
from .reasoner import (
    EntailmentResult,
    TableauConfig,
    entails_axiom,
    entails_ontology,
    equivalent,
    is_consistent,
)
from .stratification import (
    ActivationResult,
    NotStratifiable,
    PrecedenceEdge,
    PrecedenceGraph,
    Stratification,
    activates,
    build_precedence_graph,
    enumerate_valid_stratifications,
    is_semi_positive,
    minimal_activating_sets,
    satisfies_stratification_conditions,
    stratified_expand,
    stratify,
    template_identity_key,
)
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
    LanguageSpec,
    Not,
    Ontology,
    Or,
    Role,
    RoleAssertion,
    RoleInclusion,
    RoleName,
    RoleVar,
    Substitution,
    TOP,
    Template,
    Top,
    VarSet,
    apply_substitution,
    axiom_to_text,
    canonicalize_axiom,
    canonicalize_concept,
    canonicalize_role,
    concept_to_text,
    role_to_text,
    variables_of,
)

__version__ = "0.1.0"
