"""Analysis toolkit for powers and equivalences of finite two-player games."""

from .algebra import (
    DynamicGame,
    TermParseError,
    check_congruence,
    check_equation,
    composed_power_relation,
    evaluate,
    format_term,
    op_dual,
    op_plus,
    op_times,
    parse_term,
    random_dynamic_game,
    random_game,
    relational_power_map,
    seq_compose,
)
from .axioms import (
    ALL_SCHEMATA,
    axiom_soundness_suite,
    countermodel_search,
    schema_instance,
)
from .equivalence import (
    EquivalenceVerdict,
    InvalidModelError,
    hierarchy_audit,
    instantial_bisimilar,
    power_bisimilar,
    power_equivalent,
    semi_strongly_equivalent,
    strategic_form_equivalent,
    strategy_bisimulation_check,
    strongly_equivalent,
)
from .formulas import (
    Formula,
    ParseError,
    format_formula,
    parse_formula,
    random_formula,
)
from .games import (
    ExtensiveGame,
    FunctionalStrategy,
    GameFormatError,
    Player,
    RelationalStrategy,
    StrategicGame,
    enumerate_strategies,
    game,
    guided_matches,
    is_perfect_information,
    leaf,
    load_game,
    node,
    outcome_set,
    strategic_to_extensive,
    to_strategic_form,
    validate_game,
)
from .models import (
    GAME_FRAME,
    INSTANTIAL_FRAME,
    NeighborhoodModel,
    encode_game_as_model,
    load_model,
    model_check,
    random_model,
    validate_frame,
)
from .powers import (
    ConditionProfile,
    PowerFamily,
    basic_powers,
    check_conditions,
    egli_milner,
    powers,
    relational_basic_powers,
    union_closure,
    upward_closure,
)
from .representation import (
    IllegalFamilies,
    RepresentationInput,
    construct_game,
    construction_cost,
    sample_legal_families,
    verify_roundtrip,
)

__all__ = [
    "ALL_SCHEMATA",
    "ConditionProfile",
    "DynamicGame",
    "EquivalenceVerdict",
    "ExtensiveGame",
    "Formula",
    "FunctionalStrategy",
    "GAME_FRAME",
    "GameFormatError",
    "IllegalFamilies",
    "INSTANTIAL_FRAME",
    "InvalidModelError",
    "NeighborhoodModel",
    "ParseError",
    "Player",
    "PowerFamily",
    "RelationalStrategy",
    "RepresentationInput",
    "StrategicGame",
    "TermParseError",
    "axiom_soundness_suite",
    "basic_powers",
    "check_conditions",
    "check_congruence",
    "check_equation",
    "composed_power_relation",
    "construct_game",
    "construction_cost",
    "countermodel_search",
    "egli_milner",
    "encode_game_as_model",
    "enumerate_strategies",
    "evaluate",
    "format_formula",
    "format_term",
    "game",
    "guided_matches",
    "hierarchy_audit",
    "instantial_bisimilar",
    "is_perfect_information",
    "leaf",
    "load_game",
    "load_model",
    "model_check",
    "node",
    "op_dual",
    "op_plus",
    "op_times",
    "outcome_set",
    "parse_formula",
    "parse_term",
    "power_bisimilar",
    "power_equivalent",
    "powers",
    "random_dynamic_game",
    "random_formula",
    "random_game",
    "random_model",
    "relational_basic_powers",
    "relational_power_map",
    "sample_legal_families",
    "schema_instance",
    "semi_strongly_equivalent",
    "seq_compose",
    "strategic_form_equivalent",
    "strategic_to_extensive",
    "strategy_bisimulation_check",
    "strongly_equivalent",
    "to_strategic_form",
    "union_closure",
    "upward_closure",
    "validate_frame",
    "validate_game",
]
