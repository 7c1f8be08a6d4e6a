from .engine import (
    NonTermination,
    apply_rule,
    classify_relation,
    init_tree,
    match_first_rule,
    transform_clausal,
)
from .nodes import (
    CONTEXT,
    CORE,
    ConstituencyType,
    DiscourseNode,
    Internal,
    InvalidDiscourseTree,
    Leaf,
    RhetoricalRelation,
    SimpleContext,
    leaves,
    leaves_with_layer,
    nuclei,
    render,
    to_canonical,
    validate,
)
from .pattern import PatternSyntaxError, TreePattern
from .rules import (
    MalformedMatch,
    RuleSet,
    RuleSetError,
    TransformationRule,
    build_ruleset,
    default_ruleset,
    load_ruleset,
)
