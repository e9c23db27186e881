"""Order-preserving transformations of a finite chain with interval image.

The monoid IO_n, its order-decreasing and order-increasing submonoids, and
machine checks of their cardinalities, ranks and presentations.
"""
from .chain import (
    GeneratorId,
    Transformation,
    compose,
    flip,
    generator,
    has_interval_image,
    identity,
    is_decreasing,
    is_increasing,
    is_order_preserving,
    make_transformation,
)
from .monoid import (
    MonoidTable,
    Variant,
    cardinality_formula,
    count_by_image_size,
    enumerate_closure,
    enumerate_direct,
    rank_exact,
    undecomposables,
)
from .presentation.normal_forms import canonical_form, enumerate_W, W_size
from .presentation.trace import DerivationTrace, check_trace
from .presentation.words import Relation, RelationSystem, evaluate_word, parse_word, relations
from .presentation.verify import verify_presentation

__version__ = "0.1.0"
