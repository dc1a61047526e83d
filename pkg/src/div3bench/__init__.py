"""Relational divisibility-by-three: engine, relations, and benchmarks."""

from .arith import (
    build_num,
    div2o,
    full_addero,
    mulo,
    num_value,
    olego,
    pluso,
    poso,
)
from .div3 import (
    IMPL_NAMES,
    dfao,
    div3o_3_plus_x,
    div3o_3_times_x,
    div3o_dfa,
    div3o_even_odd,
    div3o_x_plus_3,
    div3o_x_times_3,
    even_odd_helpero,
    lookup_impl,
    plus1mod3o,
)
from .kanren import (
    NIL,
    Subst,
    Var,
    conde,
    conj,
    cons,
    delay,
    disj,
    eq,
    fresh,
    from_list,
    reify,
    relation,
    run,
    run_star,
    term_to_str,
    to_list,
    unify,
    walk,
)

__all__ = [
    "NIL",
    "Subst",
    "Var",
    "conde",
    "conj",
    "cons",
    "delay",
    "disj",
    "eq",
    "fresh",
    "from_list",
    "reify",
    "relation",
    "run",
    "run_star",
    "term_to_str",
    "to_list",
    "unify",
    "walk",
    "build_num",
    "num_value",
    "poso",
    "olego",
    "div2o",
    "full_addero",
    "pluso",
    "mulo",
    "IMPL_NAMES",
    "lookup_impl",
    "dfao",
    "plus1mod3o",
    "even_odd_helpero",
    "div3o_3_times_x",
    "div3o_x_times_3",
    "div3o_3_plus_x",
    "div3o_x_plus_3",
    "div3o_dfa",
    "div3o_even_odd",
]
