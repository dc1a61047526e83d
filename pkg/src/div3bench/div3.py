"""Six relations that each hold exactly for the numerals divisible by three.

Two factor through relational multiplication (3*x, x*3), two through
repeated relational addition (3+x, x+3), one walks the three-state
acceptor for bitstrings divisible by three (dfa), and one tracks the
difference mod 3 between even- and odd-indexed bits two bits at a time
(even-odd).  The implementations agree extensionally but differ wildly in
speed on ground inputs and, for even-odd, leave bits fresh so that a
single answer covers a whole family of multiples of three.

Use ``lookup_impl`` to fetch one by its registered name, e.g. ``"3+x"``.
"""

from __future__ import annotations

from .arith import ONE, THREE, mulo, pluso, poso
from .kanren import (
    NIL,
    Goal,
    conde,
    conj,
    cons,
    eq,
    fresh,
    from_list,
    relation,
    table_relation,
)

TWO = (0, (1, NIL))

__all__ = [
    "IMPL_NAMES",
    "div3o_3_times_x",
    "div3o_x_times_3",
    "div3o_x_plus_3",
    "div3o_3_plus_x",
    "dfao",
    "div3o_dfa",
    "plus1mod3o",
    "even_odd_helpero",
    "div3o_even_odd",
    "lookup_impl",
]


@relation
def div3o_3_times_x(n) -> Goal:
    """3 * x = n for some x."""
    return fresh(lambda x: mulo(THREE, x, n))


@relation
def div3o_x_times_3(n) -> Goal:
    """x * 3 = n for some x."""
    return fresh(lambda x: mulo(x, THREE, n))


@relation
def div3o_x_plus_3(n) -> Goal:
    """n is zero or 3 more than a smaller multiple of three (x + 3 = n)."""
    return conde(
        [eq(n, NIL)],
        [
            fresh(
                lambda x: conj(
                    poso(n),
                    pluso(x, THREE, n),
                    div3o_x_plus_3(x),
                )
            )
        ],
    )


@relation
def div3o_3_plus_x(n) -> Goal:
    """Same relation as x+3 with augend and addend swapped (3 + x = n)."""
    return conde(
        [eq(n, NIL)],
        [
            fresh(
                lambda x: conj(
                    poso(n),
                    pluso(THREE, x, n),
                    div3o_3_plus_x(x),
                )
            )
        ],
    )


@relation
def dfao(l, state) -> Goal:
    """The bit list l drives the mod-3 acceptor from `state` to acceptance.

    q1 accepts (and is the start state); on a 0 bit the states map
    q1->q1, q2->q3, q3->q2 and the tail must be positive (numerals cannot
    end in 0); on a 1 bit they map q1->q2, q2->q1, q3->q3.
    """
    return conde(
        [eq(l, NIL), eq(state, "q1")],
        [
            fresh(
                lambda a, d, next_state: conj(
                    eq(l, cons(a, d)),
                    conde(
                        [
                            eq(a, 0),
                            poso(d),
                            conde(
                                [eq(state, "q1"), eq(next_state, "q1")],
                                [eq(state, "q2"), eq(next_state, "q3")],
                                [eq(state, "q3"), eq(next_state, "q2")],
                            ),
                        ],
                        [
                            eq(a, 1),
                            conde(
                                [eq(state, "q1"), eq(next_state, "q2")],
                                [eq(state, "q2"), eq(next_state, "q1")],
                                [eq(state, "q3"), eq(next_state, "q3")],
                            ),
                        ],
                    ),
                    dfao(d, next_state),
                )
            )
        ],
    )


@relation
def div3o_dfa(n) -> Goal:
    """Run the acceptor from its start state."""
    return dfao(n, "q1")


# Successor mod 3 on the counter atoms 0, 1, 2; swap the arguments to
# decrement.  Relationally the disjunction of its 3 ground rows, in order.
plus1mod3o = table_relation(
    ((0, 1), (1, 2), (2, 0)),
    name="plus1mod3o",
    doc="n_plus_1 is n + 1 mod 3, for counter atoms n, n_plus_1 in {0, 1, 2}.",
)


@relation
def even_odd_helpero(n, diff) -> Goal:
    """(sum of even-indexed bits) - (sum of odd-indexed bits) + diff is
    divisible by 3.

    Recurses two bits at a time.  When the two bits are equal they cancel,
    and the relation deliberately leaves them fresh instead of enumerating
    the two ground possibilities; that is what gives the relation answers
    that each cover a family of numerals.
    """
    return conde(
        [eq(n, NIL), eq(diff, 0)],
        [eq(n, ONE), eq(diff, 2)],
        [eq(n, TWO), eq(diff, 1)],
        [eq(n, THREE), eq(diff, 0)],
        [
            fresh(
                lambda a, ad, dd, new_diff: conj(
                    eq(n, cons(a, cons(ad, dd))),
                    poso(dd),
                    conde(
                        [eq(a, ad), eq(diff, new_diff)],
                        [eq(from_list([a, ad]), from_list([0, 1])), plus1mod3o(new_diff, diff)],
                        [eq(from_list([a, ad]), from_list([1, 0])), plus1mod3o(diff, new_diff)],
                    ),
                    even_odd_helpero(dd, new_diff),
                )
            )
        ],
    )


@relation
def div3o_even_odd(n) -> Goal:
    """Divisible by three iff the even/odd bit-sum difference is 0."""
    return even_odd_helpero(n, 0)


IMPL_NAMES = ("3*x", "x*3", "3+x", "x+3", "dfa", "even-odd")

_IMPLS = {
    "3*x": div3o_3_times_x,
    "x*3": div3o_x_times_3,
    "3+x": div3o_3_plus_x,
    "x+3": div3o_x_plus_3,
    "dfa": div3o_dfa,
    "even-odd": div3o_even_odd,
}


def lookup_impl(name: str):
    """The registered divisibility relation for `name`.

    Raises KeyError for anything outside IMPL_NAMES.
    """
    try:
        return _IMPLS[name]
    except KeyError:
        raise KeyError(
            f"unknown implementation {name!r}; expected one of {', '.join(IMPL_NAMES)}"
        ) from None
