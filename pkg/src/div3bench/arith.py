"""Little-endian binary numerals and the relational arithmetic over them.

A numeral is a proper list of bits, least significant first; zero is the
empty list and a nonzero numeral never ends in 0, so every natural number
has exactly one representation.  ``pluso`` and ``mulo`` are the classic
pure-relational adder and shift-and-add multiplier: all-ground queries
terminate, subtraction-style queries (one addend fresh) terminate, and
``mulo`` carries a length-bound guard so factoring a ground product
terminates too.

Clause order inside every relation is deliberate and must not be
"cleaned up": the first-k answers of the divisibility relations built on
top of these depend on it.
"""

from __future__ import annotations

from .kanren import (
    NIL,
    Goal,
    Term,
    conde,
    conj,
    cons,
    eq,
    fresh,
    from_list,
    relation,
    table_relation,
    to_list,
)

__all__ = [
    "ONE",
    "THREE",
    "build_num",
    "num_value",
    "poso",
    "gt1o",
    "olego",
    "div2o",
    "full_addero",
    "addero",
    "gen_addero",
    "pluso",
    "mulo",
]

ONE: Term = (1, NIL)
THREE: Term = (1, (1, NIL))


def build_num(n: int) -> Term:
    """The numeral term for a natural number n."""
    if n < 0:
        raise ValueError("numerals encode naturals only")
    out: Term = NIL
    for i in range(n.bit_length() - 1, -1, -1):
        out = ((n >> i) & 1, out)
    return out


def num_value(t: Term) -> int:
    """The natural number a ground numeral denotes; inverse of build_num.

    Rejects anything that is not a well-formed numeral: unbound
    variables, non-bit elements, improper tails, and a trailing 0 bit.
    """
    bits = to_list(t)  # raises on improper tails
    for b in bits:
        if type(b) is not int or b not in (0, 1):
            raise ValueError(f"not a bit: {b!r}")
    if bits and bits[-1] == 0:
        raise ValueError("numeral ends in 0")
    value = 0
    for b in reversed(bits):
        value = (value << 1) | b
    return value


@relation
def poso(n) -> Goal:
    """n is positive, i.e. a pair."""
    return fresh(lambda a, d: eq(cons(a, d), n))


@relation
def gt1o(n) -> Goal:
    """n is greater than one, i.e. has at least two bits."""
    return fresh(lambda a, ad, dd: eq(cons(a, cons(ad, dd)), n))


@relation
def olego(n) -> Goal:
    """n is a well-formed numeral; enumerates them all on fresh input."""
    return conde(
        [eq(n, NIL)],
        [
            fresh(
                lambda a, d: conj(
                    eq(n, cons(a, d)),
                    conde([eq(a, 0), poso(d)], [eq(a, 1)]),
                    olego(d),
                )
            )
        ],
    )


@relation
def div2o(n) -> Goal:
    """n is even: () or a 0 bit followed by a positive numeral."""
    return conde(
        [eq(n, NIL)],
        [fresh(lambda half: conj(eq(n, cons(0, half)), poso(half)))],
    )


# One-bit full adder: b + x + y = r + 2c, one row per (b, x, y) pattern.
# Relationally this is the disjunction of the 8 ground rows, in this order.
full_addero = table_relation(
    (
        (0, 0, 0, 0, 0),
        (1, 0, 0, 1, 0),
        (0, 1, 0, 1, 0),
        (1, 1, 0, 0, 1),
        (0, 0, 1, 1, 0),
        (1, 0, 1, 0, 1),
        (0, 1, 1, 0, 1),
        (1, 1, 1, 1, 1),
    ),
    name="full_addero",
    doc="One-bit full adder: b + x + y = r + 2c.  Exactly 8 ground rows.",
)


@relation
def addero(d, n, m, r) -> Goal:
    """d + n + m = r for carry bit d and numerals n, m, r."""
    return conde(
        [eq(0, d), eq(NIL, m), eq(n, r)],
        [eq(0, d), eq(NIL, n), eq(m, r), poso(m)],
        [eq(1, d), eq(NIL, m), addero(0, n, ONE, r)],
        [eq(1, d), eq(NIL, n), poso(m), addero(0, ONE, m, r)],
        [
            eq(ONE, n),
            eq(ONE, m),
            fresh(lambda a, c: conj(eq(from_list([a, c]), r), full_addero(d, 1, 1, a, c))),
        ],
        [eq(ONE, n), gen_addero(d, n, m, r)],
        [eq(ONE, m), gt1o(n), gt1o(r), addero(d, ONE, n, r)],
        [gt1o(n), gen_addero(d, n, m, r)],
    )


@relation
def gen_addero(d, n, m, r) -> Goal:
    """Adder step for n of any length and m, r both at least two bits."""
    return fresh(
        lambda a, b, c, e, x, y, z: conj(
            eq(cons(a, x), n),
            eq(cons(b, y), m),
            poso(y),
            eq(cons(c, z), r),
            poso(z),
            full_addero(d, a, b, c, e),
            addero(e, x, y, z),
        )
    )


@relation
def pluso(n, m, k) -> Goal:
    """n + m = k."""
    return addero(0, n, m, k)


@relation
def mulo(n, m, p) -> Goal:
    """n * m = p, by shift-and-add on the bits of n."""
    return conde(
        [eq(NIL, n), eq(NIL, p)],
        [poso(n), eq(NIL, m), eq(NIL, p)],
        [eq(ONE, n), poso(m), eq(m, p)],
        [gt1o(n), eq(ONE, m), eq(n, p)],
        [
            fresh(
                lambda x, z: conj(
                    eq(cons(0, x), n),
                    poso(x),
                    eq(cons(0, z), p),
                    poso(z),
                    mulo(x, m, z),
                )
            )
        ],
        [
            fresh(
                lambda x, y: conj(
                    eq(cons(1, x), n),
                    poso(x),
                    eq(cons(0, y), m),
                    poso(y),
                    mulo(m, n, p),
                )
            )
        ],
        [
            fresh(
                lambda x, y: conj(
                    eq(cons(1, x), n),
                    poso(x),
                    eq(cons(1, y), m),
                    poso(y),
                    _odd_mulo(x, n, m, p),
                )
            )
        ],
    )


@relation
def _odd_mulo(x, n, m, p) -> Goal:
    """p = 2(x*m) + m, for n = 2x+1; the bound guard keeps the partial
    product no longer than p, so factoring a ground p terminates."""
    return fresh(
        lambda q: conj(
            _bound_mulo(q, p, n, m),
            mulo(x, m, q),
            pluso(cons(0, q), m, p),
        )
    )


@relation
def _bound_mulo(q, p, n, m) -> Goal:
    """Length guard: |q| < |p| <= |q| + |n| + |m|."""
    return conde(
        [eq(NIL, q), poso(p)],
        [
            fresh(
                lambda a0, a1, a2, a3, x, y, z: conj(
                    eq(cons(a0, x), q),
                    eq(cons(a1, y), p),
                    conde(
                        [
                            eq(NIL, n),
                            eq(cons(a2, z), m),
                            _bound_mulo(x, y, z, NIL),
                        ],
                        [
                            eq(cons(a3, z), n),
                            _bound_mulo(x, y, z, m),
                        ],
                    ),
                )
            )
        ],
    )
