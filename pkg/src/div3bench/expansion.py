"""Expand an answer with placeholders into the ground numerals it covers.

An answer like ``(_.0 _.0 1 1)`` stands for every numeral obtained by
assigning bits to its placeholders consistently (the same placeholder is
the same bit everywhere), here ``(0 0 1 1)`` and ``(1 1 1 1)``.  A
trailing placeholder is forced to 1 first, since numerals never end in 0.
``reach`` counts how many distinct numerals the first i answers of a
divisibility relation cover; relations whose answers keep bits fresh can
cover far more than i.
"""

from __future__ import annotations

from collections import deque

from .div3 import lookup_impl
from .kanren import NIL, Term, from_list, run

__all__ = [
    "is_ground_bit",
    "find_first_reified",
    "substitute",
    "all_solutions",
    "reach",
]


def is_ground_bit(e) -> bool:
    """True iff e is the bit 0 or the bit 1."""
    return type(e) is int and (e == 0 or e == 1)


def find_first_reified(elements):
    """The leftmost non-bit element (a placeholder such as '_.0'), or None."""
    for e in elements:
        if not is_ground_bit(e):
            return e
    return None


def substitute(elements, placeholder, bit):
    """Replace every occurrence of placeholder by bit."""
    return [bit if e == placeholder else e for e in elements]


def _as_elements(b: Term) -> list:
    out = []
    while type(b) is tuple and b:
        out.append(b[0])
        b = b[1]
    if b != NIL:
        raise ValueError(
            f"cannot expand an answer with an open tail (tail {b!r})"
        )
    return out


def all_solutions(b: Term) -> list[Term]:
    """Every ground numeral the answer b covers, as duplicate-free terms.

    b must be () or a proper list of bits and placeholders.  Placeholders
    are expanded breadth first over {0, 1}; a placeholder in the last
    position is fixed to 1 everywhere before expanding, preserving the
    no-trailing-zero invariant.
    """
    if b == NIL:
        return [NIL]
    elements = _as_elements(b)
    if is_ground_bit(elements[-1]):
        queue = deque([elements])
    else:
        queue = deque([substitute(elements, elements[-1], 1)])
    while True:
        placeholder = find_first_reified(queue[0])
        if placeholder is None:
            return [from_list(e) for e in queue]
        front = queue.popleft()
        queue.append(substitute(front, placeholder, 0))
        queue.append(substitute(front, placeholder, 1))


def reach(impl, i: int) -> int:
    """How many distinct numerals the first i answers of impl cover.

    impl is a registered name ("dfa", "even-odd", ...) or a unary
    relation; the query runs it on a fresh variable.
    """
    rel = lookup_impl(impl) if isinstance(impl, str) else impl
    covered: set[Term] = set()
    for answer in run(i, rel):
        covered.update(all_solutions(answer))
    return len(covered)
