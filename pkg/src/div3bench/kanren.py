"""Minimal relational engine: terms, unification, interleaving search, reification.

Terms are ordinary Python values:

  * a logic variable is a ``Var``,
  * the empty list is ``()``,
  * a pair is a 2-tuple ``(head, tail)`` (build with ``cons``),
  * everything else (the small ints 0..2, state labels such as ``'q1'``)
    is an atom that compares by value.

A goal is a function from an engine state to a lazily produced stream of
states.  Streams interleave at suspension points, so a disjunction whose
first branch yields infinitely many solutions cannot starve the others.
The scheduling discipline (where suspensions are introduced, how ``mplus``
and ``bind`` swap work between branches) is load-bearing: first-k answers
and their order depend on it, and the divisibility relations in this
package are benchmarked on exactly those orders.

Substitutions are persistent (extension never mutates the original), with
one invisible shortcut borrowed from the fast Scheme engines: a variable
created since the current disjunction branch began can be bound by
writing its own cell, because no other branch can possibly reach it.
Every observable state still behaves as an immutable snapshot.
"""

from __future__ import annotations

import sys
import threading
from functools import wraps
from typing import Any, Callable

Term = Any  # Var | () | (Term, Term) | int | str

NIL: tuple = ()

__all__ = [
    "Var",
    "Subst",
    "State",
    "NIL",
    "cons",
    "from_list",
    "to_list",
    "term_to_str",
    "walk",
    "walk_star",
    "occurs",
    "unify",
    "eq",
    "succeed",
    "fail",
    "conj",
    "disj",
    "conde",
    "fresh",
    "delay",
    "relation",
    "table_relation",
    "reify",
    "run",
    "run_star",
]

_UNBOUND = object()  # marks a Var cell with no in-place binding
_DETACHED = object()  # scope of Vars created outside any query


class Var:
    """A logic variable.  Identity is the object itself; ``id`` is the
    per-query allocation index used as the substitution key."""

    __slots__ = ("id", "val", "scope")

    def __init__(self, id: int, scope=_DETACHED):
        self.id = id
        self.val = _UNBOUND
        self.scope = scope

    def __hash__(self):
        return self.id

    def __repr__(self):
        return f"#{self.id}"


def cons(head: Term, tail: Term) -> tuple:
    return (head, tail)


def from_list(items, tail: Term = NIL) -> Term:
    """Build a list term from a Python iterable, with an optional improper tail."""
    out = tail
    for x in reversed(list(items)):
        out = (x, out)
    return out


def to_list(t: Term) -> list:
    """Flatten a ground proper-list term into a Python list."""
    out = []
    while type(t) is tuple and t:
        out.append(t[0])
        t = t[1]
    if t != NIL:
        raise ValueError(f"improper list term: tail {t!r}")
    return out


def term_to_str(t: Term) -> str:
    """Print a term in answer syntax: ``()``, ``(1 1)``, ``(0 _.0 . _.1)``."""
    if type(t) is tuple:
        if not t:
            return "()"
        parts = []
        while type(t) is tuple and t:
            parts.append(term_to_str(t[0]))
            t = t[1]
        if t == NIL:
            return "(" + " ".join(parts) + ")"
        return "(" + " ".join(parts) + " . " + term_to_str(t) + ")"
    return str(t)


# --- substitutions ---------------------------------------------------------
#
# The out-of-branch half of a substitution is a persistent map from
# variable id to term: a radix-32 trie over the (dense) ids.  Extension
# path-copies O(log32 n) nodes, so states captured by suspended branches
# share structure and never observe later bindings.


def _trie_set(node, shift, key, val):
    slots = [None] * 32 if node is None else list(node)
    i = (key >> shift) & 31
    if shift:
        slots[i] = _trie_set(slots[i], shift - 5, key, val)
    else:
        slots[i] = val
    return tuple(slots)


_EMPTY_TAIL = (None,) * 31


class Subst:
    """Persistent variable binding store with triangular resolution."""

    __slots__ = ("_root", "_depth")

    def __init__(self, root=None, depth: int = 1):
        self._root = root
        self._depth = depth

    def bind(self, var: Var, term: Term) -> "Subst":
        """Extend with var -> term; the receiver is unchanged."""
        root, depth = self._root, self._depth
        key = var.id
        while key >= (1 << (5 * depth)):
            if root is not None:
                root = (root,) + _EMPTY_TAIL
            depth += 1
        return Subst(_trie_set(root, 5 * (depth - 1), key, term), depth)

    def lookup(self, var: Var):
        """The term bound to var in the trie, or None if unbound there."""
        key = var.id
        if key >= (1 << (5 * self._depth)):
            return None
        node = self._root
        shift = 5 * (self._depth - 1)
        while node is not None and shift:
            node = node[(key >> shift) & 31]
            shift -= 5
        return None if node is None else node[key & 31]


EMPTY_SUBST = Subst()


def walk(t: Term, s: Subst) -> Term:
    """Resolve t through bound-variable chains to a non-variable or an
    unbound variable.  No path compression."""
    root, depth = s._root, s._depth
    while type(t) is Var:
        v = t.val
        if v is _UNBOUND:
            key = t.id
            if key >= (1 << (5 * depth)):
                return t
            node = root
            shift = 5 * (depth - 1)
            while node is not None and shift:
                node = node[(key >> shift) & 31]
                shift -= 5
            v = None if node is None else node[key & 31]
            if v is None:
                return t
        t = v
    return t


def occurs(x: Var, t: Term, s: Subst) -> bool:
    """Does variable x occur in t under s?"""
    t = walk(t, s)
    if type(t) is Var:
        return t is x
    if type(t) is tuple and t:
        return occurs(x, t[0], s) or occurs(x, t[1], s)
    return False


def _unify(u: Term, v: Term, s: Subst, scope):
    """unify() plus the in-place shortcut for variables whose scope is the
    current branch scope.  The resolve loops are walk() inlined."""
    root, depth = s._root, s._depth
    while type(u) is Var:
        t = u.val
        if t is _UNBOUND:
            key = u.id
            if key < (1 << (5 * depth)):
                node = root
                shift = 5 * (depth - 1)
                while node is not None and shift:
                    node = node[(key >> shift) & 31]
                    shift -= 5
                t = None if node is None else node[key & 31]
            else:
                t = None
            if t is None:
                break
        u = t
    while type(v) is Var:
        t = v.val
        if t is _UNBOUND:
            key = v.id
            if key < (1 << (5 * depth)):
                node = root
                shift = 5 * (depth - 1)
                while node is not None and shift:
                    node = node[(key >> shift) & 31]
                    shift -= 5
                t = None if node is None else node[key & 31]
            else:
                t = None
            if t is None:
                break
        v = t
    if u is v:
        return s
    tu = type(u)
    if tu is Var:
        if occurs(u, v, s):
            return None
        if u.scope is scope:
            u.val = v
            return s
        return s.bind(u, v)
    if type(v) is Var:
        if occurs(v, u, s):
            return None
        if v.scope is scope:
            v.val = u
            return s
        return s.bind(v, u)
    if tu is tuple and type(v) is tuple:
        if u and v:
            s = _unify(u[0], v[0], s, scope)
            if s is None:
                return None
            return _unify(u[1], v[1], s, scope)
        return None  # () vs pair; () vs () was caught by `u is v`
    if u == v:
        return s
    return None


def unify(u: Term, v: Term, s: Subst):
    """Most general extension of s making u and v equal, or None.

    Performs the occurs check before every variable binding, so
    substitutions stay acyclic and walking always terminates.
    """
    return _unify(u, v, s, None)


def walk_star(t: Term, s: Subst) -> Term:
    """Resolve t fully: every reachable bound variable is replaced."""
    t = walk(t, s)
    if type(t) is tuple and t:
        return (walk_star(t[0], s), walk_star(t[1], s))
    return t


def reify(t: Term, s: Subst) -> Term:
    """Resolve t under s and replace unbound variables with ``_.0``,
    ``_.1``, ... numbered by first occurrence, left to right."""
    t = walk_star(t, s)
    names: dict[Var, str] = {}

    def rename(t):
        if type(t) is Var:
            name = names.get(t)
            if name is None:
                name = names[t] = f"_.{len(names)}"
            return name
        if type(t) is tuple and t:
            return (rename(t[0]), rename(t[1]))
        return t

    return rename(t)


# --- engine state and streams ----------------------------------------------


class State:
    """A substitution, the fresh-variable counter for one query, and the
    current branch scope token."""

    __slots__ = ("sub", "nvar", "scope")

    def __init__(self, sub: Subst, nvar: int, scope):
        self.sub = sub
        self.nvar = nvar
        self.scope = scope


Goal = Callable[[State], Any]

# A stream is one of:
#   None                  -- no solutions
#   a State               -- exactly one solution, nothing pending
#   (State, thunk)        -- one solution plus a suspended rest
#   a 0-ary callable      -- a suspension
#
# mplus/bind swap the two sides whenever they pass a suspension, which is
# what makes the search complete: every branch is forced infinitely often.


def mplus(stream, f):
    if stream is None:
        return f()
    t = type(stream)
    if t is tuple:
        c, f2 = stream
        return (c, lambda: mplus(f(), f2))
    if t is State:
        return (stream, f)
    return lambda: mplus(f(), stream)


def bind(stream, g):
    if stream is None:
        return None
    t = type(stream)
    if t is tuple:
        c, f = stream
        return mplus(g(c), lambda: bind(f(), g))
    if t is State:
        return g(stream)
    return lambda: bind(stream(), g)


def take(n, f):
    """Force up to n states out of the stream produced by thunk f.
    n=None takes everything (does not return if the stream is infinite)."""
    out = []
    if n == 0:
        return out
    while True:
        stream = f()
        while not (stream is None or type(stream) is tuple or type(stream) is State):
            stream = stream()
        if stream is None:
            return out
        if type(stream) is State:
            out.append(stream)
            return out
        c, f = stream
        out.append(c)
        if n is not None:
            n -= 1
            if n == 0:
                return out


# --- goals ------------------------------------------------------------------


def eq(u: Term, v: Term) -> Goal:
    """Goal succeeding at most once, with u and v unified."""

    def goal(st: State):
        s = _unify(u, v, st.sub, st.scope)
        if s is None:
            return None
        if s is st.sub:
            return st
        return State(s, st.nvar, st.scope)

    return goal


def succeed(st: State):
    return st


def fail(st: State):
    return None


def conj(*goals: Goal) -> Goal:
    """Run goals left to right over the stream."""
    if len(goals) == 1:
        return goals[0]

    def goal(st: State):
        stream = goals[0](st)
        for i in range(1, len(goals)):
            stream = bind(stream, goals[i])
        return stream

    return goal


def conde(*clauses) -> Goal:
    """Interleaving disjunction of conjunction clauses (each a sequence of
    goals).

    The whole disjunction is suspended once, every clause after the first
    waits behind a suspension, and solutions of all clauses eventually
    appear however unproductive the clauses before them are.
    """

    def goal(st: State):
        return lambda: _conde_step(clauses, 0, State(st.sub, st.nvar, object()))

    return goal


def _conde_step(clauses, i, st):
    clause = clauses[i]
    stream = clause[0](st)
    for j in range(1, len(clause)):
        stream = bind(stream, clause[j])
    if i + 1 == len(clauses):
        return stream
    return mplus(stream, lambda: _conde_step(clauses, i + 1, st))


def disj(*goals: Goal) -> Goal:
    """Interleaving disjunction of plain goals."""
    return conde(*[(g,) for g in goals])


def fresh(body: Callable[..., Goal]) -> Goal:
    """Allocate one fresh variable per parameter of body and run the goal
    it builds.  The body is built lazily, at first forcing."""
    arity = body.__code__.co_argcount

    def goal(st: State):
        def force():
            base = st.nvar
            scope = st.scope
            st2 = State(st.sub, base + arity, scope)
            return body(*[Var(base + i, scope) for i in range(arity)])(st2)

        return force

    return goal


def delay(producer: Callable[[], Goal]) -> Goal:
    """A goal that suspends; each forcing invokes producer once and runs
    the produced goal.  Required for recursive relation definitions."""

    def goal(st: State):
        return lambda: producer()(st)

    return goal


def relation(fn):
    """Decorator for relation definitions.

    ``fn(*args)`` must build and return a goal.  The returned constructor
    delays that build until the goal is first forced, so relations may
    recurse on themselves without unbounded expansion, and every call
    costs exactly one suspension (like the reference engine's helper for
    defining relations).
    """

    @wraps(fn)
    def rel(*args) -> Goal:
        def goal(st: State):
            return lambda: fn(*args)(st)

        return goal

    return rel


def table_relation(rows, name: str, doc: str | None = None):
    """A relation holding when the argument tuple matches one of the
    ground rows.

    Behaves exactly like a relation whose body is a disjunction of
    per-row conjunctions of eq goals, row order preserved, but skips
    building those goals on every call.  Rows must be ground atoms.
    """

    def rel(*args) -> Goal:
        def goal(st: State):
            def outer():  # the relation-call suspension
                def inner():  # the disjunction's suspension
                    return _table_step(rows, 0, args, st, object())

                return inner

            return outer

        return goal

    rel.__name__ = rel.__qualname__ = name
    rel.__doc__ = doc
    return rel


def _table_step(rows, i, args, st, scope):
    nrows = len(rows)
    nargs = len(args)
    sub = st.sub
    while i < nrows:
        row = rows[i]
        i += 1
        s = sub
        for k in range(nargs):
            s = _unify(args[k], row[k], s, scope)
            if s is None:
                break
        else:
            state = State(s, st.nvar, scope)
            if i == nrows:
                return state
            return (state, lambda: _table_step(rows, i, args, st, scope))
    return None


# --- running queries ---------------------------------------------------------

# Forcing a stream can nest Python calls roughly as deep as the recursion
# depth of the relations involved (tens of thousands of frames for the
# larger benchmark inputs), so queries run on a worker thread with a large
# stack.  Queries share nothing; one query's stream must be forced from a
# single thread at a time.

_STACK_BYTES = 512 * 1024 * 1024
_RECURSION_LIMIT = 3_000_000


def _run_on_worker(fn):
    if sys.getrecursionlimit() < _RECURSION_LIMIT:
        sys.setrecursionlimit(_RECURSION_LIMIT)
    box: list = []

    def work():
        try:
            box.append((True, fn()))
        except BaseException as e:  # re-raised on the calling thread
            box.append((False, e))

    old = threading.stack_size(_STACK_BYTES)
    try:
        t = threading.Thread(target=work, name="kanren-query")
        t.start()
    finally:
        threading.stack_size(old)
    t.join()
    ok, val = box[0]
    if not ok:
        raise val
    return val


def run(limit, query: Callable[[Var], Goal]) -> list:
    """Take up to `limit` solutions of the goal query builds over a fresh
    query variable, reified.  limit=None means all solutions; that only
    returns if the solution set is finite."""
    scope = object()
    q = Var(0, scope)
    goal = query(q)
    st = State(EMPTY_SUBST, 1, scope)
    states = _run_on_worker(lambda: take(limit, lambda: goal(st)))
    return [reify(q, s.sub) for s in states]


def run_star(query: Callable[[Var], Goal]) -> list:
    """All solutions; the query must have a finite solution set."""
    return run(None, query)
