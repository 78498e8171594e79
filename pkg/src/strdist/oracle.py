"""Brute-force reference for the distance, used to cross-check the solver.

Deliberately naive: it enumerates every admitted operation over the whole
alphabet at every position, prices it through :meth:`CostModel.cost`, and
recurses depth-first on the remaining budget.  The recursion ranges over
all operation sequences of cost within the bound.

Results are memoised per string.  Once a string's best cost ``c`` within
some budget is known, ``c`` is its answer for every budget ``>= c`` and
nothing fits below it.  Once some completion of cost ``c`` is found,
later moves are only searched for strictly cheaper ones, and the bound
is raised one unit at a time.  A string with no solution within budget ``r``
has none within any smaller budget either.
"""
from __future__ import annotations

import itertools
import math
from typing import Sequence

from .core import CostModel, Deletion, Insertion, KSubstitution, Str
from .symbols import Symbol

INF = math.inf


def _all_moves(s: Str, d: CostModel):
    """Every admitted single operation applicable to ``s``, with its cost."""
    n = len(s)
    sigma = d.alphabet
    for i in range(n + 1):
        for a in sigma:
            op = Insertion(a)
            c = d.cost(op)
            if c is not None:
                yield c, s[:i] + (a,) + s[i:]
    for i in range(n):
        c = d.cost(Deletion(s[i]))
        if c is not None:
            yield c, s[:i] + s[i + 1 :]
    widths = set()
    if "S" in d.op_set:
        widths.add(1)
    if "kS" in d.op_set:
        widths.add(d.arity)
    for k in sorted(widths):
        for i in range(n - k + 1):
            lhs = s[i : i + k]
            for rhs in itertools.product(sigma, repeat=k):
                if rhs == lhs:
                    continue
                c = d.cost(KSubstitution(lhs, rhs))
                if c is not None:
                    yield c, s[:i] + rhs + s[i + k :]


def brute_force_distance(v: Sequence[Symbol], w: Sequence[Symbol], d: CostModel, bound: int):
    """Minimum cost over all operation sequences of cost <= ``bound``, else ``math.inf``."""
    v, w = tuple(v), tuple(w)
    exact: dict[Str, int] = {}
    hopeless: dict[Str, int] = {}  # largest budget known to be insufficient

    def best(s: Str, rem: int) -> float:
        if s == w:
            return 0
        if rem <= 0:
            return INF
        if s in exact:
            return exact[s] if exact[s] <= rem else INF
        if hopeless.get(s, -1) >= rem:
            return INF
        result = INF
        for c, t in _all_moves(s, d):
            # only strictly cheaper completions can improve on ``result``
            limit = min(rem, result - 1) - c
            if limit >= 0:
                sub = best(t, limit)
                if c + sub < result:
                    result = c + sub
        if result < INF:
            exact[s] = result
        else:
            hopeless[s] = rem
        return result

    # deepen the bound one unit at a time so cheap answers are found before
    # the search wanders through long expensive detours
    for b in range(bound + 1):
        if best(v, b) < INF:
            return best(v, b)
    return INF
