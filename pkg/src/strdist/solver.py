"""Exact weighted k-Hamming / k-Edit distances by budgeted uniform-cost search.

The decision procedure that nondeterministically guesses one operation
at a time is realized deterministically: every choice is a successor in an
implicit graph over strings, explored least-cost-first and pruned once the
accumulated cost exceeds the budget.

Insertions are handled in a normal form.  Any transformation sequence can
be reordered, without changing its cost or result, so that each inserted
symbol is inserted immediately before the first operation that reads it,
or belongs to a final run of insertions that nothing reads.  The search
therefore only allows an insertion while the pending inserted symbols still
fit under one operation window, and it finishes by completing the current
string to the target with insertions when the current string is a
subsequence of the target.  Without this, every cheap insertion anywhere
would multiply the state space.
"""
from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .core import (
    CostModel,
    Deletion,
    Insertion,
    Instance,
    KSubstitution,
    Step,
    Str,
    TransformationSequence,
    validate_instance,
)
from .errors import EnumerationCapExceeded, InvalidInstance, SearchLimitExceeded
from .symbols import Symbol

DEFAULT_ENUMERATION_CAP = 4096


@dataclass(frozen=True)
class Exact:
    cost: int
    witness: TransformationSequence

    def __str__(self):
        return f"Exact {self.cost}"


@dataclass(frozen=True)
class ExceedsBudget:
    budget: int

    def __str__(self):
        return f"ExceedsBudget {self.budget}"


@dataclass(frozen=True)
class Unreachable:
    def __str__(self):
        return "Unreachable"


DistanceResult = Union[Exact, ExceedsBudget, Unreachable]


class RuleIndex:
    """Integer-coded lookup tables over the explicit rules of a cost model.

    Symbols are coded by their position in the (canonically sorted)
    alphabet, so comparing coded strings compares them in canonical order.
    """

    def __init__(self, model: CostModel, enumeration_cap: int = DEFAULT_ENUMERATION_CAP):
        self.model = model
        self.enumeration_cap = enumeration_cap
        self.symbols: Str = model.alphabet
        self.code = {s: i for i, s in enumerate(self.symbols)}
        self.by_lhs: dict[tuple[int, ...], list[tuple[tuple[int, ...], int]]] = {}
        explicit_ins: dict[int, int] = {}
        explicit_del: dict[int, int] = {}
        for op, cost in model.rules.items():
            if not model.admits(op):
                continue
            if isinstance(op, Insertion):
                explicit_ins[self.code[op.symbol]] = cost
            elif isinstance(op, Deletion):
                explicit_del[self.code[op.symbol]] = cost
            else:
                lhs = tuple(self.code[s] for s in op.lhs)
                rhs = tuple(self.code[s] for s in op.rhs)
                self.by_lhs.setdefault(lhs, []).append((rhs, cost))
        for entries in self.by_lhs.values():
            entries.sort()

        ops = model.op_set
        default = model.default_cost
        n = len(self.symbols)
        self.allow_ins = "I" in ops
        self.allow_del = "D" in ops
        self.widths = model.substitution_widths()
        self.default = default
        self.insert_cost: dict[int, int] = {}
        self.delete_cost: dict[int, int] = {}
        for a in range(n):
            if self.allow_ins:
                c = explicit_ins.get(a, default)
                if c is not None:
                    self.insert_cost[a] = c
            if self.allow_del:
                c = explicit_del.get(a, default)
                if c is not None:
                    self.delete_cost[a] = c
        self.insert_list = sorted(self.insert_cost.items())
        self.min_insert = min(self.insert_cost.values(), default=None)
        readers = list(self.widths) + ([1] if self.allow_del else [])
        self.read_width = max(readers, default=0)

    def encode(self, s: Sequence[Symbol]) -> tuple[int, ...]:
        return tuple(self.code[x] for x in s)

    def decode(self, s: Sequence[int]) -> Str:
        return tuple(self.symbols[x] for x in s)

    def operation(self, desc) -> Union[Insertion, Deletion, KSubstitution]:
        kind = desc[0]
        if kind == "I":
            return Insertion(self.symbols[desc[1]])
        if kind == "D":
            return Deletion(self.symbols[desc[1]])
        return KSubstitution(self.decode(desc[1]), self.decode(desc[2]))

    def _default_rhs(self, width: int):
        n = len(self.symbols)
        if n**width > self.enumeration_cap:
            raise EnumerationCapExceeded(
                f"default-cost {width}-substitutions need {n}^{width} = {n**width} "
                f"successors per position (cap {self.enumeration_cap})"
            )
        return itertools.product(range(n), repeat=width)

    def successors(self, s, pend, remaining, max_len=math.inf, normal_form=True, budget_flag=None):
        """Yield ``(cost, new_s, new_pend, op_desc, pos)`` for every affordable move.

        ``pend`` holds the sorted 0-based positions of inserted symbols that
        the next non-insertion operation must read.  ``budget_flag`` is a
        one-element list set to True whenever a move is skipped only because
        it is too expensive or would exceed ``max_len``.
        """
        L = len(s)
        default = self.default
        width_read = self.read_width
        for i in range(L + 1):
            if self.allow_ins and self.insert_list:
                if L + 1 > max_len:
                    if budget_flag is not None:
                        budget_flag[0] = True
                else:
                    npend = ()
                    ok = True
                    if normal_form:
                        npend = tuple(sorted([x + 1 if x >= i else x for x in pend] + [i]))
                        ok = len(npend) <= width_read and npend[-1] - npend[0] < width_read
                    if ok:
                        head, tail = s[:i], s[i:]
                        for a, c in self.insert_list:
                            if c > remaining:
                                if budget_flag is not None:
                                    budget_flag[0] = True
                                continue
                            yield c, head + (a,) + tail, npend, ("I", a), i + 1
            if i == L:
                break
            if pend and pend[0] < i:
                # a window starting here cannot read the leftmost pending symbol
                continue
            if self.allow_del and (not pend or pend[-1] == i):
                c = self.delete_cost.get(s[i])
                if c is not None:
                    if c > remaining:
                        if budget_flag is not None:
                            budget_flag[0] = True
                    else:
                        yield c, s[:i] + s[i + 1 :], (), ("D", s[i]), i + 1
            for width in self.widths:
                if i + width > L or (pend and pend[-1] >= i + width):
                    continue
                key = s[i : i + width]
                head, tail = s[:i], s[i + width :]
                explicit = self.by_lhs.get(key, ())
                for rhs, c in explicit:
                    if c > remaining:
                        if budget_flag is not None:
                            budget_flag[0] = True
                        continue
                    yield c, head + rhs + tail, (), ("K", key, rhs), i + 1
                if default is None:
                    continue
                if default > remaining:
                    if budget_flag is not None:
                        budget_flag[0] = True
                    continue
                listed = {rhs for rhs, _ in explicit}
                for rhs in self._default_rhs(width):
                    if rhs == key or rhs in listed:
                        continue
                    yield default, head + rhs + tail, (), ("K", key, rhs), i + 1

    def completion_cost(self, s, w) -> Optional[int]:
        """Cost of finishing with pure insertions, or None if impossible."""
        j = 0
        n = len(s)
        total = 0
        for ch in w:
            if j < n and s[j] == ch:
                j += 1
                continue
            c = self.insert_cost.get(ch)
            if c is None:
                return None
            total += c
        return total if j == n else None

    def completion_steps(self, s, w) -> list[Step]:
        steps = []
        j = 0
        for pos, ch in enumerate(w):
            if j < len(s) and s[j] == ch:
                j += 1
            else:
                steps.append(Step(Insertion(self.symbols[ch]), pos + 1))
        return steps


_INDEX_CACHE: dict[int, tuple[CostModel, int, RuleIndex]] = {}


def rule_index(model: CostModel, enumeration_cap: int = DEFAULT_ENUMERATION_CAP) -> RuleIndex:
    hit = _INDEX_CACHE.get(id(model))
    if hit is not None and hit[0] is model and hit[1] == enumeration_cap:
        return hit[2]
    idx = RuleIndex(model, enumeration_cap)
    if len(_INDEX_CACHE) > 64:
        _INDEX_CACHE.clear()
    _INDEX_CACHE[id(model)] = (model, enumeration_cap, idx)
    return idx


def neighbors(s: Sequence[Symbol], d: CostModel, remaining: int, *, enumeration_cap=DEFAULT_ENUMERATION_CAP):
    """All single-operation successors of ``s`` costing at most ``remaining``.

    Returns a list of ``(operation, position, cost, new_string)`` in
    position order, then rule order.
    """
    idx = rule_index(d, enumeration_cap)
    out = []
    for c, ns, _, desc, pos in idx.successors(idx.encode(s), (), remaining, normal_form=False):
        out.append((idx.operation(desc), pos, c, idx.decode(ns)))
    return out


def distance(
    v: Sequence[Symbol],
    w: Sequence[Symbol],
    d: CostModel,
    budget: int,
    *,
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP,
    max_states: Optional[int] = None,
) -> DistanceResult:
    """Minimum transformation cost from ``v`` to ``w`` if it is at most ``budget``.

    Returns :class:`Exact` with an optimal witness, :class:`ExceedsBudget`
    when the search had to discard moves for lack of budget, or
    :class:`Unreachable` when every string reachable from ``v`` was
    explored without meeting ``w``.  ``max_states`` bounds the number of
    expanded states and raises :class:`SearchLimitExceeded` when hit.
    """
    if budget < 0:
        raise ValueError("budget must be non-negative")
    idx = rule_index(d, enumeration_cap)
    sv, sw = idx.encode(v), idx.encode(w)
    length_fixed = not idx.insert_cost and not idx.delete_cost
    if length_fixed and len(sv) != len(sw):
        return Unreachable()
    if idx.min_insert:
        max_len = max(len(sv), len(sw)) + budget // idx.min_insert
    else:
        max_len = max(len(sv), len(sw))

    start = (sv, ())
    best = {start: 0}
    parent = {start: None}
    closed = set()
    heap = [(0, 1, sv, ())]
    flag = [False]
    expanded = 0
    while heap:
        g, tag, s, pend = heapq.heappop(heap)
        state = (s, pend)
        if tag == 0:
            return Exact(g, _witness(idx, parent, state, sw, g))
        if state in closed or best[state] < g:
            continue
        closed.add(state)
        expanded += 1
        if max_states is not None and expanded > max_states:
            raise SearchLimitExceeded(f"expanded more than {max_states} states")
        remaining = budget - g
        tail = idx.completion_cost(s, sw)
        if tail is not None:
            if tail <= remaining:
                heapq.heappush(heap, (g + tail, 0, s, pend))
            else:
                flag[0] = True
        for c, ns, npend, desc, pos in idx.successors(s, pend, remaining, max_len, True, flag):
            key = (ns, npend)
            if key in closed:
                continue
            ng = g + c
            old = best.get(key)
            if old is None or ng < old:
                best[key] = ng
                parent[key] = (state, desc, pos)
                heapq.heappush(heap, (ng, 1, ns, npend))
    return ExceedsBudget(budget) if flag[0] else Unreachable()


def _witness(idx: RuleIndex, parent, state, sw, total) -> TransformationSequence:
    steps = []
    cur = state
    while parent[cur] is not None:
        prev, desc, pos = parent[cur]
        steps.append(Step(idx.operation(desc), pos))
        cur = prev
    steps.reverse()
    steps.extend(idx.completion_steps(state[0], sw))
    return TransformationSequence(tuple(steps), total)


def decide(inst: Instance, **kwargs) -> tuple[bool, DistanceResult]:
    """Is the distance from ``inst.v`` to ``inst.w`` at most ``inst.h``?"""
    problems = validate_instance(inst)
    if problems:
        raise InvalidInstance(problems)
    res = distance(inst.v, inst.w, inst.model, inst.h, **kwargs)
    return isinstance(res, Exact), res
