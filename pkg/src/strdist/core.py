"""Operations, cost models (distance descriptions) and problem instances.

Strings are plain tuples of :class:`~strdist.symbols.Symbol`.  Positions
are 1-based throughout the public API, as in the usual string notation
``w = w_1 ... w_n``.
"""
from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple, Optional, Sequence, Union

from .errors import (
    ForbiddenOperation,
    LhsMismatch,
    PositionOutOfRange,
    SequenceError,
)
from .symbols import Symbol, word_text

Str = tuple[Symbol, ...]
OP_TYPES = ("I", "D", "S", "kS")


@dataclass(frozen=True)
class Insertion:
    symbol: Symbol

    @property
    def type_code(self):
        return "I"

    def __str__(self):
        return f"I(ε→{self.symbol})"


@dataclass(frozen=True)
class Deletion:
    symbol: Symbol

    @property
    def type_code(self):
        return "D"

    def __str__(self):
        return f"D({self.symbol}→ε)"


@dataclass(frozen=True)
class KSubstitution:
    """Rewrite ``len(lhs)`` consecutive symbols in place.

    A plain substitution is the ``k = 1`` case.
    """

    lhs: Str
    rhs: Str

    def __post_init__(self):
        object.__setattr__(self, "lhs", tuple(self.lhs))
        object.__setattr__(self, "rhs", tuple(self.rhs))
        if len(self.lhs) != len(self.rhs) or not self.lhs:
            raise ValueError("k-substitution needs |lhs| = |rhs| >= 1")

    @property
    def k(self):
        return len(self.lhs)

    @property
    def type_code(self):
        return "S" if self.k == 1 else "kS"

    def __str__(self):
        return f"{self.k}S({word_text(self.lhs)}→{word_text(self.rhs)})"


Operation = Union[Insertion, Deletion, KSubstitution]


def substitution(a: Symbol, b: Symbol) -> KSubstitution:
    return KSubstitution((a,), (b,))


def operation_key(op: Operation):
    """Canonical rule order: insertions, deletions, then substitutions by width."""
    if isinstance(op, Insertion):
        return (0, 0, (op.symbol.sort_key,), ())
    if isinstance(op, Deletion):
        return (1, 0, (op.symbol.sort_key,), ())
    return (2, op.k, tuple(s.sort_key for s in op.lhs), tuple(s.sort_key for s in op.rhs))


def operation_symbols(op: Operation) -> Str:
    if isinstance(op, (Insertion, Deletion)):
        return (op.symbol,)
    return op.lhs + op.rhs


class Step(NamedTuple):
    op: Operation
    pos: int


@dataclass(frozen=True)
class TransformationSequence:
    steps: tuple[Step, ...] = ()
    total_cost: int = 0

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def __add__(self, other: TransformationSequence) -> TransformationSequence:
        return TransformationSequence(self.steps + other.steps, self.total_cost + other.total_cost)


@dataclass(frozen=True)
class CostModel:
    """A distance description: admitted operation types plus a sparse rule table.

    Operations of an admitted type that have no explicit rule cost
    ``default_cost``; ``default_cost=None`` forbids them.
    """

    arity: int
    op_set: frozenset
    rules: Mapping[Operation, int]
    default_cost: Optional[int]
    alphabet: Str

    def __post_init__(self):
        object.__setattr__(self, "op_set", frozenset(self.op_set))
        object.__setattr__(self, "alphabet", tuple(sorted(set(self.alphabet))))
        ordered = sorted(self.rules.items(), key=lambda kv: operation_key(kv[0]))
        object.__setattr__(self, "rules", MappingProxyType(dict(ordered)))

    def admits(self, op: Operation) -> bool:
        if isinstance(op, Insertion):
            return "I" in self.op_set
        if isinstance(op, Deletion):
            return "D" in self.op_set
        if op.k == 1 and "S" in self.op_set:
            return True
        return op.k == self.arity and "kS" in self.op_set

    def cost(self, op: Operation) -> Optional[int]:
        """Cost of ``op``, or None when the model does not allow it."""
        if not self.admits(op):
            return None
        c = self.rules.get(op)
        return self.default_cost if c is None else c

    def substitution_widths(self) -> tuple[int, ...]:
        widths = set()
        if "S" in self.op_set:
            widths.add(1)
        if "kS" in self.op_set:
            widths.add(self.arity)
        return tuple(sorted(widths))

    def with_rules(self, rules: Mapping[Operation, int]) -> CostModel:
        return CostModel(self.arity, self.op_set, rules, self.default_cost, self.alphabet)


@dataclass(frozen=True)
class Instance:
    v: Str
    w: Str
    model: CostModel
    h: int

    def __post_init__(self):
        object.__setattr__(self, "v", tuple(self.v))
        object.__setattr__(self, "w", tuple(self.w))


def apply_operation(s: Sequence[Symbol], op: Operation, pos: int) -> Str:
    s = tuple(s)
    n = len(s)
    i = pos - 1
    if isinstance(op, Insertion):
        if not 1 <= pos <= n + 1:
            raise PositionOutOfRange(f"insertion position {pos} outside 1..{n + 1}")
        return s[:i] + (op.symbol,) + s[i:]
    if isinstance(op, Deletion):
        if not 1 <= pos <= n:
            raise PositionOutOfRange(f"deletion position {pos} outside 1..{n}")
        if s[i] != op.symbol:
            raise LhsMismatch(f"cannot delete {op.symbol} at {pos}: found {s[i]}")
        return s[:i] + s[i + 1 :]
    k = op.k
    if not 1 <= pos <= n - k + 1:
        raise PositionOutOfRange(f"{k}-substitution position {pos} outside 1..{n - k + 1}")
    if s[i : i + k] != op.lhs:
        raise LhsMismatch(f"{op} does not match {word_text(s[i:i + k])} at {pos}")
    return s[:i] + op.rhs + s[i + k :]


def apply_sequence(s: Sequence[Symbol], t: Iterable[Step] | TransformationSequence) -> Str:
    cur = tuple(s)
    for index, (op, pos) in enumerate(t):
        try:
            cur = apply_operation(cur, op, pos)
        except (PositionOutOfRange, LhsMismatch) as e:
            raise SequenceError(index, e) from e
    return cur


def sequence_cost(t: Iterable[Step] | TransformationSequence, d: CostModel) -> int:
    total = 0
    for index, (op, _) in enumerate(t):
        c = d.cost(op)
        if c is None:
            raise ForbiddenOperation(f"step {index}: {op} is not allowed by the cost model")
        total += c
    return total


class Violation(NamedTuple):
    kind: str
    field: str
    message: str

    def __str__(self):
        return f"{self.kind}({self.field}): {self.message}"


def validate_model(d: CostModel) -> list[Violation]:
    out = []
    if d.arity < 1:
        out.append(Violation("ArityViolation", "k", f"arity must be >= 1, got {d.arity}"))
    unknown = d.op_set - set(OP_TYPES)
    if unknown:
        out.append(Violation("OperationSetViolation", "ops", f"unknown operation types {sorted(unknown)}"))
    alphabet = set(d.alphabet)
    for op, cost in d.rules.items():
        if not d.admits(op):
            out.append(Violation("OperationSetViolation", "rules", f"{op} is not admitted by ops={sorted(d.op_set)}"))
        if not isinstance(cost, int) or cost < 1:
            out.append(Violation("PositiveCostViolation", "rules", f"{op} has cost {cost}"))
        stray = [s for s in operation_symbols(op) if s not in alphabet]
        if stray:
            out.append(Violation("AlphabetViolation", "rules", f"{op} uses {', '.join(map(str, stray))}"))
    if d.default_cost is not None and (not isinstance(d.default_cost, int) or d.default_cost < 1):
        out.append(Violation("PositiveCostViolation", "default_cost", f"default cost {d.default_cost}"))
    return out


def validate_instance(inst: Instance) -> list[Violation]:
    out = validate_model(inst.model)
    alphabet = set(inst.model.alphabet)
    for name in ("v", "w"):
        stray = [s for s in getattr(inst, name) if s not in alphabet]
        if stray:
            out.append(Violation("AlphabetViolation", name, f"symbols outside the alphabet: {', '.join(map(str, stray))}"))
    if not isinstance(inst.h, int) or inst.h < 0:
        out.append(Violation("BudgetViolation", "h", f"h must be a non-negative integer, got {inst.h}"))
    return out
