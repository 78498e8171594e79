"""Hardness reductions compiled into concrete distance instances.

* :func:`compile_tm_to_3hamming`: deterministic space-bounded machine to a
  3-Hamming instance whose unit-cost rules form a Semi-Thue simulation.
* :func:`compile_tm_to_3edit`: time-bounded (possibly nondeterministic)
  machine to a 3-Edit instance.
* :func:`compile_3h_to_2h`: prime 3-Hamming to 2-Hamming over pair symbols.
* :func:`compile_3e_to_2e`: prime 3-Edit to 2-Edit with staged gadgets.
* :func:`lift_k`: arity k to arity k+1 by padding and context extension.

Every compiler returns a :class:`ReductionReport`; rules are emitted in
canonical order so output files are reproducible byte for byte.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .core import (
    CostModel,
    Deletion,
    Insertion,
    Instance,
    KSubstitution,
    Str,
    substitution,
    validate_instance,
)
from .errors import (
    BoundaryMissing,
    ChainBroken,
    EnumerationCapExceeded,
    InvalidInstance,
    InvalidMachine,
    NondeterministicMachine,
    NotPrimeInstance,
    PadClash,
    SymbolClash,
)
from .symbols import (
    BLANK1,
    DOLLAR,
    HASH_L,
    HASH_R,
    PAD,
    STAR,
    Kind,
    Symbol,
    dir_left,
    dir_right,
    pair,
    stage,
)
from .turing import ResourceBounds, TuringMachine, validate_machine

HAMMING = "Hamming"
EDIT = "Edit"
LIFT_EXPANSION_CAP = 1 << 16


@dataclass(frozen=True)
class ReductionReport:
    kind: str
    instance: Instance
    h_derivation: dict = field(default_factory=dict)

    @property
    def rule_count(self) -> int:
        return len(self.instance.model.rules)

    @property
    def alphabet_size(self) -> int:
        return len(self.instance.model.alphabet)


def recompute_h(deriv: dict) -> int:
    """Re-evaluate an ``h_derivation`` record from its own inputs."""
    f = deriv["formula"]
    if f == "tm-3h":
        c, base, add = deriv["c"], deriv["c**q(n)"], deriv["2p(n)+4+n"]
        threshold = base + add
        h = 1
        while h <= threshold:
            h *= c
        return h
    if f == "tm-3e":
        return 5 * deriv["2**p(n)"] + 2 * (deriv["n"] + 1)
    if f == "3h-2h":
        return 3 * deriv["source_h"]
    if f == "3e-2e":
        return 5 * deriv["source_h"]
    if f == "lift":
        return deriv["source_h"]
    raise ValueError(f"unknown formula {f!r}")


def _finish(kind: str, v, w, model: CostModel, h: int, deriv: dict) -> ReductionReport:
    inst = Instance(tuple(v), tuple(w), model, h)
    problems = validate_instance(inst)
    if problems:
        raise InvalidInstance(problems)
    deriv = dict(deriv, h=h)
    assert recompute_h(deriv) == h
    return ReductionReport(kind, inst, deriv)


def _check_machine(m: TuringMachine, x: Sequence[Symbol], reserved: set, need_deterministic: bool):
    problems = [p for p in validate_machine(m) if p.kind != "DeterminismViolation"]
    if problems:
        raise InvalidMachine(problems)
    if need_deterministic and not m.is_deterministic():
        raise NondeterministicMachine(f"machine {m.name or '?'} is nondeterministic")
    clash = (set(m.tape_alphabet) | set(m.states)) & reserved
    if clash:
        raise SymbolClash(f"machine uses reserved symbols {', '.join(map(str, sorted(clash)))}")
    stray = [a for a in x if a not in m.input_alphabet]
    if stray:
        raise ValueError(f"input symbols outside the input alphabet: {', '.join(map(str, stray))}")


def _ks(lhs, rhs) -> KSubstitution:
    return KSubstitution(tuple(lhs), tuple(rhs))


def tm_3hamming_h(b: ResourceBounds, n: int) -> tuple[int, dict]:
    base = b.dtm_steps(n)
    add = 2 * b.space(n) + 4 + n
    h, m = 1, 0
    while h <= base + add:
        h *= b.c
        m += 1
    deriv = {"formula": "tm-3h", "n": n, "c": b.c, "c**q(n)": base, "2p(n)+4+n": add, "threshold": base + add, "m": m}
    return h, deriv


def compile_tm_to_3hamming(m: TuringMachine, b: Optional[ResourceBounds], x: Sequence[Symbol]) -> ReductionReport:
    b = b or m.bounds
    _check_machine(m, x, {DOLLAR, HASH_L, HASH_R}, need_deterministic=True)
    n = len(x)
    p = b.space(n)
    B = m.blank
    gamma = m.tape_alphabet
    v = (DOLLAR,) + (B,) * (p + 1) + (m.start,) + tuple(x) + (B,) * (p + 1) + (DOLLAR,)
    w = (DOLLAR,) + (B,) * (2 * p + n + 3) + (DOLLAR,)
    h, deriv = tm_3hamming_h(b, n)

    rules = {}
    for t in m.delta:
        for y in gamma:
            if t.move == "R":
                rules[_ks((y, t.state, t.read), (y, t.write, t.target))] = 1
            else:
                rules[_ks((y, t.state, t.read), (t.target, y, t.write))] = 1
    for qs in sorted(m.accept):
        for a, c in itertools.product(gamma, repeat=2):
            rules[_ks((a, qs, c), (HASH_L, B, HASH_R))] = 1
    for a in gamma:
        rules[_ks((a, HASH_L, B), (HASH_L, B, B))] = 1
        rules[_ks((B, HASH_R, a), (B, B, HASH_R))] = 1
    rules[_ks((DOLLAR, HASH_L, B), (DOLLAR, B, B))] = 1
    rules[_ks((B, HASH_R, DOLLAR), (B, B, DOLLAR))] = 1

    alphabet = set(gamma) | set(m.states) | {DOLLAR, HASH_L, HASH_R}
    model = CostModel(3, frozenset({"kS"}), rules, h + 1, tuple(alphabet))
    return _finish("tm-3h", v, w, model, h, deriv)


def tm_3edit_h(b: ResourceBounds, n: int) -> tuple[int, dict]:
    steps = b.ntm_steps(n)
    h = 5 * steps + 2 * (n + 1)
    return h, {"formula": "tm-3e", "n": n, "p(n)": b.space(n), "2**p(n)": steps}


def compile_tm_to_3edit(m: TuringMachine, b: Optional[ResourceBounds], x: Sequence[Symbol]) -> ReductionReport:
    b = b or m.bounds
    _check_machine(m, x, {DOLLAR, BLANK1, STAR, HASH_L, HASH_R}, need_deterministic=False)
    n = len(x)
    B = m.blank
    gamma = m.tape_alphabet
    accept = m.accept
    v = (DOLLAR, m.start) + tuple(x) + (DOLLAR,)
    w = (DOLLAR, DOLLAR)
    h, deriv = tm_3edit_h(b, n)

    rules = {Insertion(BLANK1): 1, Deletion(STAR): 1}
    for t in m.delta:
        q, a, p, c = t.state, t.read, t.target, t.write
        if t.move == "R":
            for y in gamma:
                rules[_ks((q, a, y), (c, p, y))] = 3
            rules[_ks((q, a, DOLLAR), (c, p, DOLLAR))] = 3 if p in accept else 1
        else:
            for y in gamma:
                rules[_ks((y, q, a), (p, y, c))] = 3
            rules[_ks((DOLLAR, q, a), (p, DOLLAR, c))] = 1
    for q in m.states:
        rules[_ks((q, BLANK1, DOLLAR), (q, B, DOLLAR))] = 1
        rules[_ks((q, DOLLAR, BLANK1), (DOLLAR, q, B))] = 1
    for p in sorted(accept):
        for a, c in itertools.product(gamma, repeat=2):
            rules[_ks((a, p, c), (HASH_L, STAR, HASH_R))] = 1
        for a in gamma:
            rules[_ks((DOLLAR, p, a), (DOLLAR, STAR, HASH_R))] = 1
            rules[_ks((a, p, DOLLAR), (HASH_L, STAR, DOLLAR))] = 1
        rules[_ks((DOLLAR, p, DOLLAR), (DOLLAR, STAR, DOLLAR))] = 1
    for a in gamma:
        rules[_ks((a, HASH_L, STAR), (HASH_L, STAR, STAR))] = 1
        rules[_ks((STAR, HASH_R, a), (STAR, STAR, HASH_R))] = 1
    rules[_ks((DOLLAR, HASH_L, STAR), (DOLLAR, STAR, STAR))] = 1
    rules[_ks((STAR, HASH_R, DOLLAR), (STAR, STAR, DOLLAR))] = 1

    alphabet = set(gamma) | set(m.states) | {DOLLAR, BLANK1, STAR, HASH_L, HASH_R}
    model = CostModel(3, frozenset({"I", "D", "S", "kS"}), rules, h + 1, tuple(alphabet))
    return _finish("tm-3e", v, w, model, h, deriv)


def pair_encode(v: Sequence[Symbol]) -> Str:
    """Code ``$ v $`` as the pairs seen by a width-2, stride-1 window."""
    padded = (DOLLAR,) + tuple(v) + (DOLLAR,)
    return tuple(pair(a, b) for a, b in zip(padded, padded[1:]))


def pair_decode(code: Sequence[Symbol]) -> Str:
    code = tuple(code)
    if not code or any(s.kind != Kind.PAIR for s in code):
        raise BoundaryMissing("a pair chain needs at least one pair symbol and nothing else")
    if code[0].parts[0] != DOLLAR or code[-1].parts[1] != DOLLAR:
        raise BoundaryMissing("pair chain must start with P($,.) and end with P(.,$)")
    for i, (a, b) in enumerate(zip(code, code[1:])):
        if a.parts[1] != b.parts[0]:
            raise ChainBroken(f"pairs {i + 1} and {i + 2} disagree: {a} then {b}")
    return tuple(s.parts[1] for s in code[:-1])


def is_prime_3hamming(inst: Instance) -> bool:
    d, h = inst.model, inst.h
    if d.arity != 3 or d.default_cost != h + 1:
        return False
    return all(c in (1, h + 1) for c in d.rules.values())


def is_prime_3edit(inst: Instance) -> bool:
    d, h = inst.model, inst.h
    if d.arity != 3 or d.default_cost != h + 1:
        return False
    for op, c in d.rules.items():
        allowed = (1, 3, h + 1) if isinstance(op, KSubstitution) and op.k == 3 else (1, h + 1)
        if c not in allowed:
            return False
    return True


def compile_3h_to_2h(inst: Instance) -> ReductionReport:
    if not is_prime_3hamming(inst):
        raise NotPrimeInstance("3-Hamming rule and default costs must lie in {1, h+1} with default h+1")
    d = inst.model
    context = sorted(set(d.alphabet) | {DOLLAR})
    rules = {}
    gadgets = set()
    for op, cost in d.rules.items():
        if cost != 1:
            continue
        a, b, c = op.lhs
        dd, e, f = op.rhs
        left = dir_left((a, b), (dd, e))
        right = dir_right((b, c), (e, f))
        gadgets.update((left, right))
        rules[_ks((pair(a, b), pair(b, c)), (left, right))] = 1
        for x in context:
            rules[_ks((pair(x, a), left), (pair(x, dd), pair(dd, e)))] = 1
            rules[_ks((right, pair(c, x)), (pair(e, f), pair(f, x)))] = 1
    h2 = 3 * inst.h
    alphabet = {pair(x, y) for x in context for y in context} | gadgets
    model = CostModel(2, frozenset({"kS"}), rules, h2 + 1, tuple(alphabet))
    return _finish("3h-2h", pair_encode(inst.v), pair_encode(inst.w), model, h2, {"formula": "3h-2h", "source_h": inst.h})


def compile_3e_to_2e(inst: Instance) -> ReductionReport:
    if not is_prime_3edit(inst):
        raise NotPrimeInstance("3-Edit I/D/S costs must lie in {1, h+1}, 3-substitutions in {1, 3, h+1}, default h+1")
    d, h = inst.model, inst.h
    rules = {}
    gadgets = set()
    for op, cost in d.rules.items():
        if isinstance(op, KSubstitution) and op.k == 3:
            if cost > h:
                continue
            s1, s2, s3 = (stage(i, op.lhs, op.rhs) for i in (1, 2, 3))
            gadgets.update((s1, s2, s3))
            (a, b, c), (dd, e, f) = op.lhs, op.rhs
            rules[Insertion(s1)] = 5 * cost - 4
            rules[_ks((a, s1), (dd, s2))] = 1
            rules[_ks((s2, b), (e, s3))] = 1
            rules[_ks((s3, c), (f, STAR))] = 1
        elif cost == 1:
            rules[op] = 5
    # the gadget's support symbol may already be a source symbol; its deletion then keeps the cheaper cost
    rules[Deletion(STAR)] = 1
    h2 = 5 * h
    alphabet = set(d.alphabet) | {STAR} | gadgets
    model = CostModel(2, frozenset({"I", "D", "S", "kS"}), rules, h2 + 1, tuple(alphabet))
    return _finish("3e-2e", inst.v, inst.w, model, h2, {"formula": "3e-2e", "source_h": h})


def _explicit_rules(d: CostModel, h: int, cap: int) -> dict:
    """The source rules plus every default-cost operation that is affordable within ``h``."""
    rules = dict(d.rules)
    if d.default_cost is None or d.default_cost > h:
        return rules
    sigma = d.alphabet
    extra = []
    if "I" in d.op_set:
        extra += [Insertion(a) for a in sigma]
    if "D" in d.op_set:
        extra += [Deletion(a) for a in sigma]
    for k in d.substitution_widths():
        if len(sigma) ** (2 * k) > cap:
            raise EnumerationCapExceeded(f"expanding default-cost {k}-substitutions needs {len(sigma) ** (2 * k)} rules")
        for lhs in itertools.product(sigma, repeat=k):
            for rhs in itertools.product(sigma, repeat=k):
                if lhs != rhs:
                    extra.append(_ks(lhs, rhs))
    for op in extra:
        rules.setdefault(op, d.default_cost)
    return rules


def lift_k(inst: Instance, flavor: str = HAMMING, *, expansion_cap: int = LIFT_EXPANSION_CAP) -> ReductionReport:
    """Raise the arity by one without changing any distance up to ``h``.

    ``v`` and ``w`` get a trailing ``PAD``; each k-substitution becomes the
    (k+1)-substitutions that carry one unchanged context symbol on its left
    or on its right.  Default-cost operations of the source that fit
    within ``h`` are written out as explicit rules first, since the lifted
    default is ``h+1``.
    """
    if flavor not in (HAMMING, EDIT):
        raise ValueError(f"flavor must be {HAMMING!r} or {EDIT!r}")
    d, h = inst.model, inst.h
    k = d.arity
    if k < 2:
        raise ValueError("lift_k needs arity k >= 2")
    if PAD in d.alphabet:
        raise PadClash("PAD already occurs in the source alphabet")
    sigma = d.alphabet
    rules: dict = {}

    def put(op, cost):
        old = rules.get(op)
        if old is None or cost < old:
            rules[op] = cost

    for op, cost in _explicit_rules(d, h, expansion_cap).items():
        if isinstance(op, KSubstitution) and op.k == k:
            for x in sigma:
                put(_ks((x,) + op.lhs, (x,) + op.rhs), cost)
            for x in sigma + (PAD,):
                put(_ks(op.lhs + (x,), op.rhs + (x,)), cost)
        elif flavor == EDIT:
            put(op, cost)
    if flavor == HAMMING:
        ops = frozenset({"kS"})
    else:
        ops = frozenset(d.op_set) | {"kS"}
    model = CostModel(k + 1, ops, rules, h + 1, sigma + (PAD,))
    return _finish(
        "lift", inst.v + (PAD,), inst.w + (PAD,), model, h, {"formula": "lift", "source_h": h, "source_k": k}
    )
