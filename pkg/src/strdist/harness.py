"""End-to-end verification of compiled reductions against machine simulation.

For every input up to a length bound, the machine's verdict comes from the
simulators in :mod:`strdist.turing` and the compiled verdict from
:func:`strdist.solver.decide`; the two code paths share nothing but the
machine description.
"""
from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable, Iterable, Optional, Sequence

from .core import CostModel, Instance, KSubstitution, Deletion, Insertion
from .errors import SearchLimitExceeded
from .reductions import (
    EDIT,
    HAMMING,
    ReductionReport,
    compile_3e_to_2e,
    compile_3h_to_2h,
    compile_tm_to_3edit,
    compile_tm_to_3hamming,
    lift_k,
)
from .solver import Exact, decide
from .symbols import Symbol, base, word_text
from .turing import TuringMachine, Verdict, run_dtm_bounded, run_ntm_bounded

FIXTURES = {
    "a": "accept_all",
    "b": "even_a",
    "c": "palindrome",
    "d": "guess",
}
REDUCTION_KINDS = ("tm-3h", "tm-3e")
CHAIN_STEPS = ("to-2", "lift")


def fixture_names() -> list[str]:
    return [FIXTURES[k] for k in sorted(FIXTURES)]


def load_fixture(name: str) -> TuringMachine:
    """Load a bundled machine by name (``"even_a"``) or corpus letter (``"b"``)."""
    from .io import machine_from_dict

    name = FIXTURES.get(name, name)
    text = resources.files("strdist.fixtures").joinpath(f"{name}.json").read_text(encoding="utf-8")
    return machine_from_dict(json.loads(text))


def all_inputs(alphabet: Sequence[Symbol], max_len: int) -> Iterable[tuple[Symbol, ...]]:
    for n in range(max_len + 1):
        yield from itertools.product(sorted(alphabet), repeat=n)


def oracle_verdict(m: TuringMachine, x: Sequence[Symbol], kind: str) -> Verdict:
    """Simulator verdict under the resource bound the reduction assumes."""
    if kind == "tm-3h":
        return run_dtm_bounded(m, x)
    return run_ntm_bounded(m, x)


def parse_chain(text: Optional[str]) -> tuple[str, ...]:
    """Parse ``"to-2,lift"``-style chains.

    ``lift`` raises the arity by one; ``lift:K`` (or ``lift K``) names the
    target arity instead, which must be the current arity or one above.
    """
    if not text or text == "none":
        return ()
    steps = []
    for raw in text.split(","):
        step = " ".join(raw.split()).replace(" ", ":")
        if not step:
            continue
        head, _, target = step.partition(":")
        if head not in CHAIN_STEPS or (target and (head != "lift" or not target.isdigit())):
            raise ValueError(f"unknown chain step {raw.strip()!r}; use to-2, lift or lift:K")
        steps.append(step)
    return tuple(steps)


def compile_chain(m: TuringMachine, x: Sequence[Symbol], kind: str, chain: Sequence[str] = ()) -> list[ReductionReport]:
    if kind == "tm-3h":
        reports = [compile_tm_to_3hamming(m, None, x)]
        flavor = HAMMING
    elif kind == "tm-3e":
        reports = [compile_tm_to_3edit(m, None, x)]
        flavor = EDIT
    else:
        raise ValueError(f"unknown reduction kind {kind!r}")
    for step in chain:
        inst = reports[-1].instance
        if step == "to-2":
            reports.append(compile_3h_to_2h(inst) if flavor == HAMMING else compile_3e_to_2e(inst))
        elif step == "lift":
            reports.append(lift_k(inst, flavor))
        else:
            target = int(step.partition(":")[2])
            if not inst.model.arity <= target <= inst.model.arity + 1:
                # a second lift would need a pad symbol distinct from the first
                raise ValueError(f"lift:{target} from arity {inst.model.arity}: only one lift step is supported")
            if target > inst.model.arity:
                reports.append(lift_k(inst, flavor))
    return reports


@dataclass
class VerificationRow:
    input: str
    oracle: str
    compiled: Optional[bool]
    result: str
    seconds: float
    note: str = ""

    @property
    def skipped(self) -> bool:
        return self.compiled is None

    @property
    def match(self) -> Optional[bool]:
        if self.skipped:
            return None
        return (self.oracle == Verdict.ACCEPT.value) == self.compiled


@dataclass
class VerificationReport:
    machine: str
    kind: str
    chain: tuple[str, ...]
    rows: list[VerificationRow] = field(default_factory=list)

    @property
    def total(self) -> int:
        return len(self.rows)

    @property
    def matches(self) -> int:
        return sum(1 for r in self.rows if r.match)

    @property
    def mismatches(self) -> int:
        return sum(1 for r in self.rows if r.match is False)

    @property
    def skipped(self) -> int:
        return sum(1 for r in self.rows if r.skipped)

    @property
    def ok(self) -> bool:
        return self.mismatches == 0

    def to_dict(self) -> dict:
        return {
            "machine": self.machine,
            "kind": self.kind,
            "chain": list(self.chain),
            "rows": [
                {
                    "input": r.input,
                    "oracle": r.oracle,
                    "compiled": r.compiled,
                    "match": r.match,
                    "result": r.result,
                    "seconds": round(r.seconds, 4),
                    "note": r.note,
                }
                for r in self.rows
            ],
            "summary": {"total": self.total, "matches": self.matches, "mismatches": self.mismatches, "skipped": self.skipped},
        }


def verify_machine(
    m: TuringMachine,
    kind: str,
    max_len: int,
    chain: Sequence[str] = (),
    *,
    inputs: Optional[Iterable[Sequence[Symbol]]] = None,
    transform: Optional[Callable[[Instance], Instance]] = None,
    stop_on_mismatch: bool = False,
    max_states: Optional[int] = None,
) -> VerificationReport:
    """Compare simulator and compiled-instance verdicts on every input.

    ``transform`` rewrites the final compiled instance before solving (used
    to plant mutations).  Inputs whose simulation runs out of time or space,
    or whose solve exceeds ``max_states``, become skipped rows.
    """
    report = VerificationReport(m.name, kind, tuple(chain))
    if inputs is None:
        inputs = all_inputs(m.input_alphabet, max_len)
    for x in inputs:
        x = tuple(x)
        text = word_text(x) or "ε"
        verdict = oracle_verdict(m, x, kind)
        if verdict in (Verdict.TIME_EXCEEDED, Verdict.SPACE_EXCEEDED):
            report.rows.append(VerificationRow(text, verdict.value, None, "", 0.0, "resource bound exceeded; skipped"))
            continue
        inst = compile_chain(m, x, kind, chain)[-1].instance
        if transform is not None:
            inst = transform(inst)
        t0 = time.perf_counter()
        try:
            member, res = decide(inst, max_states=max_states)
        except SearchLimitExceeded as e:
            report.rows.append(VerificationRow(text, verdict.value, None, "", time.perf_counter() - t0, f"{e}; skipped"))
            continue
        row = VerificationRow(text, verdict.value, member, str(res), time.perf_counter() - t0)
        report.rows.append(row)
        if stop_on_mismatch and row.match is False:
            break
    return report


def transition_rule_groups(m: TuringMachine, report: ReductionReport) -> dict:
    """Map each machine transition to the compiled rules derived from it.

    Only meaningful for instances straight out of a machine reduction.
    """
    groups = {}
    states = set(m.states)
    rules = report.instance.model.rules
    for t in m.delta:
        group = []
        for op in rules:
            if not isinstance(op, KSubstitution) or op.k != 3:
                continue
            if _derived_from(t, op, states):
                group.append(op)
        groups[t] = group
    return groups


def _derived_from(t, op: KSubstitution, states: set) -> bool:
    lhs, rhs = op.lhs, op.rhs
    q_at = [i for i, s in enumerate(lhs) if s in states]
    if len(q_at) != 1:
        return False
    i = q_at[0]
    if i + 1 >= 3 or lhs[i] != t.state or lhs[i + 1] != t.read:
        return False
    if t.move == "R":
        return rhs[i] == t.write and rhs[i + 1] == t.target and rhs[:i] == lhs[:i] and rhs[i + 2 :] == lhs[i + 2 :]
    if i == 0:
        return False
    return rhs[i - 1] == t.target and rhs[i] == lhs[i - 1] and rhs[i + 1] == t.write


def without_rules(inst: Instance, drop: Iterable) -> Instance:
    drop = set(drop)
    d = inst.model
    return Instance(inst.v, inst.w, d.with_rules({op: c for op, c in d.rules.items() if op not in drop}), inst.h)


@dataclass(frozen=True)
class GenParams:
    """Size knobs for :func:`gen_random_instance`, defaulting to the oracle-tractable range."""

    sigma: int = 3
    max_len: int = 4
    arities: tuple[int, ...] = (1, 2, 3)
    max_cost: int = 5
    max_budget: int = 8
    max_rules: int = 5
    flavors: tuple[str, ...] = (HAMMING, EDIT)
    default_choices: tuple = (None, "random")


def gen_random_instance(seed: int, params: GenParams = GenParams()) -> Instance:
    """A valid random instance, identical for identical ``(seed, params)``."""
    rng = random.Random(seed)
    sigma = tuple(base(c) for c in "abcdefghijklmnopqrstuvwxyz"[: params.sigma])
    k = rng.choice(params.arities)
    flavor = rng.choice(params.flavors)

    def word(n):
        return tuple(rng.choice(sigma) for _ in range(n))

    if flavor == HAMMING:
        n = rng.randint(0, params.max_len)
        v, w = word(n), word(n)
        ops = frozenset({"S"} if k == 1 else {"kS"})
    else:
        v, w = word(rng.randint(0, params.max_len)), word(rng.randint(0, params.max_len))
        ops = frozenset({"I", "D", "S", "kS"})
    rules = {}
    for _ in range(rng.randint(0, params.max_rules)):
        cost = rng.randint(1, params.max_cost)
        kind = "K" if flavor == HAMMING else rng.choice("IDSK")
        if kind == "I":
            rules[Insertion(rng.choice(sigma))] = cost
        elif kind == "D":
            rules[Deletion(rng.choice(sigma))] = cost
        else:
            width = 1 if kind == "S" else k
            src = v if rng.random() < 0.5 and len(v) >= width else word(width)
            i = rng.randint(0, len(src) - width)
            lhs = src[i : i + width]
            rhs = word(width)
            if rhs != lhs:
                rules[KSubstitution(lhs, rhs)] = cost
    default_kind = rng.choice(params.default_choices)
    default = None if default_kind is None else rng.randint(1, params.max_cost)
    h = rng.randint(0, params.max_budget)
    return Instance(v, w, CostModel(k, ops, rules, default, sigma), h)
