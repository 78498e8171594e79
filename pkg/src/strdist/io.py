"""JSON documents for instances, machines, reduction reports and witnesses.

Big integers (``h``, costs) are written as decimal text so no JSON reader
truncates them.  Output is deterministic: keys and rules come out in a
fixed order, so equal objects serialize to identical bytes.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Union

from .core import CostModel, Deletion, Insertion, Instance, KSubstitution, Step, TransformationSequence
from .errors import FormatError, SymbolParseError
from .reductions import ReductionReport
from .symbols import Symbol, parse_symbol_text
from .turing import ResourceBounds, Transition, TuringMachine

PathLike = Union[str, Path]


def _sym(text: Any, where: str) -> Symbol:
    if not isinstance(text, str):
        raise FormatError(f"{where}: expected a symbol text, got {text!r}")
    try:
        return parse_symbol_text(text)
    except SymbolParseError as e:
        raise FormatError(f"{where}: {e}") from e


def _syms(items: Any, where: str) -> tuple[Symbol, ...]:
    if not isinstance(items, list):
        raise FormatError(f"{where}: expected a list of symbol texts")
    return tuple(_sym(t, f"{where}[{i}]") for i, t in enumerate(items))


def _int(text: Any, where: str) -> int:
    if isinstance(text, bool):
        raise FormatError(f"{where}: expected a decimal integer")
    if isinstance(text, int):
        return text
    if isinstance(text, str) and text.strip().lstrip("-").isdigit():
        return int(text)
    raise FormatError(f"{where}: expected a decimal integer, got {text!r}")


def _texts(symbols) -> list[str]:
    return [s.text() for s in symbols]


def _require(doc: dict, keys, what: str):
    if not isinstance(doc, dict):
        raise FormatError(f"{what} document must be an object")
    missing = [k for k in keys if k not in doc]
    if missing:
        raise FormatError(f"{what} document lacks {', '.join(missing)}")


def rule_to_dict(op, cost: int) -> dict:
    if isinstance(op, Insertion):
        t, lhs, rhs = "I", [], [op.symbol.text()]
    elif isinstance(op, Deletion):
        t, lhs, rhs = "D", [op.symbol.text()], []
    else:
        t, lhs, rhs = op.type_code, _texts(op.lhs), _texts(op.rhs)
    return {"type": t, "lhs": lhs, "rhs": rhs, "cost": str(cost)}


def rule_from_dict(doc: dict, where: str):
    _require(doc, ("type", "lhs", "rhs", "cost"), where)
    t = doc["type"]
    lhs = _syms(doc["lhs"], f"{where}.lhs")
    rhs = _syms(doc["rhs"], f"{where}.rhs")
    cost = _int(doc["cost"], f"{where}.cost")
    if t == "I":
        if lhs or len(rhs) != 1:
            raise FormatError(f"{where}: an insertion has empty lhs and one rhs symbol")
        return Insertion(rhs[0]), cost
    if t == "D":
        if rhs or len(lhs) != 1:
            raise FormatError(f"{where}: a deletion has one lhs symbol and empty rhs")
        return Deletion(lhs[0]), cost
    if t in ("S", "kS"):
        if len(lhs) != len(rhs) or not lhs or (t == "S" and len(lhs) != 1):
            raise FormatError(f"{where}: substitution sides must have equal length (1 for S)")
        return KSubstitution(lhs, rhs), cost
    raise FormatError(f"{where}: unknown rule type {t!r}")


def instance_to_dict(inst: Instance) -> dict:
    d = inst.model
    return {
        "k": d.arity,
        "ops": [o for o in ("I", "D", "S", "kS") if o in d.op_set],
        "alphabet": _texts(d.alphabet),
        "v": _texts(inst.v),
        "w": _texts(inst.w),
        "h": str(inst.h),
        "default_cost": "forbidden" if d.default_cost is None else str(d.default_cost),
        "rules": [rule_to_dict(op, c) for op, c in d.rules.items()],
    }


def instance_from_dict(doc: dict) -> Instance:
    _require(doc, ("k", "ops", "alphabet", "v", "w", "h", "default_cost", "rules"), "instance")
    default = doc["default_cost"]
    default = None if default == "forbidden" else _int(default, "default_cost")
    if not isinstance(doc["rules"], list):
        raise FormatError("rules: expected a list")
    rules = {}
    for i, r in enumerate(doc["rules"]):
        op, cost = rule_from_dict(r, f"rules[{i}]")
        if op in rules:
            raise FormatError(f"rules[{i}]: duplicate rule {op}")
        rules[op] = cost
    ops = doc["ops"]
    if not isinstance(ops, list):
        raise FormatError("ops: expected a list")
    model = CostModel(_int(doc["k"], "k"), frozenset(ops), rules, default, _syms(doc["alphabet"], "alphabet"))
    return Instance(_syms(doc["v"], "v"), _syms(doc["w"], "w"), model, _int(doc["h"], "h"))


def machine_to_dict(m: TuringMachine) -> dict:
    doc = {}
    if m.name:
        doc["name"] = m.name
    doc.update(
        {
            "states": _texts(m.states),
            "tape_alphabet": _texts(m.tape_alphabet),
            "blank": m.blank.text(),
            "input_alphabet": _texts(m.input_alphabet),
            "delta": [
                {"from": t.state.text(), "read": t.read.text(), "to": t.target.text(), "write": t.write.text(), "move": t.move}
                for t in m.delta
            ],
            "start": m.start.text(),
            "accept": _texts(sorted(m.accept)),
        }
    )
    if m.bounds is not None:
        doc["bounds"] = {"c": m.bounds.c, "p": list(m.bounds.p), "q": list(m.bounds.q)}
    doc["deterministic"] = m.deterministic
    return doc


def machine_from_dict(doc: dict) -> TuringMachine:
    _require(doc, ("states", "tape_alphabet", "blank", "input_alphabet", "delta", "start", "accept"), "machine")
    delta = []
    for i, t in enumerate(doc["delta"]):
        where = f"delta[{i}]"
        _require(t, ("from", "read", "to", "write", "move"), where)
        try:
            delta.append(
                Transition(
                    _sym(t["from"], where + ".from"),
                    _sym(t["read"], where + ".read"),
                    _sym(t["to"], where + ".to"),
                    _sym(t["write"], where + ".write"),
                    t["move"],
                )
            )
        except ValueError as e:
            raise FormatError(f"{where}: {e}") from e
    bounds = None
    if "bounds" in doc:
        bd = doc["bounds"]
        _require(bd, ("c", "p", "q"), "bounds")
        try:
            bounds = ResourceBounds(_int(bd["c"], "bounds.c"), tuple(bd["p"]), tuple(bd["q"]))
        except (TypeError, ValueError) as e:
            raise FormatError(f"bounds: {e}") from e
    return TuringMachine(
        states=_syms(doc["states"], "states"),
        tape_alphabet=_syms(doc["tape_alphabet"], "tape_alphabet"),
        blank=_sym(doc["blank"], "blank"),
        input_alphabet=_syms(doc["input_alphabet"], "input_alphabet"),
        delta=tuple(delta),
        start=_sym(doc["start"], "start"),
        accept=frozenset(_syms(doc["accept"], "accept")),
        bounds=bounds,
        deterministic=bool(doc.get("deterministic", True)),
        name=str(doc.get("name", "")),
    )


def _jsonable(value):
    if isinstance(value, int) and not isinstance(value, bool):
        return str(value)
    return value


def report_to_dict(rep: ReductionReport) -> dict:
    return {
        "kind": rep.kind,
        "rule_count": rep.rule_count,
        "alphabet_size": rep.alphabet_size,
        "h_derivation": {k: _jsonable(v) for k, v in rep.h_derivation.items()},
    }


def witness_to_dict(t: TransformationSequence, d: CostModel) -> dict:
    steps = []
    for op, pos in t.steps:
        step = rule_to_dict(op, d.cost(op))
        step["pos"] = pos
        steps.append(step)
    return {"total_cost": str(t.total_cost), "steps": steps}


def witness_from_dict(doc: dict) -> TransformationSequence:
    _require(doc, ("total_cost", "steps"), "witness")
    steps = []
    for i, s in enumerate(doc["steps"]):
        op, _ = rule_from_dict(s, f"steps[{i}]")
        steps.append(Step(op, _int(s.get("pos"), f"steps[{i}].pos")))
    return TransformationSequence(tuple(steps), _int(doc["total_cost"], "total_cost"))


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def write_json(path: PathLike, doc: dict) -> None:
    Path(path).write_text(dumps(doc), encoding="utf-8")


def read_json(path: PathLike) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise FormatError(f"{path}: not valid JSON ({e})") from e


def load_instance(path: PathLike) -> Instance:
    return instance_from_dict(read_json(path))


def save_instance(path: PathLike, inst: Instance) -> None:
    write_json(path, instance_to_dict(inst))


def load_machine(path: PathLike) -> TuringMachine:
    return machine_from_dict(read_json(path))


def save_machine(path: PathLike, m: TuringMachine) -> None:
    write_json(path, machine_to_dict(m))
