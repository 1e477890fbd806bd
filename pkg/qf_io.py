""" (helper) Reading and writing circuit, pattern and Kraus files.

Input files are JSON; // and /* */ comments are tolerated (commentjson).
Every field is checked on the way in and the first violation is raised as a
SchemaError naming its path, e.g. "gates[2].wire" or "commands[5].s_domain".

Complex matrices are flat row-major lists of [re, im] pairs.
"""

import io
import math
from pathlib import Path
from typing import Any, Optional

import commentjson  # in plaats van json: Ondersteunt // en /* */ comments
import numpy as np

from constants import MAX_WIRES
from errors import InvalidPattern, SchemaError
from matfield import Matrix
from mbqc_channels import KrausSet
from mbqc_compiler import Circuit, Gate, GateKind, ANGLE_KINDS
from mbqc_pattern import Pattern, Command, N, E, M, X, Z, PLANE_XY
from qf_configloader import DEFAULT_TOLERANCES, Tolerances
from qf_report import dumps_canonical, matrix_pairs


# ----- parsing -----

def parse_jsonc(text: str) -> Any:
    """Parse JSON text with comments.

    Raises:
        SchemaError: at path "$" if the text is not valid JSON
    """
    try:
        return commentjson.load(io.StringIO(text))
    except (commentjson.JSONLibraryException, ValueError) as e:
        raise SchemaError("$", f"invalid JSON: {e}") from e


def load_jsonc(filepath: str | Path) -> Any:
    """Load a JSON file with comments.

    Raises:
        FileNotFoundError: If the file doesn't exist
        SchemaError: If the file is not valid JSON
    """
    with open(filepath, 'r', encoding='utf-8') as f:
        return parse_jsonc(f.read())


def _object(value: Any, path: str) -> dict:
    if not isinstance(value, dict):
        raise SchemaError(path, "expected an object")
    return value


def _require(obj: dict, key: str, path: str) -> Any:
    if key not in obj:
        raise SchemaError(f"{path}.{key}" if path != "$" else key, "missing field")
    return obj[key]


def _int(value: Any, path: str, minimum: Optional[int] = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(path, f"expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise SchemaError(path, f"expected an integer >= {minimum}, got {value}")
    return value


def _number(value: Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise SchemaError(path, f"expected a finite number, got {value!r}")
    return float(value)


def _list(value: Any, path: str) -> list:
    if not isinstance(value, list):
        raise SchemaError(path, "expected a list")
    return value


def _int_list(value: Any, path: str) -> list[int]:
    return [_int(v, f"{path}[{k}]") for k, v in enumerate(_list(value, path))]


def parse_matrix(value: Any, rows: int, cols: int, path: str) -> Matrix:
    """Matrix from a flat row-major list of [re, im] pairs."""
    pairs = _list(value, path)
    if len(pairs) != rows * cols:
        raise SchemaError(path, f"expected {rows * cols} [re, im] pairs, got {len(pairs)}")
    entries = []
    for k, pair in enumerate(pairs):
        if not isinstance(pair, list) or len(pair) != 2:
            raise SchemaError(f"{path}[{k}]", "expected an [re, im] pair")
        entries.append(complex(_number(pair[0], f"{path}[{k}]"), _number(pair[1], f"{path}[{k}]")))
    return Matrix(np.array(entries, dtype=np.complex128).reshape(rows, cols))


# ----- circuits -----

def circuit_from_dict(data: Any, tol: Tolerances = DEFAULT_TOLERANCES) -> Circuit:
    """Validated Circuit from its JSON form.

    Raises:
        SchemaError: naming the first offending field
    """
    data = _object(data, "$")
    wires = _int(_require(data, "wires", "$"), "wires", 1)
    if wires > MAX_WIRES:
        raise SchemaError("wires", f"at most {MAX_WIRES} wires are supported, got {wires}")

    def wire(value: Any, path: str) -> int:
        w = _int(value, path)
        if not 0 <= w < wires:
            raise SchemaError(path, f"wire {w} outside 0..{wires - 1}")
        return w

    gates = []
    for k, raw in enumerate(_list(_require(data, "gates", "$"), "gates")):
        here = f"gates[{k}]"
        entry = _object(raw, here)
        kind_name = _require(entry, "kind", here)
        try:
            kind = GateKind(kind_name)
        except ValueError:
            known = ", ".join(g.value for g in GateKind)
            raise SchemaError(f"{here}.kind", f"unknown gate kind {kind_name!r} (known: {known})")

        if kind is GateKind.CZ:
            pair = _list(_require(entry, "wires", here), f"{here}.wires")
            if len(pair) != 2:
                raise SchemaError(f"{here}.wires", "cz needs exactly two wires")
            a, b = (wire(v, f"{here}.wires[{i}]") for i, v in enumerate(pair))
            if a == b:
                raise SchemaError(f"{here}.wires", "cz needs two distinct wires")
            gates.append(Gate.cz(a, b))
            continue

        w = wire(_require(entry, "wire", here), f"{here}.wire")
        if kind in ANGLE_KINDS:
            gates.append(Gate(kind, (w,), _number(_require(entry, "angle", here), f"{here}.angle")))
        elif kind is GateKind.U2:
            matrix = parse_matrix(_require(entry, "matrix", here), 2, 2, f"{here}.matrix")
            if not matrix.is_unitary(tol.predicate):
                raise SchemaError(f"{here}.matrix", "matrix is not unitary")
            gates.append(Gate.u2(matrix, w))
        else:
            gates.append(Gate.h(w))

    circuit = Circuit(wires, tuple(gates))
    circuit.validate(tol)
    return circuit


def circuit_to_dict(circuit: Circuit) -> dict[str, Any]:
    gates = []
    for gate in circuit.gates:
        entry: dict[str, Any] = {"kind": gate.kind.value}
        if gate.kind is GateKind.CZ:
            entry["wires"] = list(gate.wires)
        else:
            entry["wire"] = gate.wires[0]
        if gate.angle is not None:
            entry["angle"] = gate.angle
        if gate.matrix is not None:
            entry["matrix"] = matrix_pairs(gate.matrix)
        gates.append(entry)
    return {"wires": circuit.wires, "gates": gates}


def load_circuit(filepath: str | Path, tol: Tolerances = DEFAULT_TOLERANCES) -> Circuit:
    return circuit_from_dict(load_jsonc(filepath), tol)


# ----- patterns -----

def _command(raw: Any, here: str) -> Command:
    entry = _object(raw, here)
    cmd = _require(entry, "cmd", here)
    if cmd == "N":
        return N(_int(_require(entry, "node", here), f"{here}.node"))
    if cmd == "E":
        pair = _int_list(_require(entry, "nodes", here), f"{here}.nodes")
        if len(pair) != 2:
            raise SchemaError(f"{here}.nodes", "E needs exactly two nodes")
        return E((pair[0], pair[1]))
    if cmd == "M":
        plane = entry.get("plane", PLANE_XY)
        if plane != PLANE_XY:
            raise SchemaError(f"{here}.plane", f"only the {PLANE_XY} plane is supported, got {plane!r}")
        return M(_int(_require(entry, "node", here), f"{here}.node"),
                 _number(entry.get("angle", 0.0), f"{here}.angle"),
                 PLANE_XY,
                 frozenset(_int_list(entry.get("s_domain", []), f"{here}.s_domain")),
                 frozenset(_int_list(entry.get("t_domain", []), f"{here}.t_domain")))
    if cmd in ("X", "Z"):
        node = _int(_require(entry, "node", here), f"{here}.node")
        domain = frozenset(_int_list(entry.get("domain", []), f"{here}.domain"))
        return X(node, domain) if cmd == "X" else Z(node, domain)
    raise SchemaError(f"{here}.cmd", f"unknown command {cmd!r} (known: N, E, M, X, Z)")


def pattern_from_dict(data: Any) -> Pattern:
    """Validated Pattern from its JSON form.

    Structure and feed-forward causality are checked here; standard form is
    left to the simulator.

    Raises:
        SchemaError: naming the first offending field
    """
    data = _object(data, "$")
    nodes = _int_list(_require(data, "nodes", "$"), "nodes")
    inputs = _int_list(_require(data, "inputs", "$"), "inputs")
    outputs = _int_list(_require(data, "outputs", "$"), "outputs")
    commands = [_command(raw, f"commands[{k}]")
                for k, raw in enumerate(_list(_require(data, "commands", "$"), "commands"))]
    pattern = Pattern(tuple(nodes), tuple(inputs), tuple(outputs), tuple(commands))
    try:
        pattern.validate()
    except InvalidPattern as e:
        raise SchemaError(e.path or "commands", e.message) from e
    return pattern


def _command_to_dict(cmd: Command) -> dict[str, Any]:
    if isinstance(cmd, N):
        return {"cmd": "N", "node": cmd.node}
    if isinstance(cmd, E):
        return {"cmd": "E", "nodes": list(cmd.nodes)}
    if isinstance(cmd, M):
        return {"cmd": "M", "node": cmd.node, "plane": cmd.plane, "angle": cmd.angle,
                "s_domain": sorted(cmd.s_domain), "t_domain": sorted(cmd.t_domain)}
    return {"cmd": cmd.kind, "node": cmd.node, "domain": sorted(cmd.domain)}


def pattern_to_dict(pattern: Pattern) -> dict[str, Any]:
    return {
        "nodes": list(pattern.nodes),
        "inputs": list(pattern.inputs),
        "outputs": list(pattern.outputs),
        "commands": [_command_to_dict(c) for c in pattern.commands],
    }


def load_pattern(filepath: str | Path) -> Pattern:
    return pattern_from_dict(load_jsonc(filepath))


# ----- Kraus sets -----

def kraus_from_dict(data: Any, tol: Tolerances = DEFAULT_TOLERANCES) -> KrausSet:
    """Trace-preserving KrausSet from its JSON form.

    Raises:
        SchemaError: naming the first offending field
        NotTracePreserving: if Σ K†K differs from the identity
    """
    data = _object(data, "$")
    d_in = _int(_require(data, "d_in", "$"), "d_in", 1)
    d_out = _int(_require(data, "d_out", "$"), "d_out", 1)
    raw_ops = _list(_require(data, "ops", "$"), "ops")
    if not raw_ops:
        raise SchemaError("ops", "at least one Kraus operator is required")
    ops = [parse_matrix(raw, d_out, d_in, f"ops[{k}]") for k, raw in enumerate(raw_ops)]
    return KrausSet.from_ops(ops, tol)


def kraus_to_dict(kraus: KrausSet) -> dict[str, Any]:
    return {"d_in": kraus.d_in, "d_out": kraus.d_out,
            "ops": [matrix_pairs(op) for op in kraus.ops]}


def load_kraus(filepath: str | Path, tol: Tolerances = DEFAULT_TOLERANCES) -> KrausSet:
    return kraus_from_dict(load_jsonc(filepath), tol)


# ----- writing -----

def save_json(data: Any, filepath: str | Path) -> Path:
    """Write canonical JSON, creating parent folders as needed."""
    path = Path(filepath)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_canonical(data), encoding='utf-8')
    return path
