"""Measurement patterns: commands, validation and standardization.

A pattern is an ordered list of commands acting on integer nodes:

    N(node)                 prepare |+⟩
    E(nodes=(i, j))         controlled-Z between two live nodes
    M(node, angle, ...)     XY-plane measurement at (−1)^s·angle + t·π,
                            s and t being the outcome parities of s_domain and t_domain
    X(node, domain)         Pauli X if the parity of domain is 1
    Z(node, domain)         Pauli Z if the parity of domain is 1

Measuring at angle φ projects onto (|0⟩ ± e^{iφ}|1⟩)/√2, outcome 0 for +.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import ClassVar, Sequence, Union

from errors import InvalidPattern

PLANE_XY = "XY"


@dataclass(frozen=True)
class N:
    node: int
    kind: ClassVar[str] = "N"


@dataclass(frozen=True)
class E:
    nodes: tuple[int, int]
    kind: ClassVar[str] = "E"


@dataclass(frozen=True)
class M:
    node: int
    angle: float = 0.0
    plane: str = PLANE_XY
    s_domain: frozenset[int] = field(default_factory=frozenset)
    t_domain: frozenset[int] = field(default_factory=frozenset)
    kind: ClassVar[str] = "M"


@dataclass(frozen=True)
class X:
    node: int
    domain: frozenset[int] = field(default_factory=frozenset)
    kind: ClassVar[str] = "X"


@dataclass(frozen=True)
class Z:
    node: int
    domain: frozenset[int] = field(default_factory=frozenset)
    kind: ClassVar[str] = "Z"


Command = Union[N, E, M, X, Z]

# position of each command kind in standard form
_STANDARD_ORDER = {"N": 0, "E": 1, "M": 2, "X": 3, "Z": 3}


@dataclass(frozen=True)
class Pattern:
    nodes: tuple[int, ...]
    inputs: tuple[int, ...]
    outputs: tuple[int, ...]
    commands: tuple[Command, ...] = ()

    @property
    def measurements(self) -> list[M]:
        return [c for c in self.commands if isinstance(c, M)]

    @property
    def n_measurements(self) -> int:
        return len(self.measurements)

    def is_standard(self) -> bool:
        ranks = [_STANDARD_ORDER[c.kind] for c in self.commands]
        return all(a <= b for a, b in zip(ranks, ranks[1:]))

    def validate(self, require_standard: bool = False) -> None:
        validate(self, require_standard)


def validate(pattern: Pattern, require_standard: bool = False) -> None:
    """Check structure, feed-forward causality and optionally standard form.

    Raises:
        InvalidPattern: naming the first offending field
    """
    nodes = set(pattern.nodes)
    if len(nodes) != len(pattern.nodes):
        raise InvalidPattern("node ids are not unique", "nodes")
    for label, subset in (("inputs", pattern.inputs), ("outputs", pattern.outputs)):
        if len(set(subset)) != len(subset):
            raise InvalidPattern("node ids are not unique", label)
        for k, node in enumerate(subset):
            if node not in nodes:
                raise InvalidPattern(f"node {node} is not declared", f"{label}[{k}]")

    outputs = set(pattern.outputs)
    prepared = set(pattern.inputs)
    measured: set[int] = set()
    measured_order: list[int] = []

    def require_live(node: int, path: str) -> None:
        if node not in nodes:
            raise InvalidPattern(f"node {node} is not declared", path)
        if node not in prepared:
            raise InvalidPattern(f"node {node} is used before it is prepared", path)
        if node in measured:
            raise InvalidPattern(f"node {node} is used after it was measured", path)

    def require_past(domain: frozenset[int], path: str) -> None:
        for node in sorted(domain):
            if node not in measured:
                raise InvalidPattern(f"node {node} is not measured earlier", path)

    for k, cmd in enumerate(pattern.commands):
        here = f"commands[{k}]"
        if isinstance(cmd, N):
            if cmd.node not in nodes:
                raise InvalidPattern(f"node {cmd.node} is not declared", f"{here}.node")
            if cmd.node in prepared:
                raise InvalidPattern(f"node {cmd.node} is prepared twice or is an input",
                                     f"{here}.node")
            prepared.add(cmd.node)
        elif isinstance(cmd, E):
            i, j = cmd.nodes
            if i == j:
                raise InvalidPattern("entangling a node with itself", f"{here}.nodes")
            require_live(i, f"{here}.nodes")
            require_live(j, f"{here}.nodes")
        elif isinstance(cmd, M):
            require_live(cmd.node, f"{here}.node")
            if cmd.node in outputs:
                raise InvalidPattern(f"output node {cmd.node} is measured", f"{here}.node")
            if cmd.plane != PLANE_XY:
                raise InvalidPattern(f"unsupported plane '{cmd.plane}'", f"{here}.plane")
            require_past(cmd.s_domain, f"{here}.s_domain")
            require_past(cmd.t_domain, f"{here}.t_domain")
            measured.add(cmd.node)
            measured_order.append(cmd.node)
        elif isinstance(cmd, (X, Z)):
            require_live(cmd.node, f"{here}.node")
            require_past(cmd.domain, f"{here}.domain")
        else:
            raise InvalidPattern(f"unknown command {cmd!r}", here)

    for k, node in enumerate(pattern.nodes):
        if node not in prepared:
            raise InvalidPattern(f"node {node} is never prepared", f"nodes[{k}]")
        if node not in outputs and node not in measured:
            raise InvalidPattern(f"non-output node {node} is never measured", f"nodes[{k}]")

    if require_standard and not pattern.is_standard():
        ranks = [_STANDARD_ORDER[c.kind] for c in pattern.commands]
        k = next(k for k in range(1, len(ranks)) if ranks[k] < ranks[k - 1])
        raise InvalidPattern("pattern is not in standard form (N, E, M, corrections)",
                             f"commands[{k}]")


def standardize(pattern: Pattern) -> Pattern:
    """Rewrite into standard form N* E* M* C*.

    Corrections are moved right: X on i passing E(i, j) leaves a Z on j with
    the same domain, Z commutes with E, and a correction meeting M(i) is folded
    into its s_domain (X) or t_domain (Z). The remaining corrections on output
    nodes are merged per node.
    """
    validate(pattern)
    prep: list[Command] = []
    ent: list[Command] = []
    meas: list[Command] = []
    x_pending: dict[int, frozenset[int]] = {}
    z_pending: dict[int, frozenset[int]] = {}

    for cmd in pattern.commands:
        if isinstance(cmd, N):
            prep.append(cmd)
        elif isinstance(cmd, E):
            i, j = cmd.nodes
            for a, b in ((i, j), (j, i)):
                if x_pending.get(a):
                    z_pending[b] = z_pending.get(b, frozenset()) ^ x_pending[a]
            ent.append(cmd)
        elif isinstance(cmd, M):
            s = cmd.s_domain ^ x_pending.pop(cmd.node, frozenset())
            t = cmd.t_domain ^ z_pending.pop(cmd.node, frozenset())
            meas.append(M(cmd.node, cmd.angle, cmd.plane, s, t))
        elif isinstance(cmd, X):
            x_pending[cmd.node] = x_pending.get(cmd.node, frozenset()) ^ cmd.domain
        elif isinstance(cmd, Z):
            z_pending[cmd.node] = z_pending.get(cmd.node, frozenset()) ^ cmd.domain

    corrections: list[Command] = []
    for node in pattern.outputs:
        if x_pending.get(node):
            corrections.append(X(node, x_pending[node]))
        if z_pending.get(node):
            corrections.append(Z(node, z_pending[node]))

    return Pattern(pattern.nodes, pattern.inputs, pattern.outputs,
                   tuple(prep + ent + meas + corrections))


def prepare_inputs(pattern: Pattern, nodes: Sequence[int]) -> Pattern:
    """Turn the given input nodes into nodes prepared in |+⟩ by the pattern itself."""
    for node in nodes:
        if node not in pattern.inputs:
            raise InvalidPattern(f"node {node} is not an input", "inputs")
    inputs = tuple(n for n in pattern.inputs if n not in set(nodes))
    commands = tuple(N(n) for n in nodes) + pattern.commands
    return Pattern(pattern.nodes, inputs, pattern.outputs, commands)


def measure_out(pattern: Pattern, nodes: Sequence[int], angle: float = 0.0) -> Pattern:
    """Measure the given output nodes at angle, folding their corrections into the measurement.

    The result is standard when the input is.
    """
    targets = set(nodes)
    for node in nodes:
        if node not in pattern.outputs:
            raise InvalidPattern(f"node {node} is not an output", "outputs")
    s_domains: dict[int, frozenset[int]] = {n: frozenset() for n in nodes}
    t_domains: dict[int, frozenset[int]] = {n: frozenset() for n in nodes}
    kept: list[Command] = []
    for cmd in pattern.commands:
        if isinstance(cmd, X) and cmd.node in targets:
            s_domains[cmd.node] ^= cmd.domain
        elif isinstance(cmd, Z) and cmd.node in targets:
            t_domains[cmd.node] ^= cmd.domain
        else:
            kept.append(cmd)

    split = max((k + 1 for k, c in enumerate(kept) if c.kind in "NEM"), default=0)
    added = [M(n, angle, PLANE_XY, s_domains[n], t_domains[n]) for n in nodes]
    outputs = tuple(n for n in pattern.outputs if n not in targets)
    return Pattern(pattern.nodes, pattern.inputs, outputs,
                   tuple(kept[:split] + added + kept[split:]))
