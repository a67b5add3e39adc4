"""A small language of universally quantified laws over one binary
operation, a checker, and a backtracking model finder.

Grammar::

    spec := line+
    line := NAME ':' law
    law  := eq | eq '=>' eq
    eq   := term '=' term
    term := VAR | term '*' term | '(' term ')'     # '*' left-associative

VAR is a single lowercase letter; '#' starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from typing import Union

import numpy as np

from . import _kernels
from .caps import CapExceeded, get_cap
from .magma import Magma


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Mul:
    left: "Term"
    right: "Term"


Term = Union[Var, Mul]


@dataclass(frozen=True)
class Equation:
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Implication:
    hypothesis: Equation
    conclusion: Equation


Law = Union[Equation, Implication]


@dataclass(frozen=True)
class EquationalSpec:
    laws: tuple[tuple[str, Law], ...]

    def __post_init__(self):
        names = [n for n, _ in self.laws]
        dup = {n for n in names if names.count(n) > 1}
        if dup:
            raise ValueError(f"duplicate law names: {sorted(dup)}")

    @property
    def names(self) -> list[str]:
        return [n for n, _ in self.laws]

    def __getitem__(self, name: str) -> Law:
        for n, law in self.laws:
            if n == name:
                return law
        raise KeyError(name)

    def select(self, names) -> "EquationalSpec":
        return EquationalSpec(tuple((n, self[n]) for n in names))

    def __add__(self, other: "EquationalSpec") -> "EquationalSpec":
        return EquationalSpec(self.laws + other.laws)


class DSLSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


_TOKEN = re.compile(r"\s*(?:(=>)|([A-Za-z_][A-Za-z0-9_]*)|([:=*()])|(\S))")


def _tokenize(text: str, lineno: int):
    toks = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos and not m.group(0):
            break
        if m.group(4):
            raise DSLSyntaxError(f"unexpected character {m.group(4)!r}", lineno, m.start(4) + 1)
        kind, value, start = (
            ("=>", "=>", m.start(1)) if m.group(1)
            else ("NAME", m.group(2), m.start(2)) if m.group(2)
            else (m.group(3), m.group(3), m.start(3))
        )
        toks.append((kind, value, start + 1))
        pos = m.end()
    toks.append(("EOL", "end of line", len(text.rstrip()) + 1))
    return toks


class _LineParser:
    def __init__(self, text: str, lineno: int):
        self.toks = _tokenize(text, lineno)
        self.i = 0
        self.lineno = lineno

    def peek(self):
        return self.toks[self.i]

    def fail(self, expected: str):
        kind, value, col = self.peek()
        raise DSLSyntaxError(f"expected {expected}, found {value!r}", self.lineno, col)

    def take(self, kind: str, expected: str):
        if self.peek()[0] != kind:
            self.fail(expected)
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def line(self):
        name = self.take("NAME", "law name")[1]
        self.take(":", "':'")
        law = self.law()
        if self.peek()[0] != "EOL":
            self.fail("'=>', '*' or end of line")
        return name, law

    def law(self) -> Law:
        first = self.equation()
        if self.peek()[0] == "=>":
            self.i += 1
            return Implication(first, self.equation())
        return first

    def equation(self) -> Equation:
        lhs = self.term()
        self.take("=", "'*' or '='")
        return Equation(lhs, self.term())

    def term(self) -> Term:
        t = self.atom()
        while self.peek()[0] == "*":
            self.i += 1
            t = Mul(t, self.atom())
        return t

    def atom(self) -> Term:
        kind, value, col = self.peek()
        if kind == "(":
            self.i += 1
            t = self.term()
            self.take(")", "'*' or ')'")
            return t
        if kind == "NAME":
            if len(value) != 1 or not value.islower():
                raise DSLSyntaxError(
                    f"{value!r} is not a variable (single lowercase letter); constants are not supported",
                    self.lineno,
                    col,
                )
            self.i += 1
            return Var(value)
        self.fail("variable or '('")


def parse(text: str) -> EquationalSpec:
    laws = []
    seen = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        name, law = _LineParser(line, lineno).line()
        if name in seen:
            raise DSLSyntaxError(f"duplicate law name {name!r} (first on line {seen[name]})", lineno, 1)
        seen[name] = lineno
        laws.append((name, law))
    if not laws:
        raise DSLSyntaxError("no laws found", 1, 1)
    return EquationalSpec(tuple(laws))


def sandwich_laws() -> EquationalSpec:
    """The bundled LD, II, LI, LS, LC laws."""
    return parse(resources.files("sandwich_forge.data").joinpath("sandwich.laws").read_text())


def format_term(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    right = format_term(t.right)
    if isinstance(t.right, Mul):
        right = f"({right})"
    return f"{format_term(t.left)}*{right}"


def format_law(law: Law) -> str:
    if isinstance(law, Implication):
        return f"{format_law(law.hypothesis)} => {format_law(law.conclusion)}"
    return f"{format_term(law.lhs)} = {format_term(law.rhs)}"


def format_spec(spec: EquationalSpec) -> str:
    return "".join(f"{name}: {format_law(law)}\n" for name, law in spec.laws)


def variables(x) -> list[str]:
    if isinstance(x, Var):
        return [x.name]
    if isinstance(x, Mul):
        return sorted(set(variables(x.left)) | set(variables(x.right)))
    if isinstance(x, Equation):
        return sorted(set(variables(x.lhs)) | set(variables(x.rhs)))
    return sorted(set(variables(x.hypothesis)) | set(variables(x.conclusion)))


# checking complete tables


def _evaluate(t: Term, table: np.ndarray, env: dict) -> np.ndarray:
    if isinstance(t, Var):
        return env[t.name]
    return table[_evaluate(t.left, table, env), _evaluate(t.right, table, env)]


def _violation_mask(law: Law, table: np.ndarray, names: list[str]) -> np.ndarray:
    n = table.shape[0]
    grids = np.indices((n,) * len(names))
    env = {v: grids[i].ravel() for i, v in enumerate(names)}

    def eq(e: Equation):
        return _evaluate(e.lhs, table, env) == _evaluate(e.rhs, table, env)

    if isinstance(law, Implication):
        return eq(law.hypothesis) & ~eq(law.conclusion)
    return ~eq(law)


def check(spec: EquationalSpec, m: Magma) -> dict[str, dict | None]:
    """Each law's first violating assignment (variables in alphabetical
    order, assignments in lexicographic order), or None if it holds."""
    out = {}
    for name, law in spec.laws:
        names = variables(law)
        bad = np.flatnonzero(_violation_mask(law, m.table, names))
        if bad.size == 0:
            out[name] = None
        else:
            idx = np.unravel_index(int(bad[0]), (m.order,) * len(names))
            out[name] = {v: int(i) for v, i in zip(names, idx)}
    return out


def holds(spec: EquationalSpec, m: Magma) -> dict[str, bool]:
    return {k: v is None for k, v in check(spec, m).items()}


# model search


def _postfix(t: Term, index: dict, out: list):
    if isinstance(t, Var):
        out.append(index[t.name])
    else:
        _postfix(t.left, index, out)
        _postfix(t.right, index, out)
        out.append(-1)


def compile_laws(require: EquationalSpec, forbid: EquationalSpec):
    """Flatten laws into postfix ``code`` plus a ``meta`` row per law:
    ``[kind, nvars, role, start0, len0, ..., start3, len3]`` with kind 0 for
    equations, 1 for implications and role 0 required, 1 forbidden.
    Rows are ordered by variable count so cheap laws prune first."""
    code: list[int] = []
    rows = []
    for role, spec in ((0, require), (1, forbid)):
        for _, law in spec.laws:
            names = variables(law)
            if len(names) > 26:
                raise ValueError("too many variables")
            index = {v: i for i, v in enumerate(names)}
            terms = (
                [law.hypothesis.lhs, law.hypothesis.rhs, law.conclusion.lhs, law.conclusion.rhs]
                if isinstance(law, Implication)
                else [law.lhs, law.rhs]
            )
            row = [int(isinstance(law, Implication)), len(names), role]
            for t in terms:
                start = len(code)
                _postfix(t, index, code)
                row += [start, len(code) - start]
            row += [0, 0] * (4 - len(terms))
            rows.append(row)
    rows.sort(key=lambda r: (r[2], r[1]))
    meta = np.array(rows, dtype=np.int64).reshape(-1, 11)
    return np.array(code or [0], dtype=np.int64), meta


def search_models(
    require: EquationalSpec,
    forbid: EquationalSpec | None = None,
    n: int = 2,
    limit: int = 1,
    init=None,
    cap: int | None = None,
) -> tuple[list[Magma], int]:
    """Order-n tables satisfying every required law and violating every
    forbidden one, filled cell by cell in row-major order.

    ``limit=0`` collects all models.  ``init`` presets cells (-1 = free).
    Returns the models and the number of search nodes.
    """
    cap = get_cap("model") if cap is None else cap
    if n < 1 or n > cap:
        raise CapExceeded(f"model order must be in 1..{cap}, got {n}")
    forbid = forbid or EquationalSpec(())
    code, meta = compile_laws(require, forbid)
    start = np.full((n, n), -1, dtype=np.int64) if init is None else np.array(init, dtype=np.int64)
    capacity = limit if limit > 0 else 1024
    while True:
        found, buf, nodes = _kernels.model_search(start, code, meta, limit, capacity)
        if found <= capacity:
            return [Magma(t) for t in buf[:found]], int(nodes)
        capacity = found


def find_model(require: EquationalSpec, forbid: EquationalSpec | None = None, n: int = 2) -> Magma | None:
    """A model of order exactly n, or None when order n is exhausted."""
    models, _ = search_models(require, forbid, n, limit=1)
    return models[0] if models else None
