"""Script interpreter: ``jmx run script.jmx`` prints one JSON report per statement.

A script is a sequence of ``;``-terminated statements that bind rings,
ideals and quotients and query them.  The grammar is in ``docs/grammar.md``.
Reports go to stdout as newline-delimited JSON, a short summary to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from dataclasses import dataclass, field
from typing import Any, Callable, TextIO

from .field_poly import GradedRing, Polynomial, PolynomialSyntaxError, PrimeField, parse_polynomial
from .graded_invariants import (
    INFINITE,
    InhomogeneousIdeal,
    WeightedMultiplicity,
    analytic_spread,
    dimension,
    hilbert_numerator,
    length,
    multiplicity,
)
from .groebner import DegreeCapExceeded
from .ideal_ops import (
    Ideal,
    QuotientPresentation,
    SaturationDidNotStabilize,
    colon_ideal,
    minors2,
    saturate,
)
from .jmult_engine import (
    AgreementPolicy,
    HypothesisViolated,
    NoAdmissibleDegree,
    j_cor3a,
    j_cor3b_variant,
    j_definitional_oracle,
    j_length_formula,
    j_reduction,
    j_residual_multiplicity,
    monomial_curve_ideal,
)

METHODS = ("auto", "formula", "cor3a", "cor3b", "oracle", "reduction", "residual")
AUTO_ORACLE_MAX_VARS = 4
STRATEGY_NAMES = {"auto": "auto", "scalar": "equigenerated-scalar", "weighted": "weighted-degree-D",
                  "local": "local-scalar"}
_CHECK_PRIME = 2147483647
DETERMINISTIC_METHODS = ("reduction", "residual-multiplicity", "definitional-oracle")


class ScriptError(Exception):
    """An error tied to a position in the script, with a machine-readable code."""

    def __init__(self, code: str, message: str, line: int = 0, column: int = 0):
        super().__init__(message)
        self.code = code
        self.message = message
        self.line = line
        self.column = column

    def to_dict(self) -> dict[str, Any]:
        return {"code": self.code, "message": self.message, "line": self.line, "column": self.column}


# ---------------------------------------------------------------------------
# lexer

_LEX = re.compile(r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<sym>\.\.|[\[\](),;=/+\-*^])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str  # int | name | sym | end
    text: str
    start: int
    end: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _LEX.match(text, pos)
        if m is None:
            line, col = _line_col(text, pos)
            raise ScriptError("syntax", f"unexpected character {text[pos]!r}", line, col)
        if m.lastgroup != "ws":
            tokens.append(Token(m.lastgroup, m.group(), m.start(), m.end()))
        pos = m.end()
    tokens.append(Token("end", "", len(text), len(text)))
    return tokens


def _line_col(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    return line, offset - (text.rfind("\n", 0, offset) + 1) + 1


# ---------------------------------------------------------------------------
# parser


@dataclass
class PolyText:
    """Polynomial source kept as text; it is parsed once its ring is known."""

    text: str
    offset: int


@dataclass
class Command:
    kind: str
    line: int
    column: int
    source: str
    target: str | None = None
    args: dict[str, Any] = field(default_factory=dict)


class _ScriptParser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        # statically bound names per kind
        self.bound: dict[str, set[str]] = {"ring": set(), "ideal": set(), "quotient": set()}
        # variable names of every bound ring, quotient and ideal, for checking polynomials early
        self.variables: dict[str, tuple[str, ...]] = {}
        self.current: tuple[str, ...] = ()
        self._check_rings: dict[tuple[str, ...], GradedRing] = {}

    # token helpers

    def peek(self, k: int = 0) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def take(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, tok: Token, message: str, code: str = "syntax") -> ScriptError:
        line, col = _line_col(self.text, tok.start)
        return ScriptError(code, message, line, col)

    def expect(self, text: str) -> Token:
        tok = self.take()
        if tok.text != text or tok.kind == "end":
            raise self.error(tok, f"expected {text!r}, found {tok.text or 'end of input'!r}")
        return tok

    def name(self) -> Token:
        tok = self.take()
        if tok.kind != "name":
            raise self.error(tok, f"expected a name, found {tok.text or 'end of input'!r}")
        return tok

    def integer(self) -> int:
        tok = self.take()
        if tok.kind != "int":
            raise self.error(tok, f"expected an integer, found {tok.text or 'end of input'!r}")
        return int(tok.text)

    def accept(self, text: str) -> bool:
        if self.peek().text == text and self.peek().kind != "end":
            self.i += 1
            return True
        return False

    def reference(self, *kinds: str) -> str:
        tok = self.name()
        if not any(tok.text in self.bound[k] for k in kinds):
            raise self.error(tok, f"undefined {' or '.join(kinds)} {tok.text!r}", "undefined-name")
        return tok.text

    def check_polys(self, polys: list[PolyText], names: tuple[str, ...]):
        """Parse polynomial text against the variable names alone so mistakes surface before running."""
        if names not in self._check_rings:
            try:
                self._check_rings[names] = GradedRing(names, (), PrimeField(_CHECK_PRIME))
            except ValueError as exc:
                raise ScriptError("invalid-input", str(exc), *_line_col(self.text, polys[0].offset)) from None
        ring = self._check_rings[names]
        for p in polys:
            try:
                parse_polynomial(p.text, ring)
            except PolynomialSyntaxError as exc:
                if "not invertible" in exc.message:
                    continue  # depends on the characteristic; reported when run
                line, col = _line_col(self.text, p.offset + (exc.position or 0))
                raise ScriptError("syntax", exc.message, line, col) from None

    # grammar

    def script(self) -> list[Command]:
        commands = []
        while self.peek().kind != "end":
            commands.append(self.statement())
        return commands

    def statement(self) -> Command:
        head = self.peek()
        if head.kind != "name":
            raise self.error(head, f"expected a command, found {head.text!r}")
        line, col = _line_col(self.text, head.start)
        handler = getattr(self, "stmt_" + head.text, None)
        if handler is None:
            raise self.error(head, f"unknown command {head.text!r}")
        self.take()
        cmd = Command(head.text, line, col, "")
        handler(cmd)
        end = self.expect(";")
        cmd.source = self.text[head.start:end.end]
        return cmd

    def stmt_ring(self, cmd: Command):
        cmd.target = self.name().text
        self.expect("=")
        self.expect("vars")
        names = [self.var_item()]
        while self.accept(","):
            names.append(self.var_item())
        cmd.args["vars"] = [n for group in names for n in group]
        if self.accept("weights"):
            start = self.peek()
            weights = [self.integer()]
            while self.accept(","):
                weights.append(self.integer())
            if len(weights) != len(cmd.args["vars"]):
                raise self.error(start, f"{len(cmd.args['vars'])} variables but {len(weights)} weights", "arity")
            cmd.args["weights"] = weights
        self.bound["ring"].add(cmd.target)
        self.variables[cmd.target] = self.current = tuple(cmd.args["vars"])

    def var_item(self) -> list[str]:
        first = self.name()
        if not self.accept(".."):
            return [first.text]
        last = self.name()
        a = re.fullmatch(r"(.*?)(\d+)", first.text)
        b = re.fullmatch(r"(.*?)(\d+)", last.text)
        if not a or not b or a.group(1) != b.group(1) or int(a.group(2)) > int(b.group(2)):
            raise self.error(first, f"bad variable range {first.text}..{last.text}")
        return [f"{a.group(1)}{k}" for k in range(int(a.group(2)), int(b.group(2)) + 1)]

    def in_clause(self, cmd: Command, *kinds: str):
        if self.accept("in"):
            cmd.args["in"] = self.reference(*kinds)

    def stmt_ideal(self, cmd: Command):
        cmd.target = self.name().text
        self.in_clause(cmd, "ring", "quotient")
        if "in" not in cmd.args and not self.bound["ring"]:
            raise self.error(self.peek(), "no ring defined yet", "undefined-name")
        self.expect("=")
        if self.accept("minors2"):
            self.expect("[")
            start = self.peek()
            top = self.poly_list()
            self.expect(",")
            bottom = self.poly_list()
            self.expect("]")
            if len(top) != len(bottom):
                raise self.error(start, f"matrix rows have lengths {len(top)} and {len(bottom)}", "arity")
            cmd.args["minors2"] = [top, bottom]
            polys = top + bottom
        else:
            cmd.args["gens"] = polys = self.poly_list()
        names = self.variables[cmd.args["in"]] if "in" in cmd.args else self.current
        if polys:
            self.check_polys(polys, names)
        self.bound["ideal"].add(cmd.target)
        self.variables[cmd.target] = names

    def poly_list(self) -> list[PolyText]:
        self.expect("[")
        polys = []
        if self.accept("]"):
            return polys
        while True:
            polys.append(self.poly())
            if self.accept("]"):
                return polys
            self.expect(",")

    def poly(self) -> PolyText:
        depth = 0
        first = self.peek()
        last = None
        while True:
            tok = self.peek()
            if tok.kind == "end" or tok.text == ";":
                break
            if depth == 0 and tok.text in (",", "]"):
                break
            if tok.text == "(":
                depth += 1
            elif tok.text == ")":
                depth -= 1
            elif tok.text in ("[", "=", ".."):
                raise self.error(tok, f"unexpected {tok.text!r} in polynomial")
            last = self.take()
        if last is None:
            raise self.error(first, "expected a polynomial")
        return PolyText(self.text[first.start:last.end], first.start)

    def stmt_quotient(self, cmd: Command):
        cmd.target = self.name().text
        self.expect("=")
        cmd.args["ring"] = self.reference("ring")
        self.expect("/")
        cmd.args["ideal"] = self.reference("ideal")
        self.bound["quotient"].add(cmd.target)
        self.variables[cmd.target] = self.variables[cmd.args["ring"]]

    def stmt_curve(self, cmd: Command):
        start = self.peek()
        exps = []
        while self.peek().kind == "int":
            exps.append(self.integer())
        if len(exps) != 3:
            raise self.error(start, f"curve takes 3 exponents, got {len(exps)}", "arity")
        cmd.args["exponents"] = exps
        cmd.target = self.name().text if self.accept("as") else "P"
        self.bound["ring"].add(cmd.target)
        self.bound["ideal"].add(cmd.target)
        self.variables[cmd.target] = self.current = ("X", "Y", "Z")

    def _derived(self, cmd: Command):
        cmd.target = self.name().text
        self.expect("=")
        cmd.args["ideal"] = self.reference("ideal")
        self.expect("by")
        cmd.args["by"] = self.reference("ideal")
        self.bound["ideal"].add(cmd.target)
        self.variables[cmd.target] = self.variables[cmd.args["ideal"]]

    stmt_saturate = _derived
    stmt_colon = _derived

    def _query(self, cmd: Command):
        cmd.args["ideal"] = self.reference("ideal", "quotient")
        self.in_clause(cmd, "quotient")

    stmt_dim = _query
    stmt_length = _query
    stmt_mult = _query
    stmt_hilbert = _query

    def stmt_spread(self, cmd: Command):
        cmd.args["ideal"] = self.reference("ideal")
        self.in_clause(cmd, "quotient")

    def stmt_oracle(self, cmd: Command):
        self.stmt_spread(cmd)
        if self.accept("max"):
            cmd.args["max"] = self.integer()

    def stmt_jmult(self, cmd: Command):
        self.stmt_spread(cmd)
        cmd.args["method"] = "auto"
        while self.peek().text not in (";", ""):
            tok = self.name()
            if tok.text == "method":
                m = self.name()
                if m.text not in METHODS:
                    raise self.error(m, f"unknown method {m.text!r}; expected one of {', '.join(METHODS)}")
                cmd.args["method"] = m.text
            elif tok.text == "r":
                cmd.args["r"] = self.integer()
            elif tok.text == "b":
                cmd.args["b"] = self.poly_list()
            elif tok.text == "bd":
                bd = self.poly_list()
                if len(bd) != 1:
                    raise self.error(tok, "bd takes exactly one polynomial", "arity")
                cmd.args["bd"] = bd[0]
            elif tok.text == "strategy":
                st = self.name()
                if st.text not in STRATEGY_NAMES:
                    raise self.error(st, f"unknown strategy {st.text!r}; expected one of {', '.join(STRATEGY_NAMES)}")
                cmd.args["strategy"] = STRATEGY_NAMES[st.text]
            elif tok.text == "max":
                cmd.args["max"] = self.integer()
            else:
                raise self.error(tok, f"unknown jmult option {tok.text!r}")
        extra = cmd.args.get("b", []) + ([cmd.args["bd"]] if "bd" in cmd.args else [])
        if extra:
            self.check_polys(extra, self.variables[cmd.args["ideal"]])
        method = cmd.args["method"]
        if method in ("reduction", "residual") and "b" not in cmd.args:
            raise self.error(self.peek(), f"method {method} needs 'b [...]'", "arity")


def parse_script(text: str) -> list[Command]:
    """Parse a script into commands, checking syntax, names and arities."""
    return _ScriptParser(text).script()


# ---------------------------------------------------------------------------
# execution


@dataclass
class Config:
    modulus: int = 32003
    seed: int = 0
    samples: int = 3
    n_max: int = 6
    use_min: bool = False

    @property
    def seeds(self) -> list[int]:
        return [self.seed + i for i in range(self.samples)]

    @property
    def policy(self) -> AgreementPolicy:
        return AgreementPolicy(min_agree=min(3, self.samples), use_min=self.use_min)


@dataclass
class Session:
    config: Config
    text: str = ""
    rings: dict[str, GradedRing] = field(default_factory=dict)
    ideals: dict[str, Ideal] = field(default_factory=dict)
    quotients: dict[str, QuotientPresentation] = field(default_factory=dict)
    current: GradedRing | None = None

    def polynomial(self, p: PolyText, ring: GradedRing) -> Polynomial:
        try:
            return parse_polynomial(p.text, ring)
        except PolynomialSyntaxError as exc:
            line, col = _line_col(self.text, p.offset + (exc.position or 0))
            raise ScriptError("syntax", exc.message, line, col) from None

    def lookup(self, table: dict, name: str, kind: str):
        if name not in table:
            raise ScriptError("undefined-name", f"{kind} {name!r} is not bound (its definition failed)")
        return table[name]

    def target(self, cmd: Command) -> tuple[QuotientPresentation, Ideal | None]:
        """Resolve ``NAME [in Q]`` into the quotient and the ideal being queried."""
        name = cmd.args["ideal"]
        if "in" in cmd.args:
            Q = self.lookup(self.quotients, cmd.args["in"], "quotient")
            I = self.lookup(self.ideals, name, "ideal")
            return Q, I
        if name in self.ideals:
            I = self.ideals[name]
            return QuotientPresentation(I.ring, []), I
        return self.lookup(self.quotients, name, "quotient"), None


def _fmt(value):
    if value == INFINITE:
        return "infinite"
    return value


def _ideal_json(I: Ideal) -> list[str]:
    return [str(g) for g in I.gens]


def _quotient_of(Q: QuotientPresentation, I: Ideal | None) -> Ideal:
    if I is None:
        return Q.defining
    return Ideal(Q.ring, list(Q.defining.gens) + list(I.gens))


def _exec_ring(s: Session, cmd: Command) -> dict:
    ring = GradedRing(tuple(cmd.args["vars"]), tuple(cmd.args.get("weights", ())), PrimeField(s.config.modulus))
    s.rings[cmd.target] = ring
    s.current = ring
    return {"ring": str(ring)}


def _exec_ideal(s: Session, cmd: Command) -> dict:
    if "in" in cmd.args:
        where = cmd.args["in"]
        ring = s.rings[where] if where in s.rings else s.lookup(s.quotients, where, "quotient").ring
    else:
        ring = s.current
    if "minors2" in cmd.args:
        rows = [[s.polynomial(p, ring) for p in row] for row in cmd.args["minors2"]]
        I = minors2(rows)
    else:
        I = Ideal(ring, [s.polynomial(p, ring) for p in cmd.args["gens"]])
    s.ideals[cmd.target] = I
    return {"generators": _ideal_json(I), "homogeneous": I.is_homogeneous()}


def _exec_quotient(s: Session, cmd: Command) -> dict:
    ring = s.lookup(s.rings, cmd.args["ring"], "ring")
    I = s.lookup(s.ideals, cmd.args["ideal"], "ideal")
    if I.ring != ring:
        raise ScriptError("ring-mismatch", f"ideal {cmd.args['ideal']} is not in ring {cmd.args['ring']}")
    s.quotients[cmd.target] = QuotientPresentation(ring, I)
    return {"ring": str(ring), "defining": _ideal_json(I)}


def _exec_curve(s: Session, cmd: Command) -> dict:
    k, l, m = cmd.args["exponents"]
    ring, P = monomial_curve_ideal(k, l, m, field=PrimeField(s.config.modulus))
    s.rings[cmd.target] = ring
    s.ideals[cmd.target] = P
    s.current = ring
    return {"ring": str(ring), "generators": _ideal_json(P)}


def _pair(s: Session, cmd: Command) -> tuple[Ideal, Ideal]:
    I = s.lookup(s.ideals, cmd.args["ideal"], "ideal")
    J = s.lookup(s.ideals, cmd.args["by"], "ideal")
    if I.ring != J.ring:
        raise ScriptError("ring-mismatch", "both ideals must live in the same ring")
    return I, J


def _exec_saturate(s: Session, cmd: Command) -> dict:
    I, J = _pair(s, cmd)
    K, steps = saturate(I, J)
    s.ideals[cmd.target] = K
    return {"generators": _ideal_json(K), "steps": steps}


def _exec_colon(s: Session, cmd: Command) -> dict:
    I, J = _pair(s, cmd)
    K = colon_ideal(I, J)
    s.ideals[cmd.target] = K
    return {"generators": _ideal_json(K)}


def _exec_dim(s: Session, cmd: Command) -> dict:
    Q, I = s.target(cmd)
    return {"value": dimension(_quotient_of(Q, I))}


def _exec_length(s: Session, cmd: Command) -> dict:
    Q, I = s.target(cmd)
    return {"value": _fmt(length(_quotient_of(Q, I)))}


def _exec_mult(s: Session, cmd: Command) -> dict:
    Q, I = s.target(cmd)
    return {"value": multiplicity(_quotient_of(Q, I))}


def _exec_hilbert(s: Session, cmd: Command) -> dict:
    Q, I = s.target(cmd)
    data = hilbert_numerator(_quotient_of(Q, I))
    return {"numerator": list(data.numerator), "weights": list(data.weights), "dimension": data.dimension,
            "multiplicity": data.multiplicity, "series": data.series(10)}


def _exec_spread(s: Session, cmd: Command) -> dict:
    Q, I = s.target(cmd)
    return {"value": analytic_spread(Q, I), "dimension": dimension(Q)}


def _oracle_result(s: Session, Q, I, n_max: int) -> dict:
    trace = j_definitional_oracle(Q, I, max(n_max, dimension(Q)))
    return trace.to_dict()


def _exec_oracle(s: Session, cmd: Command) -> dict:
    Q, I = s.target(cmd)
    return _oracle_result(s, Q, I, cmd.args.get("max", s.config.n_max))


def _exec_jmult(s: Session, cmd: Command) -> dict:
    Q, I = s.target(cmd)
    cfg = s.config
    method = cmd.args["method"]
    n_max = cmd.args.get("max", cfg.n_max)
    ring = Q.ring
    common = {"seeds": cfg.seeds, "policy": cfg.policy}
    if method == "auto":
        degrees = {g.degree() for g in I.gens}
        method = "cor3a" if len(degrees) == 1 and ring.is_standard else "formula"
    if method == "formula":
        report = j_length_formula(Q, I, oracle_nmax=n_max, strategy=cmd.args.get("strategy", "auto"), **common)
    elif method == "cor3b":
        report = j_cor3b_variant(Q, I, oracle_nmax=n_max, strategy=cmd.args.get("strategy", "auto"), **common)
    elif method == "cor3a":
        report = j_cor3a(Q, I, cmd.args.get("r"), **common)
    elif method == "oracle":
        out = _oracle_result(s, Q, I, n_max)
        out["method"] = "definitional-oracle"
        return out
    else:
        b = [s.polynomial(p, ring) for p in cmd.args["b"]]
        if method == "reduction":
            bd = s.polynomial(cmd.args["bd"], ring) if "bd" in cmd.args else None
            report = j_reduction(Q, I if bd is None else None, b, bd, check_spread=True)
        else:
            report = j_residual_multiplicity(Q, I, b, check_spread=True)
    out = report.to_dict()
    if cmd.args["method"] == "auto" and ring.nvars <= AUTO_ORACLE_MAX_VARS and out["oracle_value"] is None:
        trace = j_definitional_oracle(Q, I, max(n_max, report.d))
        out["oracle_value"] = trace.value
        if report.value is not None and trace.value is not None and trace.value != report.value:
            out["warnings"].append(f"definitional oracle gives {trace.value}")
    return out


_EXECUTORS: dict[str, Callable[[Session, Command], dict]] = {
    "ring": _exec_ring, "ideal": _exec_ideal, "quotient": _exec_quotient, "curve": _exec_curve,
    "saturate": _exec_saturate, "colon": _exec_colon, "dim": _exec_dim, "length": _exec_length,
    "mult": _exec_mult, "hilbert": _exec_hilbert, "spread": _exec_spread, "oracle": _exec_oracle,
    "jmult": _exec_jmult,
}

# engine exceptions and their report codes; order matters for subclasses
_ERROR_CODES: list[tuple[type, str]] = [
    (InhomogeneousIdeal, "inhomogeneous"),
    (WeightedMultiplicity, "weighted-grading"),
    (HypothesisViolated, "hypotheses-violated"),
    (NoAdmissibleDegree, "no-admissible-degree"),
    (SaturationDidNotStabilize, "saturation-did-not-stabilize"),
    (DegreeCapExceeded, "degree-cap-exceeded"),
    (ValueError, "invalid-input"),
    (ArithmeticError, "arithmetic"),
]


def _json_args(args: dict) -> dict:
    def conv(v):
        if isinstance(v, PolyText):
            return v.text
        if isinstance(v, list):
            return [conv(x) for x in v]
        return v
    return {k: conv(v) for k, v in args.items()}


def execute(commands: list[Command], config: Config, text: str = "") -> tuple[list[dict], bool]:
    """Run commands in order; returns the reports and whether any command failed."""
    session = Session(config, text)
    reports = []
    failed = False
    for cmd in commands:
        report: dict[str, Any] = {
            "command": cmd.kind,
            "line": cmd.line,
            "source": cmd.source,
            "inputs": _json_args(cmd.args),
        }
        if cmd.target is not None:
            report["target"] = cmd.target
        start = time.perf_counter()
        try:
            result = _EXECUTORS[cmd.kind](session, cmd)
        except ScriptError as exc:
            error = exc.to_dict()
            if not error["line"]:
                error["line"], error["column"] = cmd.line, cmd.column
            report.update(status="error", error=error)
        except Exception as exc:  # engine failures become structured reports
            code = next((c for t, c in _ERROR_CODES if isinstance(exc, t)), "internal")
            report.update(status="error", error={"code": code, "message": str(exc),
                                                  "line": cmd.line, "column": cmd.column})
        else:
            report.update(status="ok", result=result)
            if cmd.kind == "jmult":
                report["method"] = result.get("method")
                randomized = result.get("method") not in DETERMINISTIC_METHODS
                report["seeds"] = config.seeds if randomized else []
                report["warnings"] = list(result.get("warnings", []))
                hyp = result.get("hypotheses_assumed") or []
                if hyp:
                    report["warnings"].append("hypotheses assumed: " + ", ".join(hyp))
        report["timings"] = {"seconds": round(time.perf_counter() - start, 6)}
        failed |= report["status"] == "error"
        reports.append(report)
    return reports, failed


def _summary(report: dict) -> str:
    head = f"line {report['line']}: {report['command']}"
    if report["status"] == "error":
        e = report["error"]
        return f"{head} FAILED [{e['code']}] {e['message']} (line {e['line']}, column {e['column']})"
    result = report["result"]
    if "value" in result:
        extra = f" via {report['method']}" if report.get("method") else ""
        return f"{head} -> {result['value']}{extra}"
    if "target" in report:
        return f"{head} -> bound {report['target']}"
    return f"{head} ok"


def run_script(text: str, config: Config, out: TextIO, err: TextIO | None) -> int:
    try:
        commands = parse_script(text)
    except ScriptError as exc:
        out.write(json.dumps({"command": "parse", "status": "error", "error": exc.to_dict()}) + "\n")
        if err is not None:
            err.write(f"parse error at line {exc.line}, column {exc.column}: {exc.message}\n")
        return 1
    reports, failed = execute(commands, config, text)
    for report in reports:
        out.write(json.dumps(report) + "\n")
        if err is not None:
            err.write(_summary(report) + "\n")
    if err is not None:
        bad = sum(r["status"] == "error" for r in reports)
        err.write(f"{len(reports)} commands, {bad} failed\n")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jmx", description="j-multiplicity and graded ideal computations")
    sub = parser.add_subparsers(dest="cmd", required=True)
    run = sub.add_parser("run", help="run a script and print JSON reports")
    run.add_argument("script", help="script file, or - for stdin")
    run.add_argument("--char", type=int, default=32003, help="prime characteristic (default 32003)")
    run.add_argument("--seed", type=int, default=0, help="first seed; JMX_SEED overrides")
    run.add_argument("--samples", type=int, default=3, help="number of seeds per randomized computation")
    run.add_argument("--nmax", type=int, default=6, help="largest power for the definitional oracle")
    run.add_argument("--min", action="store_true", help="report the minimal finite sample value")
    run.add_argument("--json-only", action="store_true", help="no summary on stderr")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    seed = args.seed
    if os.environ.get("JMX_SEED"):
        seed = int(os.environ["JMX_SEED"])
    if args.samples < 1:
        print("jmx: --samples must be positive", file=sys.stderr)
        return 2
    try:
        PrimeField(args.char)
    except ValueError as exc:
        print(f"jmx: {exc}", file=sys.stderr)
        return 2
    config = Config(args.char, seed, args.samples, args.nmax, args.min)
    if args.script == "-":
        text = sys.stdin.read()
    else:
        with open(args.script, encoding="utf-8") as fh:
            text = fh.read()
    return run_script(text, config, sys.stdout, None if args.json_only else sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
