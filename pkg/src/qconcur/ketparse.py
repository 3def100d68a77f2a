"""Text formats for states.

Ket expressions::

    expr   := sign? term (("+" | "-") term)*
    term   := coeff? ( "(" expr ")" | "|" bits ">" )
    coeff  := factor (("*" | "/")? factor)* "*"?
    factor := number | "sqrt" "(" cexpr ")" | "i" | "-" factor | "(" cexpr ")"
    cexpr  := coeff (("+" | "-") coeff)*

A parenthesis holding no ket is a numeric factor, so complex coefficients
can be written ``(0.5-0.25i)|01>``.  Bits are ``0``/``1`` (``1`` = spin up)
or, with ``spin=True``, ``u``/``d``.  The leftmost character is qubit 1.

Amplitude files hold one state::

    qubits 2
    # comment
    00 0.7071067811865476 0
    11 0.7071067811865476 0
"""
from __future__ import annotations

import cmath
import math
import re
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    BadDimension,
    CapacityExceeded,
    EmptyExpression,
    KetParseError,
    KetSyntaxError,
    WidthMismatch,
)
from .state import DEFAULT_MAX_QUBITS, DensityMatrix, PureState, normalize

NORM_WARN_TOL = 1e-6


class NormalizationWarning(UserWarning):
    """The parsed amplitudes were rescaled by more than 1e-6."""


# -- coefficient AST --------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: complex

    def evaluate(self) -> complex:
        return self.value


@dataclass(frozen=True)
class Sqrt:
    arg: object

    def evaluate(self) -> complex:
        x = self.arg.evaluate()
        if x.imag == 0 and x.real >= 0:
            return complex(math.sqrt(x.real))
        return cmath.sqrt(x)


@dataclass(frozen=True)
class Neg:
    arg: object

    def evaluate(self) -> complex:
        return -self.arg.evaluate()


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object

    def evaluate(self) -> complex:
        a, b = self.left.evaluate(), self.right.evaluate()
        if self.op == "+":
            return a + b
        if self.op == "-":
            return a - b
        if self.op == "*":
            return a * b
        if b == 0:
            raise ZeroDivisionError("division by zero in a coefficient")
        return a / b


ONE = Num(1 + 0j)
IMAG = Num(1j)


def _mul(a, b):
    if a is ONE:
        return b
    if b is ONE:
        return a
    return BinOp("*", a, b)


@dataclass(frozen=True)
class KetExpression:
    """Flattened superposition: (coefficient AST, basis string) pairs of equal width."""

    terms: tuple[tuple[object, str], ...]
    width: int
    spin: bool = False

    def amplitudes(self) -> np.ndarray:
        """Unnormalized amplitude vector; repeated basis strings add up."""
        amps = np.zeros(2 ** self.width, dtype=np.complex128)
        for coeff, bits in self.terms:
            if self.spin:
                bits = bits.translate(_SPIN_TO_BITS)
            amps[int(bits, 2)] += coeff.evaluate()
        return amps

    def to_state(self) -> PureState:
        amps = self.amplitudes()
        norm = np.linalg.norm(amps)
        if abs(norm - 1) > NORM_WARN_TOL:
            warnings.warn(f"ket expression has norm {norm:.12g}; normalized", NormalizationWarning, stacklevel=3)
        return normalize(amps)


_SPIN_TO_BITS = str.maketrans("ud", "10")


# -- tokenizer --------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ket>\|[^|<>\s]*>)
  | (?P<sqrt>sqrt\b)
  | (?P<imag>i|j)
  | (?P<op>[-+*/()])
  | (?P<bad>.)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[Token]:
    tokens = []
    for m in _TOKEN_RE.finditer(text):
        kind = m.lastgroup
        if kind == "ws":
            continue
        if kind == "bad":
            raise KetSyntaxError(f"unexpected character {m.group()!r}", _byte_offset(text, m.start()))
        if kind == "op":
            kind = m.group()
        tokens.append(Token(kind, m.group(), m.start()))
    tokens.append(Token("eof", "", len(text)))
    return tokens


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


# -- recursive descent ------------------------------------------------------

_FACTOR_START = {"number", "sqrt", "imag", "-", "("}


class _Parser:
    def __init__(self, text: str, spin: bool):
        self.text = text
        self.spin = spin
        self.tokens = _tokenize(text)
        self.i = 0
        self.width = None

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, expected: str, tok: Token | None = None):
        tok = tok or self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        return KetSyntaxError(f"expected {expected}, found {found}", _byte_offset(self.text, tok.pos))

    def advance(self) -> Token:
        tok = self.tok
        self.i += 1
        return tok

    def expect(self, kind: str, what: str) -> Token:
        if self.tok.kind != kind:
            raise self.error(what)
        return self.advance()

    def paren_holds_ket(self) -> bool:
        # called at "(": does the matching parenthesis enclose a ket?
        depth = 0
        for tok in self.tokens[self.i:]:
            if tok.kind == "(":
                depth += 1
            elif tok.kind == ")":
                depth -= 1
                if depth == 0:
                    return False
            elif tok.kind == "ket":
                return True
            elif tok.kind == "eof":
                return False
        return False

    def parse(self) -> KetExpression:
        if self.tok.kind == "eof":
            raise EmptyExpression("empty ket expression", 0)
        terms = self.expr()
        if self.tok.kind != "eof":
            raise self.error("'+', '-' or end of input")
        return KetExpression(tuple(terms), self.width, self.spin)

    def expr(self) -> list:
        sign = ONE
        if self.tok.kind in ("+", "-"):
            if self.advance().kind == "-":
                sign = Num(-1 + 0j)
        terms = [(_mul(sign, c), b) for c, b in self.term()]
        while self.tok.kind in ("+", "-"):
            op = self.advance().kind
            s = ONE if op == "+" else Num(-1 + 0j)
            terms.extend((_mul(s, c), b) for c, b in self.term())
        return terms

    def term(self) -> list:
        coeff = ONE
        if self.tok.kind in _FACTOR_START and not (self.tok.kind == "(" and self.paren_holds_ket()):
            coeff = self.coeff()
        if self.tok.kind == "(":
            self.advance()
            inner = self.expr()
            self.expect(")", "')'")
            return [(_mul(coeff, c), b) for c, b in inner]
        if self.tok.kind == "ket":
            return [(coeff, self.ket(self.advance()))]
        raise self.error("a ket '|...>' or '('")

    def ket(self, tok: Token) -> str:
        bits = tok.text[1:-1]
        allowed = set("ud") if self.spin else set("01")
        if not bits or set(bits) - allowed:
            chars = "u/d" if self.spin else "0/1"
            raise KetSyntaxError(f"ket {tok.text!r} must hold {chars} characters", _byte_offset(self.text, tok.pos))
        if self.width is None:
            self.width = len(bits)
        elif len(bits) != self.width:
            raise WidthMismatch(
                f"ket {tok.text!r} has width {len(bits)}, earlier kets have width {self.width}",
                _byte_offset(self.text, tok.pos),
            )
        return bits

    def coeff(self):
        node = self.factor()
        while True:
            kind = self.tok.kind
            if kind in ("*", "/"):
                self.advance()
                if kind == "*" and self.tok.kind in ("ket", "(") and (
                    self.tok.kind == "ket" or self.paren_holds_ket()
                ):
                    return node  # trailing "*" before the ket or group
                node = BinOp(kind, node, self.factor())
            elif kind in ("number", "sqrt", "imag") or (kind == "(" and not self.paren_holds_ket()):
                node = BinOp("*", node, self.factor())
            else:
                return node

    def cexpr(self):
        node = self.coeff()
        while self.tok.kind in ("+", "-"):
            op = self.advance().kind
            node = BinOp(op, node, self.coeff())
        return node

    def factor(self):
        tok = self.tok
        if tok.kind == "number":
            self.advance()
            return Num(complex(float(tok.text)))
        if tok.kind == "imag":
            self.advance()
            return IMAG
        if tok.kind == "-":
            self.advance()
            return Neg(self.factor())
        if tok.kind == "sqrt":
            self.advance()
            self.expect("(", "'(' after sqrt")
            node = self.cexpr()
            self.expect(")", "')'")
            return Sqrt(node)
        if tok.kind == "(":
            self.advance()
            node = self.cexpr()
            self.expect(")", "')'")
            return node
        raise self.error("a number, 'sqrt(...)', 'i' or '('")


def parse_expression(text: str, *, spin: bool = False) -> KetExpression:
    return _Parser(text, spin).parse()


def parse_ket(text: str, *, spin: bool = False, max_qubits: int = DEFAULT_MAX_QUBITS) -> PureState:
    """Parse a ket expression into a normalized state.

    Raises :class:`KetSyntaxError`, :class:`WidthMismatch` or
    :class:`EmptyExpression`; a :class:`NormalizationWarning` is issued when
    the written amplitudes are off unit norm by more than 1e-6.
    """
    expr = parse_expression(text, spin=spin)
    if expr.width > max_qubits:
        raise CapacityExceeded(f"{expr.width} qubits exceeds the configured maximum of {max_qubits}")
    try:
        return expr.to_state()
    except ZeroDivisionError as exc:
        raise KetParseError(str(exc)) from None


def _format_number(x: float) -> str:
    s = f"{x:.12g}"
    return "0" if s == "-0" else s


def _format_coeff(z: complex) -> tuple[str, str]:
    """(sign, magnitude text) for a coefficient."""
    re_s, im_s = _format_number(z.real), _format_number(z.imag)
    if im_s == "0":
        return ("-", re_s[1:]) if re_s.startswith("-") else ("+", re_s)
    if re_s == "0":
        return ("-", im_s[1:] + "i") if im_s.startswith("-") else ("+", im_s + "i")
    sep = "-" if im_s.startswith("-") else "+"
    return "+", f"({re_s}{sep}{im_s.lstrip('-')}i)"


def format_ket(state: PureState, threshold: float = 0.0, *, spin: bool = False) -> str:
    """Ket expression with 12 significant digits, terms in ascending basis index.

    Only amplitudes with modulus above ``threshold`` are written.
    """
    if not 0 <= threshold < 1:
        raise ValueError("threshold must lie in [0, 1)")
    n = state.num_qubits
    parts = []
    for idx, a in enumerate(state.amplitudes):
        if abs(a) <= threshold or abs(a) == 0:
            continue
        bits = format(idx, f"0{n}b")
        if spin:
            bits = bits.replace("1", "u").replace("0", "d")
        sign, mag = _format_coeff(complex(a))
        parts.append((sign, f"{mag}|{bits}>"))
    if not parts:
        raise ValueError("no amplitude above the threshold")
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# -- amplitude files ----------------------------------------------------------

def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_amplitudes(text: str, *, max_qubits: int = DEFAULT_MAX_QUBITS) -> PureState:
    n = None
    amps = None
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 2 or fields[0] != "qubits" or not fields[1].isdigit():
                raise KetSyntaxError(f"line {lineno}: expected header 'qubits N'")
            n = int(fields[1])
            if not 1 <= n <= max_qubits:
                raise CapacityExceeded(f"qubits {n} outside [1, {max_qubits}]")
            amps = np.zeros(2 ** n, dtype=np.complex128)
            continue
        if len(fields) != 3:
            raise KetSyntaxError(f"line {lineno}: expected '<bits> <re> <im>'")
        bits, re_s, im_s = fields
        if set(bits) - {"0", "1"}:
            raise KetSyntaxError(f"line {lineno}: invalid basis string {bits!r}")
        if len(bits) != n:
            raise WidthMismatch(f"line {lineno}: basis string {bits!r} has width {len(bits)}, header says {n}")
        if bits in seen:
            raise KetSyntaxError(f"line {lineno}: basis string {bits} listed twice")
        seen.add(bits)
        try:
            amps[int(bits, 2)] = complex(float(re_s), float(im_s))
        except ValueError:
            raise KetSyntaxError(f"line {lineno}: cannot read numbers {re_s!r} {im_s!r}") from None
    if n is None:
        raise EmptyExpression("amplitude file has no header")
    norm = np.linalg.norm(amps)
    if abs(norm - 1) > NORM_WARN_TOL:
        warnings.warn(f"amplitude file has norm {norm:.12g}; normalized", NormalizationWarning, stacklevel=2)
    return normalize(amps)


def format_amplitudes(state: PureState, threshold: float = 0.0) -> str:
    """Amplitude-file text; values use repr so reading back is exact."""
    n = state.num_qubits
    lines = [f"qubits {n}"]
    for idx, a in enumerate(state.amplitudes):
        if abs(a) > threshold and a != 0:
            lines.append(f"{idx:0{n}b} {float(a.real)!r} {float(a.imag)!r}")
    return "\n".join(lines) + "\n"


def is_amplitude_text(text: str) -> bool:
    for raw in text.splitlines():
        line = _strip_comment(raw)
        if line:
            return line.split()[0] == "qubits"
    return False


def load_state(path, *, spin: bool = False, max_qubits: int = DEFAULT_MAX_QUBITS) -> PureState:
    """Read a state from a ket file or an amplitude file (detected by the header)."""
    text = Path(path).read_text(encoding="utf-8")
    if is_amplitude_text(text):
        return parse_amplitudes(text, max_qubits=max_qubits)
    body = " ".join(_strip_comment(line) for line in text.splitlines())
    return parse_ket(body, spin=spin, max_qubits=max_qubits)


# -- two-qubit density matrix files -----------------------------------------

def parse_density_matrix(text: str) -> DensityMatrix:
    """4x4 matrix as 16 row-major "re im" pairs; whitespace and line breaks are free."""
    values = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        for tok in _strip_comment(raw).split():
            try:
                values.append(float(tok))
            except ValueError:
                raise KetSyntaxError(f"line {lineno}: cannot read number {tok!r}") from None
    if len(values) != 32:
        raise KetSyntaxError(f"expected 16 complex entries (32 numbers), found {len(values)} numbers")
    v = np.array(values).reshape(16, 2)
    m = (v[:, 0] + 1j * v[:, 1]).reshape(4, 4)
    return DensityMatrix(m)


def format_density_matrix(rho) -> str:
    m = np.asarray(rho, dtype=np.complex128)
    if m.shape != (4, 4):
        raise BadDimension(f"expected a 4x4 matrix, got {m.shape}")
    return "\n".join(" ".join(f"{float(z.real)!r} {float(z.imag)!r}" for z in row) for row in m) + "\n"

