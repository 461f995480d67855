"""Tuple-list circuit text format: curation, parsing, canonical serialization.

The wire format is a bracketed list of entries like ('H', [0]),
('RY', [10.0, 3]), ('CNOT', [0, 12]). Curation cleans raw proposal text
(delimiter tags, code fences, non-ASCII, trailing junk) down to the list.
"""

from __future__ import annotations

import re
from pathlib import Path

from .circuits import Circuit, check_valid, cnot, h, inferred_num_qubits, ry

OPEN_TAG = "<python>"
CLOSE_TAG = "</python>"

PARSE_ERROR_KINDS = (
    "no-list-found", "malformed-entry", "unknown-gate", "bad-arity", "bad-number")

_GATE_ARITY = {"H": 1, "RY": 2, "CNOT": 2}

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<punct>[\[\](),])
  | (?P<string>'[^'\n]*'|"[^"\n]*")
  | (?P<number>[+-]?(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)
""", re.VERBOSE)

_INT_RE = re.compile(r"[+-]?\d+\Z")


class ParseError(ValueError):
    """A grammar violation; kind is one of PARSE_ERROR_KINDS."""

    def __init__(self, kind: str, position: int, detail: str):
        self.kind = kind
        self.position = position
        self.detail = detail
        super().__init__(f"{kind} at position {position}: {detail}")


def curate(text: str) -> str:
    """Trim raw proposal text down to its bracketed gate list.

    Applies, in order: keep the text between the first <python> tag pair when
    both tags occur, drop code-fence lines, delete non-ASCII characters, and
    trim to the outermost balanced bracket pair (dropping trailing characters
    such as a final period).
    """
    s = text
    start = s.find(OPEN_TAG)
    if start >= 0:
        end = s.find(CLOSE_TAG, start + len(OPEN_TAG))
        if end >= 0:
            s = s[start + len(OPEN_TAG):end]
    s = "\n".join(line for line in s.splitlines()
                  if not line.lstrip().startswith("```"))
    s = s.encode("ascii", "ignore").decode("ascii")
    first = s.find("[")
    if first < 0:
        raise ParseError("no-list-found", 0, "no '[' found in proposal text")
    depth = 0
    for pos in range(first, len(s)):
        if s[pos] == "[":
            depth += 1
        elif s[pos] == "]":
            depth -= 1
            if depth == 0:
                return s[first:pos + 1]
    raise ParseError("no-list-found", first, "no balanced '[' ... ']' pair")


class _Tokens:
    """Token stream with one-token lookahead over the candidate text."""

    def __init__(self, text: str):
        self.text = text
        self.items: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            match = _TOKEN_RE.match(text, pos)
            if match is None:
                raise ParseError("malformed-entry", pos,
                                 f"unexpected character {text[pos]!r}")
            if match.lastgroup != "ws":
                self.items.append((match.lastgroup, match.group(), pos))
            pos = match.end()
        self.index = 0

    def peek(self) -> tuple[str, str, int]:
        if self.index >= len(self.items):
            return ("end", "", len(self.text))
        return self.items[self.index]

    def next(self) -> tuple[str, str, int]:
        token = self.peek()
        self.index += 1
        return token

    def expect_punct(self, chars: str, kind: str, what: str) -> tuple[str, str, int]:
        token_kind, text, pos = self.next()
        if token_kind != "punct" or text not in chars:
            raise ParseError(kind, pos, f"expected {what}, got {text or 'end of input'!r}")
        return token_kind, text, pos


def _parse_number(tokens: _Tokens, *, want_int: bool, what: str) -> float | int:
    kind, text, pos = tokens.next()
    if kind != "number":
        raise ParseError("bad-number", pos,
                         f"expected {what}, got {text or 'end of input'!r}")
    if want_int:
        if not _INT_RE.match(text):
            raise ParseError("bad-number", pos, f"{what} must be an integer, got {text!r}")
        return int(text)
    return float(text)


def _parse_entry(tokens: _Tokens) -> tuple[str, list, int]:
    kind, opener, pos = tokens.next()
    if kind != "punct" or opener not in "([":
        raise ParseError("malformed-entry", pos,
                         f"expected a gate entry, got {opener or 'end of input'!r}")
    closer = ")" if opener == "(" else "]"
    name_kind, name_text, name_pos = tokens.next()
    if name_kind != "string":
        raise ParseError("malformed-entry", name_pos,
                         f"expected a quoted gate name, got {name_text or 'end of input'!r}")
    name = name_text[1:-1].upper()
    if name not in _GATE_ARITY:
        raise ParseError("unknown-gate", name_pos, f"unknown gate {name_text[1:-1]!r}")
    tokens.expect_punct(",", "malformed-entry", "',' after the gate name")
    tokens.expect_punct("[", "malformed-entry", "'[' opening the argument list")
    args: list[float | int] = []
    arity = _GATE_ARITY[name]
    while True:
        if tokens.peek()[1] == "]":
            break
        if len(args) >= arity:
            _, text, bad_pos = tokens.peek()
            raise ParseError("bad-arity", bad_pos,
                             f"{name} takes {arity} argument(s)")
        want_int = not (name == "RY" and len(args) == 0)
        what = "an angle" if not want_int else "a wire index"
        args.append(_parse_number(tokens, want_int=want_int, what=what))
        if tokens.peek()[1] == ",":
            tokens.next()
        else:
            break
    _, _, end_pos = tokens.expect_punct("]", "malformed-entry",
                                        "']' closing the argument list")
    if len(args) != arity:
        raise ParseError("bad-arity", end_pos,
                         f"{name} takes {arity} argument(s), got {len(args)}")
    tokens.expect_punct(closer, "malformed-entry",
                        f"{closer!r} closing the gate entry")
    return name, args, pos


def parse(text: str, num_qubits: int | None = None) -> Circuit:
    """Parse curated gate-list text into a valid Circuit.

    Entry wrappers may be parentheses or brackets and gate names are
    case-insensitive; a trailing comma before the closing bracket is
    tolerated. Grammar violations raise ParseError; wire-range and similar
    semantic problems raise CircuitError.
    """
    tokens = _Tokens(text)
    tokens.expect_punct("[", "no-list-found", "'[' opening the gate list")
    gates = []
    while tokens.peek()[1] != "]":
        name, args, _ = _parse_entry(tokens)
        if name == "H":
            gates.append(h(args[0]))
        elif name == "RY":
            gates.append(ry(float(args[0]), args[1]))
        else:
            gates.append(cnot(args[0], args[1]))
        if tokens.peek()[1] == ",":
            tokens.next()
        elif tokens.peek()[1] != "]":
            _, text_, pos = tokens.peek()
            raise ParseError("malformed-entry", pos,
                             f"expected ',' or ']', got {text_ or 'end of input'!r}")
    tokens.next()
    kind, text_, pos = tokens.peek()
    if kind != "end":
        raise ParseError("malformed-entry", pos,
                         f"unexpected trailing text {text_!r}")
    if num_qubits is None:
        num_qubits = inferred_num_qubits(gates)
    return check_valid(Circuit(num_qubits, tuple(gates)))


def format_angle(angle: float) -> str:
    """Render an angle: one decimal when integral, else shortest round-trip form."""
    if angle == int(angle) and abs(angle) < 1e16:
        return f"{angle:.1f}"
    return repr(angle)


def serialize(circuit: Circuit) -> str:
    """Canonical single-line form; parse(serialize(c), c.num_qubits) == c."""
    parts = []
    for gate in circuit.gates:
        if gate.kind == "RY":
            args = f"[{format_angle(gate.angle)}, {gate.wires[0]}]"
        else:
            args = "[" + ", ".join(str(w) for w in gate.wires) + "]"
        parts.append(f"('{gate.kind}', {args})")
    return "[" + ", ".join(parts) + "]"


def load_circuit(path: str | Path, num_qubits: int | None = None) -> Circuit:
    """Read one circuit from a text file, curating tolerated junk first."""
    text = Path(path).read_text(encoding="utf-8")
    return parse(curate(text), num_qubits)


def save_circuit(circuit: Circuit, path: str | Path) -> None:
    """Write the canonical serialization plus a trailing newline."""
    Path(path).write_text(serialize(circuit) + "\n", encoding="utf-8")
