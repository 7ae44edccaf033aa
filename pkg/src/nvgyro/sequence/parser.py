"""Text format for pulse sequences.

One element per line, '#' comments, durations with units (ns/us/ms/s),
angles as pi-fractions (pi, pi/2, 3pi/4, 0.5pi) or radians (1.2rad),
frequencies with units (Hz/kHz/MHz/GHz), and named parameters $t, $phi
optionally scaled ($t/2, $t*0.25).

    reset [fidelity=0.96]
    prepare ms(-1) [fidelity=0.96]
    pulse mw sq(-1) pi [mi(+1/2)] [phase=...] [rabi=1MHz] [detuning=..] [cutoff=..]
    pulse rf ms(-1) pi/2 [phase=$phi] [rabi=..]
    dq pi
    evolve 2.2ms | evolve $t/2
    readout ms(0)
"""

from __future__ import annotations

import math
import re

from .elements import (
    DQPulse,
    Element,
    FinitePulse,
    FreeEvolve,
    IdealPulse,
    LaserReset,
    ParamExpr,
    Prepare,
    Readout,
    Sequence,
    Value,
)

_FLOAT = r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?"
_RE_FLOAT = re.compile(rf"^({_FLOAT})$")
_RE_DURATION = re.compile(rf"^({_FLOAT})(ns|us|ms|s)$")
_RE_FREQ = re.compile(rf"^({_FLOAT})(Hz|kHz|MHz|GHz)$")
_RE_PI = re.compile(rf"^({_FLOAT})?pi(?:/({_FLOAT}))?$")
_RE_RAD = re.compile(rf"^({_FLOAT})rad$")
_RE_PARAM = re.compile(rf"^\$([A-Za-z_][A-Za-z0-9_]*)(?:([/*])({_FLOAT}))?$")
_RE_MS = re.compile(r"^ms\(([-+]?[01])\)$")
_RE_SQ = re.compile(r"^sq\(([-+]?\d+)\)$")
_RE_MI = re.compile(r"^mi\(([-+]1)/2\)$")

_DURATION_SCALE = {"ns": 1e-9, "us": 1e-6, "ms": 1e-3, "s": 1.0}
_FREQ_SCALE = {"Hz": 1.0, "kHz": 1e3, "MHz": 1e6, "GHz": 1e9}


class SequenceError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


class _Token:
    __slots__ = ("text", "line", "col")

    def __init__(self, text: str, line: int, col: int):
        self.text = text
        self.line = line
        self.col = col

    def fail(self, message: str) -> "SequenceError":
        return SequenceError(message, self.line, self.col)


def _tokenize(text: str) -> list[list[_Token]]:
    lines: list[list[_Token]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        tokens = [
            _Token(m.group(0), lineno, m.start() + 1) for m in re.finditer(r"\S+", body)
        ]
        if tokens:
            lines.append(tokens)
    return lines


def _parse_param(tok: _Token) -> ParamExpr | None:
    m = _RE_PARAM.match(tok.text)
    if not m:
        return None
    name, op, number = m.group(1), m.group(2), m.group(3)
    scale = 1.0
    if op == "/":
        scale = 1.0 / float(number)
    elif op == "*":
        scale = float(number)
    return ParamExpr(name, scale)


def _parse_angle(tok: _Token) -> Value:
    param = _parse_param(tok)
    if param is not None:
        return param
    m = _RE_PI.match(tok.text)
    if m:
        num = float(m.group(1)) if m.group(1) else 1.0
        den = float(m.group(2)) if m.group(2) else 1.0
        return num * math.pi / den
    m = _RE_RAD.match(tok.text)
    if m:
        return float(m.group(1))
    m = _RE_FLOAT.match(tok.text)
    if m:
        return float(m.group(1))
    raise tok.fail(f"bad angle {tok.text!r}")


def _parse_duration(tok: _Token) -> Value:
    param = _parse_param(tok)
    if param is not None:
        return param
    m = _RE_DURATION.match(tok.text)
    if m:
        return float(m.group(1)) * _DURATION_SCALE[m.group(2)]
    raise tok.fail(f"bad duration {tok.text!r} (expected e.g. 2.2ms or $t/2)")


def _parse_freq(tok: _Token, text: str) -> float:
    m = _RE_FREQ.match(text)
    if m:
        return float(m.group(1)) * _FREQ_SCALE[m.group(2)]
    m = _RE_FLOAT.match(text)
    if m:
        return float(m.group(1))
    raise tok.fail(f"bad frequency {text!r}")


def _parse_ms(tok: _Token) -> int:
    m = _RE_MS.match(tok.text)
    if not m:
        raise tok.fail(f"expected manifold ms(-1|0|+1), got {tok.text!r}")
    return int(m.group(1))


def _split_kv(tokens: list[_Token]) -> tuple[dict[str, tuple[_Token, str]], list[_Token]]:
    kv: dict[str, tuple[_Token, str]] = {}
    plain: list[_Token] = []
    for tok in tokens:
        if "=" in tok.text:
            key, _, value = tok.text.partition("=")
            if key in kv:
                raise tok.fail(f"duplicate argument {key!r}")
            kv[key] = (tok, value)
        else:
            plain.append(tok)
    return kv, plain


def _build_pulse(line: list[_Token]) -> Element:
    if len(line) < 3:
        raise line[0].fail("pulse needs a channel, a transition, and an angle")
    chan_tok = line[1]
    channel = chan_tok.text
    if channel not in ("mw", "rf"):
        raise chan_tok.fail(f"unknown pulse channel {channel!r} (expected mw or rf)")
    kv, plain = _split_kv(line[2:])

    target: int | None = None
    mi_select: int | None = None
    angle: Value | None = None
    for tok in plain:
        if channel == "mw" and tok.text.startswith("sq"):
            m = _RE_SQ.match(tok.text)
            if not m or int(m.group(1)) not in (-1, 1):
                raise tok.fail(f"unknown transition {tok.text!r}")
            target = int(m.group(1))
        elif channel == "rf" and tok.text.startswith("ms("):
            target = _parse_ms(tok)
        elif tok.text.startswith("mi"):
            m = _RE_MI.match(tok.text)
            if not m:
                raise tok.fail(f"bad nuclear selector {tok.text!r} (expected mi(+1/2) or mi(-1/2))")
            mi_select = int(m.group(1))
        elif angle is None:
            angle = _parse_angle(tok)
        else:
            raise tok.fail(f"unexpected token {tok.text!r}")
    if channel == "mw" and target is None:
        raise chan_tok.fail("electronic pulse needs a transition sq(-1) or sq(+1)")
    if angle is None:
        raise line[-1].fail("pulse needs an angle")
    if channel == "mw" and mi_select is None:
        pass  # non-selective electronic pulse
    if channel == "rf" and mi_select is not None:
        raise chan_tok.fail("nuclear pulses select by manifold, not mi(..)")

    phase: Value = 0.0
    if "phase" in kv:
        tok, raw = kv.pop("phase")
        phase = _parse_angle(_Token(raw, tok.line, tok.col))

    if "rabi" in kv:
        tok, raw = kv.pop("rabi")
        rabi = _parse_freq(tok, raw)
        detuning = 0.0
        cutoff = 50e6
        duration = None
        if "detuning" in kv:
            tok, raw = kv.pop("detuning")
            detuning = _parse_freq(tok, raw)
        if "cutoff" in kv:
            tok, raw = kv.pop("cutoff")
            cutoff = _parse_freq(tok, raw)
        if "duration" in kv:
            tok, raw = kv.pop("duration")
            parsed = _parse_duration(_Token(raw, tok.line, tok.col))
            if isinstance(parsed, ParamExpr):
                raise tok.fail("finite-pulse duration must be a literal")
            duration = parsed
        element: Element = FinitePulse(
            channel=channel,
            target=target,
            angle=angle,
            rabi_hz=rabi,
            phase=phase,
            mi_select=mi_select,
            detuning_hz=detuning,
            cutoff_hz=cutoff,
            duration_s=duration,
        )
    else:
        element = IdealPulse(channel=channel, target=target, angle=angle, phase=phase, mi_select=mi_select)
    if kv:
        key = next(iter(kv))
        raise kv[key][0].fail(f"unknown argument {key!r}")
    return element


def _build_element(line: list[_Token]) -> Element:
    head = line[0]
    word = head.text
    try:
        if word == "reset":
            kv, plain = _split_kv(line[1:])
            if plain:
                raise plain[0].fail(f"unexpected token {plain[0].text!r}")
            fidelity = 1.0
            if "fidelity" in kv:
                tok, raw = kv.pop("fidelity")
                fidelity = float(raw)
            if kv:
                key = next(iter(kv))
                raise kv[key][0].fail(f"unknown argument {key!r}")
            return LaserReset(nuclear_fidelity=fidelity)
        if word == "prepare":
            if len(line) < 2:
                raise head.fail("prepare needs a manifold ms(..)")
            manifold = _parse_ms(line[1])
            kv, plain = _split_kv(line[2:])
            if plain:
                raise plain[0].fail(f"unexpected token {plain[0].text!r}")
            fidelity = 1.0
            if "fidelity" in kv:
                tok, raw = kv.pop("fidelity")
                fidelity = float(raw)
            if kv:
                key = next(iter(kv))
                raise kv[key][0].fail(f"unknown argument {key!r}")
            return Prepare(manifold=manifold, fidelity=fidelity)
        if word == "pulse":
            return _build_pulse(line)
        if word == "dq":
            if len(line) != 2 or line[1].text != "pi":
                raise head.fail("the double-quantum composite is written 'dq pi'")
            return DQPulse()
        if word == "evolve":
            if len(line) != 2:
                raise head.fail("evolve takes exactly one duration")
            return FreeEvolve(duration=_parse_duration(line[1]))
        if word == "readout":
            if len(line) != 2:
                raise head.fail("readout takes exactly one manifold ms(..)")
            return Readout(m_s=_parse_ms(line[1]))
    except SequenceError:
        raise
    except ValueError as exc:
        raise SequenceError(str(exc), head.line, head.col) from exc
    raise head.fail(f"unknown element {word!r}")


def parse_sequence(text: str) -> Sequence:
    """Parse DSL text into a validated Sequence."""
    lines = _tokenize(text)
    if not lines:
        raise SequenceError("empty sequence", 1, 1)
    elements = [_build_element(line) for line in lines]
    last = lines[-1][0]
    readouts = [i for i, e in enumerate(elements) if isinstance(e, Readout)]
    if not readouts:
        raise SequenceError("sequence must end with a readout", last.line, last.col)
    if readouts != [len(elements) - 1]:
        bad = lines[readouts[0]][0]
        raise SequenceError("readout must be the last element (exactly one)", bad.line, bad.col)
    try:
        return Sequence(tuple(elements))
    except ValueError as exc:
        raise SequenceError(str(exc), last.line, last.col) from exc


def _fmt_value(value: Value, unit: str) -> str:
    if isinstance(value, ParamExpr):
        if value.scale == 1.0:
            return f"${value.name}"
        return f"${value.name}*{value.scale!r}"
    return f"{float(value)!r}{unit}"


def _fmt_ms(m: int) -> str:
    return f"ms({'+1' if m == 1 else m})"


def pretty_print(seq: Sequence) -> str:
    """Canonical text form; parse_sequence(pretty_print(s)) == s."""
    out: list[str] = []
    for e in seq.elements:
        if isinstance(e, LaserReset):
            line = "reset"
            if e.nuclear_fidelity != 1.0:
                line += f" fidelity={e.nuclear_fidelity!r}"
        elif isinstance(e, Prepare):
            line = f"prepare {_fmt_ms(e.manifold)}"
            if e.fidelity != 1.0:
                line += f" fidelity={e.fidelity!r}"
        elif isinstance(e, (IdealPulse, FinitePulse)):
            if e.channel == "mw":
                spec = f"sq({'+1' if e.target == 1 else '-1'})"
            else:
                spec = _fmt_ms(e.target) if e.target is not None else ""
            line = f"pulse {e.channel}"
            if spec:
                line += f" {spec}"
            line += f" {_fmt_value(e.angle, 'rad')}"
            if e.mi_select is not None:
                line += f" mi({'+1' if e.mi_select == 1 else '-1'}/2)"
            phase = e.phase
            if isinstance(phase, ParamExpr) or phase != 0.0:
                line += f" phase={_fmt_value(phase, 'rad')}"
            if isinstance(e, FinitePulse):
                line += f" rabi={e.rabi_hz!r}Hz"
                if e.detuning_hz != 0.0:
                    line += f" detuning={e.detuning_hz!r}Hz"
                if e.cutoff_hz != 50e6:
                    line += f" cutoff={e.cutoff_hz!r}Hz"
                if e.duration_s is not None:
                    line += f" duration={e.duration_s!r}s"
        elif isinstance(e, DQPulse):
            line = "dq pi"
        elif isinstance(e, FreeEvolve):
            line = f"evolve {_fmt_value(e.duration, 's')}"
        elif isinstance(e, Readout):
            line = f"readout {_fmt_ms(e.m_s)}"
        else:
            raise TypeError(f"unknown element {e!r}")
        out.append(line)
    return "\n".join(out) + "\n"
