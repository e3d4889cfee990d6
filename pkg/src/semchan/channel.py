"""Active channel triple: encode, pluggable transmission system, decode.

The encoder/decoder halves are fixed to the codec module's functions;
what varies is the transmission system applied to the serialized wire
bytes.  Noisy systems are seeded and counter-indexed so every transcript
is replayable.  Decode failures are values, never exceptions: the
receiver must be able to observe "did not arrive" as an outcome.
"""

from __future__ import annotations

import json
import os
import random
import time
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .codec import decode_frame, encode_frame
from .model import Proposition, render_proposition
from .wire import frame_to_wire, wire_to_frames


class ChannelConfigError(ValueError):
    """Raised for unknown TS kinds or invalid TS parameters."""


def _bytes_to_bits(data: bytes) -> str:
    return "".join(format(b, "08b") for b in data)


def _bits_to_bytes(bits: str) -> bytes:
    # zero-pad a trailing partial byte
    padded = bits + "0" * (-len(bits) % 8)
    return bytes(int(padded[i:i + 8], 2) for i in range(0, len(padded), 8))


class TransmissionSystem:
    """Base TS: a deterministic function of (seed, use counter, input)."""

    kind = "abstract"
    seed = 0
    # True/False when injectivity is decidable analytically, None otherwise
    analytic_injective: Optional[bool] = None

    def apply(self, data: bytes, n: int) -> bytes:
        raise NotImplementedError


class PerfectTS(TransmissionSystem):
    kind = "perfect"
    analytic_injective = True

    def apply(self, data: bytes, n: int) -> bytes:
        return data


class BitFlipTS(TransmissionSystem):
    """Flips each bit independently with probability p.

    The RNG is keyed on (seed, use counter) so identical uses reproduce
    identical outputs across processes.
    """

    kind = "bitflip"

    def __init__(self, p: float, seed: int = 0):
        if not 0.0 <= p <= 1.0:
            raise ChannelConfigError(f"flip probability out of [0,1]: {p}")
        self.p = p
        self.seed = seed
        self.analytic_injective = True if p == 0.0 else None

    def apply(self, data: bytes, n: int) -> bytes:
        if self.p == 0.0:
            return data
        rng = random.Random(f"bitflip:{self.seed}:{n}")
        out = bytearray(data)
        for i in range(len(out) * 8):
            if rng.random() < self.p:
                out[i // 8] ^= 0x80 >> (i % 8)
        return bytes(out)


class TruncateTS(TransmissionSystem):
    """Keeps only the first max_bits bits of the stream.

    max_bits = 0 (drop everything) is allowed: the diagonal analyses
    need a channel over which nothing ever arrives.
    """

    kind = "truncate"

    def __init__(self, max_bits: int):
        if max_bits < 0:
            raise ChannelConfigError(f"max_bits must be >= 0: {max_bits}")
        self.max_bits = max_bits
        self.analytic_injective = None

    def apply(self, data: bytes, n: int) -> bytes:
        bits = _bytes_to_bits(data)
        if len(bits) <= self.max_bits:
            return data
        return _bits_to_bytes(bits[:self.max_bits])


class SubstituteTS(TransmissionSystem):
    """Applies a bijective byte map; unspecified bytes map to themselves."""

    kind = "substitute"
    analytic_injective = True

    def __init__(self, mapping: dict[int, int]):
        table = list(range(256))
        for k, v in mapping.items():
            k, v = int(k), int(v)
            if not (0 <= k <= 255 and 0 <= v <= 255):
                raise ChannelConfigError(f"byte map entry out of range: {k}->{v}")
            table[k] = v
        if len(set(table)) != 256:
            raise ChannelConfigError("byte map is not a bijection")
        self.table = bytes(table)
        inverse = [0] * 256
        for i, v in enumerate(self.table):
            inverse[v] = i
        self.inverse_table = bytes(inverse)

    def apply(self, data: bytes, n: int) -> bytes:
        return data.translate(self.table)

    def invert(self, data: bytes) -> bytes:
        return data.translate(self.inverse_table)


@dataclass
class Channel:
    """Active channel: codec halves plus a TS and a monotone use counter."""

    ts: TransmissionSystem
    id: str = "channel"
    uses: int = 0


@dataclass(frozen=True)
class Transcript:
    """Replayable record of one transmit."""

    sent: str
    sent_bits: str
    recv_bits: str
    recv: Optional[str]
    error: Optional[str]
    ts_kind: str
    seed: int
    n: int
    timestamp: float

    def to_json(self) -> dict:
        # fixed JSONL field set
        return {
            "sent": self.sent,
            "sent_bits": self.sent_bits,
            "recv_bits": self.recv_bits,
            "recv": self.recv,
            "ts": self.ts_kind,
            "seed": self.seed,
            "n": self.n,
        }


@dataclass(frozen=True)
class TransmitOutcome:
    """Received proposition, or a decode error, plus the transcript."""

    proposition: Optional[Proposition]
    error: Optional[str]
    transcript: Transcript

    @property
    def ok(self) -> bool:
        return self.proposition is not None


def make_channel(config: dict) -> Channel:
    """Build a channel from {kind, p, seed, max_bits, map}; Perfect if no kind.

    The SEMCHAN_SEED environment variable overrides the config seed.
    """
    kind = config.get("kind", "perfect")
    seed = int(os.environ.get("SEMCHAN_SEED", config.get("seed", 0)))
    if kind == "perfect":
        ts: TransmissionSystem = PerfectTS()
    elif kind == "bitflip":
        ts = BitFlipTS(float(config.get("p", 0.0)), seed)
    elif kind == "truncate":
        ts = TruncateTS(int(config["max_bits"]))
    elif kind == "substitute":
        ts = SubstituteTS(config.get("map", {}))
    else:
        raise ChannelConfigError(f"unknown TS kind: {kind!r}")
    return Channel(ts=ts, id=str(config.get("id", kind)))


def load_channel(path: str) -> Channel:
    with open(path, encoding="utf-8") as fh:
        return make_channel(json.load(fh))


def transmit(c: Channel, p: Proposition) -> TransmitOutcome:
    """Send one proposition: encode, serialize, TS, parse, decode.

    Decode failure is a first-class outcome.  Each call advances the
    channel's use counter.
    """
    n = c.uses
    c.uses += 1
    sent_bytes = frame_to_wire(encode_frame(p))
    recv_bytes = c.ts.apply(sent_bytes, n)
    frames, diags = wire_to_frames(recv_bytes)
    recv_prop: Optional[Proposition] = None
    error: Optional[str] = None
    if len(frames) == 1 and not diags:
        try:
            recv_prop = decode_frame(frames[0])
        except ValueError as e:
            error = f"frame decode failed: {e}"
    elif frames:
        error = f"expected one clean frame, got {len(frames)} with {len(diags)} diagnostics"
    else:
        detail = "; ".join(f"{d.kind}@{d.offset}: {d.detail}" for d in diags)
        error = f"no frame recovered ({detail or 'empty stream'})"
    t = Transcript(
        sent=render_proposition(p),
        sent_bits=_bytes_to_bits(sent_bytes),
        recv_bits=_bytes_to_bits(recv_bytes),
        recv=None if recv_prop is None else render_proposition(recv_prop),
        error=error,
        ts_kind=c.ts.kind,
        seed=getattr(c.ts, "seed", 0),
        n=n,
        timestamp=time.time(),
    )
    return TransmitOutcome(recv_prop, error, t)


@dataclass(frozen=True)
class ActivenessReport:
    injective: bool
    collision: Optional[tuple[str, str]] = None
    analytic: bool = False


def verify_activeness(ts: TransmissionSystem,
                      corpus: Iterable[Proposition]) -> ActivenessReport:
    """Check the one-to-one input/output condition over a corpus.

    Analytically injective systems report true without sampling; others
    are sampled with a frozen use counter and any collision exhibited.
    """
    corpus = list(corpus)
    if not corpus:
        raise ValueError("activeness corpus must be nonempty")
    if ts.analytic_injective is True:
        return ActivenessReport(injective=True, analytic=True)
    seen: dict[bytes, Proposition] = {}
    for p in corpus:
        out = ts.apply(frame_to_wire(encode_frame(p)), 0)
        if out in seen and seen[out] != p:
            return ActivenessReport(
                injective=False,
                collision=(render_proposition(seen[out]), render_proposition(p)),
            )
        seen[out] = p
    return ActivenessReport(injective=True)


def append_transcript(path: str, t: Transcript) -> None:
    """Append one transcript as a JSON line."""
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(json.dumps(t.to_json()) + "\n")
