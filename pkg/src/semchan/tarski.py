"""The channel <-> truth-predicate bridge over finite worlds.

One direction builds a code-indexed truth predicate from a transferable
channel: push the code through the transmission system, decode, and
evaluate the received proposition against the world.  The other builds a
decoder from a truth predicate by inverting an injective transmission
system.  verify_bridge checks the T-scheme row by row over a ground
corpus, carrying the diagonal frame as a flagged row that is reported
but never counted.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .codec import decode_frame, encode_frame
from .channel import (
    Channel,
    PerfectTS,
    SubstituteTS,
    TransmissionSystem,
    verify_activeness,
)
from .diagonal import build_enumeration, find_fixed_point
from .model import Proposition, World, holds, render_proposition
from .wire import frame_to_wire, wire_to_frames

log = logging.getLogger(__name__)


class ChannelNotActiveError(ValueError):
    """Raised when a channel fails the one-to-one condition."""


class NotInvertibleError(ValueError):
    """Raised when a transmission system admits no inverse."""


def ground_corpus(w: World) -> list[Proposition]:
    """Both polarities of every predicate/object pair of the world."""
    from .model import ObjectRef

    corpus = []
    for pred in w.predicates():
        for m in sorted(w.domain):
            for pol in (True, False):
                corpus.append(Proposition(pol, pred, ObjectRef.num(m)))
    return corpus


class TruthPredicate:
    """Total, deterministic map from frame codes (wire bytes) to booleans.

    Backed by a memo table filled on demand; codes that do not decode to
    a world-evaluable proposition map to False with a logged note.
    """

    def __init__(self, evaluate: Callable[[bytes], Optional[bool]]):
        self._evaluate = evaluate
        self._table: dict[bytes, bool] = {}
        self.notes: list[str] = []

    def __call__(self, code: bytes) -> bool:
        if code not in self._table:
            value = self._evaluate(code)
            if value is None:
                self.notes.append(
                    f"code {code.hex()} undecodable or not world-evaluable; "
                    "mapped to False")
                log.info(self.notes[-1])
                value = False
            self._table[code] = value
        return self._table[code]


def truth_from_channel(c: Channel, w: World) -> TruthPredicate:
    """T(n) := evaluate the proposition decoded from TS(n) against w."""
    probe = ground_corpus(w)
    if probe:
        report = verify_activeness(c.ts, probe)
        if not report.injective:
            raise ChannelNotActiveError(
                f"transmission system not one-to-one: collision {report.collision}")

    def evaluate(code: bytes) -> Optional[bool]:
        n = c.uses
        c.uses += 1
        received = c.ts.apply(code, n)
        frames, diags = wire_to_frames(received)
        if len(frames) != 1 or diags:
            return None
        try:
            p = decode_frame(frames[0])
            return holds(w, p)
        except ValueError:
            return None

    return TruthPredicate(evaluate)


def decoder_from_truth(truth: TruthPredicate,
                       ts: TransmissionSystem) -> Callable[[bytes], bool]:
    """d(n') = truth(TS^{-1}(n')); requires an invertible system."""
    if isinstance(ts, PerfectTS):
        invert = lambda data: data
    elif isinstance(ts, SubstituteTS):
        invert = ts.invert
    else:
        raise NotInvertibleError(
            f"transmission system {ts.kind!r} is not invertible")

    def decode(code: bytes) -> bool:
        return truth(invert(code))

    return decode


@dataclass(frozen=True)
class BridgeRow:
    proposition: str
    code_hex: str
    truth: bool
    world_holds: Optional[bool]
    agree: Optional[bool]
    diagonal: bool = False


@dataclass(frozen=True)
class BridgeReport:
    corpus_size: int
    rows: tuple[BridgeRow, ...]
    agree: bool
    failures: tuple[str, ...]
    notes: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "corpus_size": self.corpus_size,
            "agree": self.agree,
            "failures": list(self.failures),
            "notes": list(self.notes),
            "rows": [
                {
                    "proposition": r.proposition,
                    "code_hex": r.code_hex,
                    "T": r.truth,
                    "holds": r.world_holds,
                    "agree": r.agree,
                    "diagonal": r.diagonal,
                }
                for r in self.rows
            ],
        }

    def to_table(self) -> str:
        header = f"{'proposition':<28} {'code-hex':<40} {'T':<5} {'holds':<5} agree"
        lines = [header, "-" * len(header)]
        for r in self.rows:
            mark = " [diagonal]" if r.diagonal else ""
            lines.append(
                f"{r.proposition:<28} {r.code_hex:<40} {str(r.truth):<5} "
                f"{str(r.world_holds):<5} {r.agree}{mark}")
        lines.append(f"agreement: {self.agree} over {self.corpus_size} ground rows")
        return "\n".join(lines)


def verify_bridge(c: Channel, w: World,
                  corpus: Iterable[Proposition]) -> BridgeReport:
    """Check P <-> T(Encode(P)) row by row over a ground corpus.

    The diagonal fixed-point frame is appended as a flagged row that is
    excluded from the agreement flag; its presence is mandatory.
    """
    corpus = list(corpus)
    truth = truth_from_channel(c, w)
    rows: list[BridgeRow] = []
    failures: list[str] = []
    for p in corpus:
        code = frame_to_wire(encode_frame(p))
        t_val = truth(code)
        h_val = holds(w, p)
        ok = t_val == h_val
        if not ok:
            failures.append(render_proposition(p))
        rows.append(BridgeRow(render_proposition(p), code.hex(), t_val, h_val, ok))

    preds = w.predicates() or sorted(
        {p.predicate for p in corpus if not p.predicate.is_builtin}, key=str)
    if preds:
        table = build_enumeration(preds, max(len(preds), 1))
        star = find_fixed_point(table).frame_star
        star_code = frame_to_wire(star)
        rows.append(BridgeRow(
            render_proposition(decode_frame(star)), star_code.hex(),
            truth(star_code), None, None, diagonal=True))

    return BridgeReport(
        corpus_size=len(corpus),
        rows=tuple(rows),
        agree=all(r.agree for r in rows if not r.diagonal),
        failures=tuple(failures),
        notes=tuple(truth.notes),
    )
