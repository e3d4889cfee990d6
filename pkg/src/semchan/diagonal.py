"""Diagonal constructions and the self-reference analyzer.

Enumerates all propositions over a predicate list (with NT and Tr
appended as ordinary enumerated predicates), builds the derived B/B'
rows, locates the diagonal fixed point where the NT row meets its own
index, and mechanizes the receiver's two-branch case analysis for
self-referential frames (NT, Tr, Err over all-objects or a nested
frame).  Paradox is a verdict, not an exception: the analyzer is total
on its precondition.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .codec import Frame, decode_frame, encode_frame
from .channel import Channel, transmit
from .model import ObjectRef, PredicateCode, Proposition, equivalent
from .transfer import (
    NON_TRANSFERABLE,
    PARADOXICAL,
    TRANSFERABLE,
    Verdict,
    eval_NT,
    eval_Tr,
)
from .wire import body_bytes

NT = PredicateCode("NT")
TR = PredicateCode("Tr")
ERR = PredicateCode("Err")


@dataclass(frozen=True)
class EnumerationTable:
    """Ordered predicate list with NT/Tr appended, over objects 1..max_n.

    k_nt and k_tr are the 1-based indices of NT and Tr in the list.
    """

    predicates: tuple[PredicateCode, ...]
    max_n: int
    k_nt: int
    k_tr: int

    def rows(self) -> Iterator[Proposition]:
        """Base cells: both polarities of every P_i(m)."""
        for pred in self.predicates:
            for pol in (True, False):
                for m in range(1, self.max_n + 1):
                    yield Proposition(pol, pred, ObjectRef.num(m))


def build_enumeration(preds: list[PredicateCode], max_n: int) -> EnumerationTable:
    """Arrange predicates in a table, appending NT and Tr if absent."""
    if not preds:
        raise ValueError("predicate list must be nonempty")
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    if len(set(preds)) != len(preds):
        raise ValueError("duplicate predicate in enumeration")
    full = list(preds)
    for builtin in (NT, TR):
        if builtin not in full:
            full.append(builtin)
    return EnumerationTable(
        predicates=tuple(full),
        max_n=max_n,
        k_nt=full.index(NT) + 1,
        k_tr=full.index(TR) + 1,
    )


def build_B(t: EnumerationTable, n: int) -> Frame:
    """Derived row B(n): the frame (1, NT, nested (1, P_n, n))."""
    if not 1 <= n <= len(t.predicates):
        raise IndexError(f"n out of range 1..{len(t.predicates)}: {n}")
    inner = encode_frame(Proposition(True, t.predicates[n - 1], ObjectRef.num(n)))
    return encode_frame(Proposition(True, NT, ObjectRef.nested(inner)))


def build_Bprime(t: EnumerationTable, n: int, nt_form: bool = False) -> Frame:
    """Derived row B'(n), canonically (0, Tr, nested (0, P_n, n)).

    nt_form=True yields the alternative (0, NT, nested (1, P_n, n))
    reading; the two are distinct byte strings and are never asserted
    equal.
    """
    if not 1 <= n <= len(t.predicates):
        raise IndexError(f"n out of range 1..{len(t.predicates)}: {n}")
    if nt_form:
        inner = encode_frame(Proposition(True, t.predicates[n - 1], ObjectRef.num(n)))
        return encode_frame(Proposition(False, NT, ObjectRef.nested(inner)))
    inner = encode_frame(Proposition(False, t.predicates[n - 1], ObjectRef.num(n)))
    return encode_frame(Proposition(False, TR, ObjectRef.nested(inner)))


@dataclass(frozen=True)
class FixedPointReport:
    k: int
    k_prime: int
    frame_star: Frame
    frame_star_prime: Frame
    identity_holds: bool
    identity_prime_holds: bool

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "k_prime": self.k_prime,
            "frame_star_hex": body_bytes(self.frame_star).hex(),
            "frame_star_prime_hex": body_bytes(self.frame_star_prime).hex(),
            "identity_holds": self.identity_holds,
            "identity_prime_holds": self.identity_prime_holds,
        }


def find_fixed_point(t: EnumerationTable) -> FixedPointReport:
    """Self-apply the derived rows at their own indices.

    Builds both sides of the diagonal identity independently -- the B
    row evaluated at n = k, and NT applied to the frame of the k-th
    predicate at object k -- and exhibits their bit-level equality.
    """
    k, k_prime = t.k_nt, t.k_tr
    npred = len(t.predicates)
    if not (1 <= k <= npred and 1 <= k_prime <= npred):
        raise ValueError("NT/Tr missing from enumeration")
    left = build_B(t, k)
    inner = encode_frame(Proposition(True, t.predicates[k - 1], ObjectRef.num(k)))
    right = encode_frame(Proposition(True, NT, ObjectRef.nested(inner)))

    left_p = build_Bprime(t, k_prime)
    inner_p = encode_frame(
        Proposition(False, t.predicates[k_prime - 1], ObjectRef.num(k_prime)))
    right_p = encode_frame(Proposition(False, TR, ObjectRef.nested(inner_p)))

    return FixedPointReport(
        k=k,
        k_prime=k_prime,
        frame_star=left,
        frame_star_prime=left_p,
        identity_holds=body_bytes(left) == body_bytes(right),
        identity_prime_holds=body_bytes(left_p) == body_bytes(right_p),
    )


def build_NT_all() -> Frame:
    """The frame asserting every code is non-transferable."""
    return encode_frame(Proposition(True, NT, ObjectRef.all_objects()))


def build_Err_all() -> Frame:
    """The frame asserting the channel erred on every string."""
    return encode_frame(Proposition(True, ERR, ObjectRef.all_objects()))


@dataclass(frozen=True)
class TraceStep:
    assumption: str
    consequence: str
    contradiction: Optional[bool]

    def to_json(self) -> dict:
        return {
            "assumption": self.assumption,
            "consequence": self.consequence,
            "contradiction": self.contradiction,
        }


@dataclass(frozen=True)
class ParadoxReport:
    frame: Frame
    structural_fidelity: bool
    asserted_self_instance: bool
    observed_self_instance: Optional[bool]
    case_trace: tuple[TraceStep, ...]
    verdict: Verdict

    def to_json(self) -> dict:
        return {
            "frame_hex": body_bytes(self.frame).hex(),
            "structural_fidelity": self.structural_fidelity,
            "asserted_self_instance": self.asserted_self_instance,
            "observed_self_instance": self.observed_self_instance,
            "case_trace": [s.to_json() for s in self.case_trace],
            "verdict": self.verdict.to_json(),
        }


def analyze_self_reference(c: Channel, f: Frame) -> ParadoxReport:
    """Receiver-side two-branch case analysis of a self-referential frame.

    Branch (i) assumes the received content is true and derives the
    claim's own instance; branch (ii) assumes the frame was not
    transferred.  Each branch is compared against the observed round
    trip; if both contradict, the verdict is Paradoxical.
    """
    p = decode_frame(f)
    if not p.predicate.is_builtin:
        raise ValueError(f"not a builtin self-referential frame: {p.predicate}")
    if p.object.kind == "number":
        raise ValueError("self-reference analysis needs object '*' or a nested frame")

    outcome = transmit(c, p)
    fidelity = outcome.ok and equivalent(outcome.proposition, p)
    name = p.predicate.value
    asserted = p.polarity
    self_desc = "its own code" if p.object.kind == "all" else "the nested frame"

    observed: Optional[bool] = None
    trace: list[TraceStep] = []

    # branch (i): the received content is true
    if not fidelity:
        trace.append(TraceStep(
            "(i) received content is true",
            "no equivalent content was received; branch unreachable",
            True,
        ))
    else:
        target = f if p.object.kind == "all" else f.object_frame
        if name == "NT":
            observed = eval_NT(c, target)
        elif name == "Tr":
            observed = eval_Tr(c, target)
        else:  # Err: byte-level error on the target's own transmission
            if p.object.kind == "all":
                observed = outcome.transcript.sent_bits != outcome.transcript.recv_bits
            else:
                sub = transmit(c, decode_frame(f.object_frame))
                observed = sub.transcript.sent_bits != sub.transcript.recv_bits
        claim = f"{name} holds of {self_desc}" if asserted \
            else f"{name} fails of {self_desc}"
        trace.append(TraceStep(
            "(i) received content is true",
            f"content implies {claim}: asserted {name}={asserted}, "
            f"channel execution gives {name}={observed}",
            asserted != observed,
        ))
    branch_i_ok = trace[-1].contradiction is False

    # branch (ii): the frame was not transferred
    if fidelity:
        trace.append(TraceStep(
            "(ii) frame was not transferred",
            "round trip reproduced the frame (structural fidelity holds)",
            True,
        ))
    else:
        trace.append(TraceStep(
            "(ii) frame was not transferred",
            "round trip failed to reproduce the frame; assumption consistent",
            False,
        ))
    branch_ii_ok = trace[-1].contradiction is False

    if not branch_i_ok and not branch_ii_ok:
        kind = PARADOXICAL
    elif branch_i_ok:
        kind = TRANSFERABLE
    else:
        kind = NON_TRANSFERABLE
    verdict = Verdict(
        kind,
        outcome.transcript,
        tuple(f"{s.assumption} -> {s.consequence}" for s in trace),
    )
    return ParadoxReport(
        frame=f,
        structural_fidelity=fidelity,
        asserted_self_instance=asserted,
        observed_self_instance=observed,
        case_trace=tuple(trace),
        verdict=verdict,
    )
