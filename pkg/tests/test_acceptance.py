"""Acceptance suite: one test per criterion, one PASS line each.

All checks are exact (golden vectors, exhaustive enumerations, replay
equality); there are no numeric tolerances to tune.
"""

import random
import subprocess
import sys

from semchan import (
    PredicateCode,
    analyze_self_reference,
    build_Err_all,
    build_NT_all,
    build_enumeration,
    check_transferable,
    crc16,
    decode_frame,
    decoder_from_truth,
    encode_frame,
    eval_NT,
    find_fixed_point,
    frame_to_wire,
    ground_corpus,
    holds,
    make_channel,
    parse_proposition,
    payload_bits,
    truth_from_channel,
    wire_to_frames,
)
from semchan.channel import PerfectTS
from semchan.transfer import NON_TRANSFERABLE, PARADOXICAL, TRANSFERABLE

from genprops import corpus
from test_cli import free_port, send_with_retry
from test_tarski import small_worlds, wire_code
from test_wire import crc16_oracle


def report(n, text):
    print(f"PASS criterion {n}: {text}")


def test_criterion_1_fig4_golden_vector():
    f = encode_frame(parse_proposition("ON(112)"))
    bits = payload_bits(f)
    assert bits == "1" + "0100111101001110" + "1110000"
    assert len(bits) == 24
    assert f.triple() == (1, "4F4E", 112)
    report(1, "payload bits and triple of ON(112) match the golden vector")


def test_criterion_2_codec_roundtrip_and_injectivity():
    props = corpus(seed=1001, count=10_000, max_depth=3)
    for p in props:
        assert decode_frame(encode_frame(p)) == p
    distinct = list(dict.fromkeys(corpus(seed=1002, count=2_500)))[:1_000]
    assert len(distinct) == 1_000
    wires = {frame_to_wire(encode_frame(p)) for p in distinct}
    assert len(wires) == 1_000
    report(2, "decode∘encode identity on 10^4 propositions; "
              "injectivity on 10^3 wire serializations")


def test_criterion_3_definition_3_soundness():
    perfect = make_channel({"kind": "perfect"})
    for p in corpus(seed=1003, count=10_000):
        assert check_transferable(perfect, p).kind == TRANSFERABLE
    flip = make_channel({"kind": "bitflip", "p": 1.0, "seed": 7})
    fig4 = parse_proposition("ON(112)")
    assert check_transferable(flip, fig4).kind == NON_TRANSFERABLE
    report(3, "perfect channel transfers the full corpus; "
              "full inversion is NonTransferable on the Fig-4 frame")


def test_criterion_4_liar_proof_mechanized():
    c = make_channel({"kind": "perfect"})
    rep = analyze_self_reference(c, build_NT_all())
    assert rep.verdict.kind == PARADOXICAL
    assert len(rep.case_trace) == 2
    assumptions = [s.assumption for s in rep.case_trace]
    assert any("(i)" in a for a in assumptions)
    assert any("(ii)" in a for a in assumptions)
    assert rep.case_trace[0].contradiction is True
    report(4, "NT(*) over a perfect channel is Paradoxical with both "
              "receiver branches traced and branch (i) contradicted")


def test_criterion_5_diagonal_fixed_point():
    table = build_enumeration(
        [PredicateCode("P"), PredicateCode("NT"), PredicateCode("Tr")], 3)
    fp = find_fixed_point(table)
    assert fp.k == 2  # index of NT in {P, NT, Tr}
    assert fp.identity_holds  # both sides byte-identical
    c = make_channel({"kind": "perfect"})
    rep = analyze_self_reference(c, fp.frame_star)
    assert rep.structural_fidelity is True
    assert eval_NT(make_channel({"kind": "perfect"}),
                   fp.frame_star.object_frame) is False
    report(5, "P_k(k) and NT(F_{P_k(k)}) serialize byte-identically; "
              "analyzer shows E=true with self-NT evaluating false")


def test_criterion_6_error_situation():
    c = make_channel({"kind": "perfect"})
    assert analyze_self_reference(c, build_Err_all()).verdict.kind == PARADOXICAL
    dropper = make_channel({"kind": "truncate", "max_bits": 0})
    assert (analyze_self_reference(dropper, build_NT_all()).verdict.kind
            == NON_TRANSFERABLE)
    report(6, "Err(*) is Paradoxical over a perfect channel; a dropping "
              "channel yields NonTransferable, not Paradoxical")


def test_criterion_7_truth_bridge_both_directions():
    checked = 0
    for w in small_worlds(max_preds=3, max_objs=4, seed=42):
        c = make_channel({"kind": "perfect"})
        T = truth_from_channel(c, w)
        d = decoder_from_truth(T, PerfectTS())
        for p in ground_corpus(w):
            code = wire_code(p)
            expected = holds(w, p)
            assert T(code) == expected         # direction (b), Tarski row
            assert d(code) == expected         # direction (a), composed decoder
            checked += 1
    assert checked > 1000
    report(7, f"T(Encode(P)) = holds(w,P) and the composed decoder agree "
              f"on {checked} ground rows across all small worlds")


def test_criterion_8_wire_robustness():
    assert crc16(b"123456789") == 0x29B1 == crc16_oracle(b"123456789")
    f = encode_frame(parse_proposition("ON(112)"))
    wire = bytearray(frame_to_wire(f))
    for byte_idx in range(2, len(wire) - 2):
        for bit in range(8):
            corrupted = bytearray(wire)
            corrupted[byte_idx] ^= 0x80 >> bit
            frames, diags = wire_to_frames(bytes(corrupted))
            assert frames == [] and diags
    rng = random.Random(8)
    for k in (1, 2, 5):
        sent = [encode_frame(p) for p in corpus(seed=800 + k, count=k)]
        stream = b""
        for fr in sent:
            junk = bytes(rng.choice([0, 0x42, 0x7F]) for _ in range(rng.randrange(1, 6)))
            stream += junk + frame_to_wire(fr)
        frames, _ = wire_to_frames(stream)
        assert frames == sent
    report(8, "CRC catches every single-bit header/body flip; resync "
              "recovers k frames for k in {1,2,5}; check value 0x29B1")


def test_criterion_9_determinism():
    props = corpus(seed=900, count=50)
    configs = [
        {"kind": "perfect"},
        {"kind": "bitflip", "p": 0.5, "seed": 4242},
        {"kind": "truncate", "max_bits": 33},
    ]
    for cfg in configs:
        runs = []
        for _ in range(2):
            c = make_channel(cfg)
            run = []
            for p in props:
                v = check_transferable(c, p)
                run.append((v.kind, v.evidence.to_json()))
            runs.append(run)
        assert runs[0] == runs[1]
    report(9, "identical seeds/counters reproduce identical transcripts "
              "and verdicts across two full runs")


def test_criterion_10_socket_demo():
    port = free_port()
    proc = subprocess.Popen(
        [sys.executable, "-m", "semchan", "serve", "--port", str(port),
         "--once", "--analyze"],
        stdout=subprocess.PIPE, stderr=subprocess.PIPE, text=True)
    try:
        rc = send_with_retry(["send", "ON(112)", "NT(*)", "--port", str(port)])
        assert rc == 0
        out, _ = proc.communicate(timeout=10)
    finally:
        proc.kill()
    assert "ON(112)" in out                      # criterion 1's proposition
    assert "verdict: Paradoxical" in out         # criterion 4's analysis
    report(10, "send→serve loopback reproduces the Fig-4 proposition and "
               "the liar analysis over a real byte stream")
