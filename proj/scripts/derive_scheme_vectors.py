#!/usr/bin/env python3
"""Freeze keyword/document derivation-chain vectors for the scheme layer.

Independent of the C++ tree: PRFs come from hmac/hashlib, group arithmetic
from derive_curves.py (plain-int implementation). Writes tests/scheme_kat.inc
with hex values the library must reproduce for fixed owner keys.
"""
import hashlib
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import derive_curves as dc
from derive_crypto_vectors import prf_f, prf_fp

Z381 = -0xD201000000010000
LIT_P = int(
    "1a0111ea397fe69a4b1ba7b6434bacd764774b84f38512bf6730d2a0f6b0"
    "f6241eabfffeb153ffffb9feffffffffaaab", 16)
LIT_R = int("73eda753299d7d483339d80809a1d80553bda402fffe5bfeffffffff00000001", 16)


def be(v: int, n: int) -> bytes:
    return int(v).to_bytes(n, "big")


def sha(b: bytes) -> bytes:
    return hashlib.sha256(b).digest()


def xor(a: bytes, b: bytes) -> bytes:
    assert len(a) == len(b)
    return bytes(x ^ y for x, y in zip(a, b))


def xor_attrs(attrs) -> bytes:
    block = bytearray(32)
    for a in attrs:
        for i, c in enumerate(a):
            block[i] ^= c
    return bytes(block)


def g1c(P, p: int) -> bytes:
    if P is None:
        return bytes([1]) + bytes(48)
    x, y = int(P[0].v), int(P[1].v)
    flag = 2 if 2 * y > p else 0
    return bytes([flag]) + be(x, 48)


def main() -> None:
    curve = dc.build_curve("bls12_381", Z381, expect_p=LIT_P, expect_r=LIT_R)
    p, r, G1 = curve["p"], curve["r"], curve["G1"]
    assert r == LIT_R

    k1 = bytes(range(0x10, 0x20))
    k2 = bytes(range(0x20, 0x30))
    k_t = bytes(range(0x30, 0x40))
    k_x = bytes(range(0x40, 0x50))
    k_z = bytes(range(0x50, 0x60))

    w = b"alpha"
    attrs = [b"attr:a", b"attr:b"]
    docs = [b"doc-0001", b"doc-0002"]
    pad = 2
    kw_index = 0

    out = {}
    l = prf_f(k1, b"l", xor_attrs(attrs))
    h_key = prf_f(k1, b"h", l)
    v = prf_f(k1, b"v", h_key)
    stag = prf_f(k_t, b"stag", w)
    theta = xor(stag, prf_f(h_key, b"theta", w))
    wtag_exp = prf_fp(v, b"wtag", w, r)
    z = prf_fp(k_z, b"z", w, r)
    xtrap = prf_fp(k_x, b"xtrap", w, r)
    wtag_bytes = g1c(dc.ec_mul(G1, wtag_exp), p)
    ctag = sha(wtag_bytes)

    out["L"] = l.hex()
    out["H_KEY"] = h_key.hex()
    out["V_KEY"] = v.hex()
    out["STAG"] = stag.hex()
    out["THETA"] = theta.hex()
    out["WTAG_EXP"] = be(wtag_exp, 32).hex()
    out["Z_EXP"] = be(z, 32).hex()
    out["XTRAP_EXP"] = be(xtrap, 32).hex()
    out["WTAG_POINT"] = wtag_bytes.hex()
    out["CTAG"] = ctag.hex()

    z_inv = pow(z, -1, r)
    slots = list(docs)
    for s in range(pad):
        slots.append(bytes([0xFF]) + be(kw_index, 4) + be(s, 4))
    labels, ys, xtags = [], [], []
    for c, ind in enumerate(slots, start=1):
        x = prf_fp(k2, b"x", ind, r)
        labels.append(sha(stag + be(c, 8)).hex())
        ys.append(be(x * z_inv % r, 32).hex())
        xtags.append(g1c(dc.ec_mul(G1, xtrap * x % r), p).hex())
    out["COUNT"] = str(len(slots) + 1)
    out["NEXT_FREE"] = str(len(docs) + 1)

    sk_o = int.from_bytes(b"\x60" * 32, "big") % r
    sk_c = int.from_bytes(b"\x61" * 32, "big") % r
    client_pk = dc.ec_mul(G1, sk_c)
    gamma = wtag_exp  # single authorized keyword
    sigma = dc.ec_mul(client_pk, gamma * sk_o % r)
    out["SK_O"] = be(sk_o, 32).hex()
    out["SK_C"] = be(sk_c, 32).hex()
    out["CLIENT_PK"] = g1c(client_pk, p).hex()
    out["SIGMA"] = g1c(sigma, p).hex()
    out["CTOKEN_1"] = sha(bytes.fromhex(xtags[0])).hex()
    out["CTOKEN_2"] = sha(bytes.fromhex(xtags[1])).hex()

    # baseline chain: per-slot masks depend on the counter
    b_ks = bytes(range(0x70, 0x80))
    b_ki = bytes(range(0x80, 0x90))
    b_kt = bytes(range(0x90, 0xA0))
    b_kz = bytes(range(0xA0, 0xB0))
    b_kx = bytes(range(0xB0, 0xC0))
    b_stag = prf_f(b_kt, b"stag", w)
    b_xtrap = prf_fp(b_kx, b"xtrap", w, r)
    out["B_KE"] = prf_f(b_ks, b"ke", w).hex()
    out["B_STAG"] = b_stag.hex()
    b_labels, b_ys, b_xtags = [], [], []
    for c, ind in enumerate(docs, start=1):
        xind = prf_fp(b_ki, b"x", ind, r)
        zc = prf_fp(b_kz, b"z", w + be(c, 8), r)
        b_labels.append(sha(b_stag + be(c, 8)).hex())
        b_ys.append(be(xind * pow(zc, -1, r) % r, 32).hex())
        b_xtags.append(g1c(dc.ec_mul(G1, b_xtrap * xind % r), p).hex())

    dest = Path(__file__).parent.parent / "tests" / "scheme_kat.inc"
    with open(dest, "w") as f:
        f.write("// Generated by scripts/derive_scheme_vectors.py (independent Python\n")
        f.write("// implementation layered on derive_curves.py group arithmetic).\n")
        f.write("// Fixed-key derivation chain for one keyword, two documents, two\n")
        f.write("// padding slots, plus the baseline's counter-dependent variant.\n")
        f.write("namespace scheme_kat {\n\n")
        for k, vhex in out.items():
            f.write(f'inline constexpr const char* {k} = "{vhex}";\n')
        for name, arr in [("LABEL", labels), ("Y", ys), ("XTAG", xtags),
                          ("B_LABEL", b_labels), ("B_Y", b_ys), ("B_XTAG", b_xtags)]:
            f.write(f"\ninline constexpr const char* {name}[] = {{\n")
            for vhex in arr:
                f.write(f'    "{vhex}",\n')
            f.write("};\n")
        f.write("\n}  // namespace scheme_kat\n")
    print(f"wrote {dest}")


if __name__ == "__main__":
    main()
