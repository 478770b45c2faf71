#!/usr/bin/env python3
"""Reference vectors for the keyed-derivation and symmetric-cipher layer.

Independent implementation used to freeze known-answer tests:
  F(key, label, msg)    = HMAC-SHA256(key, label || 0x00 || msg), truncated to |key|
  Fp(key, label, msg)   = int(block0 || block1) mod r, retry on zero, where
                          block_i = HMAC-SHA256(key, label || 0x00 || msg || u8(counter+i))
  H(msg)                = SHA-256(msg)
  SymEnc(key, iv, pt)   = iv || AES-CTR(key, iv, "MSE1" || pt)

Writes tests/crypto_kat.inc.
"""

import hashlib
import hmac
from cryptography.hazmat.primitives.ciphers import Cipher, algorithms, modes

R_381 = 0x73EDA753299D7D483339D80809A1D80553BDA402FFFE5BFEFFFFFFFF00000001
R_383 = 0x10000001F80000174180007A17E000F04F00FFFF03FFFFFC1FC00000000000001

MAGIC = b"MSE1"


def prf_f(key: bytes, label: bytes, msg: bytes) -> bytes:
    assert b"\x00" not in label
    return hmac.new(key, label + b"\x00" + msg, hashlib.sha256).digest()[: len(key)]


def prf_fp(key: bytes, label: bytes, msg: bytes, r: int) -> int:
    enc = label + b"\x00" + msg
    ctr = 0
    while True:
        b0 = hmac.new(key, enc + bytes([ctr]), hashlib.sha256).digest()
        b1 = hmac.new(key, enc + bytes([ctr + 1]), hashlib.sha256).digest()
        v = int.from_bytes(b0 + b1, "big") % r
        if v != 0:
            return v
        ctr += 2


def sym_enc(key: bytes, iv: bytes, pt: bytes) -> bytes:
    enc = Cipher(algorithms.AES(key), modes.CTR(iv)).encryptor()
    return iv + enc.update(MAGIC + pt) + enc.finalize()


def h(b: bytes) -> str:
    return b.hex()


def main() -> None:
    keys = {
        128: bytes(range(0x10)),
        256: bytes(range(0x20)),
    }
    key2 = {
        128: bytes(range(0x80, 0x90)),
        256: bytes(range(0x80, 0xA0)),
    }
    msgs = [
        (b"", "empty"),
        (b"keyword-07", "short"),
        (bytes(range(64)), "block"),
    ]
    labels = [b"stag", b"xtrap", b"z", b"x", b"l", b"h", b"v", b"theta", b"wtag"]

    out = []
    out.append("// Generated by scripts/derive_crypto_vectors.py (independent Python")
    out.append("// implementation using hmac/hashlib/cryptography). Do not edit.")
    out.append("#pragma once")
    out.append("")
    out.append("struct PrfFVec { int lambda_; const char* key; const char* label; const char* msg; const char* out; };")
    out.append("struct PrfFpVec { int lambda_; const char* curve; const char* key; const char* label; const char* msg; const char* out_hex; };")
    out.append("struct HashVec { const char* msg; const char* out; };")
    out.append("struct SymVec { int lambda_; const char* key; const char* iv; const char* pt; const char* ct; };")
    out.append("")

    out.append("inline constexpr PrfFVec kPrfFVecs[] = {")
    for lam, key in keys.items():
        for label in labels[:4] if lam == 128 else labels:
            for msg, _name in msgs:
                y = prf_f(key, label, msg)
                out.append(
                    f'    {{{lam}, "{key.hex()}", "{label.decode()}", "{msg.hex()}", "{y.hex()}"}},'
                )
        msg = b"keyword-07"
        y = prf_f(key2[lam], b"stag", msg)
        out.append(f'    {{{lam}, "{key2[lam].hex()}", "stag", "{msg.hex()}", "{y.hex()}"}},')
    out.append("};")
    out.append("")

    out.append("inline constexpr PrfFpVec kPrfFpVecs[] = {")
    for lam, key in keys.items():
        r = R_381 if lam == 128 else R_383
        curve = "bls12-381" if lam == 128 else "bls12-383"
        for label in (b"wtag", b"x", b"z", b"xtrap"):
            for msg, _name in msgs:
                v = prf_fp(key, label, msg, r)
                out.append(
                    f'    {{{lam}, "{curve}", "{key.hex()}", "{label.decode()}", "{msg.hex()}", "{v:x}"}},'
                )
    out.append("};")
    out.append("")

    hash_msgs = [b"", b"abc", bytes(range(0x20)), b"stag-bytes" + (7).to_bytes(8, "big")]
    out.append("inline constexpr HashVec kHashVecs[] = {")
    for m in hash_msgs:
        out.append(f'    {{"{m.hex()}", "{hashlib.sha256(m).hexdigest()}"}},')
    out.append("};")
    out.append("")

    sym_cases = [
        (128, keys[128], bytes(range(0x40, 0x50)), b"ind_0042"),
        (128, keys[128], bytes(range(0x50, 0x60)), b""),
        (256, keys[256], bytes(range(0x40, 0x50)), b"ind_0042"),
        (256, keys[256], bytes(range(0x60, 0x70)), bytes(range(0xB0, 0xE0))),
    ]
    out.append("inline constexpr SymVec kSymVecs[] = {")
    for lam, key, iv, pt in sym_cases:
        ct = sym_enc(key, iv, pt)
        out.append(f'    {{{lam}, "{key.hex()}", "{iv.hex()}", "{pt.hex()}", "{ct.hex()}"}},')
    out.append("};")
    out.append("")

    with open("tests/crypto_kat.inc", "w") as f:
        f.write("\n".join(out))
    print(f"wrote tests/crypto_kat.inc ({len(out)} lines)")


if __name__ == "__main__":
    main()
