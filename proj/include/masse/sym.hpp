#pragma once

#include <openssl/evp.h>

#include <array>
#include <optional>

#include "masse/common.hpp"
#include "masse/rand.hpp"

namespace masse {

// Prefix encrypted alongside the payload so a wrong-key decryption is
// detectable by the caller instead of yielding silent garbage.
inline constexpr std::array<std::uint8_t, 4> SYM_MAGIC{0x4d, 0x53, 0x45, 0x31};

inline constexpr std::size_t SYM_IV_BYTES = 16;

namespace detail {

inline const EVP_CIPHER* ctr_cipher(std::size_t key_len) {
    if (key_len == 16)
        return EVP_aes_128_ctr();
    if (key_len == 32)
        return EVP_aes_256_ctr();
    throw CryptoError("cipher key must be 16 or 32 bytes");
}

inline Bytes ctr_xform(const Bytes& key, const std::uint8_t* iv, const std::uint8_t* in,
                       std::size_t len) {
    const EVP_CIPHER* cipher = ctr_cipher(key.size());
    EVP_CIPHER_CTX* ctx = EVP_CIPHER_CTX_new();
    if (!ctx)
        throw CryptoError("cipher context allocation failed");
    Bytes out(len);
    int n1 = 0, n2 = 0;
    int ok = EVP_EncryptInit_ex(ctx, cipher, nullptr, key.data(), iv) &&
             (len == 0 || EVP_EncryptUpdate(ctx, out.data(), &n1, in, static_cast<int>(len))) &&
             EVP_EncryptFinal_ex(ctx, out.data() + n1, &n2);
    EVP_CIPHER_CTX_free(ctx);
    if (!ok || static_cast<std::size_t>(n1) + static_cast<std::size_t>(n2) != len)
        throw CryptoError("AES-CTR failed");
    return out;
}

}  // namespace detail

// Deterministic core used by sym_encrypt and by known-answer tests.
inline Bytes sym_encrypt_with_iv(const Bytes& key, const Bytes& iv, const Bytes& plaintext) {
    if (iv.size() != SYM_IV_BYTES)
        throw CryptoError("bad IV length");
    Bytes framed;
    framed.reserve(SYM_MAGIC.size() + plaintext.size());
    framed.insert(framed.end(), SYM_MAGIC.begin(), SYM_MAGIC.end());
    framed.insert(framed.end(), plaintext.begin(), plaintext.end());
    Bytes out = iv;
    Bytes body = detail::ctr_xform(key, iv.data(), framed.data(), framed.size());
    out.insert(out.end(), body.begin(), body.end());
    return out;
}

inline Bytes sym_encrypt(const Bytes& key, const Bytes& plaintext) {
    return sym_encrypt_with_iv(key, random_bytes(SYM_IV_BYTES), plaintext);
}

// nullopt when the ciphertext is too short or the framing check fails
// (wrong key or corrupted payload).
inline std::optional<Bytes> sym_decrypt(const Bytes& key, const Bytes& ciphertext) {
    if (ciphertext.size() < SYM_IV_BYTES + SYM_MAGIC.size())
        return std::nullopt;
    Bytes framed = detail::ctr_xform(key, ciphertext.data(), ciphertext.data() + SYM_IV_BYTES,
                                     ciphertext.size() - SYM_IV_BYTES);
    for (std::size_t i = 0; i < SYM_MAGIC.size(); ++i)
        if (framed[i] != SYM_MAGIC[i])
            return std::nullopt;
    return Bytes(framed.begin() + SYM_MAGIC.size(), framed.end());
}

}  // namespace masse
