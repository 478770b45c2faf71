#pragma once

#include <openssl/core_names.h>
#include <openssl/evp.h>
#include <openssl/params.h>

#include <string_view>

#include "masse/common.hpp"
#include "masse/scalar.hpp"

namespace masse {

inline Bytes sha256(const std::uint8_t* data, std::size_t len) {
    Bytes out(32);
    unsigned int n = 0;
    if (EVP_Digest(data, len, out.data(), &n, EVP_sha256(), nullptr) != 1 || n != 32)
        throw CryptoError("SHA-256 failed");
    return out;
}

inline Bytes sha256(const Bytes& msg) { return sha256(msg.data(), msg.size()); }

// Hash H: fixed 256-bit output regardless of the security level.
inline Bytes hash_h(const Bytes& msg) { return sha256(msg); }

inline Bytes hmac_sha256(const Bytes& key, const Bytes& msg) {
    struct MacHolder {
        EVP_MAC* mac;
        MacHolder() : mac(EVP_MAC_fetch(nullptr, "HMAC", nullptr)) {
            if (!mac)
                throw CryptoError("HMAC unavailable");
        }
        ~MacHolder() { EVP_MAC_free(mac); }
    };
    static const MacHolder holder;

    EVP_MAC_CTX* ctx = EVP_MAC_CTX_new(holder.mac);
    if (!ctx)
        throw CryptoError("HMAC context allocation failed");
    char digest[] = "SHA256";
    OSSL_PARAM params[] = {
        OSSL_PARAM_construct_utf8_string(OSSL_MAC_PARAM_DIGEST, digest, 0),
        OSSL_PARAM_construct_end(),
    };
    Bytes out(32);
    std::size_t outlen = 0;
    int ok = EVP_MAC_init(ctx, key.data(), key.size(), params) &&
             EVP_MAC_update(ctx, msg.data(), msg.size()) &&
             EVP_MAC_final(ctx, out.data(), &outlen, out.size());
    EVP_MAC_CTX_free(ctx);
    if (!ok || outlen != 32)
        throw CryptoError("HMAC-SHA256 failed");
    return out;
}

namespace detail {

inline void check_prf_key(const Bytes& key) {
    if (key.size() != 16 && key.size() != 32)
        throw CryptoError("PRF key must be 16 or 32 bytes");
}

inline Bytes domain_encode(std::string_view label, const Bytes& msg) {
    Bytes enc;
    enc.reserve(label.size() + 1 + msg.size());
    for (char ch : label) {
        if (ch == '\0')
            throw CryptoError("PRF label must not contain NUL");
        enc.push_back(static_cast<std::uint8_t>(ch));
    }
    enc.push_back(0x00);
    enc.insert(enc.end(), msg.begin(), msg.end());
    return enc;
}

}  // namespace detail

// F(key, label, msg) = HMAC-SHA256(key, label || 0x00 || msg) truncated to
// the key length, so the output is usable as a key at the same security
// level. The label separates the derivation contexts that share a key.
inline Bytes prf_f(const Bytes& key, std::string_view label, const Bytes& msg) {
    detail::check_prf_key(key);
    Bytes mac = hmac_sha256(key, detail::domain_encode(label, msg));
    mac.resize(key.size());
    return mac;
}

// F_p(key, label, msg): expand to 512 bits with two MAC calls (counter
// suffix), reduce into Z_r, retry on the zero residue.
template <class C>
Scalar<C> prf_fp(const Bytes& key, std::string_view label, const Bytes& msg) {
    detail::check_prf_key(key);
    Bytes enc = detail::domain_encode(label, msg);
    enc.push_back(0x00);
    for (unsigned ctr = 0;; ctr += 2) {
        if (ctr > 250)
            throw CryptoError("scalar derivation failed to converge");
        enc.back() = static_cast<std::uint8_t>(ctr);
        Bytes block = hmac_sha256(key, enc);
        enc.back() = static_cast<std::uint8_t>(ctr + 1);
        Bytes b1 = hmac_sha256(key, enc);
        block.insert(block.end(), b1.begin(), b1.end());
        mpz_class v = mpz_from_be(block.data(), block.size());
        v %= Scalar<C>::order();
        if (v != 0)
            return Scalar<C>::from_mpz(v);
    }
}

}  // namespace masse
