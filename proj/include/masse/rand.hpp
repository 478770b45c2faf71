#pragma once

#include <openssl/rand.h>

#include "masse/common.hpp"
#include "masse/scalar.hpp"

namespace masse {

inline Bytes random_bytes(std::size_t n) {
    Bytes out(n);
    if (n > 0 && RAND_bytes(out.data(), static_cast<int>(n)) != 1)
        throw CryptoError("system randomness unavailable");
    return out;
}

// Uniform nonzero scalar; 16 surplus bytes keep the reduction bias negligible.
template <class C>
Scalar<C> random_scalar() {
    for (;;) {
        Bytes raw = random_bytes(C::SCALAR_BYTES + 16);
        mpz_class v = mpz_from_be(raw.data(), raw.size());
        v %= Scalar<C>::order();
        if (v != 0)
            return Scalar<C>::from_mpz(v);
    }
}

}  // namespace masse
