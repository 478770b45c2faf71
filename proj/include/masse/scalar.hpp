#pragma once

#include <optional>

#include "masse/common.hpp"
#include "masse/fp.hpp"

namespace masse {

// Element of Z_r, r the prime order of the pairing groups. Arithmetic is
// plain mpz mod r; values produced by key derivation are nonzero by
// construction, and the serialized form only admits [1, r-1].
template <class C>
class Scalar {
public:
    static const mpz_class& order() {
        static const mpz_class r = mpz_from_hex(C::R_HEX);
        return r;
    }

    Scalar() : v_(0) {}

    static Scalar from_mpz(const mpz_class& x) {
        Scalar s;
        s.v_ = x % order();
        if (s.v_ < 0)
            s.v_ += order();
        return s;
    }

    static Scalar from_u64(std::uint64_t x) { return from_mpz(mpz_class(x)); }

    const mpz_class& value() const { return v_; }
    bool is_zero() const { return v_ == 0; }

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return a.v_ != b.v_; }

    Scalar operator+(const Scalar& o) const { return from_mpz(v_ + o.v_); }
    Scalar operator-(const Scalar& o) const { return from_mpz(v_ - o.v_); }
    Scalar operator*(const Scalar& o) const { return from_mpz(v_ * o.v_); }

    Scalar inv() const {
        if (v_ == 0)
            throw CryptoError("scalar inverse of zero");
        mpz_class out;
        mpz_invert(out.get_mpz_t(), v_.get_mpz_t(), order().get_mpz_t());
        return from_mpz(out);
    }

    Bytes to_bytes() const {
        if (v_ == 0)
            throw CryptoError("zero scalar is not serializable");
        return mpz_to_be(v_, C::SCALAR_BYTES);
    }

    static Scalar from_bytes(const std::uint8_t* data, std::size_t len) {
        if (len != C::SCALAR_BYTES)
            throw FormatError("bad scalar length");
        mpz_class x = mpz_from_be(data, len);
        if (x == 0 || x >= order())
            throw FormatError("scalar out of range");
        Scalar s;
        s.v_ = x;
        return s;
    }

    static Scalar from_bytes(const Bytes& b) { return from_bytes(b.data(), b.size()); }

private:
    mpz_class v_;
};

}  // namespace masse
