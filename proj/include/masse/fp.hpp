#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include <gmpxx.h>

#include "masse/common.hpp"
#include "masse/curves.hpp"

namespace masse {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline mpz_class mpz_from_hex(const char* hex) {
    return mpz_class(hex, 16);
}

inline mpz_class mpz_from_be(const std::uint8_t* data, std::size_t len) {
    mpz_class v;
    mpz_import(v.get_mpz_t(), len, 1, 1, 0, 0, data);
    return v;
}

inline void mpz_to_be(const mpz_class& v, std::uint8_t* out, std::size_t len) {
    std::memset(out, 0, len);
    std::size_t count = (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
    if (count > len)
        throw FormatError("integer too wide");
    mpz_export(out + (len - count), nullptr, 1, 1, 0, 0, v.get_mpz_t());
}

inline Bytes mpz_to_be(const mpz_class& v, std::size_t len) {
    Bytes out(len);
    mpz_to_be(v, out.data(), len);
    return out;
}

// Montgomery arithmetic mod the base-field prime of curve config C.
template <class C>
class FpCtx {
public:
    static constexpr std::size_t N = C::NLIMBS;
    using Limbs = std::array<u64, N>;

    Limbs p;
    Limbs r2;
    Limbs one;
    u64 ninv;
    mpz_class pz;
    mpz_class sqrt_exp;

    static const FpCtx& get() {
        static const FpCtx ctx;
        return ctx;
    }

    static void export_limbs(Limbs& out, const mpz_class& v) {
        out.fill(0);
        std::size_t count = 0;
        mpz_export(out.data(), &count, -1, 8, 0, 0, v.get_mpz_t());
    }

    static mpz_class import_limbs(const Limbs& in) {
        mpz_class v;
        mpz_import(v.get_mpz_t(), N, -1, 8, 0, 0, in.data());
        return v;
    }

private:
    FpCtx() {
        pz = mpz_from_hex(C::P_HEX);
        export_limbs(p, pz);
        mpz_class R = mpz_class(1) << static_cast<unsigned>(64 * N);
        export_limbs(r2, mpz_class((R * R) % pz));
        export_limbs(one, mpz_class(R % pz));
        u64 x = 1;
        for (int i = 0; i < 6; ++i)
            x *= 2 - p[0] * x;
        ninv = ~x + 1;
        sqrt_exp = (pz + 1) / 4;
    }
};

template <class C>
class Fp {
public:
    static constexpr std::size_t N = C::NLIMBS;
    using Limbs = std::array<u64, N>;

    Limbs v{};

    static const FpCtx<C>& ctx() { return FpCtx<C>::get(); }

    static Fp zero() { return Fp{}; }

    static Fp one() {
        Fp r;
        r.v = ctx().one;
        return r;
    }

    static Fp from_u64(u64 x) {
        Fp r;
        r.v[0] = x;
        mul_limbs(r.v, r.v, ctx().r2);
        return r;
    }

    static Fp from_mpz(const mpz_class& m) {
        mpz_class red = m % ctx().pz;
        if (red < 0)
            red += ctx().pz;
        Fp r;
        FpCtx<C>::export_limbs(r.v, red);
        mul_limbs(r.v, r.v, ctx().r2);
        return r;
    }

    static std::optional<Fp> from_bytes(const std::uint8_t* data) {
        mpz_class m = mpz_from_be(data, C::FP_BYTES);
        if (m >= ctx().pz)
            return std::nullopt;
        return from_mpz(m);
    }

    mpz_class to_mpz() const {
        return FpCtx<C>::import_limbs(canonical());
    }

    void to_bytes(std::uint8_t* out) const {
        Limbs c = canonical();
        for (std::size_t i = 0; i < N; ++i) {
            u64 limb = c[N - 1 - i];
            for (int b = 0; b < 8; ++b)
                out[8 * i + b] = static_cast<std::uint8_t>(limb >> (56 - 8 * b));
        }
    }

    bool is_zero() const {
        for (u64 limb : v)
            if (limb != 0)
                return false;
        return true;
    }

    friend bool operator==(const Fp& a, const Fp& b) { return a.v == b.v; }
    friend bool operator!=(const Fp& a, const Fp& b) { return !(a.v == b.v); }

    friend Fp operator+(const Fp& a, const Fp& b) {
        Fp r;
        u64 carry = 0;
        for (std::size_t i = 0; i < N; ++i) {
            u128 s = static_cast<u128>(a.v[i]) + b.v[i] + carry;
            r.v[i] = static_cast<u64>(s);
            carry = static_cast<u64>(s >> 64);
        }
        reduce_once(r.v, carry);
        return r;
    }

    friend Fp operator-(const Fp& a, const Fp& b) {
        Fp r;
        u64 borrow = sub_limbs(r.v, a.v, b.v);
        if (borrow) {
            u64 carry = 0;
            const Limbs& p = ctx().p;
            for (std::size_t i = 0; i < N; ++i) {
                u128 s = static_cast<u128>(r.v[i]) + p[i] + carry;
                r.v[i] = static_cast<u64>(s);
                carry = static_cast<u64>(s >> 64);
            }
        }
        return r;
    }

    friend Fp operator*(const Fp& a, const Fp& b) {
        Fp r;
        mul_limbs(r.v, a.v, b.v);
        return r;
    }

    Fp operator-() const {
        if (is_zero())
            return *this;
        Fp r;
        sub_limbs(r.v, ctx().p, v);
        return r;
    }

    Fp sqr() const { return *this * *this; }

    Fp dbl() const { return *this + *this; }

    Fp mul_small(u64 k) const {
        Fp r = zero();
        Fp base = *this;
        while (k) {
            if (k & 1)
                r = r + base;
            base = base.dbl();
            k >>= 1;
        }
        return r;
    }

    Fp inv() const {
        if (is_zero())
            throw std::domain_error("field inverse of zero");
        mpz_class out;
        mpz_class c = to_mpz();
        mpz_invert(out.get_mpz_t(), c.get_mpz_t(), ctx().pz.get_mpz_t());
        return from_mpz(out);
    }

    Fp pow(const mpz_class& e) const {
        Fp r = one();
        Fp base = *this;
        std::size_t nbits = mpz_sizeinbase(e.get_mpz_t(), 2);
        for (std::size_t i = nbits; i-- > 0;) {
            r = r.sqr();
            if (mpz_tstbit(e.get_mpz_t(), i))
                r = r * base;
        }
        return r;
    }

    std::optional<Fp> sqrt() const {
        Fp cand = pow(ctx().sqrt_exp);
        if (cand.sqr() == *this)
            return cand;
        return std::nullopt;
    }

    // canonical (non-Montgomery) limbs, little-endian limb order
    Limbs canonical() const {
        Limbs unit{};
        unit[0] = 1;
        Limbs out;
        mul_limbs(out, v, unit);
        return out;
    }

    bool lexicographically_largest() const {
        Limbs c = canonical();
        Limbs dbl_;
        u64 carry = 0;
        for (std::size_t i = 0; i < N; ++i) {
            dbl_[i] = (c[i] << 1) | carry;
            carry = c[i] >> 63;
        }
        if (carry)
            return true;
        return cmp_limbs(dbl_, ctx().p) > 0;
    }

    static int cmp_limbs(const Limbs& a, const Limbs& b) {
        for (std::size_t i = N; i-- > 0;) {
            if (a[i] < b[i]) return -1;
            if (a[i] > b[i]) return 1;
        }
        return 0;
    }

private:
    static u64 sub_limbs(Limbs& out, const Limbs& a, const Limbs& b) {
        u64 borrow = 0;
        for (std::size_t i = 0; i < N; ++i) {
            u64 t = a[i] - b[i];
            u64 b1 = a[i] < b[i];
            u64 t2 = t - borrow;
            u64 b2 = t < borrow;
            out[i] = t2;
            borrow = b1 | b2;
        }
        return borrow;
    }

    static void reduce_once(Limbs& t, u64 overflow) {
        const Limbs& p = ctx().p;
        if (overflow || cmp_limbs(t, p) >= 0) {
            Limbs r;
            sub_limbs(r, t, p);
            t = r;
        }
    }

    // CIOS Montgomery multiplication
    static void mul_limbs(Limbs& out, const Limbs& a, const Limbs& b) {
        const FpCtx<C>& cx = ctx();
        const Limbs& p = cx.p;
        u64 t[N + 2] = {};
        for (std::size_t i = 0; i < N; ++i) {
            u64 carry = 0;
            for (std::size_t j = 0; j < N; ++j) {
                u128 cur = static_cast<u128>(a[i]) * b[j] + t[j] + carry;
                t[j] = static_cast<u64>(cur);
                carry = static_cast<u64>(cur >> 64);
            }
            u128 s = static_cast<u128>(t[N]) + carry;
            t[N] = static_cast<u64>(s);
            t[N + 1] = static_cast<u64>(s >> 64);

            u64 m = t[0] * cx.ninv;
            u128 cur = static_cast<u128>(m) * p[0] + t[0];
            carry = static_cast<u64>(cur >> 64);
            for (std::size_t j = 1; j < N; ++j) {
                cur = static_cast<u128>(m) * p[j] + t[j] + carry;
                t[j - 1] = static_cast<u64>(cur);
                carry = static_cast<u64>(cur >> 64);
            }
            s = static_cast<u128>(t[N]) + carry;
            t[N - 1] = static_cast<u64>(s);
            t[N] = t[N + 1] + static_cast<u64>(s >> 64);
        }
        Limbs res;
        for (std::size_t i = 0; i < N; ++i)
            res[i] = t[i];
        reduce_once(res, t[N]);
        out = res;
    }
};

}  // namespace masse
