#pragma once

#include <optional>

#include "masse/fp.hpp"

namespace masse {

// Fp2 = Fp[u]/(u^2 + 1)
template <class C>
class Fp2 {
public:
    Fp<C> c0, c1;

    static Fp2 zero() { return {Fp<C>::zero(), Fp<C>::zero()}; }
    static Fp2 one() { return {Fp<C>::one(), Fp<C>::zero()}; }
    static Fp2 xi() { return {Fp<C>::one(), Fp<C>::one()}; }

    bool is_zero() const { return c0.is_zero() && c1.is_zero(); }

    friend bool operator==(const Fp2& a, const Fp2& b) {
        return a.c0 == b.c0 && a.c1 == b.c1;
    }
    friend bool operator!=(const Fp2& a, const Fp2& b) { return !(a == b); }

    friend Fp2 operator+(const Fp2& a, const Fp2& b) {
        return {a.c0 + b.c0, a.c1 + b.c1};
    }
    friend Fp2 operator-(const Fp2& a, const Fp2& b) {
        return {a.c0 - b.c0, a.c1 - b.c1};
    }
    Fp2 operator-() const { return {-c0, -c1}; }

    friend Fp2 operator*(const Fp2& a, const Fp2& b) {
        Fp<C> t0 = a.c0 * b.c0;
        Fp<C> t1 = a.c1 * b.c1;
        Fp<C> t2 = (a.c0 + a.c1) * (b.c0 + b.c1);
        return {t0 - t1, t2 - t0 - t1};
    }

    Fp2 sqr() const {
        Fp<C> t0 = (c0 + c1) * (c0 - c1);
        Fp<C> t1 = (c0 * c1).dbl();
        return {t0, t1};
    }

    Fp2 dbl() const { return {c0.dbl(), c1.dbl()}; }

    Fp2 mul_fp(const Fp<C>& s) const { return {c0 * s, c1 * s}; }

    Fp2 mul_small(u64 k) const { return {c0.mul_small(k), c1.mul_small(k)}; }

    // multiply by xi = 1 + u
    Fp2 mul_xi() const { return {c0 - c1, c0 + c1}; }

    Fp2 conj() const { return {c0, -c1}; }

    Fp<C> norm() const { return c0.sqr() + c1.sqr(); }

    Fp2 inv() const {
        Fp<C> n = norm().inv();
        return {c0 * n, -(c1 * n)};
    }

    Fp2 pow(const mpz_class& e) const {
        Fp2 r = one();
        Fp2 base = *this;
        std::size_t nbits = mpz_sizeinbase(e.get_mpz_t(), 2);
        for (std::size_t i = nbits; i-- > 0;) {
            r = r.sqr();
            if (mpz_tstbit(e.get_mpz_t(), i))
                r = r * base;
        }
        return r;
    }

    std::optional<Fp2> sqrt() const {
        const Fp<C> inv2 = Fp<C>::from_u64(2).inv();
        std::optional<Fp<C>> x0;
        Fp2 cand;
        if (c1.is_zero()) {
            if (auto r = c0.sqrt())
                cand = {*r, Fp<C>::zero()};
            else if (auto ri = (-c0).sqrt())
                cand = {Fp<C>::zero(), *ri};
            else
                return std::nullopt;
        } else {
            auto n = norm().sqrt();
            if (!n)
                return std::nullopt;
            Fp<C> d = (c0 + *n) * inv2;
            x0 = d.sqrt();
            if (!x0) {
                d = (c0 - *n) * inv2;
                x0 = d.sqrt();
                if (!x0)
                    return std::nullopt;
            }
            Fp<C> x1 = c1 * x0->dbl().inv();
            cand = {*x0, x1};
        }
        if (cand.sqr() == *this)
            return cand;
        return std::nullopt;
    }

    // sign convention for point compression: compare (c1, c0) against the
    // negation, most significant component first
    bool lexicographically_largest() const {
        if (!c1.is_zero())
            return c1.lexicographically_largest();
        return c0.lexicographically_largest();
    }
};

// Fp6 = Fp2[v]/(v^3 - xi)
template <class C>
class Fp6 {
public:
    Fp2<C> c0, c1, c2;

    static Fp6 zero() { return {Fp2<C>::zero(), Fp2<C>::zero(), Fp2<C>::zero()}; }
    static Fp6 one() { return {Fp2<C>::one(), Fp2<C>::zero(), Fp2<C>::zero()}; }

    bool is_zero() const { return c0.is_zero() && c1.is_zero() && c2.is_zero(); }

    friend bool operator==(const Fp6& a, const Fp6& b) {
        return a.c0 == b.c0 && a.c1 == b.c1 && a.c2 == b.c2;
    }
    friend bool operator!=(const Fp6& a, const Fp6& b) { return !(a == b); }

    friend Fp6 operator+(const Fp6& a, const Fp6& b) {
        return {a.c0 + b.c0, a.c1 + b.c1, a.c2 + b.c2};
    }
    friend Fp6 operator-(const Fp6& a, const Fp6& b) {
        return {a.c0 - b.c0, a.c1 - b.c1, a.c2 - b.c2};
    }
    Fp6 operator-() const { return {-c0, -c1, -c2}; }

    friend Fp6 operator*(const Fp6& a, const Fp6& b) {
        Fp2<C> t0 = a.c0 * b.c0;
        Fp2<C> t1 = a.c1 * b.c1;
        Fp2<C> t2 = a.c2 * b.c2;
        Fp2<C> r0 = t0 + ((a.c1 + a.c2) * (b.c1 + b.c2) - t1 - t2).mul_xi();
        Fp2<C> r1 = (a.c0 + a.c1) * (b.c0 + b.c1) - t0 - t1 + t2.mul_xi();
        Fp2<C> r2 = (a.c0 + a.c2) * (b.c0 + b.c2) - t0 - t2 + t1;
        return {r0, r1, r2};
    }

    Fp6 sqr() const { return *this * *this; }

    // multiply by v
    Fp6 mul_v() const { return {c2.mul_xi(), c0, c1}; }

    Fp6 mul_fp2(const Fp2<C>& s) const {
        return {c0 * s, c1 * s, c2 * s};
    }

    Fp6 inv() const {
        Fp2<C> t0 = c0.sqr() - (c1 * c2).mul_xi();
        Fp2<C> t1 = c2.sqr().mul_xi() - c0 * c1;
        Fp2<C> t2 = c1.sqr() - c0 * c2;
        Fp2<C> n = (c0 * t0 + (c2 * t1 + c1 * t2).mul_xi()).inv();
        return {t0 * n, t1 * n, t2 * n};
    }
};

// Fp12 = Fp6[w]/(w^2 - v)
template <class C>
class Fp12 {
public:
    Fp6<C> c0, c1;

    static Fp12 zero() { return {Fp6<C>::zero(), Fp6<C>::zero()}; }
    static Fp12 one() { return {Fp6<C>::one(), Fp6<C>::zero()}; }

    bool is_zero() const { return c0.is_zero() && c1.is_zero(); }
    bool is_one() const { return *this == one(); }

    friend bool operator==(const Fp12& a, const Fp12& b) {
        return a.c0 == b.c0 && a.c1 == b.c1;
    }
    friend bool operator!=(const Fp12& a, const Fp12& b) { return !(a == b); }

    friend Fp12 operator+(const Fp12& a, const Fp12& b) {
        return {a.c0 + b.c0, a.c1 + b.c1};
    }
    friend Fp12 operator-(const Fp12& a, const Fp12& b) {
        return {a.c0 - b.c0, a.c1 - b.c1};
    }
    Fp12 operator-() const { return {-c0, -c1}; }

    friend Fp12 operator*(const Fp12& a, const Fp12& b) {
        Fp6<C> t0 = a.c0 * b.c0;
        Fp6<C> t1 = a.c1 * b.c1;
        Fp6<C> r1 = (a.c0 + a.c1) * (b.c0 + b.c1) - t0 - t1;
        return {t0 + t1.mul_v(), r1};
    }

    Fp12 sqr() const {
        Fp6<C> t = c0 * c1;
        Fp6<C> s = (c0 + c1) * (c0 + c1.mul_v());
        return {s - t - t.mul_v(), t + t};
    }

    // p^6 Frobenius: w -> -w
    Fp12 conj_p6() const { return {c0, -c1}; }

    Fp12 inv() const {
        Fp6<C> n = (c0 * c0 - (c1 * c1).mul_v()).inv();
        return {c0 * n, -(c1 * n)};
    }

    Fp12 pow(const mpz_class& e) const {
        Fp12 r = one();
        Fp12 base = *this;
        std::size_t nbits = mpz_sizeinbase(e.get_mpz_t(), 2);
        for (std::size_t i = nbits; i-- > 0;) {
            r = r.sqr();
            if (mpz_tstbit(e.get_mpz_t(), i))
                r = r * base;
        }
        return r;
    }

    // coefficient of w^i as Fp2, i in [0, 6)
    const Fp2<C>& coeff(int i) const {
        const Fp6<C>& part = (i & 1) ? c1 : c0;
        switch (i >> 1) {
            case 0: return part.c0;
            case 1: return part.c1;
            default: return part.c2;
        }
    }

    Fp2<C>& coeff(int i) {
        Fp6<C>& part = (i & 1) ? c1 : c0;
        switch (i >> 1) {
            case 0: return part.c0;
            case 1: return part.c1;
            default: return part.c2;
        }
    }
};

}  // namespace masse
