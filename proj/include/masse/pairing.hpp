#pragma once

#include "masse/curve.hpp"

namespace masse {

template <class C>
struct PairingCtx {
    mpz_class p;
    mpz_class r;
    mpz_class z_abs;
    std::array<Fp2<C>, 6> gamma1;  // xi^{i(p-1)/6}
    Fp2<C> xi_inv;

    static const PairingCtx& get() {
        static const PairingCtx ctx;
        return ctx;
    }

private:
    PairingCtx() {
        p = mpz_from_hex(C::P_HEX);
        r = mpz_from_hex(C::R_HEX);
        z_abs = mpz_from_hex(C::Z_ABS_HEX);
        gamma1[0] = Fp2<C>::one();
        gamma1[1] = Fp2<C>::xi().pow((p - 1) / 6);
        for (int i = 2; i < 6; ++i)
            gamma1[i] = gamma1[i - 1] * gamma1[1];
        xi_inv = Fp2<C>::xi().inv();
    }
};

template <class C>
Fp12<C> frobenius(const Fp12<C>& f) {
    const auto& ctx = PairingCtx<C>::get();
    Fp12<C> out;
    for (int i = 0; i < 6; ++i)
        out.coeff(i) = f.coeff(i).conj() * ctx.gamma1[i];
    return out;
}

// Optimal ate Miller loop. The G2 point is untwisted into Fp12 where its
// coordinates are monomials x = cx*w^4, y = cy*w^3 with cx, cy in Fp2; the
// accumulator stays in that shape throughout, every slope lands on w^5, and
// each line evaluated at P occupies slots w^0, w^3, w^5 only.
template <class C>
Fp12<C> miller_loop(const G1<C>& P, const G2<C>& Q) {
    const auto& ctx = PairingCtx<C>::get();
    Fp2<C> qx = Q.x * ctx.xi_inv;
    Fp2<C> qy = Q.y * ctx.xi_inv;
    Fp2<C> tx = qx, ty = qy;
    Fp12<C> f = Fp12<C>::one();

    auto line_eval = [&P](const Fp2<C>& lam, const Fp2<C>& cx, const Fp2<C>& cy) {
        Fp12<C> l = Fp12<C>::zero();
        l.coeff(0) = Fp2<C>{P.y, Fp<C>::zero()};
        l.coeff(3) = (lam * cx).mul_xi() - cy;
        l.coeff(5) = -lam.mul_fp(P.x);
        return l;
    };

    std::size_t nbits = mpz_sizeinbase(ctx.z_abs.get_mpz_t(), 2);
    for (std::size_t i = nbits - 1; i-- > 0;) {
        Fp2<C> lam = tx.sqr().mul_small(3) * ty.dbl().inv();
        Fp12<C> l = line_eval(lam, tx, ty);
        Fp2<C> x3 = lam.sqr().mul_xi() - tx.dbl();
        ty = (lam * (tx - x3)).mul_xi() - ty;
        tx = x3;
        f = f.sqr() * l;
        if (mpz_tstbit(ctx.z_abs.get_mpz_t(), i)) {
            Fp2<C> lam2 = (qy - ty) * (qx - tx).inv() * ctx.xi_inv;
            l = line_eval(lam2, tx, ty);
            x3 = lam2.sqr().mul_xi() - tx - qx;
            ty = (lam2 * (tx - x3)).mul_xi() - ty;
            tx = x3;
            f = f * l;
        }
    }
    if (C::Z_NEG)
        f = f.conj_p6();
    return f;
}

// a^z for unitary a (inverse via p^6 conjugation)
template <class C>
Fp12<C> pow_seed(const Fp12<C>& a) {
    Fp12<C> r = a.pow(PairingCtx<C>::get().z_abs);
    if (C::Z_NEG)
        r = r.conj_p6();
    return r;
}

// f^{3 (p^12-1)/r}; hard part uses
// 3 (p^4-p^2+1)/r = (z-1)^2 (z+p) (z^2+p^2-1) + 3
template <class C>
Fp12<C> final_exp(const Fp12<C>& f) {
    Fp12<C> t = f.conj_p6() * f.inv();
    t = frobenius(frobenius(t)) * t;

    Fp12<C> a = pow_seed(t) * t.conj_p6();
    a = pow_seed(a) * a.conj_p6();
    Fp12<C> b = pow_seed(a) * frobenius(a);
    Fp12<C> c = pow_seed(pow_seed(b)) * frobenius(frobenius(b)) * b.conj_p6();
    return c * t.sqr() * t;
}

template <class C>
class GT {
public:
    static constexpr std::size_t BYTES = 12 * C::FP_BYTES;

    Fp12<C> v = Fp12<C>::one();

    static GT one() { return GT{}; }

    friend bool operator==(const GT& a, const GT& b) { return a.v == b.v; }
    friend bool operator!=(const GT& a, const GT& b) { return !(a.v == b.v); }

    bool is_one() const { return v.is_one(); }

    GT mul(const GT& o) const { return GT{v * o.v}; }

    GT inverse() const { return GT{v.conj_p6()}; }

    GT pow(const mpz_class& e) const {
        const mpz_class& r = PairingCtx<C>::get().r;
        mpz_class n = e % r;
        if (n < 0)
            n += r;
        return GT{v.pow(n)};
    }

    Bytes to_bytes() const {
        Bytes out(BYTES);
        std::uint8_t* dst = out.data();
        for (int i = 0; i < 12; ++i, dst += C::FP_BYTES)
            fp_at(i).to_bytes(dst);
        return out;
    }

    static GT from_bytes(const std::uint8_t* data, std::size_t len) {
        if (len != BYTES)
            throw FormatError("bad GT length");
        GT out;
        for (int i = 0; i < 12; ++i) {
            auto f = Fp<C>::from_bytes(data + i * C::FP_BYTES);
            if (!f)
                throw FormatError("GT coefficient out of range");
            out.fp_at(i) = *f;
        }
        if (!out.v.pow(PairingCtx<C>::get().r).is_one())
            throw FormatError("GT element outside subgroup");
        return out;
    }

    static GT from_bytes(const Bytes& b) { return from_bytes(b.data(), b.size()); }

private:
    // tower-order coefficient view: c0.c0.c0, c0.c0.c1, c0.c1.c0, ...
    Fp<C>& fp_at(int i) {
        Fp6<C>& f6 = (i < 6) ? v.c0 : v.c1;
        Fp2<C>* f2 = nullptr;
        switch ((i % 6) / 2) {
            case 0: f2 = &f6.c0; break;
            case 1: f2 = &f6.c1; break;
            default: f2 = &f6.c2; break;
        }
        return (i % 2) ? f2->c1 : f2->c0;
    }
    const Fp<C>& fp_at(int i) const { return const_cast<GT*>(this)->fp_at(i); }
};

template <class C>
GT<C> pairing(const G1<C>& P, const G2<C>& Q) {
    if (P.is_infinity() || Q.is_infinity())
        return GT<C>::one();
    return GT<C>{final_exp(miller_loop(P, Q))};
}

}  // namespace masse
