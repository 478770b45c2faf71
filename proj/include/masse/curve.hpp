#pragma once

#include <optional>
#include <vector>

#include "masse/fp_tower.hpp"

namespace masse {

// Jacobian-coordinate arithmetic for y^2 = x^3 + b, shared by G1 (F = Fp)
// and G2 (F = Fp2, curve is the sextic twist).
template <class F>
struct JacPoint {
    F X, Y, Z;

    static JacPoint infinity() { return {F::one(), F::one(), F::zero()}; }

    bool is_infinity() const { return Z.is_zero(); }

    JacPoint dbl() const {
        if (is_infinity())
            return *this;
        F A = X.sqr();
        F B = Y.sqr();
        F CC = B.sqr();
        F D = ((X + B).sqr() - A - CC).dbl();
        F E = A + A + A;
        F FF = E.sqr();
        F X3 = FF - D.dbl();
        F Y3 = E * (D - X3) - CC.dbl().dbl().dbl();
        F Z3 = (Y * Z).dbl();
        return {X3, Y3, Z3};
    }

    JacPoint add(const JacPoint& o) const {
        if (is_infinity())
            return o;
        if (o.is_infinity())
            return *this;
        F Z1Z1 = Z.sqr();
        F Z2Z2 = o.Z.sqr();
        F U1 = X * Z2Z2;
        F U2 = o.X * Z1Z1;
        F S1 = Y * o.Z * Z2Z2;
        F S2 = o.Y * Z * Z1Z1;
        if (U1 == U2) {
            if (S1 == S2)
                return dbl();
            return infinity();
        }
        F H = U2 - U1;
        F I = H.dbl().sqr();
        F J = H * I;
        F rr = (S2 - S1).dbl();
        F V = U1 * I;
        F X3 = rr.sqr() - J - V.dbl();
        F Y3 = rr * (V - X3) - (S1 * J).dbl();
        F Z3 = ((Z + o.Z).sqr() - Z1Z1 - Z2Z2) * H;
        return {X3, Y3, Z3};
    }

    JacPoint neg() const { return {X, -Y, Z}; }
};

// signed windowed digit decomposition, window width 4
inline std::vector<int> wnaf_digits(const mpz_class& k) {
    std::vector<int> digits;
    mpz_class n = k;
    while (n > 0) {
        if (mpz_odd_p(n.get_mpz_t())) {
            long d = static_cast<long>(mpz_fdiv_ui(n.get_mpz_t(), 16));
            if (d >= 8)
                d -= 16;
            digits.push_back(static_cast<int>(d));
            n -= d;
        } else {
            digits.push_back(0);
        }
        n >>= 1;
    }
    return digits;
}

template <class F>
JacPoint<F> jac_mul(const JacPoint<F>& P, const mpz_class& k) {
    if (k == 0 || P.is_infinity())
        return JacPoint<F>::infinity();
    mpz_class n = k;
    JacPoint<F> base = P;
    if (n < 0) {
        n = -n;
        base = base.neg();
    }
    std::vector<int> digits = wnaf_digits(n);
    std::array<JacPoint<F>, 8> table;  // odd multiples 1,3,...,15
    table[0] = base;
    JacPoint<F> twice = base.dbl();
    for (int i = 1; i < 8; ++i)
        table[i] = table[i - 1].add(twice);
    JacPoint<F> R = JacPoint<F>::infinity();
    for (std::size_t i = digits.size(); i-- > 0;) {
        R = R.dbl();
        int d = digits[i];
        if (d > 0)
            R = R.add(table[d >> 1]);
        else if (d < 0)
            R = R.add(table[(-d) >> 1].neg());
    }
    return R;
}

// Affine point on y^2 = x^3 + b over field F. CRTP base: operations return
// the concrete group type D.
template <class F, class D>
class AffinePoint {
public:
    F x = F::zero();
    F y = F::zero();
    bool inf = true;

    static D infinity() { return D{}; }

    static D make(const F& x, const F& y) {
        D p;
        p.x = x;
        p.y = y;
        p.inf = false;
        return p;
    }

    bool is_infinity() const { return inf; }

    friend bool operator==(const D& a, const D& b) {
        if (a.inf || b.inf)
            return a.inf == b.inf;
        return a.x == b.x && a.y == b.y;
    }
    friend bool operator!=(const D& a, const D& b) { return !(a == b); }

    JacPoint<F> jac() const {
        if (inf)
            return JacPoint<F>::infinity();
        return {x, y, F::one()};
    }

    static D from_jac(const JacPoint<F>& J) {
        if (J.is_infinity())
            return D{};
        F zi = J.Z.inv();
        F zi2 = zi.sqr();
        return make(J.X * zi2, J.Y * zi2 * zi);
    }

    D add(const D& o) const { return from_jac(jac().add(o.jac())); }

    D dbl() const { return from_jac(jac().dbl()); }

    D neg() const {
        if (inf)
            return D{};
        return make(x, -y);
    }

    D mul(const mpz_class& k) const { return from_jac(jac_mul(jac(), k)); }

    bool on_curve(const F& b) const {
        if (inf)
            return true;
        return y.sqr() == x.sqr() * x + b;
    }
};

template <class C>
struct GroupCtx {
    mpz_class r;

    static const GroupCtx& get() {
        static const GroupCtx ctx{mpz_from_hex(C::R_HEX)};
        return ctx;
    }
};

inline constexpr std::uint8_t POINT_FLAG_Y_LARGE = 0x02;
inline constexpr std::uint8_t POINT_FLAG_INFINITY = 0x01;

template <class C>
class G1 : public AffinePoint<Fp<C>, G1<C>> {
public:
    using Base = AffinePoint<Fp<C>, G1<C>>;
    static constexpr std::size_t BYTES = 1 + C::FP_BYTES;

    static Fp<C> coeff_b() { return Fp<C>::from_u64(C::B); }

    static G1 generator() {
        static const G1 g = Base::make(
            Fp<C>::from_mpz(mpz_from_hex(C::G1_X_HEX)),
            Fp<C>::from_mpz(mpz_from_hex(C::G1_Y_HEX)));
        return g;
    }

    Bytes to_bytes() const {
        Bytes out(BYTES, 0);
        if (this->inf) {
            out[0] = POINT_FLAG_INFINITY;
            return out;
        }
        out[0] = this->y.lexicographically_largest() ? POINT_FLAG_Y_LARGE : 0x00;
        this->x.to_bytes(out.data() + 1);
        return out;
    }

    static G1 from_bytes(const std::uint8_t* data, std::size_t len) {
        if (len != BYTES)
            throw FormatError("bad G1 length");
        std::uint8_t flag = data[0];
        if (flag == POINT_FLAG_INFINITY) {
            for (std::size_t i = 1; i < BYTES; ++i)
                if (data[i] != 0)
                    throw FormatError("malformed G1 infinity");
            return G1{};
        }
        if (flag != 0x00 && flag != POINT_FLAG_Y_LARGE)
            throw FormatError("bad G1 flag");
        auto x = Fp<C>::from_bytes(data + 1);
        if (!x)
            throw FormatError("G1 coordinate out of range");
        auto y = (x->sqr() * *x + coeff_b()).sqrt();
        if (!y)
            throw FormatError("G1 x not on curve");
        Fp<C> yy = *y;
        if (yy.lexicographically_largest() != (flag == POINT_FLAG_Y_LARGE))
            yy = -yy;
        G1 P = Base::make(*x, yy);
        if (!P.mul(GroupCtx<C>::get().r).is_infinity())
            throw FormatError("G1 point outside subgroup");
        return P;
    }

    static G1 from_bytes(const Bytes& b) { return from_bytes(b.data(), b.size()); }
};

template <class C>
class G2 : public AffinePoint<Fp2<C>, G2<C>> {
public:
    using Base = AffinePoint<Fp2<C>, G2<C>>;
    static constexpr std::size_t BYTES = 1 + 2 * C::FP_BYTES;

    // coefficient of the M twist, b * xi
    static Fp2<C> coeff_b() {
        return Fp2<C>{Fp<C>::from_u64(C::B), Fp<C>::zero()}.mul_xi();
    }

    static G2 generator() {
        static const G2 g = Base::make(
            Fp2<C>{Fp<C>::from_mpz(mpz_from_hex(C::G2_X_C0_HEX)),
                   Fp<C>::from_mpz(mpz_from_hex(C::G2_X_C1_HEX))},
            Fp2<C>{Fp<C>::from_mpz(mpz_from_hex(C::G2_Y_C0_HEX)),
                   Fp<C>::from_mpz(mpz_from_hex(C::G2_Y_C1_HEX))});
        return g;
    }

    Bytes to_bytes() const {
        Bytes out(BYTES, 0);
        if (this->inf) {
            out[0] = POINT_FLAG_INFINITY;
            return out;
        }
        out[0] = this->y.lexicographically_largest() ? POINT_FLAG_Y_LARGE : 0x00;
        this->x.c0.to_bytes(out.data() + 1);
        this->x.c1.to_bytes(out.data() + 1 + C::FP_BYTES);
        return out;
    }

    static G2 from_bytes(const std::uint8_t* data, std::size_t len) {
        if (len != BYTES)
            throw FormatError("bad G2 length");
        std::uint8_t flag = data[0];
        if (flag == POINT_FLAG_INFINITY) {
            for (std::size_t i = 1; i < BYTES; ++i)
                if (data[i] != 0)
                    throw FormatError("malformed G2 infinity");
            return G2{};
        }
        if (flag != 0x00 && flag != POINT_FLAG_Y_LARGE)
            throw FormatError("bad G2 flag");
        auto xc0 = Fp<C>::from_bytes(data + 1);
        auto xc1 = Fp<C>::from_bytes(data + 1 + C::FP_BYTES);
        if (!xc0 || !xc1)
            throw FormatError("G2 coordinate out of range");
        Fp2<C> x{*xc0, *xc1};
        auto y = (x.sqr() * x + coeff_b()).sqrt();
        if (!y)
            throw FormatError("G2 x not on curve");
        Fp2<C> yy = *y;
        if (yy.lexicographically_largest() != (flag == POINT_FLAG_Y_LARGE))
            yy = -yy;
        G2 P = Base::make(x, yy);
        if (!P.mul(GroupCtx<C>::get().r).is_infinity())
            throw FormatError("G2 point outside subgroup");
        return P;
    }

    static G2 from_bytes(const Bytes& b) { return from_bytes(b.data(), b.size()); }
};

}  // namespace masse
