#include <gtest/gtest.h>

#include <gmpxx.h>

#include "masse/curves.hpp"
#include "masse/fp.hpp"
#include "masse/fp_tower.hpp"

using namespace masse;

namespace {

template <class C>
class FpTest : public ::testing::Test {
protected:
    FpTest() : rng(gmp_randinit_mt) { rng.seed(42u); }

    mpz_class rand_mpz() { return rng.get_z_range(Fp<C>::ctx().pz); }

    Fp<C> rand_fp() { return Fp<C>::from_mpz(rand_mpz()); }

    Fp2<C> rand_fp2() { return {rand_fp(), rand_fp()}; }

    Fp6<C> rand_fp6() { return {rand_fp2(), rand_fp2(), rand_fp2()}; }

    Fp12<C> rand_fp12() { return {rand_fp6(), rand_fp6()}; }

    gmp_randclass rng;
};

using Curves = ::testing::Types<Bls12_381, Bls12_383>;
TYPED_TEST_SUITE(FpTest, Curves);

TYPED_TEST(FpTest, ArithmeticMatchesGmp) {
    const mpz_class& p = Fp<TypeParam>::ctx().pz;
    for (int i = 0; i < 200; ++i) {
        mpz_class a = this->rand_mpz(), b = this->rand_mpz();
        Fp<TypeParam> fa = Fp<TypeParam>::from_mpz(a);
        Fp<TypeParam> fb = Fp<TypeParam>::from_mpz(b);
        EXPECT_EQ((fa + fb).to_mpz(), (a + b) % p);
        EXPECT_EQ((fa - fb).to_mpz(), ((a - b) % p + p) % p);
        EXPECT_EQ((fa * fb).to_mpz(), (a * b) % p);
        EXPECT_EQ((-fa).to_mpz(), (p - a) % p);
        EXPECT_EQ(fa.sqr().to_mpz(), (a * a) % p);
        EXPECT_EQ(fa.mul_small(7).to_mpz(), (7 * a) % p);
    }
}

TYPED_TEST(FpTest, InverseAndPow) {
    const mpz_class& p = Fp<TypeParam>::ctx().pz;
    for (int i = 0; i < 50; ++i) {
        Fp<TypeParam> a = this->rand_fp();
        if (a.is_zero())
            continue;
        EXPECT_EQ((a * a.inv()).to_mpz(), 1);
        mpz_class e = this->rand_mpz();
        mpz_class expect;
        mpz_class av = a.to_mpz();
        mpz_powm(expect.get_mpz_t(), av.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
        EXPECT_EQ(a.pow(e).to_mpz(), expect);
    }
    EXPECT_THROW(Fp<TypeParam>::zero().inv(), std::domain_error);
}

TYPED_TEST(FpTest, BytesRoundTrip) {
    for (int i = 0; i < 50; ++i) {
        Fp<TypeParam> a = this->rand_fp();
        std::uint8_t buf[TypeParam::FP_BYTES];
        a.to_bytes(buf);
        auto back = Fp<TypeParam>::from_bytes(buf);
        ASSERT_TRUE(back.has_value());
        EXPECT_EQ(*back, a);
    }
    std::uint8_t buf[TypeParam::FP_BYTES];
    mpz_to_be(Fp<TypeParam>::ctx().pz, buf, TypeParam::FP_BYTES);
    EXPECT_FALSE(Fp<TypeParam>::from_bytes(buf).has_value());
}

TYPED_TEST(FpTest, Sqrt) {
    int residues = 0;
    for (int i = 0; i < 60; ++i) {
        Fp<TypeParam> a = this->rand_fp();
        Fp<TypeParam> sq = a.sqr();
        auto r = sq.sqrt();
        ASSERT_TRUE(r.has_value());
        EXPECT_TRUE(*r == a || *r == -a);
        if (a.sqrt().has_value())
            ++residues;
    }
    EXPECT_GT(residues, 10);
    EXPECT_LT(residues, 50);
}

TYPED_TEST(FpTest, LexOrder) {
    const mpz_class& p = Fp<TypeParam>::ctx().pz;
    for (int i = 0; i < 50; ++i) {
        mpz_class a = this->rand_mpz();
        Fp<TypeParam> fa = Fp<TypeParam>::from_mpz(a);
        EXPECT_EQ(fa.lexicographically_largest(), 2 * a > p);
    }
    EXPECT_FALSE(Fp<TypeParam>::zero().lexicographically_largest());
}

TYPED_TEST(FpTest, Fp2Field) {
    using F2 = Fp2<TypeParam>;
    for (int i = 0; i < 50; ++i) {
        F2 a = this->rand_fp2(), b = this->rand_fp2(), c = this->rand_fp2();
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ(a.sqr(), a * a);
        if (!a.is_zero()) {
            EXPECT_EQ(a * a.inv(), F2::one());
        }
        EXPECT_EQ(a.mul_xi(), a * F2::xi());
        EXPECT_EQ((a * a.conj()).c1, Fp<TypeParam>::zero());
        EXPECT_EQ((a * a.conj()).c0, a.norm());
    }
}

TYPED_TEST(FpTest, Fp2Sqrt) {
    using F2 = Fp2<TypeParam>;
    for (int i = 0; i < 40; ++i) {
        F2 a = this->rand_fp2();
        auto r = a.sqr().sqrt();
        ASSERT_TRUE(r.has_value());
        EXPECT_TRUE(*r == a || *r == -a);
    }
    // pure-Fp and pure-u squares exercise the degenerate branch
    F2 t{Fp<TypeParam>::from_u64(9), Fp<TypeParam>::zero()};
    auto r = t.sqrt();
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(r->sqr(), t);
}

TYPED_TEST(FpTest, TowerNonResidues) {
    using F2 = Fp2<TypeParam>;
    const mpz_class& p = Fp<TypeParam>::ctx().pz;
    mpz_class p2m1 = p * p - 1;
    F2 xi = F2::xi();
    F2 neg_one = -F2::one();
    EXPECT_EQ(xi.pow(p2m1 / 2), neg_one);
    EXPECT_NE(xi.pow(p2m1 / 3), F2::one());
    EXPECT_FALSE(xi.sqrt().has_value());
}

TYPED_TEST(FpTest, Fp6Field) {
    using F6 = Fp6<TypeParam>;
    F6 v{Fp2<TypeParam>::zero(), Fp2<TypeParam>::one(), Fp2<TypeParam>::zero()};
    for (int i = 0; i < 30; ++i) {
        F6 a = this->rand_fp6(), b = this->rand_fp6(), c = this->rand_fp6();
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * b, b * a);
        if (!a.is_zero()) {
            EXPECT_EQ(a * a.inv(), F6::one());
        }
        EXPECT_EQ(a.mul_v(), a * v);
    }
    F6 xi6{Fp2<TypeParam>::xi(), Fp2<TypeParam>::zero(), Fp2<TypeParam>::zero()};
    EXPECT_EQ(v * v * v, xi6);
}

TYPED_TEST(FpTest, Fp12Field) {
    using F12 = Fp12<TypeParam>;
    for (int i = 0; i < 20; ++i) {
        F12 a = this->rand_fp12(), b = this->rand_fp12(), c = this->rand_fp12();
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ(a.sqr(), a * a);
        if (!a.is_zero()) {
            EXPECT_EQ(a * a.inv(), F12::one());
        }
    }
}

TYPED_TEST(FpTest, ConjIsFrobeniusP6) {
    const mpz_class& p = Fp<TypeParam>::ctx().pz;
    mpz_class p6;
    mpz_pow_ui(p6.get_mpz_t(), p.get_mpz_t(), 6);
    Fp12<TypeParam> a = this->rand_fp12();
    EXPECT_EQ(a.conj_p6(), a.pow(p6));
}

TYPED_TEST(FpTest, CoeffIndexing) {
    using F12 = Fp12<TypeParam>;
    F12 w = F12::zero();
    w.coeff(1) = Fp2<TypeParam>::one();
    F12 acc = F12::one();
    for (int i = 0; i < 6; ++i) {
        F12 probe = F12::zero();
        probe.coeff(i) = Fp2<TypeParam>::one();
        EXPECT_EQ(probe, acc) << "w^" << i;
        acc = acc * w;
    }
    // w^6 = xi
    F12 xi12 = F12::zero();
    xi12.coeff(0) = Fp2<TypeParam>::xi();
    EXPECT_EQ(acc, xi12);
}

}  // namespace
