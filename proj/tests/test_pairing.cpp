#include <gtest/gtest.h>

#include "masse/curves.hpp"
#include "masse/pairing.hpp"

using namespace masse;

namespace {

#include "pairing_kat.inc"

inline Bytes kat_bytes(const std::array<const char*, 12>& coeffs) {
    Bytes out;
    for (const char* c : coeffs) {
        Bytes part = from_hex(c);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

template <class C>
class PairingTest : public ::testing::Test {
protected:
    PairingTest() : rng(gmp_randinit_mt) { rng.seed(7u); }

    mpz_class rand_scalar() { return rng.get_z_range(GroupCtx<C>::get().r); }

    gmp_randclass rng;
};

using Curves = ::testing::Types<Bls12_381, Bls12_383>;
TYPED_TEST_SUITE(PairingTest, Curves);

TYPED_TEST(PairingTest, KnownAnswerGenerators) {
    auto e = pairing(G1<TypeParam>::generator(), G2<TypeParam>::generator());
    EXPECT_EQ(e.to_bytes(), kat_bytes(PairingKat<TypeParam>::E_GEN));
}

TYPED_TEST(PairingTest, KnownAnswerScaledPoints) {
    auto A = G1<TypeParam>::generator().mul(0x2b6d);
    auto B = G2<TypeParam>::generator().mul(0x1d0c);
    auto e = pairing(A, B);
    EXPECT_EQ(e.to_bytes(), kat_bytes(PairingKat<TypeParam>::E_AB));
    auto base = pairing(G1<TypeParam>::generator(), G2<TypeParam>::generator());
    EXPECT_EQ(e, base.pow(mpz_class(0x2b6d) * 0x1d0c));
}

TYPED_TEST(PairingTest, NonDegenerate) {
    auto e = pairing(G1<TypeParam>::generator(), G2<TypeParam>::generator());
    EXPECT_FALSE(e.is_one());
    EXPECT_TRUE(e.v.pow(GroupCtx<TypeParam>::get().r).is_one());
}

TYPED_TEST(PairingTest, Bilinearity) {
    auto g1 = G1<TypeParam>::generator();
    auto g2 = G2<TypeParam>::generator();
    auto e = pairing(g1, g2);
    const mpz_class& r = GroupCtx<TypeParam>::get().r;
    for (int i = 0; i < 100; ++i) {
        mpz_class a = this->rand_scalar(), b = this->rand_scalar();
        auto lhs = pairing(g1.mul(a), g2.mul(b));
        EXPECT_EQ(lhs, e.pow(a * b % r)) << "iteration " << i;
    }
}

TYPED_TEST(PairingTest, LeftLinearity) {
    auto g1 = G1<TypeParam>::generator();
    auto g2 = G2<TypeParam>::generator();
    for (int i = 0; i < 5; ++i) {
        mpz_class a = this->rand_scalar(), b = this->rand_scalar();
        auto A = g1.mul(a), B = g1.mul(b);
        EXPECT_EQ(pairing<TypeParam>(A.add(B), g2),
                  pairing(A, g2).mul(pairing(B, g2)));
    }
}

TYPED_TEST(PairingTest, InfinityMapsToIdentity) {
    EXPECT_TRUE(pairing(G1<TypeParam>{}, G2<TypeParam>::generator()).is_one());
    EXPECT_TRUE(pairing(G1<TypeParam>::generator(), G2<TypeParam>{}).is_one());
}

TYPED_TEST(PairingTest, FinalExpMatchesGenericPow) {
    const auto& ctx = PairingCtx<TypeParam>::get();
    mpz_class p12;
    mpz_pow_ui(p12.get_mpz_t(), ctx.p.get_mpz_t(), 12);
    mpz_class full = 3 * (p12 - 1) / ctx.r;
    for (int k : {3, 11}) {
        auto f = miller_loop(G1<TypeParam>::generator().mul(k),
                             G2<TypeParam>::generator().mul(k + 1));
        EXPECT_EQ(final_exp(f), f.pow(full));
    }
}

TYPED_TEST(PairingTest, AccumulatorIdentity) {
    // e(sigma, g2) = e(g1^gamma, g2^{sk_O * sk_C}) when
    // sigma = (g1^{sk_C})^{gamma * sk_O}
    auto g1 = G1<TypeParam>::generator();
    auto g2 = G2<TypeParam>::generator();
    const mpz_class& r = GroupCtx<TypeParam>::get().r;
    for (int i = 0; i < 100; ++i) {
        mpz_class gamma = this->rand_scalar();
        mpz_class sk_o = this->rand_scalar();
        mpz_class sk_c = this->rand_scalar();
        auto pk_c = g1.mul(sk_c);
        auto sigma = pk_c.mul(gamma * sk_o % r);
        EXPECT_EQ(pairing<TypeParam>(sigma, g2),
                  pairing<TypeParam>(g1.mul(gamma), g2.mul(sk_o * sk_c % r)))
            << "iteration " << i;
    }
}

TYPED_TEST(PairingTest, GtSerde) {
    auto e = pairing(G1<TypeParam>::generator().mul(5), G2<TypeParam>::generator().mul(9));
    Bytes b = e.to_bytes();
    EXPECT_EQ(b.size(), GT<TypeParam>::BYTES);
    EXPECT_EQ(GT<TypeParam>::from_bytes(b), e);

    EXPECT_EQ(GT<TypeParam>::from_bytes(GT<TypeParam>::one().to_bytes()), GT<TypeParam>::one());

    Bytes junk(GT<TypeParam>::BYTES, 0);
    junk[GT<TypeParam>::BYTES - 1] = 2;  // Fp12 element outside the order-r subgroup
    EXPECT_THROW(GT<TypeParam>::from_bytes(junk), FormatError);

    Bytes wide(GT<TypeParam>::BYTES, 0xff);
    EXPECT_THROW(GT<TypeParam>::from_bytes(wide), FormatError);

    EXPECT_THROW(GT<TypeParam>::from_bytes(Bytes(7, 0)), FormatError);
}

TYPED_TEST(PairingTest, GtOps) {
    auto e = pairing(G1<TypeParam>::generator(), G2<TypeParam>::generator());
    mpz_class a = this->rand_scalar(), b = this->rand_scalar();
    const mpz_class& r = GroupCtx<TypeParam>::get().r;
    EXPECT_EQ(e.pow(a).mul(e.pow(b)), e.pow((a + b) % r));
    EXPECT_TRUE(e.mul(e.inverse()).is_one());
    EXPECT_EQ(e.pow(a).inverse(), e.pow(r - a));
}

}  // namespace
