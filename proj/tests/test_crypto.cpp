#include <gtest/gtest.h>

#include <set>
#include <unordered_set>

#include "masse/params.hpp"
#include "masse/prf.hpp"
#include "masse/rand.hpp"
#include "masse/scalar.hpp"
#include "masse/sym.hpp"

#include "crypto_kat.inc"

using namespace masse;

namespace {

Bytes hx(const char* s) { return from_hex(s); }

Bytes le_counter_msg(std::uint64_t i) {
    Bytes m;
    append_u64(m, i);
    return m;
}

}  // namespace

TEST(PrfF, KnownAnswers) {
    for (const auto& v : kPrfFVecs) {
        Bytes got = prf_f(hx(v.key), v.label, hx(v.msg));
        EXPECT_EQ(to_hex(got), v.out) << v.label << " lambda=" << v.lambda_;
        EXPECT_EQ(got.size(), static_cast<std::size_t>(v.lambda_) / 8);
    }
}

TEST(PrfF, DeterministicAndSeparated) {
    Bytes key = random_bytes(32);
    Bytes msg = hx("00ff17");
    EXPECT_EQ(prf_f(key, "stag", msg), prf_f(key, "stag", msg));
    EXPECT_NE(prf_f(key, "stag", msg), prf_f(key, "xtrap", msg));
}

TEST(PrfF, NoCollisionsAcrossMessagesOrKeys) {
    Bytes key = hx("000102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f");
    std::unordered_set<std::string> seen;
    for (std::uint64_t i = 0; i < 10000; ++i) {
        auto out = to_hex(prf_f(key, "stag", le_counter_msg(i)));
        EXPECT_TRUE(seen.insert(out).second) << "message collision at " << i;
    }
    Bytes msg = hx("deadbeef");
    std::unordered_set<std::string> seen_k;
    for (std::uint64_t i = 0; i < 10000; ++i) {
        Bytes k2(24, 0);
        append_u64(k2, i);
        auto out = to_hex(prf_f(k2, "stag", msg));
        EXPECT_TRUE(seen_k.insert(out).second) << "key collision at " << i;
    }
}

TEST(PrfF, RejectsBadInputs) {
    EXPECT_THROW(prf_f(Bytes(7, 0), "stag", Bytes{}), CryptoError);
    Bytes key(16, 1);
    EXPECT_THROW(prf_f(key, std::string_view("a\0b", 3), Bytes{}), CryptoError);
}

template <class C>
struct CurveName;
template <>
struct CurveName<Bls12_381> {
    static constexpr const char* value = "bls12-381";
};
template <>
struct CurveName<Bls12_383> {
    static constexpr const char* value = "bls12-383";
};

template <class C>
class ScalarPrfTest : public ::testing::Test {};

using Curves = ::testing::Types<Bls12_381, Bls12_383>;
TYPED_TEST_SUITE(ScalarPrfTest, Curves);

TYPED_TEST(ScalarPrfTest, FpKnownAnswers) {
    int matched = 0;
    for (const auto& v : kPrfFpVecs) {
        if (std::string(v.curve) != CurveName<TypeParam>::value)
            continue;
        auto s = prf_fp<TypeParam>(hx(v.key), v.label, hx(v.msg));
        mpz_class expect = mpz_from_hex(v.out_hex);
        EXPECT_EQ(s.value(), expect) << v.label;
        ++matched;
    }
    EXPECT_EQ(matched, 12);
}

TYPED_TEST(ScalarPrfTest, FpRangeAndUniformity) {
    using S = Scalar<TypeParam>;
    Bytes key(TypeParam::KEY_BYTES, 0x5a);
    const mpz_class& r = S::order();
    std::array<int, 16> buckets{};
    const int samples = 10000;
    for (int i = 0; i < samples; ++i) {
        auto s = prf_fp<TypeParam>(key, "wtag", le_counter_msg(i));
        ASSERT_GT(s.value(), 0);
        ASSERT_LT(s.value(), r);
        mpz_class idx = (s.value() * 16) / r;
        buckets[idx.get_ui()]++;
    }
    double expected = samples / 16.0;
    double chi2 = 0;
    for (int count : buckets) {
        double d = count - expected;
        chi2 += d * d / expected;
    }
    // chi-square critical value, 15 degrees of freedom, p = 0.001
    EXPECT_LT(chi2, 37.697);
}

TYPED_TEST(ScalarPrfTest, ScalarFieldAxioms) {
    using S = Scalar<TypeParam>;
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(99);
    const mpz_class& r = S::order();
    for (int i = 0; i < 1000; ++i) {
        S a = S::from_mpz(rng.get_z_range(r));
        S b = S::from_mpz(rng.get_z_range(r));
        S c = S::from_mpz(rng.get_z_range(r));
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ(a - a, S{});
        if (!a.is_zero()) {
            EXPECT_EQ(a * a.inv(), S::from_u64(1));
        }
    }
    EXPECT_THROW(S{}.inv(), CryptoError);
}

TYPED_TEST(ScalarPrfTest, ScalarSerialization) {
    using S = Scalar<TypeParam>;
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(7);
    for (int i = 0; i < 50; ++i) {
        S a = S::from_mpz(rng.get_z_range(S::order() - 1) + 1);
        Bytes b = a.to_bytes();
        EXPECT_EQ(b.size(), TypeParam::SCALAR_BYTES);
        EXPECT_EQ(S::from_bytes(b), a);
    }
    EXPECT_THROW(S{}.to_bytes(), CryptoError);
    Bytes zero(TypeParam::SCALAR_BYTES, 0);
    EXPECT_THROW(S::from_bytes(zero), FormatError);
    Bytes big = mpz_to_be(S::order(), TypeParam::SCALAR_BYTES);
    EXPECT_THROW(S::from_bytes(big), FormatError);
    EXPECT_THROW(S::from_bytes(Bytes(3, 1)), FormatError);
}

TYPED_TEST(ScalarPrfTest, RandomScalars) {
    auto a = random_scalar<TypeParam>();
    auto b = random_scalar<TypeParam>();
    EXPECT_FALSE(a.is_zero());
    EXPECT_NE(a, b);
}

TEST(HashH, KnownAnswers) {
    for (const auto& v : kHashVecs)
        EXPECT_EQ(to_hex(hash_h(hx(v.msg))), v.out);
}

TEST(HashH, NoCollisionsAtScale) {
    std::unordered_set<std::string> seen;
    seen.reserve(100000);
    for (std::uint64_t i = 0; i < 100000; ++i) {
        auto d = to_hex(hash_h(le_counter_msg(i)));
        ASSERT_TRUE(seen.insert(d).second) << "collision at " << i;
    }
}

TEST(SymCipher, KnownAnswers) {
    for (const auto& v : kSymVecs) {
        Bytes key = hx(v.key);
        Bytes ct = sym_encrypt_with_iv(key, hx(v.iv), hx(v.pt));
        EXPECT_EQ(to_hex(ct), v.ct);
        auto pt = sym_decrypt(key, ct);
        ASSERT_TRUE(pt.has_value());
        EXPECT_EQ(to_hex(*pt), v.pt);
    }
}

TEST(SymCipher, RoundTripAndFreshNonce) {
    Bytes key = random_bytes(32);
    Bytes pt = hx("696e645f30303432");
    Bytes c1 = sym_encrypt(key, pt);
    Bytes c2 = sym_encrypt(key, pt);
    EXPECT_NE(c1, c2);
    EXPECT_EQ(sym_decrypt(key, c1).value(), pt);
    EXPECT_EQ(sym_decrypt(key, c2).value(), pt);
    EXPECT_EQ(sym_decrypt(key, sym_encrypt(key, Bytes{})).value(), Bytes{});
}

TEST(SymCipher, WrongKeyRejected) {
    Bytes key = random_bytes(16);
    Bytes ct = sym_encrypt(key, hx("11223344"));
    int false_accepts = 0;
    for (int i = 0; i < 1000; ++i) {
        Bytes bad = random_bytes(16);
        if (bad == key)
            continue;
        if (sym_decrypt(bad, ct).has_value())
            ++false_accepts;
    }
    EXPECT_EQ(false_accepts, 0);
    EXPECT_FALSE(sym_decrypt(key, Bytes(5, 0)).has_value());
    EXPECT_THROW(sym_encrypt(Bytes(9, 0), Bytes{}), CryptoError);
}

TEST(Params, SetupByLambda) {
    PublicParams a = setup_params(128);
    EXPECT_EQ(a.curve, "bls12-381");
    EXPECT_EQ(a.key_bytes, 16u);
    PublicParams b = setup_params(256);
    EXPECT_EQ(b.curve, "bls12-383");
    EXPECT_EQ(b.key_bytes, 32u);
    mpz_class order = mpz_from_hex(b.group_order_hex.c_str());
    mpz_class bound = mpz_class(1) << 256;
    EXPECT_GE(order, bound);

    PublicParams b2 = setup_params(256);
    EXPECT_EQ(b.curve, b2.curve);
    EXPECT_EQ(b.group_order_hex, b2.group_order_hex);
    EXPECT_EQ(b.g1_bytes, b2.g1_bytes);

    EXPECT_THROW(setup_params(100), ConfigError);
    EXPECT_THROW(setup_params(0), ConfigError);
}

TEST(Params, DispatchByLambda) {
    int got = dispatch_lambda(128, [](auto curve) {
        using C = decltype(curve);
        return C::LAMBDA;
    });
    EXPECT_EQ(got, 128);
    EXPECT_THROW(dispatch_lambda(512, [](auto) { return 0; }), ConfigError);
}
