#include "trapfree/rsa_trapdoor.hpp"

#include <gtest/gtest.h>

#include "test_util.hpp"
#include "trapfree/errors.hpp"

namespace trapfree {
namespace {

using rsa::BigInt;
using testing::counting_seed;

bool trial_division_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

BigInt random_below(std::mt19937_64& rng, const BigInt& bound) {
  BigInt v = 0;
  for (int i = 0; i < 10; ++i) v = (v << 64) | rng();
  return v % bound;
}

TEST(RsaArithmetic, ModPowAgreesWithBoostPowm) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const BigInt m = random_below(rng, BigInt(1) << 300) + 2;
    const BigInt b = random_below(rng, m * 3);
    const BigInt e = random_below(rng, BigInt(1) << 200);
    ASSERT_EQ(rsa::mod_pow(b, e, m), boost::multiprecision::powm(b, e, m));
  }
  EXPECT_EQ(rsa::mod_pow(5, 0, 7), 1);
  EXPECT_EQ(rsa::mod_pow(5, 3, 1), 0);
  EXPECT_THROW(rsa::mod_pow(2, 2, 0), InvalidInput);
}

TEST(RsaArithmetic, ModInverse) {
  EXPECT_EQ(rsa::mod_inverse(17, 3120), 2753);
  EXPECT_EQ(17 * 2753 % 3120, 1);
  EXPECT_THROW(rsa::mod_inverse(6, 3120), InvalidInput);
}

TEST(RsaArithmetic, MillerRabinMatchesTrialDivision) {
  for (unsigned n = 0; n < 20000; ++n) {
    ASSERT_EQ(rsa::is_probable_prime(n, 40, counting_seed()), trial_division_prime(n)) << n;
  }
  // Carmichael numbers fool the Fermat test but not Miller-Rabin.
  for (unsigned n : {561u, 1105u, 1729u, 2465u, 2821u, 6601u, 8911u}) {
    EXPECT_FALSE(rsa::is_probable_prime(n, 40, counting_seed())) << n;
  }
  EXPECT_TRUE(rsa::is_probable_prime(BigInt("170141183460469231731687303715884105727"), 40,
                                     counting_seed()));  // 2^127 - 1
}

TEST(RsaKeygen, ToyKey) {
  const auto key = rsa::from_primes(61, 53);
  EXPECT_EQ(key.n, 3233);
  EXPECT_EQ(key.phi, 3120);
  EXPECT_EQ(key.e, 65537);
  const auto toy = rsa::from_primes(61, 53, BigInt(17));
  EXPECT_EQ(toy.d, 2753);
}

TEST(RsaKeygen, FallbackExponentWhen65537DividesPhi) {
  // 917519 = 14 * 65537 + 1 is prime, so 65537 divides phi.
  ASSERT_TRUE(rsa::is_probable_prime(917519, 40, counting_seed()));
  const auto key = rsa::from_primes(917519, 53);
  EXPECT_EQ(key.e, 17);
  EXPECT_EQ(key.e * key.d % key.phi, 1);
}

TEST(RsaKeygen, InvariantsHold) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const auto key = rsa::keygen(128, testing::random_seed(rng));
    ASSERT_EQ(key.n, key.p * key.q);
    ASSERT_EQ(key.phi, (key.p - 1) * (key.q - 1));
    ASSERT_EQ(boost::multiprecision::gcd(key.e, key.phi), 1);
    ASSERT_EQ(key.e * key.d % key.phi, 1);
    ASSERT_NE(key.p, key.q);
    ASSERT_EQ(boost::multiprecision::msb(key.n), 127u);
  }
}

TEST(RsaKeygen, DeterministicKnownAnswer) {
  const auto key = rsa::keygen(128, counting_seed());
  EXPECT_EQ(key.p, BigInt("16189512151869304637"));
  EXPECT_EQ(key.q, BigInt("17659536844884902081"));
  EXPECT_EQ(key.e, 65537);
  EXPECT_EQ(rsa::keygen(128, counting_seed()).d, key.d);
}

TEST(RsaKeygen, RejectsBadSizes) {
  EXPECT_THROW(rsa::keygen(30, counting_seed()), ParameterError);
  EXPECT_THROW(rsa::keygen(4098, counting_seed()), ParameterError);
  EXPECT_THROW(rsa::keygen(129, counting_seed()), ParameterError);
  EXPECT_NO_THROW(rsa::keygen(32, counting_seed()));
}

TEST(RsaSign, EdgeRepresentatives) {
  const auto key = rsa::from_primes(61, 53, BigInt(17));
  EXPECT_EQ(rsa::sign_representative(key, 0).s, 0);
  EXPECT_EQ(rsa::sign_representative(key, 1).s, 1);
  const auto s = rsa::sign_representative(key, 123).s;
  EXPECT_EQ(boost::multiprecision::powm(s, BigInt(17), BigInt(3233)), 123);
}

TEST(RsaSign, RoundtripAndTamper) {
  std::mt19937_64 rng(3);
  const auto key = rsa::keygen(128, testing::random_seed(rng));
  for (int trial = 0; trial < 100; ++trial) {
    Bytes msg = testing::random_message(rng);
    const auto sig = rsa::sign(key, msg);
    ASSERT_TRUE(rsa::verify(key.e, key.n, msg, sig));
    ASSERT_FALSE(rsa::verify(key.e, key.n, msg, rsa::Signature{(sig.s + 1) % key.n}));
    testing::flip_bit(msg, rng() % (msg.size() * 8));
    ASSERT_FALSE(rsa::verify(key.e, key.n, msg, sig));
  }
}

TEST(RsaSign, RoundtripAt512Bits) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 5; ++trial) {
    const auto key = rsa::keygen(512, testing::random_seed(rng));
    const Bytes msg = testing::random_message(rng);
    EXPECT_TRUE(rsa::verify(key.e, key.n, msg, rsa::sign(key, msg)));
  }
}

TEST(RsaSign, OutOfRangeSignatureFails) {
  const auto key = rsa::keygen(64, counting_seed());
  EXPECT_FALSE(rsa::verify(key.e, key.n, as_bytes("m"), rsa::Signature{key.n}));
  EXPECT_FALSE(rsa::verify(key.e, key.n, as_bytes("m"), rsa::Signature{-1}));
}

TEST(Fermat, HandCases) {
  EXPECT_TRUE(rsa::fermat_check(2, 7));
  EXPECT_FALSE(rsa::fermat_check(2, 15));
  EXPECT_EQ(rsa::mod_pow(2, 14, 15), 4);
}

TEST(Fermat, ExhaustiveForSmallPrimes) {
  for (unsigned p = 2; p <= 101; ++p) {
    if (!trial_division_prime(p)) continue;
    for (unsigned a = 1; a < p; ++a) ASSERT_TRUE(rsa::fermat_check(a, p)) << a << " mod " << p;
  }
}

TEST(RsaSerialization, TextRoundtripAndErrors) {
  const auto key = rsa::keygen(128, counting_seed());
  const auto pk = rsa::parse_public_key(rsa::serialize(rsa::public_key(key)));
  EXPECT_EQ(pk, rsa::public_key(key));
  EXPECT_EQ(rsa::parse_secret_key(rsa::serialize_secret(key)).d, key.d);
  EXPECT_EQ(rsa::serialize(rsa::Signature{BigInt(42)}), "42\n");
  EXPECT_EQ(rsa::parse_signature("42\n").s, 42);
  EXPECT_THROW(rsa::parse_signature("4x2"), InvalidInput);
  EXPECT_THROW(rsa::parse_signature(""), InvalidInput);
  EXPECT_THROW(rsa::parse_public_key("N=33\n"), InvalidInput);
  EXPECT_THROW(rsa::parse_public_key("garbage"), InvalidInput);
}

}  // namespace
}  // namespace trapfree
