#include "trapfree/scheme_api.hpp"

#include <gtest/gtest.h>

#include "test_util.hpp"
#include "trapfree/errors.hpp"

namespace trapfree {
namespace {

using testing::counting_seed;

SchemeParams fast_params(SchemeId scheme) {
  SchemeParams p;
  if (scheme == SchemeId::kRsa) p.bits = 128;
  if (scheme == SchemeId::kMerkle) p.height = 2;
  return p;
}

TEST(SchemeTokens, RoundtripAndTags) {
  for (SchemeId id : kAllSchemes) {
    EXPECT_EQ(parse_scheme_token(scheme_token(id)), id);
    EXPECT_EQ(scheme_from_tag(scheme_tag(id)), id);
  }
  EXPECT_EQ(scheme_tag(SchemeId::kRsa), 0x01);
  EXPECT_EQ(scheme_tag(SchemeId::kLatticeFs), 0x06);
  EXPECT_EQ(scheme_token(SchemeId::kWotsChecksum), "wots-checksum");
  EXPECT_THROW(parse_scheme_token("bogus-scheme"), InvalidInput);
  EXPECT_THROW(parse_scheme_token("RSA"), InvalidInput);
  EXPECT_THROW(scheme_from_tag(0x07), InvalidInput);
}

TEST(SchemeKeygen, UsageBounds) {
  EXPECT_EQ(keygen(SchemeId::kLamport, {}, counting_seed()).usage.max, 1u);
  EXPECT_EQ(keygen(SchemeId::kWots, {}, counting_seed()).usage.max, 1u);
  SchemeParams merkle_params;
  merkle_params.height = 3;
  EXPECT_EQ(keygen(SchemeId::kMerkle, merkle_params, counting_seed()).usage.max, 8u);
  EXPECT_FALSE(keygen(SchemeId::kRsa, fast_params(SchemeId::kRsa), counting_seed()).usage.max);
  EXPECT_FALSE(keygen(SchemeId::kLatticeFs, {}, counting_seed()).usage.max);
}

TEST(SchemeKeygen, RejectsInapplicableParams) {
  SchemeParams p;
  p.height = 3;
  EXPECT_THROW(keygen(SchemeId::kLamport, p, counting_seed()), ParameterError);
  p = {};
  p.bits = 128;
  EXPECT_THROW(keygen(SchemeId::kWots, p, counting_seed()), ParameterError);
  p = {};
  p.checksum = true;
  EXPECT_THROW(keygen(SchemeId::kRsa, p, counting_seed()), ParameterError);
  p = {};
  p.height = 25;
  EXPECT_THROW(keygen(SchemeId::kMerkle, p, counting_seed()), ParameterError);
}

TEST(SchemeKeygen, WotsChecksumFlagSelectsChecksumScheme) {
  SchemeParams p;
  p.checksum = true;
  const auto record = keygen(SchemeId::kWots, p, counting_seed());
  EXPECT_EQ(record.scheme, SchemeId::kWotsChecksum);
  EXPECT_EQ(record.public_blob.size(), 1088u);
}

TEST(SchemeApi, RoundtripAndTamperEveryScheme) {
  std::mt19937_64 rng(1);
  for (SchemeId scheme : kAllSchemes) {
    const int trials = scheme == SchemeId::kMerkle ? 10 : 50;
    for (int trial = 0; trial < trials; ++trial) {
      const auto record = keygen(scheme, fast_params(scheme), testing::random_seed(rng));
      Bytes msg = testing::random_message(rng);
      const auto result = sign(record, msg);
      EXPECT_EQ(result.signature.scheme, scheme);
      EXPECT_EQ(result.signature.encode()[0], scheme_tag(scheme));
      ASSERT_TRUE(verify(scheme, record.public_blob, msg, result.signature))
          << scheme_token(scheme);
      testing::flip_bit(msg, rng() % (msg.size() * 8));
      ASSERT_FALSE(verify(scheme, record.public_blob, msg, result.signature))
          << scheme_token(scheme);
    }
  }
}

TEST(SchemeApi, MerkleChecksumKeysVerify) {
  SchemeParams p;
  p.height = 5;
  p.checksum = true;
  auto record = keygen(SchemeId::kMerkle, p, counting_seed());
  // Height 5 checksum payloads have the same length as height 9 plain ones.
  auto result = sign(record, as_bytes("checksum merkle"));
  EXPECT_TRUE(verify(SchemeId::kMerkle, record.public_blob, as_bytes("checksum merkle"),
                     result.signature));
  EXPECT_FALSE(verify(SchemeId::kMerkle, record.public_blob, as_bytes("other"), result.signature));
}

TEST(SchemeApi, ExhaustionFiresAtExactlyMaxPlusOne) {
  for (SchemeId scheme : {SchemeId::kLamport, SchemeId::kWots, SchemeId::kWotsChecksum,
                          SchemeId::kMerkle}) {
    SchemeParams p;
    if (scheme == SchemeId::kMerkle) p.height = 1;
    auto record = keygen(scheme, p, counting_seed());
    const std::uint64_t max = *record.usage.max;
    for (std::uint64_t i = 0; i < max; ++i) {
      auto result = sign(record, as_bytes("use"));
      EXPECT_EQ(result.updated.usage.consumed, i + 1);
      record = result.updated;
    }
    EXPECT_TRUE(record.usage.exhausted());
    EXPECT_THROW(sign(record, as_bytes("one too many")), KeysExhausted) << scheme_token(scheme);
  }
}

TEST(SchemeApi, UnboundedSchemesKeepSigning) {
  auto record = keygen(SchemeId::kRsa, fast_params(SchemeId::kRsa), counting_seed());
  for (int i = 0; i < 1000; ++i) {
    const Bytes msg{static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(i >> 8)};
    auto result = sign(record, msg);
    ASSERT_TRUE(verify(SchemeId::kRsa, record.public_blob, msg, result.signature));
    record = result.updated;
  }
  EXPECT_EQ(record.usage.consumed, 0u);
}

TEST(SchemeApi, CrossSchemeAndFramingErrors) {
  const auto lam = keygen(SchemeId::kLamport, {}, counting_seed());
  const auto wots_key = keygen(SchemeId::kWots, {}, counting_seed());
  const auto sig = sign(lam, as_bytes("m")).signature;
  EXPECT_THROW(verify(SchemeId::kWots, wots_key.public_blob, as_bytes("m"), sig), InvalidInput);
  EXPECT_THROW(SignatureBlob::decode(Bytes{}), InvalidInput);
  EXPECT_THROW(SignatureBlob::decode(Bytes{0x09, 0x00}), InvalidInput);

  Bytes truncated = sig.encode();
  truncated.resize(100);
  EXPECT_THROW(verify(SchemeId::kLamport, lam.public_blob, as_bytes("m"),
                      SignatureBlob::decode(truncated)),
               InvalidInput);
  EXPECT_EQ(SignatureBlob::decode(sig.encode()), sig);
}

TEST(SchemeApi, VerifyDoesNotTouchTheRecord) {
  const auto record = keygen(SchemeId::kMerkle, fast_params(SchemeId::kMerkle), counting_seed());
  const auto before = record;
  const auto result = sign(record, as_bytes("m"));
  verify(record.scheme, record.public_blob, as_bytes("m"), result.signature);
  EXPECT_EQ(record, before);
}

}  // namespace
}  // namespace trapfree
