#include "trapfree/lamport.hpp"

#include <string>

#include "trapfree/errors.hpp"
#include "trapfree/hash_primitives.hpp"

namespace trapfree::lamport {
namespace {

template <std::size_t N>
void append_digests(Bytes& out, const std::array<Digest256, N>& digests) {
  for (const auto& d : digests) append(out, d.view());
}

template <std::size_t N>
void read_digests(ByteView data, std::size_t offset, std::array<Digest256, N>& out) {
  for (std::size_t i = 0; i < N; ++i) {
    out[i] = Digest256::from_bytes(data.subspan(offset + i * Digest256::kSize, Digest256::kSize));
  }
}

void expect_size(ByteView data, std::size_t expected, const char* what) {
  if (data.size() != expected) {
    throw InvalidInput(std::string("lamport ") + what + " must be " + std::to_string(expected) +
                       " bytes, got " + std::to_string(data.size()));
  }
}

}  // namespace

KeyPair keygen(const Seed& seed) {
  KeyPair kp;
  kp.secret_key.seed = seed;
  for (std::uint32_t i = 0; i < kSlots; ++i) {
    kp.secret_key.a_keys[i] = prg_expand(seed, tag::kLamportA, i);
    kp.secret_key.b_keys[i] = prg_expand(seed, tag::kLamportB, i);
    kp.public_key.a_hashes[i] = sha256(kp.secret_key.a_keys[i].view());
    kp.public_key.b_hashes[i] = sha256(kp.secret_key.b_keys[i].view());
  }
  return kp;
}

Signature sign(const SecretKey& sk, ByteView message) {
  const Digest256 h = sha256(message);
  Signature sig;
  for (std::size_t i = 0; i < kSlots; ++i) {
    sig.revealed[i] = digest_bit(h, i) == 0 ? sk.a_keys[i] : sk.b_keys[i];
  }
  return sig;
}

bool verify(const PublicKey& pk, ByteView message, const Signature& sig) {
  const Digest256 h = sha256(message);
  bool ok = true;
  for (std::size_t i = 0; i < kSlots; ++i) {
    const Digest256& expected = digest_bit(h, i) == 0 ? pk.a_hashes[i] : pk.b_hashes[i];
    ok &= sha256(sig.revealed[i].view()) == expected;
  }
  return ok;
}

Bytes serialize(const PublicKey& pk) {
  Bytes out;
  out.reserve(kKeyBytes);
  append_digests(out, pk.a_hashes);
  append_digests(out, pk.b_hashes);
  return out;
}

Bytes serialize(const SecretKey& sk) {
  Bytes out;
  out.reserve(kKeyBytes);
  append_digests(out, sk.a_keys);
  append_digests(out, sk.b_keys);
  return out;
}

Bytes serialize(const Signature& sig) {
  Bytes out;
  out.reserve(kSignatureBytes);
  append_digests(out, sig.revealed);
  return out;
}

PublicKey parse_public_key(ByteView data) {
  expect_size(data, kKeyBytes, "public key");
  PublicKey pk;
  read_digests(data, 0, pk.a_hashes);
  read_digests(data, kKeyBytes / 2, pk.b_hashes);
  return pk;
}

// The seed is not part of the serialized form; only the revealed material is.
SecretKey parse_secret_key(ByteView data) {
  expect_size(data, kKeyBytes, "secret key");
  SecretKey sk{};
  read_digests(data, 0, sk.a_keys);
  read_digests(data, kKeyBytes / 2, sk.b_keys);
  return sk;
}

Signature parse_signature(ByteView data) {
  expect_size(data, kSignatureBytes, "signature");
  Signature sig;
  read_digests(data, 0, sig.revealed);
  return sig;
}

}  // namespace trapfree::lamport
