#pragma once

#include <array>
#include <cstddef>

#include "trapfree/bytes.hpp"

namespace trapfree::lamport {

inline constexpr std::size_t kSlots = 256;
inline constexpr std::size_t kKeyBytes = 2 * kSlots * Digest256::kSize;        // 16384
inline constexpr std::size_t kSignatureBytes = kSlots * Digest256::kSize;      // 8192

struct SecretKey {
  std::array<Digest256, kSlots> a_keys;  // revealed for message-hash bit 0
  std::array<Digest256, kSlots> b_keys;  // revealed for message-hash bit 1
  Seed seed;
};

struct PublicKey {
  std::array<Digest256, kSlots> a_hashes;
  std::array<Digest256, kSlots> b_hashes;

  friend bool operator==(const PublicKey&, const PublicKey&) = default;
};

struct Signature {
  std::array<Digest256, kSlots> revealed;

  friend bool operator==(const Signature&, const Signature&) = default;
};

struct KeyPair {
  PublicKey public_key;
  SecretKey secret_key;
};

KeyPair keygen(const Seed& seed);
Signature sign(const SecretKey& sk, ByteView message);

/// Slot i is checked against slot i of the public key only; a revealed value
/// that matches some other slot does not count.
bool verify(const PublicKey& pk, ByteView message, const Signature& sig);

// Raw digests in index order, A block then B block for keys.
Bytes serialize(const PublicKey& pk);
Bytes serialize(const SecretKey& sk);
Bytes serialize(const Signature& sig);
PublicKey parse_public_key(ByteView data);
SecretKey parse_secret_key(ByteView data);
Signature parse_signature(ByteView data);

}  // namespace trapfree::lamport
