#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "trapfree/bytes.hpp"

// Winternitz chains with w = 256: one chain per byte of the message digest.
//
// Plain mode is the bare construction (32 chains, no checksum). It is
// malleable: from a signature on digits N anyone can derive a valid signature
// for any digits N' >= N by hashing further along each chain. Checksum mode
// appends two chains carrying C = sum(255 - N_i), which shrinks whenever a
// message digit grows and so closes that hole.
namespace trapfree::wots {

inline constexpr std::uint32_t kChainLength = 256;
inline constexpr std::size_t kMessageDigits = 32;
inline constexpr std::size_t kChecksumDigits = 2;

enum class Mode : std::uint8_t { kPlain = 0x00, kChecksum = 0x01 };

constexpr std::size_t chain_count(Mode mode) noexcept {
  return mode == Mode::kChecksum ? kMessageDigits + kChecksumDigits : kMessageDigits;
}

struct SecretKey {
  std::vector<Digest256> chains;
  Seed seed;
  Mode mode = Mode::kPlain;
};

struct PublicKey {
  std::vector<Digest256> chain_ends;
  Mode mode = Mode::kPlain;

  friend bool operator==(const PublicKey&, const PublicKey&) = default;
};

struct Signature {
  std::vector<Digest256> elements;
  Mode mode = Mode::kPlain;

  friend bool operator==(const Signature&, const Signature&) = default;
};

struct KeyPair {
  PublicKey public_key;
  SecretKey secret_key;
};

KeyPair keygen(const Seed& seed, Mode mode);

std::vector<std::uint8_t> digits(ByteView message, Mode mode);
std::vector<std::uint8_t> digits_of_digest(const Digest256& digest, Mode mode);

Signature sign(const SecretKey& sk, ByteView message);
bool verify(const PublicKey& pk, ByteView message, const Signature& sig);

// Same operations on an already-computed message digest.
Signature sign_digest(const SecretKey& sk, const Digest256& digest);
bool verify_digest(const PublicKey& pk, const Digest256& digest, const Signature& sig);

/// Raw 32-byte chain ends in chain order (1024 or 1088 bytes).
Bytes serialize(const PublicKey& pk);
/// Raw 32-byte elements in chain order (1024 or 1088 bytes).
Bytes serialize(const Signature& sig);
/// Mode flag byte followed by the chain secrets.
Bytes serialize(const SecretKey& sk);

PublicKey parse_public_key(ByteView data, Mode mode);
Signature parse_signature(ByteView data, Mode mode);
SecretKey parse_secret_key(ByteView data);

}  // namespace trapfree::wots
