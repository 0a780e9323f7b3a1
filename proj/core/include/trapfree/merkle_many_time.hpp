#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "trapfree/bytes.hpp"
#include "trapfree/hash_primitives.hpp"
#include "trapfree/wots.hpp"

// Many-time signatures from a binary tree of WOTS key pairs. The public key is
// the 32-byte Merkle root over the leaf digests; each leaf signs once, in
// order, and a signature carries the leaf's WOTS public key and its
// authentication path.
namespace trapfree::merkle {

inline constexpr int kMinHeight = 1;
inline constexpr int kMaxHeight = 20;
inline constexpr int kDefaultHeight = 8;

class KeyPair {
 public:
  KeyPair(const Seed& master_seed, int height, wots::Mode mode);

  const Seed& master_seed() const noexcept { return master_seed_; }
  int height() const noexcept { return height_; }
  wots::Mode mode() const noexcept { return mode_; }
  const Digest256& root() const noexcept { return root_; }
  std::uint64_t next_leaf() const noexcept { return next_leaf_; }
  std::uint64_t capacity() const noexcept { return std::uint64_t{1} << height_; }
  std::uint64_t remaining() const noexcept { return capacity() - next_leaf_; }

  /// Rebuilds a key pair at a persisted counter. Throws ParameterError if the
  /// counter is past capacity.
  KeyPair with_next_leaf(std::uint64_t next_leaf) const;

  const std::vector<Digest256>& leaf_digests() const { return *leaves_; }

 private:
  Seed master_seed_;
  int height_;
  wots::Mode mode_;
  std::uint64_t next_leaf_ = 0;
  std::shared_ptr<const std::vector<Digest256>> leaves_;  // shared across counter updates
  Digest256 root_;
};

struct Signature {
  std::uint32_t leaf_index = 0;
  wots::Signature wots_sig;
  wots::PublicKey leaf_public;
  MerkleAuthPath auth_path;

  friend bool operator==(const Signature&, const Signature&) = default;
};

struct SignResult {
  Signature signature;
  KeyPair updated;
};

/// WOTS seed for leaf i.
Seed leaf_seed(const Seed& master_seed, std::uint32_t leaf_index);

/// sha256 over the concatenated chain ends of a leaf's WOTS public key.
Digest256 leaf_digest(const wots::PublicKey& leaf_public);

/// Throws ParameterError unless 1 <= height <= 20.
KeyPair keygen(const Seed& master_seed, int height, wots::Mode mode);

/// Signs with leaf next_leaf and returns the key pair advanced by one.
/// Throws KeysExhausted once all 2^height leaves are used.
SignResult sign(const KeyPair& keypair, ByteView message);

bool verify(const Digest256& root, ByteView message, const Signature& sig);

/// 4-byte leaf index, WOTS signature, WOTS public key, then height x 32 bytes
/// of siblings.
Bytes serialize(const Signature& sig);
Signature parse_signature(ByteView data, wots::Mode mode);

std::size_t signature_size(int height, wots::Mode mode);

}  // namespace trapfree::merkle
