#pragma once

#include <cstdint>
#include <vector>

#include "trapfree/bytes.hpp"

namespace trapfree {

// Domain tags for prg_expand. Each secret family draws from its own stream.
namespace tag {
inline constexpr std::uint8_t kLamportA = 0x0A;
inline constexpr std::uint8_t kLamportB = 0x0B;
inline constexpr std::uint8_t kWotsChain = 0x0C;
inline constexpr std::uint8_t kMerkleLeaf = 0x4C;
inline constexpr std::uint8_t kLatticeMatrixSeed = 0x40;
inline constexpr std::uint8_t kLatticeMatrix = 0x41;
inline constexpr std::uint8_t kLatticeSecret = 0x58;
inline constexpr std::uint8_t kLatticeError1 = 0x45;
inline constexpr std::uint8_t kLatticeMask = 0x59;
inline constexpr std::uint8_t kLatticeError2 = 0x46;
inline constexpr std::uint8_t kLatticeNonce = 0x4E;
inline constexpr std::uint8_t kLatticeChallenge = 0x43;
inline constexpr std::uint8_t kRsaCandidate = 0x52;
inline constexpr std::uint8_t kRsaWitness = 0x4D;
}  // namespace tag

Digest256 sha256(ByteView data);

/// sha256(a || b) without materializing the concatenation.
Digest256 sha256_pair(const Digest256& left, const Digest256& right);

/// Number of sha256 invocations (whole messages) performed on this thread.
/// Instrumentation for tests that count chain steps.
std::uint64_t sha256_call_count() noexcept;
void reset_sha256_call_count() noexcept;

/// Applies sha256 `iterations` times; returns `start` for zero iterations.
Digest256 hash_chain(const Digest256& start, std::uint32_t iterations);

/// sha256(seed || domain_tag || index as 4-byte big-endian).
Digest256 prg_expand(const Seed& seed, std::uint8_t domain_tag, std::uint32_t index);

/// Sibling digests from leaf level up to the root level.
struct MerkleAuthPath {
  std::uint32_t leaf_index = 0;
  std::vector<Digest256> siblings;

  friend bool operator==(const MerkleAuthPath&, const MerkleAuthPath&) = default;
};

/// Root of the binary tree with internal nodes sha256(left || right).
/// Throws InvalidInput unless leaves.size() is a non-zero power of two.
Digest256 merkle_root(std::span<const Digest256> leaves);

MerkleAuthPath merkle_path(std::span<const Digest256> leaves, std::uint32_t leaf_index);

/// Folds `leaf` up through the path; bit k of leaf_index set means the node at
/// level k is a right child.
bool verify_path(const Digest256& leaf, const MerkleAuthPath& path, const Digest256& root);

}  // namespace trapfree
