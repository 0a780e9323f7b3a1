#include "trapfree/merkle_many_time.hpp"

#include <string>

#include "trapfree/errors.hpp"

namespace trapfree::merkle {
namespace {

void check_height(int height) {
  if (height < kMinHeight || height > kMaxHeight) {
    throw ParameterError("merkle height must be in [" + std::to_string(kMinHeight) + ", " +
                         std::to_string(kMaxHeight) + "], got " + std::to_string(height));
  }
}

std::shared_ptr<const std::vector<Digest256>> build_leaves(const Seed& master_seed, int height,
                                                           wots::Mode mode) {
  const std::uint32_t count = std::uint32_t{1} << height;
  auto leaves = std::make_shared<std::vector<Digest256>>();
  leaves->reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    leaves->push_back(leaf_digest(wots::keygen(leaf_seed(master_seed, i), mode).public_key));
  }
  return leaves;
}

}  // namespace

Seed leaf_seed(const Seed& master_seed, std::uint32_t leaf_index) {
  Seed s;
  s.bytes = prg_expand(master_seed, tag::kMerkleLeaf, leaf_index).bytes;
  return s;
}

Digest256 leaf_digest(const wots::PublicKey& leaf_public) {
  return sha256(wots::serialize(leaf_public));
}

KeyPair::KeyPair(const Seed& master_seed, int height, wots::Mode mode)
    : master_seed_(master_seed), height_(height), mode_(mode) {
  check_height(height);
  leaves_ = build_leaves(master_seed, height, mode);
  root_ = merkle_root(*leaves_);
}

KeyPair KeyPair::with_next_leaf(std::uint64_t next_leaf) const {
  if (next_leaf > capacity()) {
    throw ParameterError("leaf counter " + std::to_string(next_leaf) + " exceeds capacity " +
                         std::to_string(capacity()));
  }
  KeyPair copy = *this;
  copy.next_leaf_ = next_leaf;
  return copy;
}

KeyPair keygen(const Seed& master_seed, int height, wots::Mode mode) {
  return KeyPair(master_seed, height, mode);
}

SignResult sign(const KeyPair& keypair, ByteView message) {
  if (keypair.remaining() == 0) {
    throw KeysExhausted("all " + std::to_string(keypair.capacity()) +
                        " merkle leaves have been used");
  }
  const auto index = static_cast<std::uint32_t>(keypair.next_leaf());
  const wots::KeyPair leaf = wots::keygen(leaf_seed(keypair.master_seed(), index), keypair.mode());

  Signature sig;
  sig.leaf_index = index;
  sig.wots_sig = wots::sign(leaf.secret_key, message);
  sig.leaf_public = leaf.public_key;
  sig.auth_path = merkle_path(keypair.leaf_digests(), index);
  return SignResult{std::move(sig), keypair.with_next_leaf(keypair.next_leaf() + 1)};
}

bool verify(const Digest256& root, ByteView message, const Signature& sig) {
  if (sig.auth_path.leaf_index != sig.leaf_index) return false;
  if (!wots::verify(sig.leaf_public, message, sig.wots_sig)) return false;
  return verify_path(leaf_digest(sig.leaf_public), sig.auth_path, root);
}

std::size_t signature_size(int height, wots::Mode mode) {
  const std::size_t wots_bytes = wots::chain_count(mode) * Digest256::kSize;
  return 4 + 2 * wots_bytes + static_cast<std::size_t>(height) * Digest256::kSize;
}

Bytes serialize(const Signature& sig) {
  Bytes out;
  put_u32_be(out, sig.leaf_index);
  append(out, wots::serialize(sig.wots_sig));
  append(out, wots::serialize(sig.leaf_public));
  for (const auto& s : sig.auth_path.siblings) append(out, s.view());
  return out;
}

Signature parse_signature(ByteView data, wots::Mode mode) {
  const std::size_t wots_bytes = wots::chain_count(mode) * Digest256::kSize;
  const std::size_t fixed = 4 + 2 * wots_bytes;
  if (data.size() < fixed + Digest256::kSize || (data.size() - fixed) % Digest256::kSize != 0) {
    throw InvalidInput("merkle signature has malformed length " + std::to_string(data.size()));
  }
  const std::size_t height = (data.size() - fixed) / Digest256::kSize;
  if (height > static_cast<std::size_t>(kMaxHeight)) {
    throw InvalidInput("merkle signature path longer than the maximum tree height");
  }
  Signature sig;
  sig.leaf_index = get_u32_be(data, 0);
  sig.wots_sig = wots::parse_signature(data.subspan(4, wots_bytes), mode);
  sig.leaf_public = wots::parse_public_key(data.subspan(4 + wots_bytes, wots_bytes), mode);
  sig.auth_path.leaf_index = sig.leaf_index;
  for (std::size_t i = 0; i < height; ++i) {
    sig.auth_path.siblings.push_back(
        Digest256::from_bytes(data.subspan(fixed + i * Digest256::kSize, Digest256::kSize)));
  }
  return sig;
}

}  // namespace trapfree::merkle
