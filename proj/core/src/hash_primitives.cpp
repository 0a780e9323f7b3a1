#include "trapfree/hash_primitives.hpp"

#include <openssl/evp.h>

#include <bit>
#include <memory>
#include <stdexcept>

#include "trapfree/errors.hpp"

namespace trapfree {
namespace {

thread_local std::uint64_t g_sha256_calls = 0;

struct MdCtxDeleter {
  void operator()(EVP_MD_CTX* ctx) const noexcept { EVP_MD_CTX_free(ctx); }
};

// One digest context per thread; the fetched SHA-256 implementation is shared.
class Sha256Engine {
 public:
  Sha256Engine() : ctx_(EVP_MD_CTX_new()) {
    if (!ctx_) throw std::runtime_error("EVP_MD_CTX_new failed");
  }

  void init() {
    if (EVP_DigestInit_ex(ctx_.get(), md(), nullptr) != 1) {
      throw std::runtime_error("EVP_DigestInit_ex failed");
    }
  }
  void update(ByteView data) {
    if (EVP_DigestUpdate(ctx_.get(), data.data(), data.size()) != 1) {
      throw std::runtime_error("EVP_DigestUpdate failed");
    }
  }
  Digest256 finish() {
    Digest256 out;
    unsigned int len = 0;
    if (EVP_DigestFinal_ex(ctx_.get(), out.bytes.data(), &len) != 1 || len != Digest256::kSize) {
      throw std::runtime_error("EVP_DigestFinal_ex failed");
    }
    ++g_sha256_calls;
    return out;
  }

  static Sha256Engine& local() {
    thread_local Sha256Engine engine;
    return engine;
  }

 private:
  static const EVP_MD* md() {
    static const EVP_MD* const kMd = [] {
      const EVP_MD* fetched = EVP_MD_fetch(nullptr, "SHA256", nullptr);
      if (!fetched) throw std::runtime_error("SHA256 unavailable in libcrypto");
      return fetched;
    }();
    return kMd;
  }

  std::unique_ptr<EVP_MD_CTX, MdCtxDeleter> ctx_;
};

bool is_power_of_two(std::size_t n) { return n != 0 && std::has_single_bit(n); }

void check_leaves(std::span<const Digest256> leaves) {
  if (!is_power_of_two(leaves.size())) {
    throw InvalidInput("merkle leaf count must be a non-zero power of two, got " +
                       std::to_string(leaves.size()));
  }
}

}  // namespace

Digest256 sha256(ByteView data) {
  auto& engine = Sha256Engine::local();
  engine.init();
  engine.update(data);
  return engine.finish();
}

Digest256 sha256_pair(const Digest256& left, const Digest256& right) {
  auto& engine = Sha256Engine::local();
  engine.init();
  engine.update(left.view());
  engine.update(right.view());
  return engine.finish();
}

std::uint64_t sha256_call_count() noexcept { return g_sha256_calls; }
void reset_sha256_call_count() noexcept { g_sha256_calls = 0; }

Digest256 hash_chain(const Digest256& start, std::uint32_t iterations) {
  Digest256 link = start;
  for (std::uint32_t i = 0; i < iterations; ++i) link = sha256(link.view());
  return link;
}

Digest256 prg_expand(const Seed& seed, std::uint8_t domain_tag, std::uint32_t index) {
  std::array<std::uint8_t, Seed::kSize + 5> buf{};
  std::copy(seed.bytes.begin(), seed.bytes.end(), buf.begin());
  buf[32] = domain_tag;
  buf[33] = static_cast<std::uint8_t>(index >> 24);
  buf[34] = static_cast<std::uint8_t>(index >> 16);
  buf[35] = static_cast<std::uint8_t>(index >> 8);
  buf[36] = static_cast<std::uint8_t>(index);
  return sha256(buf);
}

Digest256 merkle_root(std::span<const Digest256> leaves) {
  check_leaves(leaves);
  std::vector<Digest256> level(leaves.begin(), leaves.end());
  while (level.size() > 1) {
    for (std::size_t i = 0; i < level.size() / 2; ++i) {
      level[i] = sha256_pair(level[2 * i], level[2 * i + 1]);
    }
    level.resize(level.size() / 2);
  }
  return level.front();
}

MerkleAuthPath merkle_path(std::span<const Digest256> leaves, std::uint32_t leaf_index) {
  check_leaves(leaves);
  if (leaf_index >= leaves.size()) {
    throw InvalidInput("leaf index " + std::to_string(leaf_index) + " out of range for " +
                       std::to_string(leaves.size()) + " leaves");
  }
  MerkleAuthPath path;
  path.leaf_index = leaf_index;
  std::vector<Digest256> level(leaves.begin(), leaves.end());
  std::size_t index = leaf_index;
  while (level.size() > 1) {
    path.siblings.push_back(level[index ^ 1]);
    for (std::size_t i = 0; i < level.size() / 2; ++i) {
      level[i] = sha256_pair(level[2 * i], level[2 * i + 1]);
    }
    level.resize(level.size() / 2);
    index >>= 1;
  }
  return path;
}

bool verify_path(const Digest256& leaf, const MerkleAuthPath& path, const Digest256& root) {
  const std::size_t height = path.siblings.size();
  if (height < 32 && (static_cast<std::uint64_t>(path.leaf_index) >> height) != 0) return false;
  Digest256 node = leaf;
  std::uint32_t index = path.leaf_index;
  for (const Digest256& sibling : path.siblings) {
    node = (index & 1) ? sha256_pair(sibling, node) : sha256_pair(node, sibling);
    index >>= 1;
  }
  return node == root;
}

}  // namespace trapfree
