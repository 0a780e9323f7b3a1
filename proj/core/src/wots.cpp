#include "trapfree/wots.hpp"

#include <string>

#include "trapfree/errors.hpp"
#include "trapfree/hash_primitives.hpp"

namespace trapfree::wots {
namespace {

Bytes join(const std::vector<Digest256>& digests) {
  Bytes out;
  out.reserve(digests.size() * Digest256::kSize);
  for (const auto& d : digests) append(out, d.view());
  return out;
}

std::vector<Digest256> split(ByteView data, std::size_t count, const char* what) {
  if (data.size() != count * Digest256::kSize) {
    throw InvalidInput(std::string("wots ") + what + " must be " +
                       std::to_string(count * Digest256::kSize) + " bytes, got " +
                       std::to_string(data.size()));
  }
  std::vector<Digest256> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(Digest256::from_bytes(data.subspan(i * Digest256::kSize, Digest256::kSize)));
  }
  return out;
}

Mode parse_mode(std::uint8_t flag) {
  switch (flag) {
    case 0x00: return Mode::kPlain;
    case 0x01: return Mode::kChecksum;
    default: throw InvalidInput("unknown wots mode flag " + std::to_string(flag));
  }
}

}  // namespace

KeyPair keygen(const Seed& seed, Mode mode) {
  const std::size_t count = chain_count(mode);
  KeyPair kp;
  kp.secret_key.seed = seed;
  kp.secret_key.mode = mode;
  kp.public_key.mode = mode;
  kp.secret_key.chains.reserve(count);
  kp.public_key.chain_ends.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    const Digest256 start = prg_expand(seed, tag::kWotsChain, i);
    kp.secret_key.chains.push_back(start);
    kp.public_key.chain_ends.push_back(hash_chain(start, kChainLength));
  }
  return kp;
}

std::vector<std::uint8_t> digits_of_digest(const Digest256& digest, Mode mode) {
  std::vector<std::uint8_t> out(digest.bytes.begin(), digest.bytes.end());
  if (mode == Mode::kChecksum) {
    std::uint32_t checksum = 0;
    for (std::uint8_t n : digest.bytes) checksum += 255u - n;
    out.push_back(static_cast<std::uint8_t>(checksum >> 8));
    out.push_back(static_cast<std::uint8_t>(checksum & 0xFF));
  }
  return out;
}

std::vector<std::uint8_t> digits(ByteView message, Mode mode) {
  return digits_of_digest(sha256(message), mode);
}

Signature sign_digest(const SecretKey& sk, const Digest256& digest) {
  if (sk.chains.size() != chain_count(sk.mode)) {
    throw InvalidInput("wots secret key has wrong chain count for its mode");
  }
  const auto ds = digits_of_digest(digest, sk.mode);
  Signature sig;
  sig.mode = sk.mode;
  sig.elements.reserve(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    sig.elements.push_back(hash_chain(sk.chains[i], kChainLength - ds[i]));
  }
  return sig;
}

Signature sign(const SecretKey& sk, ByteView message) { return sign_digest(sk, sha256(message)); }

bool verify_digest(const PublicKey& pk, const Digest256& digest, const Signature& sig) {
  const std::size_t count = chain_count(pk.mode);
  if (sig.mode != pk.mode || sig.elements.size() != count || pk.chain_ends.size() != count) {
    return false;
  }
  const auto ds = digits_of_digest(digest, pk.mode);
  bool ok = true;
  for (std::size_t i = 0; i < count; ++i) {
    ok &= hash_chain(sig.elements[i], ds[i]) == pk.chain_ends[i];
  }
  return ok;
}

bool verify(const PublicKey& pk, ByteView message, const Signature& sig) {
  return verify_digest(pk, sha256(message), sig);
}

Bytes serialize(const PublicKey& pk) { return join(pk.chain_ends); }
Bytes serialize(const Signature& sig) { return join(sig.elements); }

Bytes serialize(const SecretKey& sk) {
  Bytes out{static_cast<std::uint8_t>(sk.mode)};
  append(out, join(sk.chains));
  append(out, sk.seed.view());
  return out;
}

PublicKey parse_public_key(ByteView data, Mode mode) {
  return PublicKey{split(data, chain_count(mode), "public key"), mode};
}

Signature parse_signature(ByteView data, Mode mode) {
  return Signature{split(data, chain_count(mode), "signature"), mode};
}

SecretKey parse_secret_key(ByteView data) {
  if (data.empty()) throw InvalidInput("wots secret key is empty");
  SecretKey sk;
  sk.mode = parse_mode(data[0]);
  const std::size_t chains_bytes = chain_count(sk.mode) * Digest256::kSize;
  if (data.size() != 1 + chains_bytes + Seed::kSize) {
    throw InvalidInput("wots secret key has wrong length");
  }
  sk.chains = split(data.subspan(1, chains_bytes), chain_count(sk.mode), "secret key");
  sk.seed = Seed::from_bytes(data.subspan(1 + chains_bytes));
  return sk;
}

}  // namespace trapfree::wots
