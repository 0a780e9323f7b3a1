#include "trapfree/scheme_api.hpp"

#include <string>

#include "trapfree/errors.hpp"
#include "trapfree/hash_primitives.hpp"
#include "trapfree/lamport.hpp"
#include "trapfree/lattice_fs.hpp"
#include "trapfree/merkle_many_time.hpp"
#include "trapfree/rsa_trapdoor.hpp"
#include "trapfree/wots.hpp"

namespace trapfree {
namespace {

std::string_view as_text(ByteView bytes) {
  return {reinterpret_cast<const char*>(bytes.data()), bytes.size()};
}

Bytes text_bytes(std::string_view s) { return Bytes(s.begin(), s.end()); }

void reject(bool present, SchemeId scheme, const char* what) {
  if (present) {
    throw ParameterError(std::string(what) + " does not apply to scheme " +
                         std::string(scheme_token(scheme)));
  }
}

// Merkle secret blob: master seed, height byte, WOTS mode byte.
struct MerkleSecret {
  Seed master_seed;
  int height;
  wots::Mode mode;
};

Bytes encode_merkle_secret(const MerkleSecret& s) {
  Bytes out(s.master_seed.bytes.begin(), s.master_seed.bytes.end());
  out.push_back(static_cast<std::uint8_t>(s.height));
  out.push_back(static_cast<std::uint8_t>(s.mode));
  return out;
}

MerkleSecret decode_merkle_secret(ByteView data) {
  if (data.size() != Seed::kSize + 2) throw InvalidInput("merkle secret key has wrong length");
  if (data[Seed::kSize + 1] > 1) throw InvalidInput("merkle secret key has unknown mode flag");
  return MerkleSecret{Seed::from_bytes(data.first(Seed::kSize)), data[Seed::kSize],
                      static_cast<wots::Mode>(data[Seed::kSize + 1])};
}

wots::Mode wots_mode(SchemeId scheme) {
  return scheme == SchemeId::kWotsChecksum ? wots::Mode::kChecksum : wots::Mode::kPlain;
}

Seed lattice_nonce_seed(const Seed& secret_seed, ByteView message) {
  Bytes buf(secret_seed.bytes.begin(), secret_seed.bytes.end());
  buf.push_back(tag::kLatticeNonce);
  append(buf, message);
  Seed s;
  s.bytes = sha256(buf).bytes;
  return s;
}

bool verify_merkle(ByteView public_blob, ByteView message, ByteView payload) {
  const Digest256 root = Digest256::from_bytes(public_blob);
  // The root alone does not record the WOTS mode; a signature can only match
  // the root under the mode its leaves were built with, so try each layout
  // the payload length admits.
  bool parsed = false;
  for (wots::Mode mode : {wots::Mode::kPlain, wots::Mode::kChecksum}) {
    merkle::Signature sig;
    try {
      sig = merkle::parse_signature(payload, mode);
    } catch (const InvalidInput&) {
      continue;
    }
    parsed = true;
    if (merkle::verify(root, message, sig)) return true;
  }
  if (!parsed) throw InvalidInput("malformed merkle signature payload");
  return false;
}

}  // namespace

std::string_view scheme_token(SchemeId id) noexcept {
  switch (id) {
    case SchemeId::kRsa: return "rsa";
    case SchemeId::kLamport: return "lamport";
    case SchemeId::kWots: return "wots";
    case SchemeId::kWotsChecksum: return "wots-checksum";
    case SchemeId::kMerkle: return "merkle";
    case SchemeId::kLatticeFs: return "lattice-fs";
  }
  return "unknown";
}

SchemeId parse_scheme_token(std::string_view token) {
  for (SchemeId id : kAllSchemes) {
    if (scheme_token(id) == token) return id;
  }
  throw InvalidInput("unknown scheme '" + std::string(token) + "'");
}

SchemeId scheme_from_tag(std::uint8_t tag) {
  if (tag < 0x01 || tag > 0x06) throw InvalidInput("unknown scheme tag " + std::to_string(tag));
  return static_cast<SchemeId>(tag);
}

Bytes SignatureBlob::encode() const {
  Bytes out{scheme_tag(scheme)};
  append(out, payload);
  return out;
}

SignatureBlob SignatureBlob::decode(ByteView data) {
  if (data.empty()) throw InvalidInput("signature blob is shorter than its 1-byte header");
  return SignatureBlob{scheme_from_tag(data[0]), Bytes(data.begin() + 1, data.end())};
}

KeyRecord keygen(SchemeId scheme, const SchemeParams& params, const Seed& seed) {
  if (scheme != SchemeId::kMerkle) reject(params.height.has_value(), scheme, "height");
  if (scheme != SchemeId::kRsa) reject(params.bits.has_value(), scheme, "bits");
  if (scheme != SchemeId::kMerkle && scheme != SchemeId::kWots &&
      scheme != SchemeId::kWotsChecksum) {
    reject(params.checksum, scheme, "checksum");
  }
  if (scheme == SchemeId::kWots && params.checksum) scheme = SchemeId::kWotsChecksum;

  KeyRecord record;
  record.scheme = scheme;
  switch (scheme) {
    case SchemeId::kRsa: {
      const auto key = rsa::keygen(params.bits.value_or(rsa::kDefaultBits), seed);
      record.public_blob = text_bytes(rsa::serialize(rsa::public_key(key)));
      record.secret_blob = text_bytes(rsa::serialize_secret(key));
      break;
    }
    case SchemeId::kLamport: {
      const auto kp = lamport::keygen(seed);
      record.public_blob = lamport::serialize(kp.public_key);
      record.secret_blob = lamport::serialize(kp.secret_key);
      record.usage.max = 1;
      break;
    }
    case SchemeId::kWots:
    case SchemeId::kWotsChecksum: {
      const auto kp = wots::keygen(seed, wots_mode(scheme));
      record.public_blob = wots::serialize(kp.public_key);
      record.secret_blob = wots::serialize(kp.secret_key);
      record.usage.max = 1;
      break;
    }
    case SchemeId::kMerkle: {
      const int height = params.height.value_or(merkle::kDefaultHeight);
      const auto mode = params.checksum ? wots::Mode::kChecksum : wots::Mode::kPlain;
      const auto kp = merkle::keygen(seed, height, mode);
      record.public_blob = Bytes(kp.root().bytes.begin(), kp.root().bytes.end());
      record.secret_blob = encode_merkle_secret({seed, height, mode});
      record.usage.max = kp.capacity();
      break;
    }
    case SchemeId::kLatticeFs: {
      const auto kp = lattice::keygen(lattice::Params{}, seed);
      record.public_blob = lattice::serialize(lattice::public_key(kp));
      record.secret_blob = Bytes(seed.bytes.begin(), seed.bytes.end());
      break;
    }
  }
  return record;
}

SignResult sign(const KeyRecord& record, ByteView message) {
  if (record.usage.exhausted()) {
    throw KeysExhausted("key for scheme " + std::string(scheme_token(record.scheme)) +
                        " has used all " + std::to_string(*record.usage.max) + " signatures");
  }
  SignResult result{SignatureBlob{record.scheme, {}}, record};
  switch (record.scheme) {
    case SchemeId::kRsa: {
      const auto key = rsa::parse_secret_key(as_text(record.secret_blob));
      result.signature.payload = text_bytes(rsa::serialize(rsa::sign(key, message)));
      break;
    }
    case SchemeId::kLamport: {
      const auto sk = lamport::parse_secret_key(record.secret_blob);
      result.signature.payload = lamport::serialize(lamport::sign(sk, message));
      break;
    }
    case SchemeId::kWots:
    case SchemeId::kWotsChecksum: {
      const auto sk = wots::parse_secret_key(record.secret_blob);
      if (sk.mode != wots_mode(record.scheme)) {
        throw InvalidInput("wots secret key mode does not match its scheme");
      }
      result.signature.payload = wots::serialize(wots::sign(sk, message));
      break;
    }
    case SchemeId::kMerkle: {
      const auto secret = decode_merkle_secret(record.secret_blob);
      const auto kp = merkle::keygen(secret.master_seed, secret.height, secret.mode)
                          .with_next_leaf(record.usage.consumed);
      auto signed_leaf = merkle::sign(kp, message);
      result.signature.payload = merkle::serialize(signed_leaf.signature);
      break;
    }
    case SchemeId::kLatticeFs: {
      const Seed seed = Seed::from_bytes(record.secret_blob);
      const lattice::Params params;
      const auto kp = lattice::keygen(params, seed);
      result.signature.payload =
          lattice::serialize(lattice::fs_sign(kp, params, message, lattice_nonce_seed(seed, message)));
      break;
    }
  }
  if (record.usage.max) ++result.updated.usage.consumed;
  return result;
}

bool verify(SchemeId scheme, ByteView public_blob, ByteView message, const SignatureBlob& sig) {
  if (sig.scheme != scheme) {
    throw InvalidInput("signature is tagged " + std::string(scheme_token(sig.scheme)) +
                       " but the key is " + std::string(scheme_token(scheme)));
  }
  switch (scheme) {
    case SchemeId::kRsa: {
      const auto pk = rsa::parse_public_key(as_text(public_blob));
      return rsa::verify(pk.e, pk.n, message, rsa::parse_signature(as_text(sig.payload)));
    }
    case SchemeId::kLamport:
      return lamport::verify(lamport::parse_public_key(public_blob), message,
                             lamport::parse_signature(sig.payload));
    case SchemeId::kWots:
    case SchemeId::kWotsChecksum: {
      const auto mode = wots_mode(scheme);
      return wots::verify(wots::parse_public_key(public_blob, mode), message,
                          wots::parse_signature(sig.payload, mode));
    }
    case SchemeId::kMerkle:
      return verify_merkle(public_blob, message, sig.payload);
    case SchemeId::kLatticeFs: {
      const lattice::Params params;
      const auto pk = lattice::parse_public_key(public_blob, params);
      const auto A = lattice::expand_matrix(pk.matrix_seed, params);
      return lattice::fs_verify(A, pk.u, params, message,
                                lattice::parse_signature(sig.payload, params));
    }
  }
  return false;
}

}  // namespace trapfree
