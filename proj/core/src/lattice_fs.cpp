#include "trapfree/lattice_fs.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "trapfree/errors.hpp"
#include "trapfree/hash_primitives.hpp"

namespace trapfree::lattice {
namespace {

// Endless byte stream: prg_expand(seed, tag, 0) || prg_expand(seed, tag, 1) || ...
class ByteStream {
 public:
  ByteStream(const Seed& seed, std::uint8_t domain_tag) : seed_(seed), tag_(domain_tag) {}

  std::uint8_t next() {
    if (pos_ == Digest256::kSize) {
      block_ = prg_expand(seed_, tag_, counter_++);
      pos_ = 0;
    }
    return block_.bytes[pos_++];
  }

  std::uint32_t next_u16() { return std::uint32_t{next()} << 8 | next(); }

  std::uint32_t next_u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = v << 8 | next();
    return v;
  }

 private:
  Seed seed_;
  std::uint8_t tag_;
  std::uint32_t counter_ = 0;
  Digest256 block_;
  std::size_t pos_ = Digest256::kSize;
};

std::uint32_t reduce(std::int64_t value, std::uint32_t q) {
  std::int64_t r = value % static_cast<std::int64_t>(q);
  if (r < 0) r += q;
  return static_cast<std::uint32_t>(r);
}

bool is_prime(std::uint32_t q) {
  if (q < 2) return false;
  for (std::uint32_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) return false;
  }
  return true;
}

void require_same(const ModVec& a, const ModVec& b, const char* op) {
  if (a.modulus() != b.modulus() || a.size() != b.size()) {
    throw InvalidInput(std::string("vector shape mismatch in ") + op);
  }
}

bool is_short(const ModVec& v, std::uint32_t eta) {
  return v.max_centered_magnitude() <= static_cast<std::int64_t>(eta);
}

}  // namespace

void Params::validate() const {
  if (q >= (1u << 16) || q % 2 == 0 || !is_prime(q)) {
    throw ParameterError("q must be an odd prime below 2^16, got " + std::to_string(q));
  }
  if (n == 0 || m == 0) throw ParameterError("lattice dimensions must be positive");
  if (eta == 0 || eta >= 128) throw ParameterError("eta must be in [1, 127]");
  if (c_max == 0 || c_max > q) throw ParameterError("c_max must be in [1, q]");
  if (4ull * bound() >= q) {
    throw ParameterError("residual bound " + std::to_string(bound()) + " must be below q/4");
  }
}

std::int64_t centered(std::uint32_t value, std::uint32_t q) noexcept {
  return value > q / 2 ? static_cast<std::int64_t>(value) - q : static_cast<std::int64_t>(value);
}

ModVec ModVec::from_signed(std::uint32_t q, const std::vector<std::int64_t>& values) {
  ModVec v(q, values.size());
  for (std::size_t i = 0; i < values.size(); ++i) v.set(i, values[i]);
  return v;
}

void ModVec::set(std::size_t i, std::int64_t value) { entries_.at(i) = reduce(value, q_); }

std::vector<std::int64_t> ModVec::centered_entries() const {
  std::vector<std::int64_t> out;
  out.reserve(entries_.size());
  for (auto e : entries_) out.push_back(centered(e, q_));
  return out;
}

std::int64_t ModVec::max_centered_magnitude() const {
  std::int64_t best = 0;
  for (auto e : entries_) best = std::max(best, std::abs(centered(e, q_)));
  return best;
}

ModVec ModVec::operator+(const ModVec& rhs) const {
  require_same(*this, rhs, "addition");
  ModVec out(q_, size());
  for (std::size_t i = 0; i < size(); ++i) out.entries_[i] = (entries_[i] + rhs.entries_[i]) % q_;
  return out;
}

ModVec ModVec::operator-(const ModVec& rhs) const {
  require_same(*this, rhs, "subtraction");
  ModVec out(q_, size());
  for (std::size_t i = 0; i < size(); ++i) {
    out.entries_[i] = (entries_[i] + q_ - rhs.entries_[i]) % q_;
  }
  return out;
}

ModVec ModVec::scaled(std::uint32_t c) const {
  ModVec out(q_, size());
  const std::uint64_t factor = c % q_;
  for (std::size_t i = 0; i < size(); ++i) {
    out.entries_[i] = static_cast<std::uint32_t>(factor * entries_[i] % q_);
  }
  return out;
}

void ModMatrix::set(std::size_t r, std::size_t c, std::int64_t value) {
  if (r >= rows_ || c >= cols_) throw InvalidInput("matrix index out of range");
  entries_[r * cols_ + c] = reduce(value, q_);
}

ModVec ModMatrix::operator*(const ModVec& v) const {
  if (v.size() != cols_ || v.modulus() != q_) {
    throw InvalidInput("matrix-vector dimension mismatch: " + std::to_string(rows_) + "x" +
                       std::to_string(cols_) + " by " + std::to_string(v.size()));
  }
  ModVec out(q_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      acc += std::uint64_t{entries_[r * cols_ + c]} * v[c];
    }
    out.set(r, static_cast<std::int64_t>(acc % q_));
  }
  return out;
}

ModMatrix expand_matrix(const Seed& matrix_seed, const Params& params) {
  ByteStream stream(matrix_seed, tag::kLatticeMatrix);
  const std::uint32_t limit = (1u << 16) / params.q * params.q;
  ModMatrix A(params.q, params.m, params.n);
  for (std::size_t r = 0; r < params.m; ++r) {
    for (std::size_t c = 0; c < params.n; ++c) {
      std::uint32_t sample = 0;
      do {
        sample = stream.next_u16();
      } while (sample >= limit);
      A.set(r, c, sample % params.q);
    }
  }
  return A;
}

ModVec sample_short(const Seed& seed, std::uint8_t domain_tag, std::size_t length,
                    const Params& params) {
  ByteStream stream(seed, domain_tag);
  const std::uint32_t width = 2 * params.eta + 1;
  const std::uint32_t limit = 256 / width * width;
  ModVec out(params.q, length);
  for (std::size_t i = 0; i < length; ++i) {
    std::uint32_t sample = 0;
    do {
      sample = stream.next();
    } while (sample >= limit);
    out.set(i, static_cast<std::int64_t>(sample % width) - params.eta);
  }
  return out;
}

KeyPair keygen(const Params& params, const Seed& seed) {
  params.validate();
  KeyPair kp;
  kp.matrix_seed.bytes = prg_expand(seed, tag::kLatticeMatrixSeed, 0).bytes;
  kp.A = expand_matrix(kp.matrix_seed, params);
  kp.x = sample_short(seed, tag::kLatticeSecret, params.n, params);
  kp.e1 = params.error_terms ? sample_short(seed, tag::kLatticeError1, params.m, params)
                             : ModVec(params.q, params.m);
  kp.u = kp.A * kp.x + kp.e1;
  return kp;
}

KeyPair keygen_from_parts(const Params& params, ModMatrix A, ModVec x, ModVec e1) {
  params.validate();
  if (A.modulus() != params.q || A.rows() != params.m || A.cols() != params.n ||
      x.modulus() != params.q || x.size() != params.n || e1.modulus() != params.q ||
      e1.size() != params.m) {
    throw InvalidInput("key parts do not match the lattice parameters");
  }
  if (!is_short(x, params.eta) || !is_short(e1, params.eta)) {
    throw InvalidInput("secret and error vectors must have entries within [-eta, eta]");
  }
  KeyPair kp;
  kp.A = std::move(A);
  kp.x = std::move(x);
  kp.e1 = std::move(e1);
  kp.u = kp.A * kp.x + kp.e1;
  return kp;
}

PublicKey public_key(const KeyPair& kp) { return PublicKey{kp.matrix_seed, kp.u}; }

Commitment commit(const Params& params, const ModMatrix& A, const Seed& seed, std::uint32_t nonce) {
  Seed round_seed;
  round_seed.bytes = prg_expand(seed, tag::kLatticeNonce, nonce).bytes;
  Commitment cm;
  cm.y = sample_short(round_seed, tag::kLatticeMask, params.n, params);
  cm.e2 = params.error_terms ? sample_short(round_seed, tag::kLatticeError2, params.m, params)
                             : ModVec(params.q, params.m);
  cm.v = A * cm.y + cm.e2;
  return cm;
}

std::uint32_t challenge(const Params& params, const Seed& rng_seed) {
  ByteStream stream(rng_seed, tag::kLatticeChallenge);
  const std::uint64_t span = std::uint64_t{1} << 32;
  const std::uint64_t limit = span / params.c_max * params.c_max;
  std::uint64_t sample = 0;
  do {
    sample = stream.next_u32();
  } while (sample >= limit);
  return static_cast<std::uint32_t>(sample % params.c_max);
}

ModVec respond(const ModVec& x, const ModVec& y, std::uint32_t c) {
  require_same(x, y, "respond");
  return x.scaled(c) + y;
}

std::vector<std::int64_t> residual(const ModMatrix& A, const ModVec& u, const ModVec& v,
                                   const ModVec& z, std::uint32_t c) {
  require_same(u, v, "residual");
  return (A * z - u.scaled(c) - v).centered_entries();
}

bool check(const ModMatrix& A, const ModVec& u, const ModVec& v, const ModVec& z, std::uint32_t c,
           const Params& params) {
  const auto bound = static_cast<std::int64_t>(params.bound());
  for (std::int64_t r : residual(A, u, v, z, c)) {
    if (std::abs(r) > bound) return false;
  }
  return true;
}

Bytes serialize_vec(const ModVec& v) {
  Bytes out;
  out.reserve(2 * v.size());
  for (auto e : v.entries()) put_u16_be(out, static_cast<std::uint16_t>(e));
  return out;
}

std::uint32_t fs_challenge(const Params& params, const ModVec& v, ByteView message) {
  Bytes buf = serialize_vec(v);
  append(buf, message);
  const Digest256 h = sha256(buf);
  return get_u32_be(h.view(), 0) % params.c_max;
}

Signature fs_sign(const KeyPair& kp, const Params& params, ByteView message, const Seed& nonce_seed) {
  Commitment cm = commit(params, kp.A, nonce_seed, 0);
  Signature sig;
  sig.c = fs_challenge(params, cm.v, message);
  sig.z = respond(kp.x, cm.y, sig.c);
  sig.v = std::move(cm.v);
  return sig;
}

bool fs_verify(const ModMatrix& A, const ModVec& u, const Params& params, ByteView message,
               const Signature& sig) {
  if (sig.z.size() != params.n || sig.v.size() != params.m || sig.z.modulus() != params.q ||
      sig.v.modulus() != params.q || u.size() != params.m || A.rows() != params.m ||
      A.cols() != params.n) {
    return false;
  }
  if (sig.c >= params.c_max || sig.c != fs_challenge(params, sig.v, message)) return false;
  return check(A, u, sig.v, sig.z, sig.c, params);
}

namespace {

ModVec read_vec(ByteView data, std::size_t offset, std::size_t length, std::uint32_t q) {
  ModVec v(q, length);
  for (std::size_t i = 0; i < length; ++i) {
    const std::uint32_t e = get_u16_be(data, offset + 2 * i);
    if (e >= q) throw InvalidInput("vector entry " + std::to_string(e) + " not reduced mod q");
    v.set(i, e);
  }
  return v;
}

}  // namespace

Bytes serialize(const Signature& sig) {
  Bytes out;
  put_u32_be(out, sig.c);
  append(out, serialize_vec(sig.z));
  append(out, serialize_vec(sig.v));
  return out;
}

Signature parse_signature(ByteView data, const Params& params) {
  const std::size_t expected = 4 + 2 * params.n + 2 * params.m;
  if (data.size() != expected) {
    throw InvalidInput("lattice signature must be " + std::to_string(expected) + " bytes, got " +
                       std::to_string(data.size()));
  }
  Signature sig;
  sig.c = get_u32_be(data, 0);
  sig.z = read_vec(data, 4, params.n, params.q);
  sig.v = read_vec(data, 4 + 2 * params.n, params.m, params.q);
  return sig;
}

Bytes serialize(const PublicKey& pk) {
  Bytes out(pk.matrix_seed.bytes.begin(), pk.matrix_seed.bytes.end());
  append(out, serialize_vec(pk.u));
  return out;
}

PublicKey parse_public_key(ByteView data, const Params& params) {
  const std::size_t expected = Seed::kSize + 2 * params.m;
  if (data.size() != expected) {
    throw InvalidInput("lattice public key must be " + std::to_string(expected) + " bytes, got " +
                       std::to_string(data.size()));
  }
  PublicKey pk;
  pk.matrix_seed = Seed::from_bytes(data.first(Seed::kSize));
  pk.u = read_vec(data, Seed::kSize, params.m, params.q);
  return pk;
}

}  // namespace trapfree::lattice
