#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "trapfree/bytes.hpp"

// Schnorr-style identification over plain integer matrices mod q, and its
// Fiat-Shamir signature.
//
//   keygen:    u = A.x + e1                  (x, e1 short)
//   commit:    v = A.y + e2                  (y, e2 short)
//   challenge: c in [0, c_max), or c = H(v || M) for signatures
//   respond:   z = c.x + y
//   check:     A.z - c.u - v = -(c.e1 + e2), every centered entry <= B
//
// No rejection sampling is applied to z, so z = c.x + y leaks x statistically
// over many signatures. This is a teaching scheme, not a secure one.
namespace trapfree::lattice {

struct Params {
  std::uint32_t q = 3329;
  std::size_t n = 16;          // secret dimension
  std::size_t m = 24;          // public dimension
  std::uint32_t eta = 1;       // max magnitude of short coordinates
  std::uint32_t c_max = 256;   // challenges lie in [0, c_max)
  bool error_terms = true;     // false forces e1 = e2 = 0

  /// Residual bound B = c_max * eta + eta.
  std::uint32_t bound() const noexcept { return c_max * eta + eta; }

  /// Throws ParameterError unless q is an odd prime below 2^16, the
  /// dimensions and eta are positive, and B < q / 4.
  void validate() const;
};

/// Maps a residue in [0, q) to (-q/2, q/2].
std::int64_t centered(std::uint32_t value, std::uint32_t q) noexcept;

class ModVec {
 public:
  ModVec() = default;
  ModVec(std::uint32_t q, std::size_t length) : q_(q), entries_(length, 0) {}
  /// Reduces each entry mod q; negative inputs are allowed.
  static ModVec from_signed(std::uint32_t q, const std::vector<std::int64_t>& values);

  std::uint32_t modulus() const noexcept { return q_; }
  std::size_t size() const noexcept { return entries_.size(); }
  std::uint32_t operator[](std::size_t i) const { return entries_[i]; }
  void set(std::size_t i, std::int64_t value);
  const std::vector<std::uint32_t>& entries() const noexcept { return entries_; }

  std::vector<std::int64_t> centered_entries() const;
  std::int64_t max_centered_magnitude() const;

  ModVec operator+(const ModVec& rhs) const;
  ModVec operator-(const ModVec& rhs) const;
  ModVec scaled(std::uint32_t c) const;

  friend bool operator==(const ModVec&, const ModVec&) = default;

 private:
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> entries_;
};

class ModMatrix {
 public:
  ModMatrix() = default;
  ModMatrix(std::uint32_t q, std::size_t rows, std::size_t cols)
      : q_(q), rows_(rows), cols_(cols), entries_(rows * cols, 0) {}

  std::uint32_t modulus() const noexcept { return q_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::uint32_t at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::int64_t value);

  /// Throws InvalidInput on dimension or modulus mismatch.
  ModVec operator*(const ModVec& v) const;

  friend bool operator==(const ModMatrix&, const ModMatrix&) = default;

 private:
  std::uint32_t q_ = 0;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint32_t> entries_;
};

/// Uniform m x n matrix mod q, expanded from a public seed.
ModMatrix expand_matrix(const Seed& matrix_seed, const Params& params);

/// Coordinates uniform on [-eta, eta], drawn from the (seed, domain_tag) stream.
ModVec sample_short(const Seed& seed, std::uint8_t domain_tag, std::size_t length,
                    const Params& params);

struct KeyPair {
  Seed matrix_seed;
  ModMatrix A;
  ModVec x;   // secret, short
  ModVec e1;  // short error
  ModVec u;   // public: A.x + e1
};

struct PublicKey {
  Seed matrix_seed;
  ModVec u;

  friend bool operator==(const PublicKey&, const PublicKey&) = default;
};

KeyPair keygen(const Params& params, const Seed& seed);

/// Builds a key pair from explicit parts. Throws InvalidInput if x or e1 is
/// not short or dimensions disagree.
KeyPair keygen_from_parts(const Params& params, ModMatrix A, ModVec x, ModVec e1);

PublicKey public_key(const KeyPair& kp);

struct Commitment {
  ModVec y;
  ModVec e2;
  ModVec v;  // A.y + e2
};

Commitment commit(const Params& params, const ModMatrix& A, const Seed& seed, std::uint32_t nonce);

/// Interactive verifier's challenge, uniform in [0, c_max).
std::uint32_t challenge(const Params& params, const Seed& rng_seed);

/// z = c.x + y mod q. Throws InvalidInput on length mismatch.
ModVec respond(const ModVec& x, const ModVec& y, std::uint32_t c);

/// Centered A.z - c.u - v.
std::vector<std::int64_t> residual(const ModMatrix& A, const ModVec& u, const ModVec& v,
                                   const ModVec& z, std::uint32_t c);

/// True iff every centered residual entry has magnitude <= params.bound().
bool check(const ModMatrix& A, const ModVec& u, const ModVec& v, const ModVec& z, std::uint32_t c,
           const Params& params);

struct Signature {
  std::uint32_t c = 0;
  ModVec z;
  ModVec v;

  friend bool operator==(const Signature&, const Signature&) = default;
};

/// v entries as 2-byte big-endian values, in order.
Bytes serialize_vec(const ModVec& v);

/// Big-endian value of the first 4 bytes of sha256(v_bytes || message), mod c_max.
std::uint32_t fs_challenge(const Params& params, const ModVec& v, ByteView message);

Signature fs_sign(const KeyPair& kp, const Params& params, ByteView message, const Seed& nonce_seed);
bool fs_verify(const ModMatrix& A, const ModVec& u, const Params& params, ByteView message,
               const Signature& sig);

/// 4-byte c, then z, then v, all entries 2-byte big-endian.
Bytes serialize(const Signature& sig);
Signature parse_signature(ByteView data, const Params& params);

/// Matrix seed followed by u.
Bytes serialize(const PublicKey& pk);
PublicKey parse_public_key(ByteView data, const Params& params);

}  // namespace trapfree::lattice
