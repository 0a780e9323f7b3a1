#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>

#include "trapfree/bytes.hpp"

// Textbook RSA signatures: S = H^d mod N, checked by S^e mod N == H.
//
// Unpadded RSA is malleable and not a secure signature scheme; it is here as
// the trapdoor baseline the hash-based and lattice schemes are compared with.
namespace trapfree::rsa {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr int kMinBits = 32;
inline constexpr int kMaxBits = 4096;
inline constexpr int kDefaultBits = 512;
inline constexpr int kMillerRabinRounds = 40;
inline constexpr unsigned kPrimaryExponent = 65537;
inline constexpr unsigned kFallbackExponent = 17;

struct KeyPair {
  BigInt p;
  BigInt q;
  BigInt n;    // p * q
  BigInt phi;  // (p - 1) * (q - 1)
  BigInt e;
  BigInt d;    // e^-1 mod phi
};

struct PublicKey {
  BigInt n;
  BigInt e;
  friend bool operator==(const PublicKey&, const PublicKey&) = default;
};

struct Signature {
  BigInt s;
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Left-to-right square-and-multiply. Requires modulus > 0.
BigInt mod_pow(BigInt base, const BigInt& exponent, const BigInt& modulus);

/// Inverse via the extended Euclidean algorithm. Throws InvalidInput if
/// gcd(a, modulus) != 1.
BigInt mod_inverse(const BigInt& a, const BigInt& modulus);

/// Trial division by small primes, then Miller-Rabin with witnesses drawn from
/// `witness_seed`.
bool is_probable_prime(const BigInt& n, int rounds, const Seed& witness_seed);

/// Two seed-derived primes of bits/2 each. e = 65537, or 17 when 65537 is not
/// invertible mod phi; fresh primes if neither works. Throws ParameterError
/// unless bits is even and in [32, 4096].
KeyPair keygen(int bits, const Seed& seed);

/// Key pair from given primes. With no explicit e the 65537 / 17 rule applies.
KeyPair from_primes(const BigInt& p, const BigInt& q, std::optional<BigInt> e = std::nullopt);

PublicKey public_key(const KeyPair& key);

/// sha256(message) as a big-endian integer, reduced mod n.
BigInt message_representative(ByteView message, const BigInt& n);

Signature sign(const KeyPair& key, ByteView message);
Signature sign_representative(const KeyPair& key, const BigInt& h);
bool verify(const BigInt& e, const BigInt& n, ByteView message, const Signature& sig);

/// a^(p-1) mod p == 1.
bool fermat_check(const BigInt& a, const BigInt& p);

// Labeled decimal text: "N=...\ne=...\n" for public keys, plus d, p, q for
// secret keys; signatures are the decimal S alone.
std::string serialize(const PublicKey& pk);
std::string serialize_secret(const KeyPair& key);
std::string serialize(const Signature& sig);
PublicKey parse_public_key(std::string_view text);
KeyPair parse_secret_key(std::string_view text);
Signature parse_signature(std::string_view text);

}  // namespace trapfree::rsa
