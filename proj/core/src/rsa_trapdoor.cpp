#include "trapfree/rsa_trapdoor.hpp"

#include <array>
#include <map>
#include <sstream>

#include "trapfree/errors.hpp"
#include "trapfree/hash_primitives.hpp"

namespace trapfree::rsa {
namespace {

using boost::multiprecision::bit_test;
using boost::multiprecision::msb;

constexpr std::array<unsigned, 25> kSmallPrimes = {2,  3,  5,  7,  11, 13, 17, 19, 23,
                                                   29, 31, 37, 41, 43, 47, 53, 59, 61,
                                                   67, 71, 73, 79, 83, 89, 97};

// Integer from `bytes` big-endian bytes of the (seed, tag) stream starting at block `first`.
BigInt stream_integer(const Seed& seed, std::uint8_t domain_tag, std::uint32_t first,
                      std::size_t bytes) {
  BigInt out = 0;
  std::uint32_t block = first;
  while (bytes > 0) {
    const Digest256 d = prg_expand(seed, domain_tag, block++);
    const std::size_t take = std::min(bytes, Digest256::kSize);
    for (std::size_t i = 0; i < take; ++i) out = (out << 8) | d.bytes[i];
    bytes -= take;
  }
  return out;
}

Seed derive_seed(const Seed& seed, std::uint8_t domain_tag, std::uint32_t index) {
  Seed s;
  s.bytes = prg_expand(seed, domain_tag, index).bytes;
  return s;
}

// Random prime with exactly `bits` bits and the top two bits set, so a product
// of two such primes has exactly 2 * bits bits.
BigInt generate_prime(int bits, const Seed& seed, std::uint32_t& attempt) {
  const std::size_t bytes = (static_cast<std::size_t>(bits) + 7) / 8;
  const BigInt mask = (BigInt(1) << bits) - 1;
  for (;;) {
    const Seed candidate_seed = derive_seed(seed, tag::kRsaCandidate, attempt++);
    BigInt candidate = stream_integer(candidate_seed, tag::kRsaCandidate, 0, bytes) & mask;
    boost::multiprecision::bit_set(candidate, bits - 1);
    boost::multiprecision::bit_set(candidate, bits - 2);
    boost::multiprecision::bit_set(candidate, 0);
    if (is_probable_prime(candidate, kMillerRabinRounds,
                          derive_seed(candidate_seed, tag::kRsaWitness, 0))) {
      return candidate;
    }
  }
}

std::optional<BigInt> choose_exponent(const BigInt& phi) {
  for (unsigned e : {kPrimaryExponent, kFallbackExponent}) {
    if (boost::multiprecision::gcd(BigInt(e), phi) == 1) return BigInt(e);
  }
  return std::nullopt;
}

bool is_decimal(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

BigInt parse_decimal(std::string_view s, const char* field) {
  if (!is_decimal(s)) throw InvalidInput(std::string("rsa field ") + field + " is not a decimal integer");
  return BigInt(std::string(s));
}

std::map<std::string, std::string, std::less<>> parse_fields(std::string_view text) {
  std::map<std::string, std::string, std::less<>> fields;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw InvalidInput("rsa key line without '=': " + line);
    fields[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return fields;
}

BigInt required(const std::map<std::string, std::string, std::less<>>& fields, const char* name) {
  const auto it = fields.find(name);
  if (it == fields.end()) throw InvalidInput(std::string("rsa key is missing field ") + name);
  return parse_decimal(it->second, name);
}

}  // namespace

BigInt mod_pow(BigInt base, const BigInt& exponent, const BigInt& modulus) {
  if (modulus <= 0) throw InvalidInput("modulus must be positive");
  if (exponent < 0) throw InvalidInput("exponent must be non-negative");
  base %= modulus;
  if (base < 0) base += modulus;
  BigInt result = 1 % modulus;
  if (exponent == 0) return result;
  for (auto bit = static_cast<long>(msb(exponent)); bit >= 0; --bit) {
    result = result * result % modulus;
    if (bit_test(exponent, static_cast<unsigned>(bit))) result = result * base % modulus;
  }
  return result;
}

BigInt mod_inverse(const BigInt& a, const BigInt& modulus) {
  BigInt old_r = a % modulus, r = modulus;
  if (old_r < 0) old_r += modulus;
  BigInt old_s = 1, s = 0;
  while (r != 0) {
    const BigInt quotient = old_r / r;
    old_r = old_r - quotient * r;
    std::swap(old_r, r);
    old_s = old_s - quotient * s;
    std::swap(old_s, s);
  }
  if (old_r != 1) throw InvalidInput("value is not invertible modulo the given modulus");
  BigInt inv = old_s % modulus;
  if (inv < 0) inv += modulus;
  return inv;
}

bool is_probable_prime(const BigInt& n, int rounds, const Seed& witness_seed) {
  if (n < 2) return false;
  for (unsigned p : kSmallPrimes) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  // n - 1 = 2^s * odd
  const BigInt n_minus_1 = n - 1;
  const auto s = static_cast<unsigned>(boost::multiprecision::lsb(n_minus_1));
  const BigInt odd = n_minus_1 >> s;
  const std::size_t witness_bytes = msb(n) / 8 + 9;
  for (int round = 0; round < rounds; ++round) {
    const BigInt a = 2 + stream_integer(witness_seed, tag::kRsaWitness,
                                        static_cast<std::uint32_t>(round) * 64, witness_bytes) %
                             (n - 3);
    BigInt x = mod_pow(a, odd, n);
    if (x == 1 || x == n_minus_1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = x * x % n;
      if (x == n_minus_1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

KeyPair from_primes(const BigInt& p, const BigInt& q, std::optional<BigInt> e) {
  if (p < 2 || q < 2 || p == q) throw InvalidInput("rsa primes must be distinct and at least 2");
  KeyPair key;
  key.p = p;
  key.q = q;
  key.n = p * q;
  key.phi = (p - 1) * (q - 1);
  if (!e) e = choose_exponent(key.phi);
  if (!e) throw InvalidInput("neither 65537 nor 17 is invertible modulo phi");
  key.e = *e;
  key.d = mod_inverse(key.e, key.phi);
  return key;
}

KeyPair keygen(int bits, const Seed& seed) {
  if (bits < kMinBits || bits > kMaxBits || bits % 2 != 0) {
    throw ParameterError("rsa modulus size must be even and in [" + std::to_string(kMinBits) +
                         ", " + std::to_string(kMaxBits) + "], got " + std::to_string(bits));
  }
  std::uint32_t attempt = 0;
  for (;;) {
    const BigInt p = generate_prime(bits / 2, seed, attempt);
    const BigInt q = generate_prime(bits / 2, seed, attempt);
    if (p == q) continue;
    const BigInt phi = (p - 1) * (q - 1);
    if (auto e = choose_exponent(phi)) return from_primes(p, q, e);
  }
}

PublicKey public_key(const KeyPair& key) { return PublicKey{key.n, key.e}; }

BigInt message_representative(ByteView message, const BigInt& n) {
  const Digest256 h = sha256(message);
  BigInt value = 0;
  for (std::uint8_t b : h.bytes) value = (value << 8) | b;
  return value % n;
}

Signature sign_representative(const KeyPair& key, const BigInt& h) {
  return Signature{mod_pow(h, key.d, key.n)};
}

Signature sign(const KeyPair& key, ByteView message) {
  return sign_representative(key, message_representative(message, key.n));
}

bool verify(const BigInt& e, const BigInt& n, ByteView message, const Signature& sig) {
  if (n < 2 || e < 1 || sig.s < 0 || sig.s >= n) return false;
  return mod_pow(sig.s, e, n) == message_representative(message, n);
}

bool fermat_check(const BigInt& a, const BigInt& p) {
  if (p < 2) return false;
  return mod_pow(a, p - 1, p) == 1;
}

std::string serialize(const PublicKey& pk) {
  return "N=" + pk.n.str() + "\ne=" + pk.e.str() + "\n";
}

std::string serialize_secret(const KeyPair& key) {
  return "N=" + key.n.str() + "\ne=" + key.e.str() + "\nd=" + key.d.str() + "\np=" + key.p.str() +
         "\nq=" + key.q.str() + "\n";
}

std::string serialize(const Signature& sig) { return sig.s.str() + "\n"; }

PublicKey parse_public_key(std::string_view text) {
  const auto fields = parse_fields(text);
  PublicKey pk{required(fields, "N"), required(fields, "e")};
  if (pk.n < 2 || pk.e < 1) throw InvalidInput("rsa public key values out of range");
  return pk;
}

KeyPair parse_secret_key(std::string_view text) {
  const auto fields = parse_fields(text);
  KeyPair key = from_primes(required(fields, "p"), required(fields, "q"), required(fields, "e"));
  if (key.n != required(fields, "N") || key.d != required(fields, "d")) {
    throw InvalidInput("rsa secret key fields are inconsistent");
  }
  return key;
}

Signature parse_signature(std::string_view text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
  return Signature{parse_decimal(text, "S")};
}

}  // namespace trapfree::rsa
