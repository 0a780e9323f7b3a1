#pragma once

#include <stdexcept>
#include <string>

namespace trapfree {

// Malformed input: bad lengths, framing, out-of-range indices, tag mismatches.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Scheme parameters outside their supported range.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A bounded (one-time or stateful) key has no uses left.
class KeysExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Key-store I/O failures.
class StoreError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace trapfree
