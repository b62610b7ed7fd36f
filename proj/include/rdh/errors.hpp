/**
 * Copyright The rdh-pvo Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rdh {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input bytes (PGM, metadata, CLI values).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " (at byte offset " + std::to_string(offset) + ")"),
        offset_(offset) {}
  explicit ParseError(const std::string& what) : Error(what) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_ = 0;
};

// A block modification would push a pixel past 255.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// The payload does not fit in the carrier.
class CapacityError : public Error {
 public:
  CapacityError(std::size_t requested, std::size_t capacity)
      : Error("payload exceeds capacity: payload_bits=" +
              std::to_string(requested) +
              " capacity=" + std::to_string(capacity)),
        requested_(requested),
        capacity_(capacity) {}

  std::size_t requested() const noexcept { return requested_; }
  std::size_t capacity() const noexcept { return capacity_; }

 private:
  std::size_t requested_;
  std::size_t capacity_;
};

// Restoration did not reproduce the carrier, or a stego block cannot have
// been produced by the codec.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

}  // namespace rdh
