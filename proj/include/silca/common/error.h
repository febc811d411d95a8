// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SILCA_COMMON_ERROR_H_
#define SILCA_COMMON_ERROR_H_

#include <stdexcept>
#include <string>

namespace silca {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation was invoked on inputs in the wrong state (e.g. wrong NTT
// domain, mismatched bases or parameter digests).
class UsageError : public Error {
 public:
  using Error::Error;
};

// Parameters are invalid or an encoding would overflow the modulus.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// A plaintext lies outside the scheme's domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Decryption detected an exhausted noise budget.
class DecryptionError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// Malformed file or container.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace silca

#endif  // SILCA_COMMON_ERROR_H_
