// Exception hierarchy shared by every mnc component.
#pragma once

#include <stdexcept>
#include <string>

namespace mnc {

/// Base class of all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Illegal (out-of-range, non-finite or, in strict mode, non-integral) address.
class AddressingError : public Error {
 public:
  using Error::Error;
};

/// Network dimensions do not chain, or an input has the wrong width.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A caller-side precondition was violated (bad length, bad config, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A merged module output exceeded the gate bound B.
class GateBoundError : public Error {
 public:
  using Error::Error;
};

/// Gate vector not one-hot, inactive module leaked output, or frame broken.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// A program could not be compiled (non-integer table key, capacity, ...).
class CompileError : public Error {
 public:
  using Error::Error;
};

/// Two table entries share a key but disagree on the value.
class CompileConflictError : public CompileError {
 public:
  using CompileError::CompileError;
};

/// Text input (arrays, instance files, traces) could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace mnc
