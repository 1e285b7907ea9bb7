#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ezeta {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed spec text. position is a byte offset into the input, or npos for
// errors located by document path instead.
class SyntaxError : public Error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  SyntaxError(const std::string& what, std::size_t position)
      : Error(what + " (at offset " + std::to_string(position) + ")"), position_(position) {}
  explicit SyntaxError(const std::string& what) : Error(what), position_(npos) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class ConstraintError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class ModeError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class NegativeMassError : public Error {
 public:
  NegativeMassError(const std::string& what, int rank, unsigned long long n)
      : Error(what), rank_(rank), n_(n) {}
  int rank() const noexcept { return rank_; }
  unsigned long long n() const noexcept { return n_; }

 private:
  int rank_;
  unsigned long long n_;
};

}  // namespace ezeta
