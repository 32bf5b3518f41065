#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hypersum {

/// Base class of every error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A gamma function, Pochhammer symbol or series term hit a pole that does
/// not cancel.
class pole_error : public error {
 public:
  explicit pole_error(const std::string& what, long index = -1)
      : error(what), index_(index) {}
  /// Term index that produced the pole, or -1 when not tied to a term.
  long index() const noexcept { return index_; }

 private:
  long index_;
};

/// Exact arithmetic was requested at a point where the value is not rational
/// (or a rational multiple of sqrt(pi)).
class unsupported_exact_error : public error {
 public:
  using error::error;
};

/// Both gammas of a ratio are infinite and no integer shift relates them.
class indeterminate_error : public error {
 public:
  using error::error;
};

/// Two float operands carry different binary precisions.
class precision_mismatch : public error {
 public:
  using error::error;
};

/// The series is classified divergent (or undefined) and is not summed.
class divergent_error : public error {
 public:
  using error::error;
};

/// max_terms was exhausted before the tail estimate met the tolerance.
/// The partial sum is kept as a decimal string so this header stays free of
/// the numeric types.
class no_convergence_error : public error {
 public:
  no_convergence_error(const std::string& what, std::string partial_sum,
                       std::size_t terms)
      : error(what), partial_sum_(std::move(partial_sum)), terms_(terms) {}
  const std::string& partial_sum() const noexcept { return partial_sum_; }
  std::size_t terms() const noexcept { return terms_; }

 private:
  std::string partial_sum_;
  std::size_t terms_;
};

/// Malformed numeric literal; position is the 0-based offset of the first
/// offending character.
class parse_error : public error {
 public:
  parse_error(const std::string& what, std::size_t position)
      : error(what + " at position " + std::to_string(position)),
        reason_(what),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::string reason_;
  std::size_t position_;
};

/// A precondition on an operation's arguments is violated.
class domain_error : public error {
 public:
  using error::error;
};

}  // namespace hypersum
