#pragma once
/*
 * Exact arithmetic in Q(i).
 *
 * Gaussian rationals back every exactly specified coefficient value. The
 * text form is "a/b+c/d i"; parse_gaussian also accepts decimals ("0.25"),
 * bare units ("i", "-i") and whitespace between tokens.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <complex>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace ezeta {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline std::string to_string(const Rational& q) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(Rational re, Rational im = Rational(0)) : re_(std::move(re)), im_(std::move(im)) {}
  GaussianRational(long long re) : re_(re) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  Rational norm() const { return re_ * re_ + im_ * im_; }
  GaussianRational conj() const { return {re_, -im_}; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_real() const { return im_ == 0; }
  bool is_nonnegative_real() const { return im_ == 0 && re_ >= 0; }
  bool is_unit() const { return norm() == 1; }

  // True for 1, i, -1, -i; sets m to the principal argument in units of pi/2.
  bool is_fourth_root_of_unity(int* m = nullptr) const {
    int k;
    if (im_ == 0 && re_ == 1) k = 0;
    else if (re_ == 0 && im_ == 1) k = 1;
    else if (im_ == 0 && re_ == -1) k = 2;
    else if (re_ == 0 && im_ == -1) k = -1;
    else return false;
    if (m) *m = k;
    return true;
  }

  std::complex<double> to_complex() const { return {to_double(re_), to_double(im_)}; }

  GaussianRational operator-() const { return {-re_, -im_}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational r = re_ * o.re_ - im_ * o.im_;
    im_ = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    Rational n = o.norm();
    if (n == 0) throw DomainError("division by zero in Q(i)");
    *this *= o.conj();
    re_ /= n;
    im_ /= n;
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  std::string str() const;

 private:
  Rational re_{0};
  Rational im_{0};
};

inline GaussianRational pow(GaussianRational base, unsigned long long e) {
  GaussianRational acc(1);
  while (e) {
    if (e & 1u) acc *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return acc;
}

inline std::string GaussianRational::str() const {
  if (im_ == 0) return to_string(re_);
  std::string imag;
  Rational mag = im_ < 0 ? Rational(-im_) : im_;
  imag = mag == 1 ? "i" : to_string(mag) + " i";
  if (re_ == 0) return im_ < 0 ? "-" + imag : imag;
  return to_string(re_) + (im_ < 0 ? "-" : "+") + imag;
}

inline std::ostream& operator<<(std::ostream& os, const GaussianRational& v) { return os << v.str(); }

namespace detail {

class ValueLexer {
 public:
  explicit ValueLexer(std::string_view s) : s_(s) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::size_t pos() const { return pos_; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(msg + " in value \"" + std::string(s_) + "\"", pos_);
  }

  bool at_digit() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }

  // digits ['/' digits] | digits '.' digits
  Rational unsigned_number() {
    skip_ws();
    BigInt num = digits();
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      std::size_t start = pos_;
      BigInt frac = digits();
      BigInt scale = 1;
      for (std::size_t k = start; k < pos_; ++k) scale *= 10;
      return Rational(num * scale + frac, scale);
    }
    if (accept('/')) {
      skip_ws();
      BigInt den = digits();
      if (den == 0) fail("zero denominator");
      return Rational(num, den);
    }
    return Rational(num);
  }

 private:
  BigInt digits() {
    std::size_t start = pos_;
    BigInt v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      ++pos_;
    }
    if (pos_ == start) fail("expected digits");
    return v;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// Parses a rational literal: "3", "-3/4", "0.125".
inline Rational parse_rational(std::string_view text) {
  detail::ValueLexer lx(text);
  bool neg = lx.accept('-');
  if (!neg) lx.accept('+');
  Rational q = lx.unsigned_number();
  if (!lx.done()) lx.fail("trailing characters");
  return neg ? Rational(-q) : q;
}

// Grammar: term [sign term], where a term is a rational or an imaginary part
// "[rational] i". At most one real and one imaginary term.
inline GaussianRational parse_gaussian(std::string_view text) {
  detail::ValueLexer lx(text);
  Rational re = 0, im = 0;
  bool have_re = false, have_im = false;
  bool first = true;
  while (!lx.done()) {
    bool neg = false;
    if (lx.accept('-')) neg = true;
    else if (!lx.accept('+') && !first) lx.fail("expected sign");
    Rational mag = 1;
    bool had_number = false;
    if (lx.at_digit()) {
      mag = lx.unsigned_number();
      had_number = true;
    }
    bool imag = lx.accept('i');
    if (!imag && !had_number) lx.fail("expected number or i");
    if (neg) mag = -mag;
    if (imag) {
      if (have_im) lx.fail("duplicate imaginary part");
      im = mag;
      have_im = true;
    } else {
      if (have_re || have_im) lx.fail("unexpected real part");
      re = mag;
      have_re = true;
    }
    first = false;
  }
  if (!have_re && !have_im) lx.fail("empty value");
  return {re, im};
}

}  // namespace ezeta
