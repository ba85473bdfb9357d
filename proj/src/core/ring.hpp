#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "error.hpp"

namespace morselink::alg {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Exact coefficient: a rational for Z and Q, a residue in [0, p) for Z/p.
struct Scalar {
  Rat v;

  Scalar() : v(0) {}
  explicit Scalar(Rat r) : v(std::move(r)) {}

  bool operator==(const Scalar& o) const { return v == o.v; }
  bool operator!=(const Scalar& o) const { return v != o.v; }
};

enum class ring_kind { integers, rationals, mod_p };

class Ring {
 public:
  static Ring integers() { return Ring(ring_kind::integers, 0); }
  static Ring rationals() { return Ring(ring_kind::rationals, 0); }
  static Ring mod(long p);

  // Accepts "Z", "Q", "Z2", "Zp:<p>".
  static Ring parse(const std::string& token);

  ring_kind kind() const { return kind_; }
  long p() const { return p_; }
  bool is_field() const { return kind_ != ring_kind::integers; }
  std::string name() const;

  Scalar zero() const { return Scalar(); }
  Scalar one() const { return from_int(1); }
  Scalar from_int(long n) const;
  Scalar from_rat(const Rat& r) const;

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  // Throws UNSOLVABLE_OVER_RING when b does not divide a (over Z) or b == 0.
  Scalar div(const Scalar& a, const Scalar& b) const;
  Scalar inv(const Scalar& a) const { return div(one(), a); }
  bool divides(const Scalar& a, const Scalar& b) const;  // a | b

  bool is_zero(const Scalar& a) const { return a.v == 0; }
  bool is_unit(const Scalar& a) const;

  // Canonical textual form: "-3", "3/4", residues as "2".
  std::string str(const Scalar& a) const;
  Scalar parse_scalar(const std::string& text) const;

  bool operator==(const Ring& o) const { return kind_ == o.kind_ && p_ == o.p_; }

 private:
  Ring(ring_kind k, long p) : kind_(k), p_(p) {}
  Scalar reduce(Rat r) const;

  ring_kind kind_;
  long p_;
};

}  // namespace morselink::alg
