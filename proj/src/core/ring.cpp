#include "ring.hpp"

#include <boost/multiprecision/integer.hpp>

namespace morselink::alg {

namespace {

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

}  // namespace

Ring Ring::mod(long p) {
  require(is_prime(p), errc::invalid_argument, "modulus must be prime, got " + std::to_string(p));
  return Ring(ring_kind::mod_p, p);
}

Ring Ring::parse(const std::string& token) {
  if (token == "Z") return integers();
  if (token == "Q") return rationals();
  if (token == "Z2") return mod(2);
  if (token.rfind("Zp:", 0) == 0) {
    try {
      return mod(std::stol(token.substr(3)));
    } catch (const std::logic_error&) {
      fail(errc::invalid_argument, "bad ring token: " + token);
    }
  }
  fail(errc::invalid_argument, "bad ring token: " + token);
}

std::string Ring::name() const {
  switch (kind_) {
    case ring_kind::integers: return "Z";
    case ring_kind::rationals: return "Q";
    case ring_kind::mod_p: return "Zp:" + std::to_string(p_);
  }
  return "?";
}

Scalar Ring::reduce(Rat r) const {
  if (kind_ != ring_kind::mod_p) return Scalar(std::move(r));
  // Residue of a rational with denominator prime to p.
  Int n = num(r) % p_;
  Int d = den(r) % p_;
  require(d != 0, errc::unsolvable_over_ring, "denominator divisible by " + std::to_string(p_));
  if (n < 0) n += p_;
  // Invert d mod p by Fermat (p is small and prime).
  Int dinv = 1, base = d, e = p_ - 2;
  while (e > 0) {
    if (e & 1) dinv = dinv * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return Scalar(Rat(n * dinv % p_));
}

Scalar Ring::from_int(long n) const { return reduce(Rat(n)); }

Scalar Ring::from_rat(const Rat& r) const {
  if (kind_ == ring_kind::integers)
    require(den(r) == 1, errc::invalid_argument, "non-integer coefficient over Z");
  return reduce(r);
}

Scalar Ring::add(const Scalar& a, const Scalar& b) const { return reduce(a.v + b.v); }
Scalar Ring::sub(const Scalar& a, const Scalar& b) const { return reduce(a.v - b.v); }
Scalar Ring::mul(const Scalar& a, const Scalar& b) const { return reduce(a.v * b.v); }
Scalar Ring::neg(const Scalar& a) const { return reduce(-a.v); }

bool Ring::divides(const Scalar& a, const Scalar& b) const {
  if (a.v == 0) return b.v == 0;
  if (kind_ != ring_kind::integers) return true;
  return num(b.v) % num(a.v) == 0;
}

Scalar Ring::div(const Scalar& a, const Scalar& b) const {
  require(b.v != 0, errc::unsolvable_over_ring, "division by zero");
  if (kind_ == ring_kind::integers)
    require(divides(b, a), errc::unsolvable_over_ring,
            "inexact division over Z: " + str(a) + " / " + str(b));
  return reduce(a.v / b.v);
}

bool Ring::is_unit(const Scalar& a) const {
  if (a.v == 0) return false;
  if (kind_ == ring_kind::integers) return a.v == 1 || a.v == -1;
  return true;
}

std::string Ring::str(const Scalar& a) const { return a.v.str(); }

Scalar Ring::parse_scalar(const std::string& text) const {
  try {
    return from_rat(Rat(text));
  } catch (const std::exception&) {
    fail(errc::parse_error, "bad coefficient: " + text);
  }
}

}  // namespace morselink::alg
