#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gdpa {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A required precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The coefficient ring does not support the requested operation.
class UnsupportedRing : public Error {
 public:
  using Error::Error;
};

/// Integer-coefficient polynomial in one variable q.
/// Coefficients are stored low degree first with no trailing zeros.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<mpz_class> coeffs);
  static IntPoly constant(const mpz_class& c);
  static IntPoly monomial(const mpz_class& c, std::size_t deg);

  const std::vector<mpz_class>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// Degree of the polynomial; -1 for zero.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  mpz_class coeff(std::size_t i) const { return i < c_.size() ? c_[i] : mpz_class(0); }

  IntPoly operator+(const IntPoly& o) const;
  IntPoly operator-(const IntPoly& o) const;
  IntPoly operator-() const;
  IntPoly operator*(const IntPoly& o) const;
  bool operator==(const IntPoly& o) const { return c_ == o.c_; }
  bool operator!=(const IntPoly& o) const { return c_ != o.c_; }

  /// Division with remainder over Q; returns false when the quotient is
  /// not integral or the remainder is nonzero.
  bool divides(const IntPoly& num) const;
  /// Exact quotient num / *this. Throws if not exact in Z[q].
  IntPoly divide_exact(const IntPoly& num) const;
  mpz_class content() const;
  IntPoly primitive_part() const;
  mpz_class evaluate(const mpz_class& x) const;
  std::string to_string() const;
  static IntPoly parse(const std::string& s);

 private:
  void trim();
  std::vector<mpz_class> c_;
};

enum class RingKind { Integers, Rationals, IntegersMod, PrimeField, PLocal, IntPoly };

/// Element of a coefficient ring. Scalar kinds use `q`; IntPoly uses `poly`.
/// Values are only meaningful together with their Ring, which keeps them in
/// canonical form: Z has denominator 1, residues lie in [0, n), fractions
/// are reduced with positive denominator, p-local denominators are prime to p.
struct RingElement {
  mpq_class q;
  IntPoly poly;

  bool operator==(const RingElement& o) const { return q == o.q && poly == o.poly; }
  bool operator!=(const RingElement& o) const { return !(*this == o); }
};

/// Descriptor of a coefficient ring together with its arithmetic.
class Ring {
 public:
  Ring() = default;
  static Ring integers();
  static Ring rationals();
  /// Z/n with n >= 2.
  static Ring integers_mod(const mpz_class& n);
  /// GF(p) with p prime.
  static Ring prime_field(const mpz_class& p);
  /// Z localized at the prime p.
  static Ring p_local(const mpz_class& p);
  static Ring int_poly();

  RingKind kind() const { return kind_; }
  /// n for Z/n, p for GF(p) and Z_(p), 0 otherwise.
  const mpz_class& modulus() const { return n_; }

  bool is_field() const;
  bool is_domain() const;
  bool is_pid() const;
  bool is_local() const;
  /// Residue characteristic-style prime of a local ring (p for GF(p), Z_(p),
  /// Z/p^s); 0 for fields of characteristic zero; throws otherwise.
  mpz_class local_prime() const;
  /// Short name: Z, Q, Z/4, GF(2), Z_(3), Z[q].
  std::string name() const;

  bool operator==(const Ring& o) const { return kind_ == o.kind_ && n_ == o.n_; }
  bool operator!=(const Ring& o) const { return !(*this == o); }

  RingElement zero() const;
  RingElement one() const;
  RingElement from_int(long v) const;
  RingElement from_mpz(const mpz_class& v) const;
  /// Maps a rational into the ring; throws if the denominator is not invertible.
  RingElement from_mpq(const mpq_class& v) const;
  RingElement from_poly(const IntPoly& p) const;
  /// Re-canonicalizes a value; idempotent on canonical values.
  RingElement normalize(const RingElement& a) const;

  RingElement add(const RingElement& a, const RingElement& b) const;
  RingElement sub(const RingElement& a, const RingElement& b) const;
  RingElement neg(const RingElement& a) const;
  RingElement mul(const RingElement& a, const RingElement& b) const;
  RingElement pow(const RingElement& a, unsigned long e) const;

  bool is_zero(const RingElement& a) const;
  bool is_one(const RingElement& a) const;
  bool is_unit(const RingElement& a) const;
  RingElement inverse(const RingElement& u) const;
  /// True when a divides b.
  bool divides(const RingElement& a, const RingElement& b) const;
  /// Returns some x with a*x = b; requires divides(a, b).
  RingElement divide(const RingElement& b, const RingElement& a) const;
  /// Canonical generator of the principal ideal (a).
  RingElement associate_normal(const RingElement& a) const;
  /// Canonical generator of the ideal generated by the list (PID kinds and Z/n).
  RingElement ideal_generator(const std::vector<RingElement>& gens) const;
  /// True when (a, b) is the unit ideal.
  bool unit_ideal(const RingElement& a, const RingElement& b) const;

  /// Size measure used for pivoting in Euclidean elimination: absolute value
  /// over Z, valuation over Z_(p), 0 over fields.
  mpz_class euclid_size(const RingElement& a) const;
  /// q with a - q*b of smaller euclid_size than b (or zero).
  RingElement euclid_quotient(const RingElement& a, const RingElement& b) const;

  /// p-adic valuation for Z_(p) (and Z with explicit prime); -1 for zero.
  long valuation(const RingElement& a, const mpz_class& p) const;

  std::string to_string(const RingElement& a) const;
  RingElement parse(const std::string& s) const;

 private:
  Ring(RingKind k, mpz_class n);
  void require_scalar(const char* op) const;
  RingKind kind_ = RingKind::Integers;
  mpz_class n_ = 0;
  bool field_ = false;
  mpz_class local_prime_ = 0;  // 0 when not local or of characteristic zero
  bool local_ = false;
};

bool is_prime(const mpz_class& n);
/// Prime factorization with multiplicities, ascending primes. Requires n > 0.
std::vector<std::pair<mpz_class, unsigned>> factorize(const mpz_class& n);

}  // namespace gdpa
