#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gdpa/matrix.hpp"

namespace gdpa {

/// Class-group element as integer multiplicities of named generators, e.g.
/// {"[Z]": 1, "[Z/4]": 2}. Zero multiplicities are never stored.
using ClassVector = std::map<std::string, long long>;

enum class ClassMode {
  /// Elementary-divisor decomposition: [R] per free summand, [Z/p^k] per
  /// primary cyclic summand.
  Full,
  /// Rank (dimension over a field) only; finite modules vanish.
  Rank,
  /// Zero unless the module has no free part; then per-prime lengths [F_p].
  Plus,
};

/// Class of a finitely generated module with the given invariants.
ClassVector class_of(const ModuleInvariants& inv, const Ring& ring, ClassMode mode);
ClassVector& add_into(ClassVector& acc, const ClassVector& v, long long sign = 1);
std::string to_string(const ClassVector& v);

/// Laurent polynomial with integer coefficients in t.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  static LaurentPoly monomial(long long c, long e);
  static LaurentPoly one() { return monomial(1, 0); }
  /// 1 - t^p.
  static LaurentPoly one_minus_t(long p);

  const std::map<long, long long>& coeffs() const { return c_; }
  long long coeff(long e) const;
  void add_term(long e, long long c);
  bool is_zero() const { return c_.empty(); }
  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  bool operator==(const LaurentPoly& o) const { return c_ == o.c_; }
  bool operator!=(const LaurentPoly& o) const { return c_ != o.c_; }
  /// Exact quotient by 1 - t^p if it exists.
  std::optional<LaurentPoly> divide_one_minus_t(long p) const;
  /// E.g. "1-t^2", "2*t^-1+t".
  std::string to_string() const;

 private:
  std::map<long, long long> c_;
};

/// num(t) / prod_i (1 - t^{den_i}).
struct RationalSeries {
  LaurentPoly num;
  std::vector<long> den;

  /// Power-series coefficients for degrees lo..hi.
  std::vector<long long> expand(long lo, long hi) const;
  /// Equality as rational functions.
  bool equals(const RationalSeries& o) const;
  RationalSeries operator+(const RationalSeries& o) const;
  RationalSeries operator*(const RationalSeries& o) const;
  RationalSeries negated() const;
  /// Cancels denominator factors dividing the numerator; sorts the rest.
  RationalSeries reduced() const;
  /// E.g. "1/(1-t^2)", "(1+t)/((1-t)(1-t^3))".
  std::string to_string() const;
};

/// Formal sum of class generators with rational-series coefficients.
class KClassExpr {
 public:
  KClassExpr() = default;
  const std::map<std::string, RationalSeries>& terms() const { return terms_; }
  void add_term(const std::string& key, const RationalSeries& s);
  KClassExpr operator+(const KClassExpr& o) const;
  KClassExpr operator-(const KClassExpr& o) const;
  /// Multiplies every coefficient by the rational function f.
  KClassExpr times(const RationalSeries& f) const;
  /// Equality as rational functions, key by key.
  bool equals(const KClassExpr& o) const;
  bool is_zero() const;
  std::vector<ClassVector> expand(long lo, long hi) const;
  /// Keys with equal coefficient are grouped: "([Z/2]+[Z/3])/(1-t^2)".
  std::string to_string() const;

  /// Fits each key's coefficient stream (data[i] is degree lo + i) by an
  /// eventually periodic series: the smallest preperiod-plus-period P with at
  /// least two full periods observed, at most max_period. A zero periodic
  /// part yields a polynomial. Returns nullopt if some stream has no fit.
  static std::optional<KClassExpr> fit(const std::vector<ClassVector>& data, long lo, long max_period = -1);

 private:
  std::map<std::string, RationalSeries> terms_;
};

}  // namespace gdpa
