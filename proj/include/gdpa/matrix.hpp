#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gdpa/ring.hpp"

namespace gdpa {

using Vec = std::vector<RingElement>;

/// Dense matrix over one coefficient ring, row-major.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(Ring ring, std::size_t rows, std::size_t cols);
  static ExactMatrix identity(const Ring& ring, std::size_t n);
  /// Builds a rows x vecs.size() matrix whose columns are the given vectors.
  static ExactMatrix from_columns(const Ring& ring, std::size_t rows, const std::vector<Vec>& cols);
  static ExactMatrix from_ints(const Ring& ring, const std::vector<std::vector<long>>& rows);

  const Ring& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  RingElement& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const RingElement& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Vec column(std::size_t j) const;
  std::vector<Vec> columns() const;
  void append_column(const Vec& v);
  ExactMatrix operator*(const ExactMatrix& o) const;
  Vec apply(const Vec& v) const;
  bool operator==(const ExactMatrix& o) const;
  bool is_zero() const;
  /// Same entries reinterpreted over another ring (entries re-normalized).
  ExactMatrix over(const Ring& r) const;
  std::string to_string() const;

  void swap_rows(std::size_t i, std::size_t k);
  void swap_cols(std::size_t j, std::size_t k);
  /// row_i += c * row_k
  void add_row_multiple(std::size_t i, std::size_t k, const RingElement& c);
  /// col_j += c * col_k
  void add_col_multiple(std::size_t j, std::size_t k, const RingElement& c);
  void scale_row(std::size_t i, const RingElement& c);
  void scale_col(std::size_t j, const RingElement& c);

 private:
  Ring ring_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<RingElement> a_;
};

/// Isomorphism class of a finitely generated module over a PID (or Z/n):
/// free part plus invariant factors d_1 | d_2 | ... (nonzero nonunits,
/// canonical associates).
struct ModuleInvariants {
  std::size_t free_rank = 0;
  std::vector<RingElement> torsion_factors;

  bool is_zero() const { return free_rank == 0 && torsion_factors.empty(); }
  bool operator==(const ModuleInvariants& o) const {
    return free_rank == o.free_rank && torsion_factors == o.torsion_factors;
  }
  bool operator!=(const ModuleInvariants& o) const { return !(*this == o); }
  std::string to_string(const Ring& ring) const;
};

struct SnfResult {
  ExactMatrix U, D, V;
  /// Number of nonzero diagonal entries.
  std::size_t rank = 0;
};

/// U*m*V = D with D diagonal in divisibility-chain form. Over Z/n the
/// computation runs on the integer lift and the factors are reduced mod n.
SnfResult smith_normal_form(const ExactMatrix& m);
/// coker(m : R^cols -> R^rows).
ModuleInvariants cokernel_invariants(const ExactMatrix& m);
/// Generating set of {v : m v = 0}; a basis over PIDs.
std::vector<Vec> kernel_basis(const ExactMatrix& m);

/// Linear algebra of submodules of R^r for a PID R or R = Z/n. For Z/n all
/// submodules are handled as lattices in Z^r containing n*Z^r, so every
/// computation runs over a PID.
class LinearContext {
 public:
  explicit LinearContext(const Ring& ring);

  const Ring& ring() const { return ring_; }
  /// Ring in which lattice computations are done (Z for composite Z/n).
  const Ring& pid() const { return pid_; }
  bool lifted() const { return modulus_ != 0; }

  /// Lifts an R-matrix to the PID (identity unless lifted).
  ExactMatrix lift(const ExactMatrix& m) const;
  /// Columns of g together with the ambient modulus lattice, over the PID.
  ExactMatrix with_modulus(const ExactMatrix& g) const;
  /// Basis (full column rank) of span(g) + modulus lattice, over the PID.
  ExactMatrix basis(const ExactMatrix& g) const;
  /// Coordinates of the columns of v in the basis b; nullopt if some column
  /// is outside span(b). b must have full column rank (output of basis()).
  std::optional<ExactMatrix> coordinates(const ExactMatrix& b, const ExactMatrix& v) const;
  bool contains(const ExactMatrix& span, const ExactMatrix& v) const;
  /// Generators (over the PID) of {x : a x in span(t) + modulus lattice}.
  ExactMatrix preimage(const ExactMatrix& a, const ExactMatrix& t) const;
  /// Invariants over R of (span(s) + L) / (span(t) + L) where L is the
  /// modulus lattice. Requires span(t) inside span(s) + L.
  ModuleInvariants subquotient(const ExactMatrix& s, const ExactMatrix& t) const;

  struct QuotientLifts {
    /// Vectors of span(s) whose images generate span(s)/span(t) minimally.
    std::vector<Vec> lifts;
    /// Order of each lift in the quotient: zero for free, else a nonunit.
    std::vector<RingElement> orders;
  };
  QuotientLifts quotient_lifts(const ExactMatrix& s, const ExactMatrix& t) const;

  /// Reduces a PID vector to canonical R elements.
  Vec down(const Vec& v) const;
  /// Invariants over R from SNF diagonal entries over the PID of a square
  /// coordinate matrix of size k.
  ModuleInvariants invariants_from_diagonal(const std::vector<RingElement>& diag, std::size_t k) const;

 private:
  Ring ring_, pid_;
  mpz_class modulus_ = 0;
};

}  // namespace gdpa
