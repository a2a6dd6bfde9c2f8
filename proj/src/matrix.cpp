#include "gdpa/matrix.hpp"

#include <sstream>

namespace gdpa {

// ---------------------------------------------------------------- ExactMatrix

ExactMatrix::ExactMatrix(Ring ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), a_(rows * cols) {}

ExactMatrix ExactMatrix::identity(const Ring& ring, std::size_t n) {
  ExactMatrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = ring.one();
  return m;
}

ExactMatrix ExactMatrix::from_columns(const Ring& ring, std::size_t rows, const std::vector<Vec>& cols) {
  ExactMatrix m(ring, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw PreconditionError("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
  }
  return m;
}

ExactMatrix ExactMatrix::from_ints(const Ring& ring, const std::vector<std::vector<long>>& rows) {
  std::size_t c = rows.empty() ? 0 : rows[0].size();
  ExactMatrix m(ring, rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw PreconditionError("ragged matrix");
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = ring.from_int(rows[i][j]);
  }
  return m;
}

Vec ExactMatrix::column(std::size_t j) const {
  Vec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
  return v;
}

std::vector<Vec> ExactMatrix::columns() const {
  std::vector<Vec> out;
  out.reserve(cols_);
  for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
  return out;
}

void ExactMatrix::append_column(const Vec& v) {
  if (v.size() != rows_) throw PreconditionError("column length mismatch");
  std::vector<RingElement> b(rows_ * (cols_ + 1));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) b[i * (cols_ + 1) + j] = std::move(a_[i * cols_ + j]);
    b[i * (cols_ + 1) + cols_] = v[i];
  }
  a_ = std::move(b);
  ++cols_;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& o) const {
  if (cols_ != o.rows_) throw PreconditionError("matrix dimension mismatch");
  ExactMatrix r(ring_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const RingElement& x = at(i, k);
      if (ring_.is_zero(x)) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const RingElement& y = o.at(k, j);
        if (ring_.is_zero(y)) continue;
        r.at(i, j) = ring_.add(r.at(i, j), ring_.mul(x, y));
      }
    }
  return r;
}

Vec ExactMatrix::apply(const Vec& v) const {
  if (v.size() != cols_) throw PreconditionError("vector length mismatch");
  Vec out(rows_, ring_.zero());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (!ring_.is_zero(at(i, j)) && !ring_.is_zero(v[j]))
        out[i] = ring_.add(out[i], ring_.mul(at(i, j), v[j]));
  return out;
}

bool ExactMatrix::operator==(const ExactMatrix& o) const {
  return ring_ == o.ring_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

bool ExactMatrix::is_zero() const {
  for (const auto& x : a_)
    if (!ring_.is_zero(x)) return false;
  return true;
}

ExactMatrix ExactMatrix::over(const Ring& r) const {
  ExactMatrix m(r, rows_, cols_);
  for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = r.normalize(a_[k]);
  return m;
}

std::string ExactMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << ring_.to_string(at(i, j));
    os << "]";
  }
  os << "]";
  return os.str();
}

void ExactMatrix::swap_rows(std::size_t i, std::size_t k) {
  if (i == k) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap(at(i, j), at(k, j));
}

void ExactMatrix::swap_cols(std::size_t j, std::size_t k) {
  if (j == k) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap(at(i, j), at(i, k));
}

void ExactMatrix::add_row_multiple(std::size_t i, std::size_t k, const RingElement& c) {
  if (ring_.is_zero(c)) return;
  for (std::size_t j = 0; j < cols_; ++j)
    if (!ring_.is_zero(at(k, j))) at(i, j) = ring_.add(at(i, j), ring_.mul(c, at(k, j)));
}

void ExactMatrix::add_col_multiple(std::size_t j, std::size_t k, const RingElement& c) {
  if (ring_.is_zero(c)) return;
  for (std::size_t i = 0; i < rows_; ++i)
    if (!ring_.is_zero(at(i, k))) at(i, j) = ring_.add(at(i, j), ring_.mul(c, at(i, k)));
}

void ExactMatrix::scale_row(std::size_t i, const RingElement& c) {
  for (std::size_t j = 0; j < cols_; ++j) at(i, j) = ring_.mul(c, at(i, j));
}

void ExactMatrix::scale_col(std::size_t j, const RingElement& c) {
  for (std::size_t i = 0; i < rows_; ++i) at(i, j) = ring_.mul(c, at(i, j));
}

std::string ModuleInvariants::to_string(const Ring& ring) const {
  std::string free_sym = ring.name();
  std::vector<std::string> parts;
  if (free_rank == 1) parts.push_back(free_sym);
  if (free_rank > 1) parts.push_back(free_sym + "^" + std::to_string(free_rank));
  for (const auto& d : torsion_factors) {
    std::string base = ring.kind() == RingKind::IntegersMod ? "Z" : free_sym;
    parts.push_back(base + "/" + ring.to_string(d));
  }
  if (parts.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " + " : "") + parts[i];
  return out;
}

// ---------------------------------------------------------------- SNF core

namespace {

struct Tracking {
  ExactMatrix* U = nullptr;
  ExactMatrix* Uinv = nullptr;
  ExactMatrix* V = nullptr;
  ExactMatrix* Vinv = nullptr;
};

class SnfEngine {
 public:
  SnfEngine(ExactMatrix& a, Tracking t) : a_(a), t_(t), r_(a.ring()) {}

  // Row operation row_i += c*row_k, mirrored on the trackers.
  void row_add(std::size_t i, std::size_t k, const RingElement& c) {
    a_.add_row_multiple(i, k, c);
    if (t_.U) t_.U->add_row_multiple(i, k, c);
    if (t_.Uinv) t_.Uinv->add_col_multiple(k, i, r_.neg(c));
  }
  void row_swap(std::size_t i, std::size_t k) {
    a_.swap_rows(i, k);
    if (t_.U) t_.U->swap_rows(i, k);
    if (t_.Uinv) t_.Uinv->swap_cols(i, k);
  }
  void row_scale(std::size_t i, const RingElement& u) {
    a_.scale_row(i, u);
    if (t_.U) t_.U->scale_row(i, u);
    if (t_.Uinv) t_.Uinv->scale_col(i, r_.inverse(u));
  }
  void col_add(std::size_t j, std::size_t k, const RingElement& c) {
    a_.add_col_multiple(j, k, c);
    if (t_.V) t_.V->add_col_multiple(j, k, c);
    if (t_.Vinv) t_.Vinv->add_row_multiple(k, j, r_.neg(c));
  }
  void col_swap(std::size_t j, std::size_t k) {
    a_.swap_cols(j, k);
    if (t_.V) t_.V->swap_cols(j, k);
    if (t_.Vinv) t_.Vinv->swap_rows(j, k);
  }

  std::size_t run() {
    const std::size_t R = a_.rows(), C = a_.cols();
    std::size_t t = 0;
    for (; t < std::min(R, C); ++t) {
      if (!place_min_pivot(t, t, R, t, C)) break;
      for (;;) {
        bool clean = true;
        for (std::size_t i = t + 1; i < R; ++i) {
          if (r_.is_zero(a_.at(i, t))) continue;
          RingElement q = r_.euclid_quotient(a_.at(i, t), a_.at(t, t));
          row_add(i, t, r_.neg(q));
          if (!r_.is_zero(a_.at(i, t))) clean = false;
        }
        for (std::size_t j = t + 1; j < C; ++j) {
          if (r_.is_zero(a_.at(t, j))) continue;
          RingElement q = r_.euclid_quotient(a_.at(t, j), a_.at(t, t));
          col_add(j, t, r_.neg(q));
          if (!r_.is_zero(a_.at(t, j))) clean = false;
        }
        if (!clean) {
          place_min_cross_pivot(t);
          continue;
        }
        bool fixed = false;
        for (std::size_t i = t + 1; i < R && !fixed; ++i)
          for (std::size_t j = t + 1; j < C && !fixed; ++j)
            if (!r_.divides(a_.at(t, t), a_.at(i, j))) {
              row_add(t, i, r_.one());
              fixed = true;
            }
        if (!fixed) break;
      }
      RingElement norm = r_.associate_normal(a_.at(t, t));
      if (a_.at(t, t) != norm) {
        RingElement unit = r_.divide(a_.at(t, t), norm);
        row_scale(t, r_.inverse(unit));
      }
    }
    return t;
  }

 private:
  bool place_min_pivot(std::size_t t, std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) {
    bool found = false;
    std::size_t bi = 0, bj = 0;
    mpz_class best;
    for (std::size_t i = r0; i < r1; ++i)
      for (std::size_t j = c0; j < c1; ++j) {
        const RingElement& x = a_.at(i, j);
        if (r_.is_zero(x)) continue;
        mpz_class s = r_.euclid_size(x);
        if (!found || s < best) {
          found = true;
          best = s;
          bi = i;
          bj = j;
          if (s == 0 || (s == 1 && r_.kind() == RingKind::Integers)) goto done;
        }
      }
  done:
    if (!found) return false;
    row_swap(t, bi);
    col_swap(t, bj);
    return true;
  }

  void place_min_cross_pivot(std::size_t t) {
    const std::size_t R = a_.rows(), C = a_.cols();
    std::size_t bi = t, bj = t;
    mpz_class best = r_.euclid_size(a_.at(t, t));
    for (std::size_t i = t + 1; i < R; ++i)
      if (!r_.is_zero(a_.at(i, t))) {
        mpz_class s = r_.euclid_size(a_.at(i, t));
        if (s < best) {
          best = s;
          bi = i;
          bj = t;
        }
      }
    for (std::size_t j = t + 1; j < C; ++j)
      if (!r_.is_zero(a_.at(t, j))) {
        mpz_class s = r_.euclid_size(a_.at(t, j));
        if (s < best) {
          best = s;
          bi = t;
          bj = j;
        }
      }
    row_swap(t, bi);
    col_swap(t, bj);
  }

  ExactMatrix& a_;
  Tracking t_;
  Ring r_;
};

bool composite_mod(const Ring& r) { return r.kind() == RingKind::IntegersMod && !r.is_field(); }

void require_linear_algebra(const Ring& r) {
  if (r.kind() == RingKind::IntPoly) throw UnsupportedRing("matrix algebra is not supported over Z[q]");
}

}  // namespace

SnfResult smith_normal_form(const ExactMatrix& m) {
  const Ring& R = m.ring();
  require_linear_algebra(R);
  const Ring P = composite_mod(R) ? Ring::integers() : R;
  ExactMatrix D = m.over(P);
  ExactMatrix U = ExactMatrix::identity(P, m.rows());
  ExactMatrix V = ExactMatrix::identity(P, m.cols());
  Tracking t;
  t.U = &U;
  t.V = &V;
  SnfEngine eng(D, t);
  std::size_t rank = eng.run();
  SnfResult res{U.over(R), D.over(R), V.over(R), 0};
  for (std::size_t i = 0; i < std::min(res.D.rows(), res.D.cols()); ++i)
    if (!R.is_zero(res.D.at(i, i))) res.rank = i + 1;
  if (!composite_mod(R)) res.rank = rank;
  return res;
}

ModuleInvariants cokernel_invariants(const ExactMatrix& m) {
  require_linear_algebra(m.ring());
  LinearContext lc(m.ring());
  ExactMatrix full = lc.with_modulus(lc.lift(m));
  ExactMatrix D = full;
  SnfEngine eng(D, Tracking{});
  std::size_t rank = eng.run();
  std::vector<RingElement> diag;
  for (std::size_t i = 0; i < rank; ++i) diag.push_back(D.at(i, i));
  return lc.invariants_from_diagonal(diag, m.rows());
}

std::vector<Vec> kernel_basis(const ExactMatrix& m) {
  require_linear_algebra(m.ring());
  LinearContext lc(m.ring());
  ExactMatrix k = lc.preimage(lc.lift(m), ExactMatrix(lc.pid(), m.rows(), 0));
  std::vector<Vec> out;
  for (std::size_t j = 0; j < k.cols(); ++j) {
    Vec v = lc.down(k.column(j));
    bool zero = true;
    for (const auto& x : v)
      if (!m.ring().is_zero(x)) zero = false;
    if (!zero) out.push_back(std::move(v));
  }
  return out;
}

// ---------------------------------------------------------------- LinearContext

LinearContext::LinearContext(const Ring& ring) : ring_(ring), pid_(ring) {
  require_linear_algebra(ring);
  if (composite_mod(ring)) {
    pid_ = Ring::integers();
    modulus_ = ring.modulus();
  }
}

ExactMatrix LinearContext::lift(const ExactMatrix& m) const { return lifted() ? m.over(pid_) : m; }

ExactMatrix LinearContext::with_modulus(const ExactMatrix& g) const {
  if (!lifted()) return g;
  ExactMatrix out(pid_, g.rows(), g.cols() + g.rows());
  for (std::size_t i = 0; i < g.rows(); ++i) {
    for (std::size_t j = 0; j < g.cols(); ++j) out.at(i, j) = pid_.normalize(g.at(i, j));
    out.at(i, g.cols() + i) = pid_.from_mpz(modulus_);
  }
  return out;
}

ExactMatrix LinearContext::basis(const ExactMatrix& g) const {
  ExactMatrix D = with_modulus(g);
  ExactMatrix Uinv = ExactMatrix::identity(pid_, D.rows());
  Tracking t;
  t.Uinv = &Uinv;
  SnfEngine eng(D, t);
  std::size_t rank = eng.run();
  ExactMatrix b(pid_, D.rows(), rank);
  for (std::size_t j = 0; j < rank; ++j)
    for (std::size_t i = 0; i < D.rows(); ++i) b.at(i, j) = pid_.mul(Uinv.at(i, j), D.at(j, j));
  return b;
}

std::optional<ExactMatrix> LinearContext::coordinates(const ExactMatrix& b, const ExactMatrix& v) const {
  ExactMatrix D = b;
  ExactMatrix U = ExactMatrix::identity(pid_, b.rows());
  ExactMatrix V = ExactMatrix::identity(pid_, b.cols());
  Tracking t;
  t.U = &U;
  t.V = &V;
  SnfEngine eng(D, t);
  std::size_t rank = eng.run();
  if (rank != b.cols()) throw PreconditionError("coordinates require a basis of full column rank");
  ExactMatrix W = U * v.over(pid_);
  ExactMatrix Y(pid_, rank, v.cols());
  for (std::size_t j = 0; j < v.cols(); ++j) {
    for (std::size_t i = rank; i < W.rows(); ++i)
      if (!pid_.is_zero(W.at(i, j))) return std::nullopt;
    for (std::size_t i = 0; i < rank; ++i) {
      if (!pid_.divides(D.at(i, i), W.at(i, j))) return std::nullopt;
      Y.at(i, j) = pid_.divide(W.at(i, j), D.at(i, i));
    }
  }
  return V * Y;
}

bool LinearContext::contains(const ExactMatrix& span, const ExactMatrix& v) const {
  return coordinates(basis(span), lift(v)).has_value();
}

ExactMatrix LinearContext::preimage(const ExactMatrix& a, const ExactMatrix& t) const {
  ExactMatrix tm = with_modulus(t);
  const std::size_t c = a.cols();
  ExactMatrix big(pid_, a.rows(), c + tm.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < c; ++j) big.at(i, j) = pid_.normalize(a.at(i, j));
    for (std::size_t j = 0; j < tm.cols(); ++j) big.at(i, c + j) = tm.at(i, j);
  }
  ExactMatrix V = ExactMatrix::identity(pid_, big.cols());
  Tracking tr;
  tr.V = &V;
  SnfEngine eng(big, tr);
  std::size_t rank = eng.run();
  ExactMatrix proj(pid_, c, big.cols() - rank);
  for (std::size_t j = rank; j < big.cols(); ++j)
    for (std::size_t i = 0; i < c; ++i) proj.at(i, j - rank) = V.at(i, j);
  if (lifted()) return basis(proj);
  ExactMatrix D = proj;
  ExactMatrix Uinv = ExactMatrix::identity(pid_, c);
  Tracking t2;
  t2.Uinv = &Uinv;
  SnfEngine e2(D, t2);
  std::size_t r2 = e2.run();
  ExactMatrix b(pid_, c, r2);
  for (std::size_t j = 0; j < r2; ++j)
    for (std::size_t i = 0; i < c; ++i) b.at(i, j) = pid_.mul(Uinv.at(i, j), D.at(j, j));
  return b;
}

ModuleInvariants LinearContext::subquotient(const ExactMatrix& s, const ExactMatrix& t) const {
  ExactMatrix B = basis(s);
  auto C = coordinates(B, with_modulus(lift(t)));
  if (!C) throw PreconditionError("subquotient: denominator is not contained in numerator");
  ExactMatrix D = *C;
  SnfEngine eng(D, Tracking{});
  std::size_t rank = eng.run();
  std::vector<RingElement> diag;
  for (std::size_t i = 0; i < rank; ++i) diag.push_back(D.at(i, i));
  return invariants_from_diagonal(diag, B.cols());
}

LinearContext::QuotientLifts LinearContext::quotient_lifts(const ExactMatrix& s, const ExactMatrix& t) const {
  ExactMatrix B = basis(s);
  auto C = coordinates(B, with_modulus(lift(t)));
  if (!C) throw PreconditionError("quotient_lifts: denominator is not contained in numerator");
  ExactMatrix D = *C;
  ExactMatrix Uinv = ExactMatrix::identity(pid_, B.cols());
  Tracking tr;
  tr.Uinv = &Uinv;
  SnfEngine eng(D, tr);
  std::size_t rank = eng.run();
  QuotientLifts out;
  for (std::size_t i = 0; i < B.cols(); ++i) {
    RingElement order = i < rank ? D.at(i, i) : pid_.zero();
    if (i < rank && pid_.is_unit(order)) continue;
    if (lifted() && i < rank && order.q == modulus_) order = pid_.zero();
    Vec coords(B.cols());
    for (std::size_t k = 0; k < B.cols(); ++k) coords[k] = Uinv.at(k, i);
    out.lifts.push_back(down(B.apply(coords)));
    out.orders.push_back(ring_.normalize(order));
  }
  return out;
}

Vec LinearContext::down(const Vec& v) const {
  if (!lifted()) return v;
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = ring_.normalize(v[i]);
  return out;
}

ModuleInvariants LinearContext::invariants_from_diagonal(const std::vector<RingElement>& diag,
                                                         std::size_t k) const {
  ModuleInvariants inv;
  if (!lifted()) {
    inv.free_rank = k - diag.size();
    for (const auto& d : diag)
      if (!pid_.is_unit(d)) inv.torsion_factors.push_back(ring_.associate_normal(d));
    return inv;
  }
  if (diag.size() != k) throw Error("lifted lattice lost full rank");
  for (const auto& d : diag) {
    mpz_class v = abs(d.q.get_num());
    if (v == modulus_)
      ++inv.free_rank;
    else if (v != 1)
      inv.torsion_factors.push_back(ring_.from_mpz(v));
  }
  return inv;
}

}  // namespace gdpa
