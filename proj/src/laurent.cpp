#include "gfb/laurent.hpp"

#include <cmath>
#include <numbers>

namespace gfb {

LaurentPoly::LaurentPoly(int dim) : dim_(dim) {
  if (dim < 1) throw InvalidArgument("laurent: dimension must be >= 1");
}

LaurentPoly LaurentPoly::constant(int dim, Complex c) {
  LaurentPoly p(dim);
  p.add_term(Coords(static_cast<std::size_t>(dim), 0), c);
  return p;
}

LaurentPoly LaurentPoly::monomial(int dim, const Coords& expo, Complex c) {
  LaurentPoly p(dim);
  p.add_term(expo, c);
  return p;
}

void LaurentPoly::add_term(const Coords& expo, Complex c) {
  if (static_cast<int>(expo.size()) != dim_)
    throw InvalidArgument("laurent: exponent dimension mismatch");
  if (c == Complex(0)) return;
  auto it = terms_.find(expo);
  if (it == terms_.end()) {
    terms_.emplace(expo, c);
  } else {
    it->second += c;
    if (it->second == Complex(0)) terms_.erase(it);
  }
}

LaurentPoly LaurentPoly::pruned(double tol) const {
  LaurentPoly p(dim_);
  for (const auto& [e, c] : terms_)
    if (std::abs(c) > tol) p.terms_.emplace(e, c);
  return p;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  if (dim_ != o.dim_) throw InvalidArgument("laurent: dimension mismatch");
  LaurentPoly p = *this;
  for (const auto& [e, c] : o.terms_) p.add_term(e, c);
  return p.pruned();
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
  if (dim_ != o.dim_) throw InvalidArgument("laurent: dimension mismatch");
  LaurentPoly p = *this;
  for (const auto& [e, c] : o.terms_) p.add_term(e, -c);
  return p.pruned();
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  if (dim_ != o.dim_) throw InvalidArgument("laurent: dimension mismatch");
  LaurentPoly p(dim_);
  Coords e(static_cast<std::size_t>(dim_));
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      for (int j = 0; j < dim_; ++j) e[static_cast<std::size_t>(j)] = ea[static_cast<std::size_t>(j)] + eb[static_cast<std::size_t>(j)];
      p.add_term(e, ca * cb);
    }
  }
  return p.pruned();
}

LaurentPoly LaurentPoly::operator*(Complex c) const {
  LaurentPoly p(dim_);
  for (const auto& [e, v] : terms_) p.add_term(e, c * v);
  return p.pruned();
}

LaurentPoly LaurentPoly::adjoint() const {
  LaurentPoly p(dim_);
  for (const auto& [e, c] : terms_) {
    Coords ne(e);
    for (std::int64_t& x : ne) x = -x;
    p.terms_.emplace(std::move(ne), std::conj(c));
  }
  return p;
}

Complex LaurentPoly::eval(const std::vector<double>& theta) const {
  if (static_cast<int>(theta.size()) != dim_)
    throw InvalidArgument("laurent eval: point dimension mismatch");
  Complex acc(0);
  for (const auto& [e, c] : terms_) {
    double turns = 0.0;
    for (int j = 0; j < dim_; ++j)
      turns += static_cast<double>(e[static_cast<std::size_t>(j)]) * theta[static_cast<std::size_t>(j)];
    acc += c * std::polar(1.0, 2.0 * std::numbers::pi * turns);
  }
  return acc;
}

bool LaurentPoly::is_zero(double tol) const { return max_abs_coeff() <= tol; }

double LaurentPoly::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

std::optional<std::pair<Coords, Complex>> LaurentPoly::as_monomial(double tol) const {
  const Coords* best_e = nullptr;
  Complex best_c(0);
  double rest = 0.0;
  for (const auto& [e, c] : terms_) {
    if (best_e == nullptr || std::abs(c) > std::abs(best_c)) {
      if (best_e != nullptr) rest = std::max(rest, std::abs(best_c));
      best_e = &e;
      best_c = c;
    } else {
      rest = std::max(rest, std::abs(c));
    }
  }
  if (best_e == nullptr || std::abs(best_c) <= tol) return std::nullopt;
  if (rest > tol) return std::nullopt;
  return std::make_pair(*best_e, best_c);
}

LaurentMatrix::LaurentMatrix(std::size_t rows, std::size_t cols, int dim)
    : rows_(rows), cols_(cols), dim_(dim),
      e_(rows * cols, LaurentPoly(dim)) {
  if (rows == 0 || cols == 0) throw InvalidArgument("laurent matrix: empty shape");
}

LaurentPoly& LaurentMatrix::at(std::size_t r, std::size_t c) {
  return e_[r * cols_ + c];
}

const LaurentPoly& LaurentMatrix::at(std::size_t r, std::size_t c) const {
  return e_[r * cols_ + c];
}

LaurentMatrix LaurentMatrix::operator+(const LaurentMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw InvalidArgument("laurent matrix: shape mismatch in +");
  LaurentMatrix r(rows_, cols_, dim_);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
  return r;
}

LaurentMatrix LaurentMatrix::operator-(const LaurentMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw InvalidArgument("laurent matrix: shape mismatch in -");
  LaurentMatrix r(rows_, cols_, dim_);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
  return r;
}

LaurentMatrix LaurentMatrix::operator*(const LaurentMatrix& o) const {
  if (cols_ != o.rows_) throw InvalidArgument("laurent matrix: shape mismatch in *");
  LaurentMatrix r(rows_, o.cols_, dim_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < o.cols_; ++j) {
      LaurentPoly acc(dim_);
      for (std::size_t k = 0; k < cols_; ++k) acc = acc + at(i, k) * o.at(k, j);
      r.at(i, j) = std::move(acc);
    }
  return r;
}

LaurentMatrix LaurentMatrix::adjoint() const {
  LaurentMatrix r(cols_, rows_, dim_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j).adjoint();
  return r;
}

Eigen::MatrixXcd LaurentMatrix::eval(const std::vector<double>& theta) const {
  Eigen::MatrixXcd m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = at(i, j).eval(theta);
  return m;
}

double LaurentMatrix::distance_to_identity() const {
  if (rows_ != cols_) throw InvalidArgument("laurent matrix: identity test on non-square");
  double worst = 0.0;
  const Coords zero(static_cast<std::size_t>(dim_), 0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      LaurentPoly d = at(i, j);
      if (i == j) d.add_term(zero, Complex(-1));
      worst = std::max(worst, d.max_abs_coeff());
    }
  return worst;
}

bool LaurentMatrix::is_identity(double tol) const {
  return distance_to_identity() <= tol;
}

LaurentMatrix LaurentMatrix::identity(std::size_t n, int dim) {
  LaurentMatrix m(n, n, dim);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = LaurentPoly::constant(dim, Complex(1));
  return m;
}

namespace {

LaurentPoly det_rec(const LaurentMatrix& a, std::vector<std::size_t>& rows,
                    std::vector<std::size_t>& cols) {
  const std::size_t n = rows.size();
  if (n == 1) return a.at(rows[0], cols[0]);
  LaurentPoly acc(a.dim());
  const std::size_t r0 = rows[0];
  std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
  for (std::size_t k = 0; k < n; ++k) {
    const LaurentPoly& pivot = a.at(r0, cols[k]);
    if (pivot.terms().empty()) continue;
    std::vector<std::size_t> sub_cols;
    sub_cols.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j)
      if (j != k) sub_cols.push_back(cols[j]);
    LaurentPoly term = pivot * det_rec(a, sub_rows, sub_cols);
    acc = (k % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

}  // namespace

LaurentPoly LaurentMatrix::determinant() const {
  if (rows_ != cols_) throw InvalidArgument("laurent matrix: determinant of non-square");
  std::vector<std::size_t> rows(rows_), cols(cols_);
  for (std::size_t i = 0; i < rows_; ++i) rows[i] = i;
  for (std::size_t j = 0; j < cols_; ++j) cols[j] = j;
  return det_rec(*this, rows, cols);
}

LaurentMatrix LaurentMatrix::adjugate() const {
  if (rows_ != cols_) throw InvalidArgument("laurent matrix: adjugate of non-square");
  const std::size_t n = rows_;
  LaurentMatrix adj(n, n, dim_);
  if (n == 1) {
    adj.at(0, 0) = LaurentPoly::constant(dim_, Complex(1));
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::size_t> rows, cols;
      for (std::size_t r = 0; r < n; ++r)
        if (r != i) rows.push_back(r);
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) cols.push_back(c);
      LaurentPoly cof = det_rec(*this, rows, cols);
      if ((i + j) % 2 == 1) cof = cof * Complex(-1);
      adj.at(j, i) = std::move(cof);
    }
  return adj;
}

}  // namespace gfb
