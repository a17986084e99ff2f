#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "gfb/group.hpp"

namespace gfb {

// dropped from results of ring operations; separates true cancellation from
// float noise without touching honest small coefficients at sane scales
inline constexpr double kCoeffPruneTol = 1e-12;

// Finitely supported C-coefficient Laurent polynomial in d variables,
// exponents in Z^d. Term order is the std::map order on exponent vectors,
// which makes every traversal deterministic.
class LaurentPoly {
 public:
  explicit LaurentPoly(int dim = 1);
  static LaurentPoly constant(int dim, Complex c);
  static LaurentPoly monomial(int dim, const Coords& expo, Complex c);

  int dim() const { return dim_; }
  const std::map<Coords, Complex>& terms() const { return terms_; }
  void add_term(const Coords& expo, Complex c);  // accumulates, prunes zeros

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly operator*(Complex c) const;

  // z^k -> z^{-k}, coefficients conjugated (adjoint on the torus)
  LaurentPoly adjoint() const;

  Complex eval(const std::vector<double>& theta) const;  // z_j = e^{2 pi i theta_j}
  bool is_zero(double tol) const;
  double max_abs_coeff() const;
  // single-term test; returns (exponent, coeff) when all other mass is <= tol
  std::optional<std::pair<Coords, Complex>> as_monomial(double tol) const;

  LaurentPoly pruned(double tol = kCoeffPruneTol) const;

 private:
  int dim_;
  std::map<Coords, Complex> terms_;
};

class LaurentMatrix {
 public:
  LaurentMatrix(std::size_t rows, std::size_t cols, int dim);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  int dim() const { return dim_; }
  LaurentPoly& at(std::size_t r, std::size_t c);
  const LaurentPoly& at(std::size_t r, std::size_t c) const;

  LaurentMatrix operator+(const LaurentMatrix& o) const;
  LaurentMatrix operator-(const LaurentMatrix& o) const;
  LaurentMatrix operator*(const LaurentMatrix& o) const;
  LaurentMatrix adjoint() const;  // conjugate transpose entrywise

  Eigen::MatrixXcd eval(const std::vector<double>& theta) const;
  bool is_identity(double tol = 1e-10) const;
  double distance_to_identity() const;  // max coefficient of (this - I)

  LaurentPoly determinant() const;  // square only, cofactor expansion
  LaurentMatrix adjugate() const;

  static LaurentMatrix identity(std::size_t n, int dim);

 private:
  std::size_t rows_, cols_;
  int dim_;
  std::vector<LaurentPoly> e_;  // row-major
};

}  // namespace gfb
