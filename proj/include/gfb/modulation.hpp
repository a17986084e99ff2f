#pragma once

#include <Eigen/Dense>
#include <vector>

#include "gfb/polyphase.hpp"

namespace gfb {

// modulation description of a finite-backend bank: for every xi in G^ the
// K x L matrix [H_k(xi + eta)] with eta running over the annihilator, plus
// the character table W = [<rep_i, eta_j>] satisfying W W* = L I
struct ModulationData {
  Lattice lattice;
  std::vector<Eigen::MatrixXcd> h_mod;  // indexed like G^
  Eigen::MatrixXcd w;                   // L x L

  const Eigen::MatrixXcd& at(const Coords& xi) const;
  Eigen::VectorXcd d_diag(const Coords& xi) const;  // <rep_i, xi>, i = 0..L-1
  // [X(xi + eta)] in annihilator order
  Eigen::VectorXcd x_mod(const Spectrum& sx, const Coords& xi) const;
};

// character table [<rep_i, eta_j>] of a finite-backend lattice
Eigen::MatrixXcd modulation_w(const Lattice& m);
double w_orthogonality_residual(const Lattice& m);  // ||W W* - L I||_max

// builds the tables and verifies them against the polyphase subband route on
// a deterministic probe signal (throws gfb::Error on disagreement)
ModulationData modulation_matrix(const FilterBank& bank);

// common value of (downsampled x)^ at xi and (1/L) sum_eta X(xi + eta);
// asserts the two routes agree within 1e-10 (relative to max(1, |value|))
Complex decimation_spectrum(const Signal& x, const Lattice& m, const DualPoint& xi);

// max over xi in G^ of the alias-sum defect between the two routes above
double alias_identity_residual(const Signal& x, const Lattice& m);

// max residual over all xi of both factorization directions
// H_mod = H(xi + M_perp) D(xi) W  and  H = (1/L) H_mod W* conj(D)
double check_mod_polyphase_relation(const FilterBank& bank);

}  // namespace gfb
