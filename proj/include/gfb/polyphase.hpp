#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "gfb/lattice.hpp"
#include "gfb/laurent.hpp"

namespace gfb {

enum class Backend { Finite, Integer };

// analysis filters h_k plus optional synthesis filters g_k over a common
// lattice; K channels, subsampling on M
class FilterBank {
 public:
  FilterBank(Lattice lat, std::vector<Signal> analysis,
             std::vector<Signal> synthesis = {});

  const Lattice& lattice() const { return lattice_; }
  const Group& group() const { return lattice_.group(); }
  Backend backend() const {
    return group().is_finite() ? Backend::Finite : Backend::Integer;
  }
  std::size_t channels() const { return analysis_.size(); }
  const std::vector<Signal>& analysis() const { return analysis_; }
  const std::vector<Signal>& synthesis() const { return synthesis_; }
  bool has_synthesis() const { return !synthesis_.empty(); }

 private:
  Lattice lattice_;
  std::vector<Signal> analysis_, synthesis_;
};

// polyphase decomposition of a signal: component l is the M-Fourier transform
// of m -> x(m + rep_l). Finite backend: L x N table over dual_reps; integer
// backend: L Laurent polynomials in the decimated variable w (z^A = w).
class PolyphaseVector {
 public:
  PolyphaseVector(Lattice lat, Eigen::MatrixXcd samples);
  PolyphaseVector(Lattice lat, std::vector<LaurentPoly> polys);

  const Lattice& lattice() const { return lattice_; }
  Backend backend() const {
    return lattice_.group().is_finite() ? Backend::Finite : Backend::Integer;
  }
  const Eigen::MatrixXcd& samples() const;      // finite: (component, dual rep)
  const std::vector<LaurentPoly>& polys() const;

 private:
  Lattice lattice_;
  Eigen::MatrixXcd samples_;
  std::vector<LaurentPoly> polys_;
};

// analysis matrix H (K x L) or synthesis matrix G (L x K), tabulated per dual
// rep (finite) or as one Laurent matrix (integer)
class PolyphaseMatrix {
 public:
  PolyphaseMatrix(Lattice lat, std::vector<Eigen::MatrixXcd> per_rep);
  PolyphaseMatrix(Lattice lat, LaurentMatrix laurent);

  const Lattice& lattice() const { return lattice_; }
  Backend backend() const {
    return lattice_.group().is_finite() ? Backend::Finite : Backend::Integer;
  }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<Eigen::MatrixXcd>& per_rep() const;  // finite
  const LaurentMatrix& laurent() const;                  // integer

 private:
  Lattice lattice_;
  std::size_t rows_, cols_;
  std::vector<Eigen::MatrixXcd> per_rep_;
  std::optional<LaurentMatrix> laurent_;
};

PolyphaseVector polyphase_forward(const Signal& x, const Lattice& m);
Signal polyphase_inverse(const PolyphaseVector& px);

// H_{k,l} from taps of h_k at m - rep_l; G_{l,k} from taps of g_k at m + rep_l
PolyphaseMatrix analysis_matrix(const FilterBank& bank);
PolyphaseMatrix synthesis_matrix(const FilterBank& bank);

struct BankOutput {
  std::vector<Signal> subbands;        // c_k = (x * h_k) downsampled to M
  std::optional<Signal> output;        // present when the bank has synthesis
};
// time-domain application; finite backends with synthesis cross-check the
// result against the polyphase route and throw on mismatch
BankOutput apply_filter_bank(const Signal& x, const FilterBank& bank);

// max deviation of G(gamma) H(gamma) from I_L: entrywise over all dual reps
// (finite) or over the coefficients of the exact product R(z) E(z) (integer)
double pr_residual(const FilterBank& bank);
bool check_perfect_reconstruction(const FilterBank& bank, double tol = 1e-10);

// input whose reconstruction error is above tol when PR fails (finite only);
// nullopt when the bank does reconstruct perfectly
std::optional<Signal> pr_counterexample(const FilterBank& bank, double tol = 1e-10);

// X(xi) = sum_l conj<rep_l, xi> X_l(xi + M_perp)
Complex fourier_from_polyphase(const PolyphaseVector& px, const DualPoint& xi);

// first-principles transform for the quincunx lattice in Z_2P x Z_2Q:
// Lambda(n,m) = [DFT x_even](n,m) + W_2P^-n W_2Q^-m [DFT x_odd](n,m),
// indexed like the group; equals the M-Fourier transform of the restriction
// of x to M at the dual point (n,m)
std::vector<Complex> quincunx_lambda(const Signal& x, std::int64_t p, std::int64_t q);

}  // namespace gfb
