#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>

#include "gfb/polyphase.hpp"

namespace gfb {

// numerical rank: singular values above kRankTol * sigma_max count
inline constexpr double kRankTol = 1e-10;
// a computed lower bound above this is reported as a frame
inline constexpr double kFrameTol = 1e-12;
// default deviation tolerances for tightness and Riesz determinant tests
inline constexpr double kTightTol = 1e-10;
inline constexpr double kRieszDetTol = 1e-10;

// spectral summary of the translated system {T_m involution(h_k)}: extreme
// eigenvalues of H*(gamma) H(gamma) over the dual sweep
struct FrameReport {
  std::size_t channels = 0;  // K
  std::int64_t index = 0;    // L
  bool is_bessel = true;     // finitely supported filters: always
  bool is_frame = false;
  bool is_tight = false;
  bool is_riesz = false;  // only meaningful when K == L
  double lower = 0.0;     // A
  double upper = 0.0;     // B
  std::optional<DualPoint> argmin, argmax;
  Eigen::Index rank_min = 0;      // min numerical rank of H over the sweep
  double tight_deviation = 0.0;   // max |H*H - c I| for the best constant c
  double min_abs_det = 0.0;       // min |det H| (square case)
  std::string method;             // "exact-enumeration" or "torus-grid(R)"
};

// finite backend enumerates every dual coset rep exactly; integer backend
// samples a uniform grid^d on the torus (a sound bound up to grid density,
// flagged by the method string)
FrameReport frame_bounds(const FilterBank& bank, int grid = 64);

bool is_tight(const FrameReport& r, double tol = kTightTol);
bool is_tight(const FilterBank& bank, double tol = kTightTol, int grid = 64);
// K == L required; true when |det H| stays away from zero over the sweep
bool is_riesz_basis(const FilterBank& bank, double tol = kRieszDetTol, int grid = 64);

// synthesis filters of the canonical dual frame, computed from the
// pseudoinverse polyphase matrix (H* H)^{-1} H*. Integer backend requires
// det(H~ H) to be a monomial, otherwise the dual has no FIR representation.
FilterBank canonical_dual(const FilterBank& bank);

struct DualReport {
  bool holds = false;      // G H == I over the sweep / exact identity
  double residual = 0.0;
  double lower = 0.0;      // A_g, from G(gamma) G*(gamma)
  double upper = 0.0;      // B_g
  std::string method;
};
DualReport check_dual_frames(const FilterBank& bank, double tol = 1e-9, int grid = 64);

// dense frame operator S = sum_{k,m} (T_m f_k)(T_m f_k)*, f_k = involution(h_k),
// assembled directly from translates; |G| <= 4096
Eigen::MatrixXcd frame_operator_oracle(const FilterBank& bank);

}  // namespace gfb
