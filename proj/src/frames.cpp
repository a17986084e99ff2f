#include "gfb/frames.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace gfb {
namespace {

constexpr std::int64_t kGridCap = std::int64_t{1} << 22;

// running spectral statistics of P(gamma) = H*(gamma) H(gamma) over a sweep
struct Sweep {
  bool square = false;
  double lower = std::numeric_limits<double>::infinity();
  double upper = -std::numeric_limits<double>::infinity();
  std::optional<DualPoint> argmin, argmax;
  Eigen::Index rank_min = std::numeric_limits<Eigen::Index>::max();
  double min_abs_det = std::numeric_limits<double>::infinity();
  double max_offdiag = 0.0;
  std::vector<double> diags;

  void absorb(const Eigen::MatrixXcd& h, const DualPoint& pt) {
    const Eigen::MatrixXcd p = h.adjoint() * h;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(p, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    if (ev(0) < lower) {
      lower = ev(0);
      argmin = pt;
    }
    if (ev(ev.size() - 1) > upper) {
      upper = ev(ev.size() - 1);
      argmax = pt;
    }

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > kRankTol * smax) ++rank;
    rank_min = std::min(rank_min, rank);

    if (square) min_abs_det = std::min(min_abs_det, std::abs(h.determinant()));
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
      diags.push_back(p(i, i).real());
      for (Eigen::Index j = 0; j < p.cols(); ++j)
        if (i != j) max_offdiag = std::max(max_offdiag, std::abs(p(i, j)));
    }
  }

  // deviation from the best multiple of the identity across the whole sweep
  double tight_deviation() const {
    double c = 0.0;
    for (double v : diags) c += v;
    c /= static_cast<double>(diags.size());
    double dev = max_offdiag;
    for (double v : diags) dev = std::max(dev, std::abs(v - c));
    return dev;
  }
};

void for_each_grid_point(int dim, int grid,
                         const std::function<void(const std::vector<double>&)>& fn) {
  if (grid < 1) throw InvalidArgument("grid resolution must be >= 1");
  std::int64_t total = 1;
  for (int j = 0; j < dim; ++j) {
    total *= grid;
    if (total > kGridCap) throw InvalidArgument("grid too dense for this dimension");
  }
  std::vector<std::int64_t> c(static_cast<std::size_t>(dim), 0);
  std::vector<double> theta(static_cast<std::size_t>(dim), 0.0);
  for (std::int64_t n = 0; n < total; ++n) {
    for (int j = 0; j < dim; ++j)
      theta[static_cast<std::size_t>(j)] =
          static_cast<double>(c[static_cast<std::size_t>(j)]) / static_cast<double>(grid);
    fn(theta);
    for (int j = 0; j < dim; ++j) {
      if (++c[static_cast<std::size_t>(j)] < grid) break;
      c[static_cast<std::size_t>(j)] = 0;
    }
  }
}

std::string grid_method(int grid) {
  return "torus-grid(" + std::to_string(grid) + ")";
}

}  // namespace

FrameReport frame_bounds(const FilterBank& bank, int grid) {
  const Lattice& lat = bank.lattice();
  FrameReport rep;
  rep.channels = bank.channels();
  rep.index = lat.index();

  Sweep sweep;
  sweep.square = bank.channels() == static_cast<std::size_t>(lat.index());
  const PolyphaseMatrix hm = analysis_matrix(bank);
  if (bank.backend() == Backend::Finite) {
    for (std::size_t j = 0; j < hm.per_rep().size(); ++j)
      sweep.absorb(hm.per_rep()[j],
                   DualPoint::finite(bank.group(), lat.dual_reps()[j]));
    rep.method = "exact-enumeration";
  } else {
    for_each_grid_point(bank.group().dim(), grid, [&](const std::vector<double>& theta) {
      sweep.absorb(hm.laurent().eval(theta), DualPoint::torus(bank.group(), theta));
    });
    rep.method = grid_method(grid);
  }

  rep.lower = sweep.lower;
  rep.upper = sweep.upper;
  rep.argmin = sweep.argmin;
  rep.argmax = sweep.argmax;
  rep.rank_min = sweep.rank_min;
  rep.tight_deviation = sweep.tight_deviation();
  rep.min_abs_det = sweep.square ? sweep.min_abs_det : 0.0;
  rep.is_frame = rep.lower > kFrameTol;
  rep.is_tight = rep.is_frame && rep.tight_deviation <= kTightTol;
  rep.is_riesz = sweep.square && rep.min_abs_det > kRieszDetTol;
  return rep;
}

bool is_tight(const FrameReport& r, double tol) {
  return r.is_frame && r.tight_deviation <= tol;
}

bool is_tight(const FilterBank& bank, double tol, int grid) {
  return is_tight(frame_bounds(bank, grid), tol);
}

bool is_riesz_basis(const FilterBank& bank, double tol, int grid) {
  if (bank.channels() != static_cast<std::size_t>(bank.lattice().index()))
    throw InvalidArgument("is_riesz_basis: needs K == L (square polyphase matrix)");
  FrameReport r = frame_bounds(bank, grid);
  return r.min_abs_det > tol;
}

FilterBank canonical_dual(const FilterBank& bank) {
  const Lattice& lat = bank.lattice();
  const Group& g = bank.group();
  const std::size_t k_ch = bank.channels();
  const PolyphaseMatrix hm = analysis_matrix(bank);

  if (bank.backend() == Backend::Finite) {
    const auto& hx = hm.per_rep();
    const auto n_reps = static_cast<std::size_t>(lat.sub_size());
    const auto l = static_cast<std::size_t>(lat.index());

    std::vector<Eigen::MatrixXcd> gx(n_reps);
    for (std::size_t j = 0; j < n_reps; ++j) {
      const Eigen::MatrixXcd p = hx[j].adjoint() * hx[j];
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(p, Eigen::EigenvaluesOnly);
      if (es.eigenvalues()(0) <= kFrameTol)
        throw MathError("canonical_dual: analysis system is not a frame");
      gx[j] = p.ldlt().solve(hx[j].adjoint());  // (H*H)^{-1} H* = H^+
    }

    std::vector<Signal> duals;
    duals.reserve(k_ch);
    const double scale = 1.0 / static_cast<double>(lat.sub_size());
    for (std::size_t k = 0; k < k_ch; ++k) {
      Signal gk(g);
      for (std::size_t i = 0; i < l; ++i)
        for (const Coords& mm : lat.members()) {
          Complex acc(0);
          for (std::size_t j = 0; j < n_reps; ++j)
            acc += gx[j](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) *
                   character(g, mm, lat.dual_reps()[j]);
          gk.accumulate(g.add(mm, lat.transversal()[i]), scale * acc);
        }
      duals.push_back(std::move(gk));
    }
    return FilterBank(lat, bank.analysis(), std::move(duals));
  }

  const LaurentMatrix& e = hm.laurent();
  const LaurentMatrix p = e.adjoint() * e;
  const LaurentPoly det = p.determinant();
  if (det.terms().empty())
    throw MathError("canonical_dual: analysis system is not a frame");
  const auto mono = det.as_monomial(kCoeffPruneTol);
  if (!mono)
    throw MathError(
        "canonical_dual: det(H~ H) is not a monomial, the dual is not FIR; "
        "embed the bank into a finite group instead");
  const auto& [alpha, c] = *mono;
  LaurentMatrix r = p.adjugate() * e.adjoint();
  Coords neg_alpha(alpha);
  for (std::int64_t& x : neg_alpha) x = -x;
  const LaurentPoly inv_det = LaurentPoly::monomial(g.dim(), neg_alpha, Complex(1) / c);
  std::vector<Signal> duals;
  duals.reserve(k_ch);
  for (std::size_t k = 0; k < k_ch; ++k) {
    Signal gk(g);
    for (std::size_t i = 0; i < r.rows(); ++i) {
      const LaurentPoly entry = r.at(i, k) * inv_det;
      for (const auto& [expo, coef] : entry.terms()) {
        Coords t(expo);
        for (std::int64_t& x : t) x = -x;
        gk.accumulate(g.add(lat.lattice_vector(t), lat.transversal()[i]), coef);
      }
    }
    duals.push_back(std::move(gk));
  }
  return FilterBank(lat, bank.analysis(), std::move(duals));
}

DualReport check_dual_frames(const FilterBank& bank, double tol, int grid) {
  if (!bank.has_synthesis())
    throw InvalidArgument("check_dual_frames: bank has no synthesis filters");
  DualReport rep;
  rep.residual = pr_residual(bank);
  rep.holds = rep.residual <= tol;

  const PolyphaseMatrix gm = synthesis_matrix(bank);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  auto absorb = [&](const Eigen::MatrixXcd& gmat) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gmat * gmat.adjoint(),
                                                       Eigen::EigenvaluesOnly);
    lo = std::min(lo, es.eigenvalues()(0));
    hi = std::max(hi, es.eigenvalues()(es.eigenvalues().size() - 1));
  };
  if (bank.backend() == Backend::Finite) {
    for (const auto& gmat : gm.per_rep()) absorb(gmat);
    rep.method = "exact-enumeration";
  } else {
    for_each_grid_point(bank.group().dim(), grid,
                        [&](const std::vector<double>& theta) { absorb(gm.laurent().eval(theta)); });
    rep.method = grid_method(grid);
  }
  rep.lower = lo;
  rep.upper = hi;
  return rep;
}

Eigen::MatrixXcd frame_operator_oracle(const FilterBank& bank) {
  if (bank.backend() != Backend::Finite)
    throw InvalidArgument("frame_operator_oracle: finite backend only");
  const Group& g = bank.group();
  if (g.size() > 4096)
    throw InvalidArgument("frame_operator_oracle: |G| must be <= 4096");
  const Lattice& lat = bank.lattice();
  const auto n = static_cast<Eigen::Index>(g.size());
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(n, n);
  std::vector<std::pair<Eigen::Index, Complex>> nz;
  for (const Signal& h : bank.analysis()) {
    const Signal f = involution(h);
    for (const Coords& mm : lat.members()) {
      const Signal v = translate(f, mm);
      nz.clear();
      v.for_each([&](const Coords& p, Complex a) {
        nz.emplace_back(static_cast<Eigen::Index>(g.index_of(p)), a);
      });
      for (const auto& [i1, a] : nz)
        for (const auto& [i2, b] : nz) s(i1, i2) += a * std::conj(b);
    }
  }
  return s;
}

}  // namespace gfb
