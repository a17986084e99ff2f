#include "gfb/modulation.hpp"

#include <cmath>
#include <random>

namespace gfb {

const Eigen::MatrixXcd& ModulationData::at(const Coords& xi) const {
  return h_mod[static_cast<std::size_t>(lattice.group().index_of(xi))];
}

Eigen::VectorXcd ModulationData::d_diag(const Coords& xi) const {
  const Group& g = lattice.group();
  const auto l = static_cast<Eigen::Index>(lattice.index());
  Eigen::VectorXcd d(l);
  for (Eigen::Index i = 0; i < l; ++i)
    d(i) = character(g, lattice.transversal()[static_cast<std::size_t>(i)], xi);
  return d;
}

Eigen::VectorXcd ModulationData::x_mod(const Spectrum& sx, const Coords& xi) const {
  const Group& g = lattice.group();
  const auto l = static_cast<Eigen::Index>(lattice.index());
  Eigen::VectorXcd v(l);
  for (Eigen::Index j = 0; j < l; ++j)
    v(j) = sx.at(g.add(xi, lattice.annihilator()[static_cast<std::size_t>(j)]));
  return v;
}

Eigen::MatrixXcd modulation_w(const Lattice& m) {
  const Group& g = m.group();
  const auto l = static_cast<Eigen::Index>(m.index());
  Eigen::MatrixXcd w(l, l);
  for (Eigen::Index i = 0; i < l; ++i)
    for (Eigen::Index j = 0; j < l; ++j)
      w(i, j) = character(g, m.transversal()[static_cast<std::size_t>(i)],
                          m.annihilator()[static_cast<std::size_t>(j)]);
  return w;
}

double w_orthogonality_residual(const Lattice& m) {
  const Eigen::MatrixXcd w = modulation_w(m);
  const auto l = static_cast<Eigen::Index>(m.index());
  const double ld = static_cast<double>(m.index());
  return (w * w.adjoint() - ld * Eigen::MatrixXcd::Identity(l, l))
      .cwiseAbs()
      .maxCoeff();
}

namespace {

Signal probe_signal(const Group& g) {
  std::mt19937 rng(0x9e3779b9u);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Signal x(g);
  for (std::int64_t e = 0; e < g.size(); ++e)
    x.accumulate(g.element_at(e), Complex(u(rng), u(rng)));
  return x;
}

}  // namespace

ModulationData modulation_matrix(const FilterBank& bank) {
  if (bank.backend() != Backend::Finite)
    throw InvalidArgument("modulation_matrix: finite backend only");
  const Lattice& lat = bank.lattice();
  const Group& g = bank.group();
  const auto k_ch = static_cast<Eigen::Index>(bank.channels());
  const auto l = static_cast<Eigen::Index>(lat.index());
  const std::int64_t n = g.size();

  std::vector<Spectrum> spectra;
  spectra.reserve(bank.channels());
  for (const Signal& h : bank.analysis()) spectra.push_back(fourier(h));

  ModulationData mod{lat, {}, modulation_w(lat)};
  mod.h_mod.reserve(static_cast<std::size_t>(n));
  for (std::int64_t e = 0; e < n; ++e) {
    const Coords xi = g.element_at(e);
    Eigen::MatrixXcd m(k_ch, l);
    for (Eigen::Index k = 0; k < k_ch; ++k)
      for (Eigen::Index j = 0; j < l; ++j)
        m(k, j) = spectra[static_cast<std::size_t>(k)].at(
            g.add(xi, lat.annihilator()[static_cast<std::size_t>(j)]));
    mod.h_mod.push_back(std::move(m));
  }

  // the subband spectra of a probe must come out the same via modulation
  const Signal x = probe_signal(g);
  const Spectrum sx = fourier(x);
  const double ld = static_cast<double>(lat.index());
  for (std::size_t k = 0; k < bank.channels(); ++k) {
    const Signal ck = downsample(convolve(x, bank.analysis()[k]), lat);
    for (std::int64_t e = 0; e < n; ++e) {
      const Coords xi = g.element_at(e);
      const Complex direct = m_fourier_at(ck, lat, xi);
      const Complex via_mod =
          (mod.h_mod[static_cast<std::size_t>(e)] * mod.x_mod(sx, xi))(
              static_cast<Eigen::Index>(k)) / ld;
      if (std::abs(direct - via_mod) > 1e-8 * std::max(1.0, std::abs(direct)))
        throw Error("modulation_matrix: tables disagree with the subband route");
    }
  }
  return mod;
}

Complex decimation_spectrum(const Signal& x, const Lattice& m, const DualPoint& xi) {
  if (x.group() != m.group())
    throw InvalidArgument("decimation_spectrum: group mismatch");
  if (!m.group().is_finite())
    throw InvalidArgument("decimation_spectrum: finite backend only");
  const Group& g = m.group();
  const Coords& xc = xi.coords();

  const Complex lhs = m_fourier_at(downsample(x, m), m, xc);
  const Spectrum sx = fourier(x);
  Complex rhs(0);
  for (const Coords& eta : m.annihilator()) rhs += sx.at(g.add(xc, eta));
  rhs /= static_cast<double>(m.index());
  if (std::abs(lhs - rhs) > 1e-10 * std::max(1.0, std::abs(lhs)))
    throw Error("decimation_spectrum: alias-sum identity failed");
  return lhs;
}

double alias_identity_residual(const Signal& x, const Lattice& m) {
  if (x.group() != m.group())
    throw InvalidArgument("alias_identity_residual: group mismatch");
  const Group& g = m.group();
  const Signal down = downsample(x, m);
  const Spectrum sx = fourier(x);
  const std::vector<Complex> direct = m_fourier(down, m);
  double worst = 0.0;
  for (std::int64_t e = 0; e < g.size(); ++e) {
    const Coords xi = g.element_at(e);
    Complex rhs(0);
    for (const Coords& eta : m.annihilator()) rhs += sx.at(g.add(xi, eta));
    rhs /= static_cast<double>(m.index());
    worst = std::max(worst, std::abs(direct[m.dual_rep_index(xi)] - rhs));
  }
  return worst;
}

double check_mod_polyphase_relation(const FilterBank& bank) {
  const ModulationData mod = modulation_matrix(bank);
  const Lattice& lat = bank.lattice();
  const Group& g = bank.group();
  const PolyphaseMatrix hmat = analysis_matrix(bank);
  const auto& hx = hmat.per_rep();
  const double ld = static_cast<double>(lat.index());

  double worst = 0.0;
  for (std::int64_t e = 0; e < g.size(); ++e) {
    const Coords xi = g.element_at(e);
    const Eigen::MatrixXcd& hm = mod.h_mod[static_cast<std::size_t>(e)];
    const Eigen::MatrixXcd& h = hx[lat.dual_rep_index(xi)];
    const Eigen::VectorXcd d = mod.d_diag(xi);
    const Eigen::MatrixXcd forward = h * d.asDiagonal() * mod.w;
    worst = std::max(worst, (hm - forward).cwiseAbs().maxCoeff());
    const Eigen::MatrixXcd back =
        hm * mod.w.adjoint() * d.conjugate().asDiagonal() / ld;
    worst = std::max(worst, (h - back).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace gfb
