#include "gfb/polyphase.hpp"

#include <cmath>
#include <numbers>

namespace gfb {
namespace {

Coords negated(Coords v) {
  for (std::int64_t& c : v) c = -c;
  return v;
}

}  // namespace

FilterBank::FilterBank(Lattice lat, std::vector<Signal> analysis,
                       std::vector<Signal> synthesis)
    : lattice_(std::move(lat)),
      analysis_(std::move(analysis)),
      synthesis_(std::move(synthesis)) {
  if (analysis_.empty()) throw InvalidArgument("filter bank needs at least one channel");
  if (!synthesis_.empty() && synthesis_.size() != analysis_.size())
    throw InvalidArgument("synthesis channel count differs from analysis");
  for (const Signal& h : analysis_)
    if (h.group() != lattice_.group())
      throw InvalidArgument("analysis filter lives on the wrong group");
  for (const Signal& g : synthesis_)
    if (g.group() != lattice_.group())
      throw InvalidArgument("synthesis filter lives on the wrong group");
}

PolyphaseVector::PolyphaseVector(Lattice lat, Eigen::MatrixXcd samples)
    : lattice_(std::move(lat)), samples_(std::move(samples)) {
  if (!lattice_.group().is_finite())
    throw InvalidArgument("sampled polyphase vector needs a finite group");
  if (samples_.rows() != static_cast<Eigen::Index>(lattice_.index()) ||
      samples_.cols() != static_cast<Eigen::Index>(lattice_.sub_size()))
    throw InvalidArgument("polyphase vector: sample table has the wrong shape");
}

PolyphaseVector::PolyphaseVector(Lattice lat, std::vector<LaurentPoly> polys)
    : lattice_(std::move(lat)), polys_(std::move(polys)) {
  if (lattice_.group().is_finite())
    throw InvalidArgument("laurent polyphase vector needs an integer group");
  if (polys_.size() != static_cast<std::size_t>(lattice_.index()))
    throw InvalidArgument("polyphase vector: component count != lattice index");
}

const Eigen::MatrixXcd& PolyphaseVector::samples() const {
  if (backend() != Backend::Finite)
    throw InvalidArgument("samples(): integer-backend polyphase vector");
  return samples_;
}

const std::vector<LaurentPoly>& PolyphaseVector::polys() const {
  if (backend() != Backend::Integer)
    throw InvalidArgument("polys(): finite-backend polyphase vector");
  return polys_;
}

PolyphaseMatrix::PolyphaseMatrix(Lattice lat, std::vector<Eigen::MatrixXcd> per_rep)
    : lattice_(std::move(lat)), per_rep_(std::move(per_rep)) {
  if (!lattice_.group().is_finite())
    throw InvalidArgument("sampled polyphase matrix needs a finite group");
  if (per_rep_.empty() ||
      static_cast<std::int64_t>(per_rep_.size()) != lattice_.sub_size())
    throw InvalidArgument("polyphase matrix: one sample per dual rep required");
  rows_ = static_cast<std::size_t>(per_rep_[0].rows());
  cols_ = static_cast<std::size_t>(per_rep_[0].cols());
  for (const auto& m : per_rep_)
    if (static_cast<std::size_t>(m.rows()) != rows_ ||
        static_cast<std::size_t>(m.cols()) != cols_)
      throw InvalidArgument("polyphase matrix: inconsistent sample shapes");
}

PolyphaseMatrix::PolyphaseMatrix(Lattice lat, LaurentMatrix laurent)
    : lattice_(std::move(lat)),
      rows_(laurent.rows()),
      cols_(laurent.cols()),
      laurent_(std::move(laurent)) {
  if (lattice_.group().is_finite())
    throw InvalidArgument("laurent polyphase matrix needs an integer group");
}

const std::vector<Eigen::MatrixXcd>& PolyphaseMatrix::per_rep() const {
  if (backend() != Backend::Finite)
    throw InvalidArgument("per_rep(): integer-backend polyphase matrix");
  return per_rep_;
}

const LaurentMatrix& PolyphaseMatrix::laurent() const {
  if (backend() != Backend::Integer)
    throw InvalidArgument("laurent(): finite-backend polyphase matrix");
  return *laurent_;
}

PolyphaseVector polyphase_forward(const Signal& x, const Lattice& m) {
  const Group& g = m.group();
  if (x.group() != g) throw InvalidArgument("polyphase_forward: group mismatch");
  const auto l = static_cast<std::size_t>(m.index());
  if (g.is_finite()) {
    const auto n_reps = static_cast<std::size_t>(m.sub_size());
    Eigen::MatrixXcd table = Eigen::MatrixXcd::Zero(
        static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(n_reps));
    x.for_each([&](const Coords& n, Complex v) {
      const std::size_t i = m.coset_of(n);
      const Coords mm = g.sub(n, m.transversal()[i]);
      for (std::size_t j = 0; j < n_reps; ++j)
        table(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +=
            v * std::conj(character(g, mm, m.dual_reps()[j]));
    });
    return PolyphaseVector(m, std::move(table));
  }
  std::vector<LaurentPoly> polys(l, LaurentPoly(g.dim()));
  x.for_each([&](const Coords& n, Complex v) {
    const std::size_t i = m.coset_of(n);
    const Coords t = m.integer_coeffs(g.sub(n, m.transversal()[i]));
    polys[i].add_term(negated(t), v);
  });
  return PolyphaseVector(m, std::move(polys));
}

Signal polyphase_inverse(const PolyphaseVector& px) {
  const Lattice& m = px.lattice();
  const Group& g = m.group();
  Signal r(g);
  if (px.backend() == Backend::Finite) {
    const auto& table = px.samples();
    const double scale = 1.0 / static_cast<double>(m.sub_size());
    for (std::size_t i = 0; i < static_cast<std::size_t>(m.index()); ++i)
      for (const Coords& mm : m.members()) {
        Complex acc(0);
        for (std::size_t j = 0; j < m.dual_reps().size(); ++j)
          acc += table(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *
                 character(g, mm, m.dual_reps()[j]);
        r.accumulate(g.add(mm, m.transversal()[i]), scale * acc);
      }
    return r;
  }
  for (std::size_t i = 0; i < px.polys().size(); ++i)
    for (const auto& [e, c] : px.polys()[i].terms())
      r.accumulate(g.add(m.lattice_vector(negated(e)), m.transversal()[i]), c);
  return r;
}

namespace {

// shared tap walker: analysis places tap n of h_k at (k, i) with lattice point
// n + rep_i, synthesis places tap n of g_k at (i, k) with lattice point n - rep_i
PolyphaseMatrix assemble(const FilterBank& bank, bool synthesis) {
  const Lattice& m = bank.lattice();
  const Group& g = m.group();
  const std::vector<Signal>& filters =
      synthesis ? bank.synthesis() : bank.analysis();
  if (synthesis && !bank.has_synthesis())
    throw InvalidArgument("synthesis_matrix: bank has no synthesis filters");
  const std::size_t k_ch = filters.size();
  const auto l = static_cast<std::size_t>(m.index());
  const std::size_t rows = synthesis ? l : k_ch;
  const std::size_t cols = synthesis ? k_ch : l;

  if (bank.backend() == Backend::Finite) {
    const auto n_reps = static_cast<std::size_t>(m.sub_size());
    std::vector<Eigen::MatrixXcd> mats(
        n_reps, Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows),
                                       static_cast<Eigen::Index>(cols)));
    for (std::size_t k = 0; k < k_ch; ++k) {
      filters[k].for_each([&](const Coords& n, Complex v) {
        const std::size_t i = synthesis ? m.coset_of(n) : m.coset_of(g.neg(n));
        const Coords mm = synthesis ? g.sub(n, m.transversal()[i])
                                    : g.add(n, m.transversal()[i]);
        const std::size_t r = synthesis ? i : k;
        const std::size_t c = synthesis ? k : i;
        for (std::size_t j = 0; j < n_reps; ++j)
          mats[j](static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) +=
              v * std::conj(character(g, mm, m.dual_reps()[j]));
      });
    }
    return PolyphaseMatrix(m, std::move(mats));
  }

  LaurentMatrix lm(rows, cols, g.dim());
  for (std::size_t k = 0; k < k_ch; ++k) {
    filters[k].for_each([&](const Coords& n, Complex v) {
      const std::size_t i = synthesis ? m.coset_of(n) : m.coset_of(g.neg(n));
      const Coords mm = synthesis ? g.sub(n, m.transversal()[i])
                                  : g.add(n, m.transversal()[i]);
      const Coords t = m.integer_coeffs(mm);
      lm.at(synthesis ? i : k, synthesis ? k : i).add_term(negated(t), v);
    });
  }
  return PolyphaseMatrix(m, std::move(lm));
}

}  // namespace

PolyphaseMatrix analysis_matrix(const FilterBank& bank) { return assemble(bank, false); }

PolyphaseMatrix synthesis_matrix(const FilterBank& bank) { return assemble(bank, true); }

BankOutput apply_filter_bank(const Signal& x, const FilterBank& bank) {
  if (x.group() != bank.group())
    throw InvalidArgument("apply_filter_bank: signal group mismatch");
  const Lattice& m = bank.lattice();

  BankOutput out;
  out.subbands.reserve(bank.channels());
  for (const Signal& h : bank.analysis())
    out.subbands.push_back(downsample(convolve(x, h), m));
  if (bank.has_synthesis()) {
    Signal y(bank.group());
    for (std::size_t k = 0; k < bank.channels(); ++k)
      y = y + convolve(expand(out.subbands[k], m), bank.synthesis()[k]);
    out.output = std::move(y);
  }

  if (bank.backend() == Backend::Finite && bank.has_synthesis()) {
    // polyphase route must reproduce both the subbands and the output
    const PolyphaseMatrix hmat = analysis_matrix(bank);
    const PolyphaseMatrix gmat = synthesis_matrix(bank);
    const auto& hx = hmat.per_rep();
    const auto& gx = gmat.per_rep();
    const Eigen::MatrixXcd xt = polyphase_forward(x, m).samples();
    const Eigen::MatrixXcd yt = polyphase_forward(*out.output, m).samples();
    std::vector<std::vector<Complex>> sub_hat(bank.channels());
    for (std::size_t k = 0; k < bank.channels(); ++k)
      sub_hat[k] = m_fourier(out.subbands[k], m);
    const double tol = 1e-10 * std::max(1.0, xt.cwiseAbs().maxCoeff());
    for (std::size_t j = 0; j < static_cast<std::size_t>(m.sub_size()); ++j) {
      const auto jj = static_cast<Eigen::Index>(j);
      Eigen::VectorXcd c = hx[j] * xt.col(jj);
      for (std::size_t k = 0; k < bank.channels(); ++k)
        if (std::abs(c(static_cast<Eigen::Index>(k)) - sub_hat[k][j]) > tol)
          throw Error("apply_filter_bank: subbands disagree with the polyphase route");
      if (((gx[j] * c) - yt.col(jj)).cwiseAbs().maxCoeff() > tol)
        throw Error("apply_filter_bank: output disagrees with the polyphase route");
    }
  }
  return out;
}

double pr_residual(const FilterBank& bank) {
  if (!bank.has_synthesis())
    throw InvalidArgument("pr_residual: bank has no synthesis filters");
  const PolyphaseMatrix h = analysis_matrix(bank);
  const PolyphaseMatrix g = synthesis_matrix(bank);
  if (bank.backend() == Backend::Finite) {
    double worst = 0.0;
    const auto l = static_cast<Eigen::Index>(bank.lattice().index());
    for (std::size_t j = 0; j < h.per_rep().size(); ++j) {
      Eigen::MatrixXcd d =
          g.per_rep()[j] * h.per_rep()[j] - Eigen::MatrixXcd::Identity(l, l);
      worst = std::max(worst, d.cwiseAbs().maxCoeff());
    }
    return worst;
  }
  return (g.laurent() * h.laurent()).distance_to_identity();
}

bool check_perfect_reconstruction(const FilterBank& bank, double tol) {
  return pr_residual(bank) <= tol;
}

std::optional<Signal> pr_counterexample(const FilterBank& bank, double tol) {
  if (bank.backend() != Backend::Finite)
    throw InvalidArgument("pr_counterexample: finite backend only");
  if (!bank.has_synthesis())
    throw InvalidArgument("pr_counterexample: bank has no synthesis filters");
  const Lattice& m = bank.lattice();
  const PolyphaseMatrix hmat = analysis_matrix(bank);
  const PolyphaseMatrix gmat = synthesis_matrix(bank);
  const auto& hx = hmat.per_rep();
  const auto& gx = gmat.per_rep();
  const auto l = static_cast<Eigen::Index>(m.index());

  double worst = 0.0;
  std::size_t worst_j = 0;
  Eigen::MatrixXcd worst_d;
  for (std::size_t j = 0; j < hx.size(); ++j) {
    Eigen::MatrixXcd d = gx[j] * hx[j] - Eigen::MatrixXcd::Identity(l, l);
    const double r = d.cwiseAbs().maxCoeff();
    if (r > worst) {
      worst = r;
      worst_j = j;
      worst_d = std::move(d);
    }
  }
  if (worst <= tol) return std::nullopt;

  // top right-singular direction of the worst defect, placed at that dual rep;
  // the reconstruction error ratio equals sigma_max >= worst > tol
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(worst_d, Eigen::ComputeFullV);
  Eigen::MatrixXcd table = Eigen::MatrixXcd::Zero(
      l, static_cast<Eigen::Index>(m.sub_size()));
  table.col(static_cast<Eigen::Index>(worst_j)) = svd.matrixV().col(0);
  return polyphase_inverse(PolyphaseVector(m, std::move(table)));
}

Complex fourier_from_polyphase(const PolyphaseVector& px, const DualPoint& xi) {
  const Lattice& m = px.lattice();
  const Group& g = m.group();
  if (xi.group() != g)
    throw InvalidArgument("fourier_from_polyphase: dual point group mismatch");
  Complex acc(0);
  if (px.backend() == Backend::Finite) {
    const std::size_t j = m.dual_rep_index(xi);
    for (std::size_t i = 0; i < static_cast<std::size_t>(m.index()); ++i)
      acc += std::conj(character(g, m.transversal()[i], xi)) *
             px.samples()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    return acc;
  }
  // w = z^A: component polynomials are evaluated at A^T theta
  const std::vector<double>& theta = xi.theta();
  const IntMat& a = m.matrix();
  std::vector<double> wt(theta.size(), 0.0);
  for (std::size_t j = 0; j < wt.size(); ++j)
    for (std::size_t i = 0; i < wt.size(); ++i)
      wt[j] += static_cast<double>(a[i][j]) * theta[i];
  for (std::size_t i = 0; i < px.polys().size(); ++i)
    acc += std::conj(character(g, m.transversal()[i], xi)) * px.polys()[i].eval(wt);
  return acc;
}

std::vector<Complex> quincunx_lambda(const Signal& x, std::int64_t p, std::int64_t q) {
  const Group g2 = Group::finite({2 * p, 2 * q});
  if (x.group() != g2) throw InvalidArgument("quincunx_lambda: signal group mismatch");
  const auto pp = static_cast<std::size_t>(p);
  const auto qq = static_cast<std::size_t>(q);
  std::vector<Complex> even(pp * qq), odd(pp * qq);
  for (std::int64_t u = 0; u < p; ++u)
    for (std::int64_t v = 0; v < q; ++v) {
      even[static_cast<std::size_t>(u + p * v)] = x.at({2 * u, 2 * v});
      odd[static_cast<std::size_t>(u + p * v)] = x.at({2 * u + 1, 2 * v + 1});
    }
  auto dft2 = [&](const std::vector<Complex>& in, std::int64_t n, std::int64_t m) {
    Complex acc(0);
    for (std::int64_t u = 0; u < p; ++u)
      for (std::int64_t v = 0; v < q; ++v) {
        const double turns = static_cast<double>((u * n) % p) / static_cast<double>(p) +
                             static_cast<double>((v * m) % q) / static_cast<double>(q);
        acc += in[static_cast<std::size_t>(u + p * v)] *
               std::polar(1.0, -2.0 * std::numbers::pi * turns);
      }
    return acc;
  };
  std::vector<Complex> lam(static_cast<std::size_t>(g2.size()));
  for (std::int64_t n = 0; n < 2 * p; ++n)
    for (std::int64_t m = 0; m < 2 * q; ++m) {
      const double turns = static_cast<double>(n) / static_cast<double>(2 * p) +
                           static_cast<double>(m) / static_cast<double>(2 * q);
      const Complex w = std::polar(1.0, -2.0 * std::numbers::pi * turns);
      lam[static_cast<std::size_t>(g2.index_of({n, m}))] =
          dft2(even, n % p, m % q) + w * dft2(odd, n % p, m % q);
    }
  return lam;
}

}  // namespace gfb
