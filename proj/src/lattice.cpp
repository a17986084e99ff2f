#include "gfb/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

namespace gfb {
namespace {

std::int64_t floordiv(std::int64_t num, std::int64_t den) {  // den > 0
  std::int64_t q = num / den;
  if (num % den != 0 && num < 0) --q;
  return q;
}

Coords matvec(const IntMat& a, const Coords& v) {
  const std::size_t d = a.size();
  Coords r(d, 0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) r[i] += a[i][j] * v[j];
  return r;
}

std::int64_t det_int(const IntMat& a) {
  const std::size_t d = a.size();
  if (d == 1) return a[0][0];
  std::int64_t det = 0;
  std::int64_t sign = 1;
  for (std::size_t c = 0; c < d; ++c) {
    IntMat minor;
    minor.reserve(d - 1);
    for (std::size_t i = 1; i < d; ++i) {
      Coords row;
      row.reserve(d - 1);
      for (std::size_t j = 0; j < d; ++j)
        if (j != c) row.push_back(a[i][j]);
      minor.push_back(std::move(row));
    }
    det += sign * a[0][c] * det_int(minor);
    sign = -sign;
  }
  return det;
}

IntMat adjugate_int(const IntMat& a) {
  const std::size_t d = a.size();
  IntMat adj(d, Coords(d, 0));
  if (d == 1) {
    adj[0][0] = 1;
    return adj;
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      IntMat minor;
      minor.reserve(d - 1);
      for (std::size_t r = 0; r < d; ++r) {
        if (r == i) continue;
        Coords row;
        row.reserve(d - 1);
        for (std::size_t c = 0; c < d; ++c)
          if (c != j) row.push_back(a[r][c]);
        minor.push_back(std::move(row));
      }
      std::int64_t cof = det_int(minor);
      if ((i + j) % 2 == 1) cof = -cof;
      adj[j][i] = cof;  // transpose of the cofactor matrix
    }
  }
  return adj;
}

// column-style Hermite normal form: lower triangular, positive diagonal.
// Only the diagonal is consumed (digit ranges for a transversal).
IntMat hnf_lower(IntMat h) {
  const std::size_t d = h.size();
  auto col_sub = [&](std::size_t dst, std::size_t src, std::int64_t q) {
    for (std::size_t r = 0; r < d; ++r) h[r][dst] -= q * h[r][src];
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    for (std::size_t r = 0; r < d; ++r) std::swap(h[r][a], h[r][b]);
  };
  auto col_neg = [&](std::size_t c) {
    for (std::size_t r = 0; r < d; ++r) h[r][c] = -h[r][c];
  };
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      while (h[i][j] != 0) {
        if (h[i][i] == 0) {
          col_swap(i, j);
          continue;
        }
        col_sub(j, i, h[i][j] / h[i][i]);
        if (h[i][j] != 0) col_swap(i, j);
      }
    }
    if (h[i][i] < 0) col_neg(i);
    if (h[i][i] == 0) throw InvalidArgument("lattice matrix is singular");
    for (std::size_t j = 0; j < i; ++j) {
      std::int64_t q = floordiv(h[i][j], h[i][i]);
      if (q != 0) col_sub(j, i, q);
    }
  }
  return h;
}

bool colex_less(const Coords& a, const Coords& b) {
  for (std::size_t j = a.size(); j-- > 0;)
    if (a[j] != b[j]) return a[j] < b[j];
  return false;
}

}  // namespace

void Lattice::require_finite(const char* what) const {
  if (!group_.is_finite())
    throw InvalidArgument(std::string(what) + ": integer-backend lattice");
}

void Lattice::require_integer(const char* what) const {
  if (group_.is_finite())
    throw InvalidArgument(std::string(what) + ": finite-backend lattice");
}

void Lattice::build_finite_tables() {
  const std::int64_t n = group_.size();
  member_mask_.assign(static_cast<std::size_t>(n), 0);
  for (const Coords& m : members_)
    member_mask_[static_cast<std::size_t>(group_.index_of(m))] = 1;

  index_ = static_cast<std::int64_t>(transversal_.size());
  if (index_ * static_cast<std::int64_t>(members_.size()) != n)
    throw Error("lattice: transversal size inconsistent with subgroup size");

  coset_index_.assign(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < transversal_.size(); ++i)
    for (const Coords& m : members_) {
      auto idx = static_cast<std::size_t>(group_.index_of(group_.add(transversal_[i], m)));
      if (coset_index_[idx] != -1)
        throw Error("lattice: transversal elements share a coset");
      coset_index_[idx] = static_cast<std::int32_t>(i);
    }

  // dual coset reps: smallest index in each coset of M_perp, ascending
  dual_reps_.clear();
  dual_rep_of_.assign(static_cast<std::size_t>(n), -1);
  for (std::int64_t e = 0; e < n; ++e) {
    if (dual_rep_of_[static_cast<std::size_t>(e)] != -1) continue;
    Coords xi = group_.element_at(e);
    auto j = static_cast<std::int32_t>(dual_reps_.size());
    dual_reps_.push_back(xi);
    for (const Coords& eta : annihilator_)
      dual_rep_of_[static_cast<std::size_t>(group_.index_of(group_.add(xi, eta)))] = j;
  }
  if (static_cast<std::int64_t>(dual_reps_.size()) * static_cast<std::int64_t>(annihilator_.size()) != n)
    throw Error("lattice: annihilator does not tile the dual group");
}

Lattice Lattice::from_generators(const Group& g, const std::vector<Coords>& gens,
                                 Transversal conv) {
  if (!g.is_finite())
    throw InvalidArgument("from_generators: use from_matrix for integer groups");
  Lattice lat;
  lat.group_ = g;
  lat.kind_ = Kind::Generators;
  lat.convention_ = conv;
  for (const Coords& gen : gens) lat.generators_.push_back(g.reduce(gen));

  const std::int64_t n = g.size();
  std::vector<std::uint8_t> in_m(static_cast<std::size_t>(n), 0);
  in_m[0] = 1;
  std::queue<Coords> work;
  work.push(g.zero());
  while (!work.empty()) {
    Coords e = std::move(work.front());
    work.pop();
    for (const Coords& gen : lat.generators_) {
      Coords f = g.add(e, gen);
      auto idx = static_cast<std::size_t>(g.index_of(f));
      if (!in_m[idx]) {
        in_m[idx] = 1;
        work.push(std::move(f));
      }
    }
  }
  for (std::int64_t e = 0; e < n; ++e)
    if (in_m[static_cast<std::size_t>(e)]) lat.members_.push_back(g.element_at(e));

  // default transversal: smallest-index representative of each coset, ascending
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(n), 0);
  for (std::int64_t e = 0; e < n; ++e) {
    if (seen[static_cast<std::size_t>(e)]) continue;
    Coords rep = g.element_at(e);
    lat.transversal_.push_back(rep);
    for (const Coords& m : lat.members_)
      seen[static_cast<std::size_t>(g.index_of(g.add(rep, m)))] = 1;
  }
  if (conv == Transversal::Negative)
    for (Coords& rep : lat.transversal_) rep = g.neg(rep);

  // exact annihilator test: sum_j gen_j xi_j D/s_j == 0 (mod D), D = lcm(s_j)
  std::int64_t d_lcm = 1;
  for (std::int64_t s : g.orders()) d_lcm = std::lcm(d_lcm, s);
  for (std::int64_t e = 0; e < n; ++e) {
    Coords xi = g.element_at(e);
    bool ok = true;
    for (const Coords& gen : lat.generators_) {
      std::int64_t acc = 0;
      for (int j = 0; j < g.dim(); ++j) {
        std::int64_t s = g.orders()[j];
        std::int64_t r = (gen[j] * xi[j]) % s;
        acc = (acc + r * (d_lcm / s)) % d_lcm;
      }
      if (acc != 0) {
        ok = false;
        break;
      }
    }
    if (ok) lat.annihilator_.push_back(std::move(xi));
  }

  lat.build_finite_tables();
  return lat;
}

Lattice Lattice::quincunx(std::int64_t p, std::int64_t q, Transversal conv) {
  if (p < 1 || q < 1) throw InvalidArgument("quincunx: P and Q must be >= 1");
  Lattice lat;
  lat.group_ = Group::finite({2 * p, 2 * q});
  lat.kind_ = Kind::Quincunx;
  lat.convention_ = conv;
  lat.qp_ = p;
  lat.qq_ = q;

  const Group& g = lat.group_;
  for (std::int64_t e = 0; e < g.size(); ++e) {
    Coords n = g.element_at(e);
    if ((n[0] + n[1]) % 2 == 0) lat.members_.push_back(std::move(n));
  }
  lat.transversal_ = {{0, 0}, {1, 0}};
  if (conv == Transversal::Negative) lat.transversal_[1] = g.neg(lat.transversal_[1]);
  lat.annihilator_ = {{0, 0}, {p, q}};

  lat.build_finite_tables();
  return lat;
}

Lattice Lattice::from_matrix(const IntMat& a, Transversal conv) {
  const std::size_t d = a.size();
  if (d == 0) throw InvalidArgument("from_matrix: empty matrix");
  for (const Coords& row : a)
    if (row.size() != d) throw InvalidArgument("from_matrix: matrix must be square");

  Lattice lat;
  lat.group_ = Group::integers(static_cast<int>(d));
  lat.kind_ = Kind::Matrix;
  lat.convention_ = conv;
  lat.mat_ = a;
  lat.det_ = det_int(a);
  if (lat.det_ <= 0)
    throw InvalidArgument("from_matrix: determinant must be positive, got " +
                          std::to_string(lat.det_));
  lat.adj_ = adjugate_int(a);
  lat.index_ = lat.det_;

  // digits of the HNF diagonal enumerate Z^d / A Z^d; map each digit vector
  // into the half-open parallelepiped A [0,1)^d
  IntMat h = hnf_lower(a);
  Coords digit(d, 0);
  std::vector<Coords> reps;
  for (std::int64_t count = 0; count < lat.det_; ++count) {
    reps.push_back(lat.canonical_rep(digit));
    for (std::size_t j = 0; j < d; ++j) {
      if (++digit[j] < h[j][j]) break;
      digit[j] = 0;
    }
  }
  Coords zero(d, 0);
  std::sort(reps.begin(), reps.end(), colex_less);
  auto it = std::find(reps.begin(), reps.end(), zero);
  if (it == reps.end()) throw Error("from_matrix: zero missing from transversal");
  reps.erase(it);
  lat.transversal_.push_back(zero);
  for (Coords& r : reps) lat.transversal_.push_back(std::move(r));
  if (conv == Transversal::Negative)
    for (Coords& rep : lat.transversal_)
      for (std::int64_t& c : rep) c = -c;

  for (std::size_t i = 0; i < lat.transversal_.size(); ++i)
    lat.coset_by_rep_[lat.canonical_rep(lat.transversal_[i])] = i;
  if (lat.coset_by_rep_.size() != static_cast<std::size_t>(lat.det_))
    throw Error("from_matrix: transversal is not a complete residue system");
  return lat;
}

Coords Lattice::canonical_rep(const Coords& n) const {
  Coords t = matvec(adj_, n);
  for (std::int64_t& c : t) c = floordiv(c, det_);
  Coords shift = matvec(mat_, t);
  Coords r(n);
  for (std::size_t j = 0; j < r.size(); ++j) r[j] -= shift[j];
  return r;
}

bool Lattice::contains(const Coords& n) const {
  group_.check_element(n);
  if (group_.is_finite())
    return member_mask_[static_cast<std::size_t>(group_.index_of(n))] != 0;
  Coords t = matvec(adj_, n);
  for (std::int64_t c : t)
    if (c % det_ != 0) return false;
  return true;
}

std::size_t Lattice::coset_of(const Coords& n) const {
  group_.check_element(n);
  if (group_.is_finite())
    return static_cast<std::size_t>(coset_index_[static_cast<std::size_t>(group_.index_of(n))]);
  auto it = coset_by_rep_.find(canonical_rep(n));
  if (it == coset_by_rep_.end()) throw Error("coset_of: no representative found");
  return it->second;
}

std::int64_t Lattice::sub_size() const {
  require_finite("sub_size");
  return static_cast<std::int64_t>(members_.size());
}

const std::vector<Coords>& Lattice::members() const {
  require_finite("members");
  return members_;
}

const std::vector<Coords>& Lattice::annihilator() const {
  require_finite("annihilator");
  return annihilator_;
}

const std::vector<Coords>& Lattice::dual_reps() const {
  require_finite("dual_reps");
  return dual_reps_;
}

std::size_t Lattice::dual_rep_index(const Coords& xi) const {
  require_finite("dual_rep_index");
  return static_cast<std::size_t>(dual_rep_of_[static_cast<std::size_t>(group_.index_of(xi))]);
}

std::size_t Lattice::dual_rep_index(const DualPoint& xi) const {
  if (xi.group() != group_) throw InvalidArgument("dual_rep_index: group mismatch");
  return dual_rep_index(xi.coords());
}

const IntMat& Lattice::matrix() const {
  require_integer("matrix");
  return mat_;
}

Coords Lattice::integer_coeffs(const Coords& m) const {
  require_integer("integer_coeffs");
  Coords t = matvec(adj_, m);
  for (std::int64_t& c : t) {
    if (c % det_ != 0) throw InvalidArgument("integer_coeffs: not a lattice member");
    c /= det_;
  }
  return t;
}

Coords Lattice::lattice_vector(const Coords& t) const {
  require_integer("lattice_vector");
  group_.check_element(t);
  return matvec(mat_, t);
}

Signal downsample(const Signal& x, const Lattice& m) {
  if (x.group() != m.group()) throw InvalidArgument("downsample: group mismatch");
  Signal r(x.group());
  x.for_each([&](const Coords& n, Complex v) {
    if (m.contains(n)) r.accumulate(n, v);
  });
  return r;
}

Signal expand(const Signal& c, const Lattice& m) {
  if (c.group() != m.group()) throw InvalidArgument("expand: group mismatch");
  bool ok = true;
  c.for_each([&](const Coords& n, Complex) {
    if (!m.contains(n)) ok = false;
  });
  if (!ok) throw InvalidArgument("expand: signal has support off the lattice");
  return c;
}

std::vector<Complex> m_fourier(const Signal& c, const Lattice& m) {
  if (c.group() != m.group()) throw InvalidArgument("m_fourier: group mismatch");
  m.dual_reps();  // finite-backend check
  const Group& g = m.group();
  std::vector<Complex> out(m.dual_reps().size(), Complex(0));
  c.for_each([&](const Coords& n, Complex v) {
    if (!m.contains(n)) throw InvalidArgument("m_fourier: signal has support off M");
    for (std::size_t j = 0; j < out.size(); ++j)
      out[j] += v * std::conj(character(g, n, m.dual_reps()[j]));
  });
  return out;
}

Complex m_fourier_at(const Signal& c, const Lattice& m, const Coords& xi) {
  if (c.group() != m.group()) throw InvalidArgument("m_fourier_at: group mismatch");
  const Group& g = m.group();
  Complex acc(0);
  c.for_each([&](const Coords& n, Complex v) {
    if (!m.contains(n)) throw InvalidArgument("m_fourier_at: signal has support off M");
    acc += v * std::conj(character(g, n, xi));
  });
  return acc;
}

Signal inverse_m_fourier(const std::vector<Complex>& coef, const Lattice& m) {
  const Group& g = m.group();
  if (static_cast<std::int64_t>(coef.size()) != m.sub_size())
    throw InvalidArgument("inverse_m_fourier: coefficient count != number of dual reps");
  Signal r(g);
  const double scale = 1.0 / static_cast<double>(m.sub_size());
  for (const Coords& mm : m.members()) {
    Complex acc(0);
    for (std::size_t j = 0; j < coef.size(); ++j)
      acc += coef[j] * character(g, mm, m.dual_reps()[j]);
    r.accumulate(mm, scale * acc);
  }
  return r;
}

}  // namespace gfb
