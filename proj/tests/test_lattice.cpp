#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "testutil.hpp"

using namespace gfb;
using doctest::Approx;

TEST_CASE("generator lattices on cyclic groups") {
  const Group z4 = Group::finite({4});

  const Lattice m = Lattice::from_generators(z4, {{2}});
  CHECK(m.index() == 2);
  CHECK(m.sub_size() == 2);
  CHECK(m.members() == std::vector<Coords>{{0}, {2}});
  CHECK(m.transversal() == std::vector<Coords>{{0}, {1}});
  CHECK(m.annihilator() == std::vector<Coords>{{0}, {2}});
  CHECK(m.dual_reps() == std::vector<Coords>{{0}, {1}});

  const Lattice full = Lattice::from_generators(z4, {{1}});
  CHECK(full.index() == 1);
  CHECK(full.transversal() == std::vector<Coords>{{0}});
  CHECK(full.annihilator() == std::vector<Coords>{{0}});

  const Lattice trivial = Lattice::from_generators(z4, {});
  CHECK(trivial.index() == 4);
  CHECK(trivial.members() == std::vector<Coords>{{0}});

  CHECK_THROWS_AS(Lattice::from_generators(Group::integers(1), {{2}}), InvalidArgument);
}

TEST_CASE("generator lattice on Z_2 x Z_2") {
  const Group g = Group::finite({2, 2});
  const Lattice m = Lattice::from_generators(g, {{1, 1}});
  CHECK(m.index() == 2);
  CHECK(m.transversal() == std::vector<Coords>{{0, 0}, {1, 0}});
  CHECK(m.members() == std::vector<Coords>{{0, 0}, {1, 1}});
  CHECK(m.annihilator() == std::vector<Coords>{{0, 0}, {1, 1}});
}

TEST_CASE("matrix lattices") {
  const Lattice m1 = Lattice::from_matrix({{2}});
  CHECK(m1.index() == 2);
  CHECK(m1.transversal() == std::vector<Coords>{{0}, {1}});
  CHECK(m1.contains({4}));
  CHECK(!m1.contains({-3}));
  CHECK(m1.coset_of({-3}) == 1);

  const Lattice mq = Lattice::from_matrix({{1, 1}, {-1, 1}});
  CHECK(mq.index() == 2);
  CHECK(mq.transversal() == std::vector<Coords>{{0, 0}, {1, 0}});
  CHECK(mq.contains({1, 1}));
  CHECK(mq.contains({1, -1}));
  CHECK(!mq.contains({1, 0}));
  CHECK(mq.integer_coeffs({1, 1}) == Coords{0, 1});
  CHECK(mq.lattice_vector({0, 1}) == Coords{1, 1});
  CHECK_THROWS_AS(mq.integer_coeffs({1, 0}), InvalidArgument);

  const Lattice md = Lattice::from_matrix({{2, 0}, {0, 2}});
  CHECK(md.index() == 4);
  CHECK(md.transversal() ==
        std::vector<Coords>{{0, 0}, {1, 0}, {0, 1}, {1, 1}});

  CHECK_THROWS_AS(Lattice::from_matrix({{1, 0}, {0, -1}}), InvalidArgument);
  CHECK_THROWS_AS(Lattice::from_matrix({{2, 0}, {2, 0}}), InvalidArgument);
  CHECK_THROWS_AS(Lattice::from_matrix({{2, 0}}), InvalidArgument);
}

TEST_CASE("quincunx lattice") {
  const Lattice q11 = Lattice::quincunx(1, 1);
  CHECK(q11.group() == Group::finite({2, 2}));
  CHECK(q11.index() == 2);
  CHECK(q11.members() == std::vector<Coords>{{0, 0}, {1, 1}});
  CHECK(q11.transversal() == std::vector<Coords>{{0, 0}, {1, 0}});
  CHECK(q11.annihilator() == std::vector<Coords>{{0, 0}, {1, 1}});
  CHECK(q11.coset_of({0, 1}) == 1);

  const Lattice q21 = Lattice::quincunx(2, 1);
  CHECK(q21.group() == Group::finite({4, 2}));
  CHECK(q21.members().size() == 4);
  CHECK(q21.annihilator() == std::vector<Coords>{{0, 0}, {2, 1}});

  const Lattice q22 = Lattice::quincunx(2, 2);
  CHECK(q22.contains({1, 3}));
  CHECK(!q22.contains({1, 2}));
  CHECK(q22.annihilator() == std::vector<Coords>{{0, 0}, {2, 2}});

  CHECK_THROWS_AS(Lattice::quincunx(0, 1), InvalidArgument);
}

TEST_CASE("quincunx equals the generator construction") {
  for (auto [p, q] : {std::pair<std::int64_t, std::int64_t>{1, 1}, {2, 1}, {2, 2}, {3, 2}}) {
    const Lattice a = Lattice::quincunx(p, q);
    const Lattice b =
        Lattice::from_generators(Group::finite({2 * p, 2 * q}), {{1, 1}, {2, 0}});
    CHECK(a.index() == b.index());
    CHECK(a.members() == b.members());
    CHECK(a.transversal() == b.transversal());
    CHECK(a.annihilator() == b.annihilator());
  }
}

TEST_CASE("coset structure partitions the group") {
  const std::vector<Lattice> lats{
      Lattice::from_generators(Group::finite({4}), {{2}}),
      Lattice::from_generators(Group::finite({12}), {{8}}),
      Lattice::from_generators(Group::finite({6, 4}), {{2, 0}, {0, 2}}),
      Lattice::quincunx(2, 2),
  };
  for (const Lattice& m : lats) {
    const Group& g = m.group();
    std::vector<std::int64_t> count(static_cast<std::size_t>(m.index()), 0);
    for (std::int64_t e = 0; e < g.size(); ++e) {
      const Coords n = g.element_at(e);
      const std::size_t i = m.coset_of(n);
      count[i] += 1;
      CHECK(m.contains(g.sub(n, m.transversal()[i])));
    }
    for (std::int64_t c : count) CHECK(c == m.sub_size());
    CHECK(m.index() * m.sub_size() == g.size());
    CHECK(m.transversal()[0] == g.zero());
  }
}

TEST_CASE("annihilator orthogonality sums") {
  for (const Lattice& m : {Lattice::from_generators(Group::finite({8}), {{2}}),
                           Lattice::from_generators(Group::finite({6, 4}), {{3, 0}, {0, 2}}),
                           Lattice::quincunx(2, 2)}) {
    const Group& g = m.group();
    for (std::int64_t e = 0; e < g.size(); ++e) {
      const Coords n = g.element_at(e);
      Complex s = 0.0;
      for (const Coords& eta : m.annihilator()) s += character(g, n, eta);
      const Complex want = m.contains(n) ? Complex(static_cast<double>(m.index()), 0) : Complex(0, 0);
      CHECK(std::abs(s - want) < 1e-12);
    }
  }
}

TEST_CASE("annihilator characters are trivial on M") {
  const Lattice m = Lattice::from_generators(Group::finite({6, 6}), {{2, 2}, {0, 3}});
  const Group& g = m.group();
  CHECK(m.annihilator().size() == static_cast<std::size_t>(m.index()));
  for (const Coords& eta : m.annihilator())
    for (const Coords& mem : m.members())
      CHECK(std::abs(character(g, mem, eta) - Complex(1, 0)) < 1e-14);
}

TEST_CASE("integer membership matches a round-trip oracle") {
  std::mt19937 rng(41);
  const std::vector<Lattice> lats{
      Lattice::from_matrix({{2}}),
      Lattice::from_matrix({{1, 1}, {-1, 1}}),
      Lattice::from_matrix({{2, 1}, {0, 3}}),
      Lattice::from_matrix({{3, 1, 0}, {0, 2, 1}, {1, 0, 2}}),
  };
  std::uniform_int_distribution<std::int64_t> box(-20, 20);
  for (const Lattice& m : lats) {
    const std::size_t d = static_cast<std::size_t>(m.group().dim());
    int hits = 0;
    for (int t = 0; t < 1000; ++t) {
      Coords n(d);
      for (auto& c : n) c = box(rng);
      // float solve then exact verification, independent of the adjugate test
      bool oracle = true;
      Coords guess(d, 0);
      {
        std::vector<double> tf(d, 0.0);
        // Gaussian elimination on a copy
        std::vector<std::vector<double>> a(d, std::vector<double>(d + 1, 0.0));
        for (std::size_t i = 0; i < d; ++i) {
          for (std::size_t j = 0; j < d; ++j)
            a[i][j] = static_cast<double>(m.matrix()[i][static_cast<std::size_t>(j)]);
          a[i][d] = static_cast<double>(n[i]);
        }
        for (std::size_t col = 0; col < d; ++col) {
          std::size_t piv = col;
          for (std::size_t r = col + 1; r < d; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
          std::swap(a[piv], a[col]);
          for (std::size_t r = 0; r < d; ++r) {
            if (r == col) continue;
            const double f = a[r][col] / a[col][col];
            for (std::size_t j = col; j <= d; ++j) a[r][j] -= f * a[col][j];
          }
        }
        for (std::size_t i = 0; i < d; ++i) tf[i] = a[i][d] / a[i][i];
        for (std::size_t i = 0; i < d; ++i) guess[i] = std::llround(tf[i]);
        oracle = (m.lattice_vector(guess) == n);
      }
      CHECK(m.contains(n) == oracle);
      if (oracle) {
        ++hits;
        CHECK(m.coset_of(n) == 0);
        CHECK(m.integer_coeffs(n) == guess);
      } else {
        const std::size_t i = m.coset_of(n);
        CHECK(i < m.transversal().size());
        CHECK(m.contains(m.group().sub(n, m.transversal()[i])));
      }
    }
    CHECK(hits > 0);
  }
}

TEST_CASE("negative transversal convention") {
  const Lattice m3 = Lattice::from_matrix({{3}}, Transversal::Negative);
  CHECK(m3.transversal() == std::vector<Coords>{{0}, {-1}, {-2}});
  CHECK(m3.coset_of({2}) == 1);  // 2 - (-1) = 3

  const Lattice f = Lattice::from_generators(Group::finite({4}), {{2}}, Transversal::Negative);
  CHECK(f.transversal() == std::vector<Coords>{{0}, {3}});

  const Lattice q = Lattice::quincunx(2, 2, Transversal::Negative);
  CHECK(q.transversal() == std::vector<Coords>{{0, 0}, {3, 0}});
}

TEST_CASE("downsample and expand") {
  const Group z4 = Group::finite({4});
  const Lattice m = Lattice::from_generators(z4, {{2}});

  CHECK(downsample(Signal::delta(z4, {1}), m).is_zero());
  CHECK(distance(expand(Signal::delta(z4, {2}), m), Signal::delta(z4, {2})) == 0.0);

  std::mt19937 rng(43);
  const Signal x = gfbtest::random_dense_signal(z4, rng);
  const Signal c = downsample(x, m);
  CHECK(distance(downsample(expand(c, m), m), c) == 0.0);
  CHECK(c.at({0}) == x.at({0}));
  CHECK(c.at({1}) == Complex(0, 0));

  CHECK_THROWS_AS(expand(Signal::delta(z4, {1}), m), InvalidArgument);
  CHECK_THROWS_AS(downsample(Signal::delta(Group::finite({8}), {0}), m), InvalidArgument);

  const Lattice mi = Lattice::from_matrix({{2}});
  const Group z = Group::integers(1);
  const Signal xi = gfbtest::random_sparse_signal(z, rng, 6, 8);
  const Signal ci = downsample(xi, mi);
  ci.for_each([&](const Coords& n, Complex) { CHECK(mi.contains(n)); });
  CHECK(distance(expand(ci, mi), ci) == 0.0);
}

TEST_CASE("subgroup fourier transform") {
  const Group z8 = Group::finite({8});
  const Lattice m = Lattice::from_generators(z8, {{2}});
  CHECK(m.dual_reps().size() == static_cast<std::size_t>(m.sub_size()));

  // C(xi) for c = delta_0 is identically 1
  const std::vector<Complex> flat = m_fourier(Signal::delta(z8, {0}), m);
  for (Complex v : flat) CHECK(std::abs(v - Complex(1, 0)) < 1e-14);

  std::mt19937 rng(47);
  for (int t = 0; t < 10; ++t) {
    Signal c(z8);
    std::normal_distribution<double> nd;
    for (const Coords& mem : m.members()) c.accumulate(mem, Complex(nd(rng), nd(rng)));
    const std::vector<Complex> table = m_fourier(c, m);
    for (std::size_t j = 0; j < table.size(); ++j)
      CHECK(std::abs(table[j] - m_fourier_at(c, m, m.dual_reps()[j])) < 1e-12);
    CHECK(distance(inverse_m_fourier(table, m), c) < 1e-12);
  }

  // values only depend on the coset xi + M_perp
  const Signal c0 = gfbtest::scaled_sum(z8, {{{0}, 1.0}, {{2}, -0.5}, {{6}, 2.0}});
  for (std::int64_t xi = 0; xi < 8; ++xi) {
    const Coords rep = m.dual_reps()[m.dual_rep_index(Coords{xi})];
    CHECK(std::abs(m_fourier_at(c0, m, {xi}) - m_fourier_at(c0, m, rep)) < 1e-12);
  }

  CHECK_THROWS_AS(m_fourier(Signal::delta(z8, {1}), m), InvalidArgument);
}

TEST_CASE("dual rep index on dual points") {
  const Lattice q = Lattice::quincunx(2, 2);
  const Group& g = q.group();
  for (std::int64_t e = 0; e < g.size(); ++e) {
    const Coords xi = g.element_at(e);
    const std::size_t j = q.dual_rep_index(DualPoint::finite(g, xi));
    // xi - rep must lie in M_perp = {(0,0),(2,2)}
    const Coords diff = g.sub(xi, q.dual_reps()[j]);
    CHECK((diff == Coords{0, 0} || diff == Coords{2, 2}));
  }
  CHECK_THROWS_AS(Lattice::from_matrix({{2}}).dual_reps(), InvalidArgument);
}
