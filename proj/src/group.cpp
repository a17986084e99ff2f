#include "gfb/group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace gfb {
namespace {

constexpr std::int64_t kDenseLimit = std::int64_t{1} << 20;

std::int64_t mod_nonneg(std::int64_t v, std::int64_t m) {
  std::int64_t r = v % m;
  return r < 0 ? r + m : r;
}

}  // namespace

Group Group::finite(std::vector<std::int64_t> orders) {
  if (orders.empty()) throw InvalidArgument("finite group needs at least one factor");
  for (std::int64_t s : orders)
    if (s < 1) throw InvalidArgument("cyclic factor order must be >= 1");
  Group g;
  g.finite_ = true;
  g.dim_ = static_cast<int>(orders.size());
  g.orders_ = std::move(orders);
  return g;
}

Group Group::integers(int rank) {
  if (rank < 1) throw InvalidArgument("integer group rank must be >= 1");
  Group g;
  g.finite_ = false;
  g.dim_ = rank;
  return g;
}

const std::vector<std::int64_t>& Group::orders() const {
  if (!finite_) throw InvalidArgument("orders(): group is not finite");
  return orders_;
}

std::int64_t Group::size() const {
  if (!finite_) throw InvalidArgument("size(): group is not finite");
  std::int64_t n = 1;
  for (std::int64_t s : orders_) n *= s;
  return n;
}

void Group::check_element(const Coords& n) const {
  if (static_cast<int>(n.size()) != dim_)
    throw InvalidArgument("element dimension mismatch: got " +
                          std::to_string(n.size()) + ", group has " +
                          std::to_string(dim_));
}

Coords Group::reduce(Coords n) const {
  check_element(n);
  if (finite_)
    for (int j = 0; j < dim_; ++j) n[j] = mod_nonneg(n[j], orders_[j]);
  return n;
}

Coords Group::add(const Coords& a, const Coords& b) const {
  check_element(a);
  check_element(b);
  Coords r(a);
  for (int j = 0; j < dim_; ++j) r[j] += b[j];
  return reduce(std::move(r));
}

Coords Group::sub(const Coords& a, const Coords& b) const {
  check_element(a);
  check_element(b);
  Coords r(a);
  for (int j = 0; j < dim_; ++j) r[j] -= b[j];
  return reduce(std::move(r));
}

Coords Group::neg(const Coords& a) const {
  check_element(a);
  Coords r(a);
  for (int j = 0; j < dim_; ++j) r[j] = -r[j];
  return reduce(std::move(r));
}

std::int64_t Group::index_of(const Coords& n) const {
  if (!finite_) throw InvalidArgument("index_of(): group is not finite");
  Coords r = reduce(n);
  std::int64_t idx = 0;
  for (int j = dim_ - 1; j >= 0; --j) idx = idx * orders_[j] + r[j];
  return idx;
}

Coords Group::element_at(std::int64_t idx) const {
  if (!finite_) throw InvalidArgument("element_at(): group is not finite");
  Coords n(static_cast<std::size_t>(dim_), 0);
  for (int j = 0; j < dim_; ++j) {
    n[j] = idx % orders_[j];
    idx /= orders_[j];
  }
  return n;
}

std::string Group::describe() const {
  std::ostringstream os;
  if (finite_) {
    for (int j = 0; j < dim_; ++j) os << (j ? "x" : "") << "Z_" << orders_[j];
  } else {
    os << "Z^" << dim_;
  }
  return os.str();
}

DualPoint DualPoint::finite(const Group& g, Coords xi) {
  if (!g.is_finite()) throw InvalidArgument("finite dual point on non-finite group");
  DualPoint p;
  p.group_ = g;
  p.xi_ = g.reduce(std::move(xi));
  return p;
}

DualPoint DualPoint::torus(const Group& g, std::vector<double> theta) {
  if (g.is_finite()) throw InvalidArgument("torus dual point on finite group");
  if (static_cast<int>(theta.size()) != g.dim())
    throw InvalidArgument("torus point dimension mismatch");
  for (double& t : theta) {
    t -= std::floor(t);
    if (t >= 1.0) t = 0.0;
  }
  DualPoint p;
  p.group_ = g;
  p.theta_ = std::move(theta);
  return p;
}

const Coords& DualPoint::coords() const {
  if (!is_finite()) throw InvalidArgument("coords(): torus dual point");
  return xi_;
}

const std::vector<double>& DualPoint::theta() const {
  if (is_finite()) throw InvalidArgument("theta(): finite dual point");
  return theta_;
}

Complex character(const Group& g, const Coords& n, const Coords& xi) {
  g.check_element(n);
  g.check_element(xi);
  if (!g.is_finite()) throw InvalidArgument("integer coordinates index no character of Z^d");
  // phase in turns: sum_j (n_j xi_j mod s_j) / s_j, reduced exactly in int64
  double turns = 0.0;
  const auto& s = g.orders();
  for (int j = 0; j < g.dim(); ++j) {
    std::int64_t r = ((n[j] % s[j]) * (xi[j] % s[j])) % s[j];
    if (r < 0) r += s[j];
    turns += static_cast<double>(r) / static_cast<double>(s[j]);
  }
  return std::polar(1.0, 2.0 * std::numbers::pi * turns);
}

Complex character(const Group& g, const Coords& n, const DualPoint& xi) {
  if (xi.group() != g) throw InvalidArgument("dual point belongs to a different group");
  if (g.is_finite()) return character(g, n, xi.coords());
  g.check_element(n);
  double turns = 0.0;
  for (int j = 0; j < g.dim(); ++j) turns += static_cast<double>(n[j]) * xi.theta()[j];
  return std::polar(1.0, 2.0 * std::numbers::pi * turns);
}

Signal::Signal(Group g) : group_(std::move(g)) {
  dense_ = group_.is_finite() && group_.size() <= kDenseLimit;
  if (dense_) values_.assign(static_cast<std::size_t>(group_.size()), Complex(0));
}

Signal Signal::delta(const Group& g, const Coords& at) {
  Signal x(g);
  x.accumulate(at, Complex(1));
  return x;
}

Signal Signal::from_pairs(const Group& g,
                          const std::vector<std::pair<Coords, Complex>>& terms) {
  Signal x(g);
  for (const auto& [n, v] : terms) x.accumulate(n, v);
  return x;
}

Signal& Signal::accumulate(const Coords& n, Complex v) {
  if (v == Complex(0)) return *this;
  if (dense_) {
    values_[static_cast<std::size_t>(group_.index_of(n))] += v;
  } else {
    Coords key = group_.reduce(n);
    auto it = entries_.find(key);
    if (it == entries_.end()) {
      entries_.emplace(std::move(key), v);
    } else {
      it->second += v;
      if (it->second == Complex(0)) entries_.erase(it);
    }
  }
  return *this;
}

Complex Signal::at(const Coords& n) const {
  if (dense_) return values_[static_cast<std::size_t>(group_.index_of(n))];
  auto it = entries_.find(group_.reduce(n));
  return it == entries_.end() ? Complex(0) : it->second;
}

void Signal::for_each(const std::function<void(const Coords&, Complex)>& fn) const {
  if (dense_) {
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(values_.size()); ++i)
      if (values_[static_cast<std::size_t>(i)] != Complex(0))
        fn(group_.element_at(i), values_[static_cast<std::size_t>(i)]);
  } else {
    for (const auto& [n, v] : entries_) fn(n, v);
  }
}

std::vector<Coords> Signal::support() const {
  std::vector<Coords> s;
  for_each([&](const Coords& n, Complex) { s.push_back(n); });
  return s;
}

std::size_t Signal::support_size() const {
  std::size_t c = 0;
  for_each([&](const Coords&, Complex) { ++c; });
  return c;
}

double Signal::norm2() const {
  double s = 0.0;
  for_each([&](const Coords&, Complex v) { s += std::norm(v); });
  return std::sqrt(s);
}

bool Signal::is_zero(double tol) const {
  bool z = true;
  for_each([&](const Coords&, Complex v) {
    if (std::abs(v) > tol) z = false;
  });
  return z;
}

namespace {

void check_same_group(const Signal& a, const Signal& b, const char* op) {
  if (a.group() != b.group())
    throw InvalidArgument(std::string(op) + ": signals live on different groups");
}

}  // namespace

Signal operator+(const Signal& a, const Signal& b) {
  check_same_group(a, b, "operator+");
  Signal r = a;
  b.for_each([&](const Coords& n, Complex v) { r.accumulate(n, v); });
  return r;
}

Signal operator-(const Signal& a, const Signal& b) {
  check_same_group(a, b, "operator-");
  Signal r = a;
  b.for_each([&](const Coords& n, Complex v) { r.accumulate(n, -v); });
  return r;
}

Signal operator*(Complex c, const Signal& x) {
  Signal r(x.group());
  x.for_each([&](const Coords& n, Complex v) { r.accumulate(n, c * v); });
  return r;
}

Complex inner(const Signal& x, const Signal& y) {
  check_same_group(x, y, "inner");
  Complex s(0);
  x.for_each([&](const Coords& n, Complex v) { s += v * std::conj(y.at(n)); });
  return s;
}

double distance(const Signal& x, const Signal& y) { return (x - y).norm2(); }

Signal convolve(const Signal& x, const Signal& y) {
  check_same_group(x, y, "convolve");
  Signal r(x.group());
  const Group& g = x.group();
  x.for_each([&](const Coords& n, Complex xv) {
    y.for_each([&](const Coords& k, Complex yv) {
      r.accumulate(g.add(n, k), xv * yv);
    });
  });
  return r;
}

Signal translate(const Signal& x, const Coords& m) {
  const Group& g = x.group();
  g.check_element(m);
  Signal r(g);
  x.for_each([&](const Coords& n, Complex v) { r.accumulate(g.add(n, m), v); });
  return r;
}

Signal involution(const Signal& x) {
  const Group& g = x.group();
  Signal r(g);
  x.for_each([&](const Coords& n, Complex v) {
    r.accumulate(g.neg(n), std::conj(v));
  });
  return r;
}

Complex Spectrum::at(const Coords& xi) const {
  return values[static_cast<std::size_t>(group.index_of(xi))];
}

Complex Spectrum::at(const DualPoint& xi) const {
  if (xi.group() != group) throw InvalidArgument("spectrum: dual point group mismatch");
  return at(xi.coords());
}

namespace {

// in-place DFT along one axis of the mixed-radix cube; sign -1 analysis, +1 synthesis
void axis_dft(std::vector<Complex>& data, const std::vector<std::int64_t>& orders,
              int axis, int sign) {
  const std::int64_t s = orders[axis];
  if (s == 1) return;
  std::int64_t stride = 1;
  for (int j = 0; j < axis; ++j) stride *= orders[j];
  const std::int64_t total = static_cast<std::int64_t>(data.size());
  const std::int64_t block = stride * s;

  std::vector<Complex> tw(static_cast<std::size_t>(s));
  for (std::int64_t t = 0; t < s; ++t)
    tw[static_cast<std::size_t>(t)] =
        std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(t) /
                            static_cast<double>(s));

  std::vector<Complex> line(static_cast<std::size_t>(s));
  for (std::int64_t base = 0; base < total; base += block) {
    for (std::int64_t off = 0; off < stride; ++off) {
      for (std::int64_t t = 0; t < s; ++t)
        line[static_cast<std::size_t>(t)] =
            data[static_cast<std::size_t>(base + off + t * stride)];
      for (std::int64_t f = 0; f < s; ++f) {
        Complex acc(0);
        for (std::int64_t t = 0; t < s; ++t)
          acc += line[static_cast<std::size_t>(t)] *
                 tw[static_cast<std::size_t>((t * f) % s)];
        data[static_cast<std::size_t>(base + off + f * stride)] = acc;
      }
    }
  }
}

}  // namespace

Spectrum fourier(const Signal& x) {
  const Group& g = x.group();
  if (!g.is_finite())
    throw InvalidArgument("fourier: dense spectra exist only for finite groups");
  std::vector<Complex> data(static_cast<std::size_t>(g.size()), Complex(0));
  x.for_each([&](const Coords& n, Complex v) {
    data[static_cast<std::size_t>(g.index_of(n))] += v;
  });
  for (int j = 0; j < g.dim(); ++j) axis_dft(data, g.orders(), j, -1);
  return Spectrum{g, std::move(data)};
}

Signal inverse_fourier(const Spectrum& sx) {
  const Group& g = sx.group;
  if (static_cast<std::int64_t>(sx.values.size()) != g.size())
    throw InvalidArgument("inverse_fourier: spectrum size mismatch");
  std::vector<Complex> data = sx.values;
  for (int j = 0; j < g.dim(); ++j) axis_dft(data, g.orders(), j, +1);
  const double scale = 1.0 / static_cast<double>(g.size());
  Signal r(g);
  for (std::int64_t i = 0; i < g.size(); ++i)
    r.accumulate(g.element_at(i), scale * data[static_cast<std::size_t>(i)]);
  return r;
}

}  // namespace gfb
