#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gfb {

using Complex = std::complex<double>;
using Coords = std::vector<std::int64_t>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// bad caller input (wrong group, malformed data): CLI exit 2
struct InvalidArgument : Error {
  using Error::Error;
};
// well-formed input whose mathematical claim fails (not a frame, ...): CLI exit 1
struct MathError : Error {
  using Error::Error;
};
// document fails schema validation: CLI exit 2
struct SchemaError : InvalidArgument {
  using InvalidArgument::InvalidArgument;
};

// Z_{s_1} x ... x Z_{s_d} or Z^d. Elements are coordinate vectors; finite
// coordinates are kept reduced to [0, s_j). Enumeration order is the
// mixed-radix index with the first coordinate varying fastest.
class Group {
 public:
  static Group finite(std::vector<std::int64_t> orders);
  static Group integers(int rank);

  bool is_finite() const { return finite_; }
  int dim() const { return dim_; }
  const std::vector<std::int64_t>& orders() const;
  std::int64_t size() const;  // |G|, finite only

  Coords reduce(Coords n) const;
  Coords add(const Coords& a, const Coords& b) const;
  Coords sub(const Coords& a, const Coords& b) const;
  Coords neg(const Coords& a) const;
  Coords zero() const { return Coords(static_cast<std::size_t>(dim_), 0); }

  std::int64_t index_of(const Coords& n) const;  // finite only
  Coords element_at(std::int64_t idx) const;     // finite only

  void check_element(const Coords& n) const;  // dimension check
  bool operator==(const Group& o) const = default;
  std::string describe() const;

 private:
  Group() = default;
  bool finite_ = true;
  int dim_ = 0;
  std::vector<std::int64_t> orders_;
};

// Point of the dual group: integer coordinates for a finite G (a character
// index), torus coordinates theta in [0,1)^d for G = Z^d.
class DualPoint {
 public:
  static DualPoint finite(const Group& g, Coords xi);
  static DualPoint torus(const Group& g, std::vector<double> theta);

  const Group& group() const { return group_; }
  bool is_finite() const { return group_.is_finite(); }
  const Coords& coords() const;
  const std::vector<double>& theta() const;

 private:
  DualPoint() : group_(Group::finite({1})) {}
  Group group_;
  Coords xi_;
  std::vector<double> theta_;
};

// <n, xi>, a unit-modulus character value.
Complex character(const Group& g, const Coords& n, const DualPoint& xi);
Complex character(const Group& g, const Coords& n, const Coords& xi);  // finite

// Finitely supported map G -> C. Dense storage for finite |G| <= 2^20,
// ordered-map storage otherwise; the choice is internal.
class Signal {
 public:
  explicit Signal(Group g);
  static Signal delta(const Group& g, const Coords& at);
  static Signal from_pairs(const Group& g,
                           const std::vector<std::pair<Coords, Complex>>& terms);

  const Group& group() const { return group_; }
  Complex at(const Coords& n) const;
  std::vector<Coords> support() const;  // nonzero positions, deterministic order
  std::size_t support_size() const;
  double norm2() const;
  bool is_zero(double tol = 0.0) const;

  // visits nonzero entries only
  void for_each(const std::function<void(const Coords&, Complex)>& fn) const;

  Signal& accumulate(const Coords& n, Complex v);  // builder-style +=
  bool uses_dense_storage() const { return dense_; }

 private:
  Group group_;
  bool dense_;
  std::vector<Complex> values_;        // dense
  std::map<Coords, Complex> entries_;  // sparse
};

Signal operator+(const Signal& a, const Signal& b);
Signal operator-(const Signal& a, const Signal& b);
Signal operator*(Complex c, const Signal& x);
Complex inner(const Signal& x, const Signal& y);  // sum x(n) conj y(n)
double distance(const Signal& x, const Signal& y);

Signal convolve(const Signal& x, const Signal& y);
Signal translate(const Signal& x, const Coords& m);  // (T_m x)(n) = x(n - m)
Signal involution(const Signal& x);                  // conj x(-n)

// Dense function on the dual of a finite group, indexed like the group itself.
struct Spectrum {
  Group group;
  std::vector<Complex> values;
  Complex at(const Coords& xi) const;
  Complex at(const DualPoint& xi) const;
};

Spectrum fourier(const Signal& x);           // finite groups only
Signal inverse_fourier(const Spectrum& sx);  // normalization 1/|G|

}  // namespace gfb
