#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "gfb/group.hpp"

namespace gfb {

// coset representative convention; Negative negates each default rep in place
enum class Transversal { Lex, Negative };

using IntMat = std::vector<Coords>;  // rows of a square integer matrix

// Finite-index subgroup M <= G together with a fixed ordered transversal
// (coset reps, reps[0] = 0). Finite backend: subgroup of a finite G, carries
// the annihilator M_perp and one representative per coset of M_perp. Integer
// backend: M = A Z^d for a nonsingular integer matrix A with det > 0.
class Lattice {
 public:
  enum class Kind { Generators, Matrix, Quincunx };

  static Lattice from_generators(const Group& g, const std::vector<Coords>& gens,
                                 Transversal conv = Transversal::Lex);
  static Lattice from_matrix(const IntMat& a, Transversal conv = Transversal::Lex);
  // index-2 checkerboard lattice in Z_2P x Z_2Q
  static Lattice quincunx(std::int64_t p, std::int64_t q,
                          Transversal conv = Transversal::Lex);

  const Group& group() const { return group_; }
  Kind kind() const { return kind_; }
  Transversal convention() const { return convention_; }
  std::int64_t index() const { return index_; }  // L = [G : M]
  const std::vector<Coords>& transversal() const { return transversal_; }

  bool contains(const Coords& n) const;
  std::size_t coset_of(const Coords& n) const;  // i with n - reps[i] in M

  // finite backend
  std::int64_t sub_size() const;                 // N = |M| = |G| / L
  const std::vector<Coords>& members() const;    // elements of M, canonical order
  const std::vector<Coords>& annihilator() const;  // M_perp, canonical order
  const std::vector<Coords>& dual_reps() const;    // reps of G^ / M_perp
  std::size_t dual_rep_index(const Coords& xi) const;
  std::size_t dual_rep_index(const DualPoint& xi) const;

  // integer backend
  const IntMat& matrix() const;
  Coords integer_coeffs(const Coords& m) const;  // t with A t = m, m in M
  Coords lattice_vector(const Coords& t) const;  // A t

  // construction parameters, kept for faithful re-serialization
  const std::vector<Coords>& generators() const { return generators_; }
  std::int64_t quincunx_p() const { return qp_; }
  std::int64_t quincunx_q() const { return qq_; }

 private:
  Lattice() : group_(Group::finite({1})) {}
  void build_finite_tables();
  void require_finite(const char* what) const;
  void require_integer(const char* what) const;

  Group group_;
  Kind kind_ = Kind::Generators;
  Transversal convention_ = Transversal::Lex;
  std::int64_t index_ = 1;
  std::vector<Coords> transversal_;
  std::vector<Coords> generators_;
  std::int64_t qp_ = 0, qq_ = 0;

  // finite tables
  std::vector<Coords> members_;
  std::vector<Coords> annihilator_;
  std::vector<Coords> dual_reps_;
  std::vector<std::uint8_t> member_mask_;
  std::vector<std::int32_t> coset_index_;
  std::vector<std::int32_t> dual_rep_of_;

  // integer data
  IntMat mat_, adj_;
  std::int64_t det_ = 0;
  Coords canonical_rep(const Coords& n) const;  // rep of n + M in A [0,1)^d
  std::map<Coords, std::size_t> coset_by_rep_;
};

// keep only samples on M (zero elsewhere)
Signal downsample(const Signal& x, const Lattice& m);
// validate support(c) subset of M; identity embedding otherwise
Signal expand(const Signal& c, const Lattice& m);

// C(xi + M_perp) = sum_{m in M} c(m) conj<m, xi>, tabulated over dual_reps
std::vector<Complex> m_fourier(const Signal& c, const Lattice& m);
Complex m_fourier_at(const Signal& c, const Lattice& m, const Coords& xi);
// c(m) = (1/N) sum_j C_j <m, xi_j>
Signal inverse_m_fourier(const std::vector<Complex>& coef, const Lattice& m);

}  // namespace gfb
