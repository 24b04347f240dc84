#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "anforms/rational.hpp"

namespace anforms {

enum class Family { K, L, J, H };

std::string to_string(Family family);
/// Parses "K", "L", "J" or "H".
Family parse_family(std::string_view text);

struct Cell {
  int dim = 0;
  std::string label;
  friend bool operator==(const Cell&, const Cell&) = default;
};

struct Incidence {
  int cell = 0;
  int coeff = 0;
  friend bool operator==(const Incidence&, const Incidence&) = default;
};

/// Finite CW-style complex: labelled cells and integer boundary incidences.
/// Cells are ordered by (dimension, label); boundary(i) lists the
/// codimension-one faces of cell i by increasing id.
class CellComplex {
 public:
  CellComplex(Family family, int n, std::vector<Cell> cells, std::vector<std::vector<Incidence>> boundary);

  Family family() const noexcept { return family_; }
  int n() const noexcept { return n_; }
  const std::vector<Cell>& cells() const noexcept { return cells_; }
  const std::vector<Incidence>& boundary(int cell) const { return boundary_.at(cell); }
  int size() const noexcept { return static_cast<int>(cells_.size()); }
  int dimension() const;

  friend bool operator==(const CellComplex&, const CellComplex&) = default;

 private:
  Family family_;
  int n_;
  std::vector<Cell> cells_;
  std::vector<std::vector<Incidence>> boundary_;
};

struct BuildOptions {
  /// Enumerate grafting generators in reverse order. The finished complex
  /// must not depend on this.
  bool reverse_generators = false;
};

constexpr int kMaxAssociahedron = 8;
constexpr int kMaxMultiplihedron = 6;

/// K_n for 2 <= n <= 8: the boundary L_n is the union of the images of
/// ∂_k(r,t) on products of lower cells, and K_n adds one top cell.
CellComplex build_k(int n, BuildOptions options = {});
/// J_n for 1 <= n <= 6: the boundary H_n is the union of the images of δ_k
/// on J_r x K_t and δ on K_t x J_r1 x .. x J_rt, plus one top cell.
CellComplex build_j(int n, BuildOptions options = {});
/// Builds any family; L_n needs 3 <= n <= 8, H_n needs 2 <= n <= 6.
CellComplex build(Family family, int n, BuildOptions options = {});
/// Drops the top cell of K_n or J_n, giving L_n or H_n.
CellComplex boundary_subcomplex(const CellComplex& c);

std::vector<int> f_vector(const CellComplex& c);
long long euler_characteristic(const CellComplex& c);
/// True iff the boundary of every boundary vanishes over the integers.
bool boundary_squared_is_zero(const CellComplex& c);
/// Rational Betti numbers b_0..b_dim by exact fraction-free elimination.
std::vector<long long> homology_ranks(const CellComplex& c);
/// Rank of an integer matrix given as sparse rows, over the rationals.
long long rational_rank(std::vector<std::vector<std::pair<int, BigInt>>> rows);

nlohmann::json export_complex(const CellComplex& c);
CellComplex import_complex(const nlohmann::json& doc);

}  // namespace anforms
