#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "anforms/tree.hpp"

namespace anforms {

/// A formal composite of grafting generators naming a cell of K_n or J_n.
///
///   K<n>                     top cell of K_n
///   J<n>                     top cell of J_n
///   d<k>(r,t)[a,b]           ∂_k(r,t) applied to K-terms a, b
///   r<k>(r,t)[a,b]           δ_k(r,t) applied to a J-term a and a K-term b
///   l(t;r1,..,rt)[a;b1,..]   δ(t;r_1..r_t) applied to a K-term and t J-terms
///
/// Every term evaluates to a cell tree: a plane tree whose vertices are the
/// top cells it is built from. K-family cell trees are unpainted; in J-family
/// cell trees, Type III vertices are J-tops, Type I and II vertices are
/// K-tops acting before and after the map. Two terms name the same cell iff
/// they evaluate to the same cell tree; canonical() picks one fixed
/// representative of that class.
class CellLabel {
 public:
  enum class Op { TopK, TopJ, Partial, Right, Left };

  static CellLabel top_k(int n);
  static CellLabel top_j(int n);
  static CellLabel partial(int k, CellLabel a, CellLabel b);
  static CellLabel right(int k, CellLabel a, CellLabel b);
  static CellLabel left(CellLabel a, std::vector<CellLabel> bs);

  /// Throws DomainError on syntax errors.
  static CellLabel parse(std::string_view text);
  /// The canonical term of a cell tree. The root decomposition is fixed:
  /// the leftmost non-leaf child of a K-vertex is split off by ∂, the
  /// leftmost Type I child of a J-vertex by δ_k, and the whole Type II region
  /// at the root by δ.
  static CellLabel canonical(const PlantedTree& cell_tree);

  Op op() const noexcept { return op_; }
  bool is_k_term() const noexcept { return op_ == Op::TopK || op_ == Op::Partial; }
  int leaf_count() const;
  int index() const noexcept { return index_; }
  const std::vector<int>& arities() const noexcept { return arities_; }
  const std::vector<CellLabel>& args() const noexcept { return args_; }
  std::string str() const;
  /// Throws DomainError if indices do not match operand leaf counts.
  PlantedTree evaluate() const;
  CellLabel canonical() const { return canonical(evaluate()); }

  friend bool operator==(const CellLabel&, const CellLabel&) = default;

 private:
  Op op_ = Op::TopK;
  int index_ = 0;                // n for tops, k for d/r
  std::vector<int> arities_;     // (r,t) or (t; r_1..r_t)
  std::vector<CellLabel> args_;
};

/// Dimension of the cell named by a cell tree: Σ(arity-2) over K-vertices
/// plus Σ(arity-1) over J-vertices.
int cell_dimension(const Vertex& cell_root);

}  // namespace anforms
