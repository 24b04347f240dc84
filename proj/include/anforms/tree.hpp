#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "anforms/rational.hpp"

namespace anforms {

enum class TreeKind { Unpainted, Painted };

// Plain is the only internal type of an unpainted tree. In a painted tree
// the type of a vertex fixes the paint of its outgoing edge:
//   TypeI   all edges unpainted
//   TypeII  all edges painted
//   TypeIII incoming unpainted, outgoing painted
// Leaf edges are always unpainted.
enum class VertexType { Leaf, Plain, TypeI, TypeII, TypeIII };

bool out_edge_painted(VertexType type) noexcept;

/// A vertex together with the edge leaving it toward the root.
struct Vertex {
  VertexType type = VertexType::Leaf;
  std::vector<Vertex> children;
  std::optional<Rational> length;  // only on internal edges

  static Vertex leaf() { return {}; }
  static Vertex node(VertexType type, std::vector<Vertex> children, std::optional<Rational> length = {});

  bool is_leaf() const noexcept { return type == VertexType::Leaf; }
  int arity() const noexcept { return static_cast<int>(children.size()); }

  friend bool operator==(const Vertex& a, const Vertex& b);
};

int count_leaves(const Vertex& v);

/// Replaces the k-th leaf (1-based, left to right) below `host` by `guest`.
/// Returns false when there are fewer than k leaves.
bool graft_at_leaf(Vertex& host, int k, Vertex guest);

/// Ordered rooted plane tree; the root vertex is the lower end of the root
/// edge. Holds any candidate structure; use validate() to check it.
class PlantedTree {
 public:
  PlantedTree(TreeKind kind, Vertex root) : kind_(kind), root_(std::move(root)) {}

  TreeKind kind() const noexcept { return kind_; }
  const Vertex& root() const noexcept { return root_; }
  int leaf_count() const { return count_leaves(root_); }
  int internal_edge_count() const;
  bool has_lengths() const;
  /// Copy without any edge lengths.
  PlantedTree shape() const;

  std::string encode() const;
  /// Parses the bracket grammar; the kind is painted iff u(/p(/b( occurs.
  /// Throws DomainError on a syntax error.
  static PlantedTree decode(std::string_view text);

  friend bool operator==(const PlantedTree&, const PlantedTree&) = default;

 private:
  TreeKind kind_;
  Vertex root_;
};

struct Violation {
  std::string clause;
  std::string where;  // dotted child-index path, "root" for the root vertex
};

/// Checks every structural invariant. Returns the first violation found,
/// checking leaf count, then the root edge, then vertices in preorder.
std::optional<Violation> validate(const PlantedTree& tree);

bool is_binary(const PlantedTree& tree);

/// A valid planted tree with a length in [0,1] on every internal edge.
class MetricTree {
 public:
  /// Throws DomainError carrying the violation report if `tree` is not a
  /// valid metric tree.
  explicit MetricTree(PlantedTree tree);
  /// Assigns lengths to the internal edges of `shape` in preorder.
  static MetricTree with_lengths(const PlantedTree& shape, std::span<const Rational> lengths);
  static MetricTree decode(std::string_view text) { return MetricTree(PlantedTree::decode(text)); }

  const PlantedTree& tree() const noexcept { return tree_; }
  TreeKind kind() const noexcept { return tree_.kind(); }
  const Vertex& root() const noexcept { return tree_.root(); }
  int leaf_count() const { return tree_.leaf_count(); }
  int internal_edge_count() const { return tree_.internal_edge_count(); }
  std::string encode() const { return tree_.encode(); }

  /// Internal edge lengths in preorder.
  std::vector<Rational> lengths() const;
  /// Multiplies every internal length by `factor`; result must stay in [0,1].
  MetricTree scaled(const Rational& factor) const;

  friend bool operator==(const MetricTree&, const MetricTree&) = default;

 private:
  PlantedTree tree_;
};

/// A metric tree with no zero-length internal edges.
class ReducedTree {
 public:
  const MetricTree& tree() const noexcept { return tree_; }
  std::string encode() const { return tree_.encode(); }
  friend bool operator==(const ReducedTree&, const ReducedTree&) = default;

 private:
  friend ReducedTree reduce(const MetricTree&);
  explicit ReducedTree(MetricTree t) : tree_(std::move(t)) {}
  MetricTree tree_;
};

/// Raised by reduce() when collapsing an edge would unite vertices into an
/// illegal painted vertex (unpainted and painted incoming edges together).
class PaintedMergeError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Collapses every zero-length internal edge, uniting its end vertices.
ReducedTree reduce(const MetricTree& tree);

/// True iff both trees reduce to the same plane tree with the same lengths.
/// Throws DomainError when leaf counts or kinds differ.
bool equal_as_points(const MetricTree& a, const MetricTree& b);

/// Largest internal edge length, 0 when there are no internal edges.
Rational max_internal_length(const MetricTree& tree);

// Enumerations return shapes sorted by canonical encoding.
std::vector<PlantedTree> enumerate_binary_unpainted(int leaves);
std::vector<PlantedTree> enumerate_planar_trees(int leaves);
std::vector<PlantedTree> enumerate_binary_painted_shapes(int leaves);
/// Every painted tree (any arities) with the given leaf count.
std::vector<PlantedTree> enumerate_painted_trees(int leaves);

nlohmann::json to_json(const PlantedTree& tree);
PlantedTree tree_from_json(const nlohmann::json& doc);

std::string to_string(TreeKind kind);

}  // namespace anforms
