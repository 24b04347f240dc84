#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "anforms/tree.hpp"

namespace anforms {

/// Graft an unpainted tree onto the k-th leaf of an unpainted tree: ∂_k(r,t).
struct PartialGraft {
  int k, r, t;
};
/// Graft an unpainted tree onto the k-th leaf of a painted tree: δ_k(r,t).
struct RightGraft {
  int k, r, t;
};
/// Graft painted trees onto every leaf of an unpainted tree: δ(t; r_1..r_t).
struct LeftGraft {
  int t;
  std::vector<int> r;
};

using GraftSpec = std::variant<PartialGraft, RightGraft, LeftGraft>;

/// Throws DomainError if the indices violate the admissible ranges.
void check_indices(const GraftSpec& spec);
std::string to_string(const GraftSpec& spec);

// Each graft joins the pieces with a new internal edge of length 1 and checks
// that the operand leaf counts agree with the spec.
MetricTree graft(const PartialGraft& spec, const MetricTree& rho, const MetricTree& tau);
MetricTree graft(const RightGraft& spec, const MetricTree& rho, const MetricTree& tau);
MetricTree graft(const LeftGraft& spec, const MetricTree& tau, std::span<const MetricTree> rhos);

// Index-only conveniences; r and t are read off the operands.
MetricTree graft_partial(int k, const MetricTree& rho, const MetricTree& tau);
MetricTree graft_right(int k, const MetricTree& rho, const MetricTree& tau);
MetricTree graft_left(const MetricTree& tau, std::span<const MetricTree> rhos);

struct RelationResult {
  std::string name;
  long long checked = 0;
  std::vector<std::string> failures;
};

struct RelationReport {
  std::vector<RelationResult> relations;
  long long checked() const;
  std::size_t failure_count() const;
};

/// Compares both sides of every grafting relation as points, over all index
/// combinations with at most `max_leaves` leaves in the result and all
/// operands whose internal lengths are drawn from `samples`. Painted operands
/// are the binary level-trees with sampled lengths.
RelationReport verify_graft_relations(int max_leaves, std::span<const Rational> samples, int jobs = 1);

/// Sample points: binary unpainted metric trees with lengths from `samples`.
std::vector<MetricTree> sample_unpainted_points(int leaves, std::span<const Rational> samples);
/// Sample points: binary painted level-trees with lengths from `samples`.
std::vector<MetricTree> sample_level_points(int leaves, std::span<const Rational> samples);

/// How a level-tree decomposes after rescaling by its longest edge.
struct LevelWitness {
  enum class Rule { NoInternalLength, RightGraft, LeftGraft };
  Rule rule = Rule::NoInternalLength;
  Rational scale;  // M(τ); the decomposition is of τ scaled by 1/scale
  std::optional<GraftSpec> spec;
  std::vector<MetricTree> operands;  // (ρ, σ) for δ_k, (ρ', σ'_1..σ'_r) for δ

  std::string describe() const;
};

/// Decides the inductive level-tree definition. Returns a witness when the
/// tree is a level-tree; δ_k cuts are tried before δ cuts. Results are
/// memoized per thread on canonical encodings.
std::optional<LevelWitness> level_decomposition(const MetricTree& tree);
bool is_level_tree(const MetricTree& tree);

}  // namespace anforms
