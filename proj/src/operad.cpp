#include "anforms/operad.hpp"

#include <functional>
#include <future>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace anforms {

namespace {

void recolor(Vertex& v, VertexType type) {
  if (v.is_leaf()) return;
  v.type = type;
  for (auto& c : v.children) recolor(c, type);
}

Vertex as_guest(const MetricTree& tree, std::optional<VertexType> recolor_to) {
  Vertex v = tree.root();
  if (recolor_to) recolor(v, *recolor_to);
  v.length = Rational(1);
  return v;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

void require_kind(const MetricTree& t, TreeKind kind, const char* role) {
  require(t.kind() == kind, std::string(role) + " must be a " + to_string(kind) + " tree");
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

}  // namespace

void check_indices(const GraftSpec& spec) {
  std::visit(
      [](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, PartialGraft>) {
          require(s.r >= 2 && s.t >= 2 && s.k >= 1 && s.k <= s.r, "index out of range for " + to_string(GraftSpec(s)));
        } else if constexpr (std::is_same_v<S, RightGraft>) {
          require(s.r >= 1 && s.t >= 2 && s.k >= 1 && s.k <= s.r, "index out of range for " + to_string(GraftSpec(s)));
        } else {
          require(s.t >= 2 && static_cast<int>(s.r.size()) == s.t, "arity mismatch for " + to_string(GraftSpec(s)));
          for (int ri : s.r) require(ri >= 1, "index out of range for " + to_string(GraftSpec(s)));
        }
      },
      spec);
}

std::string to_string(const GraftSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::string {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, PartialGraft>)
          return "d_" + std::to_string(s.k) + "(" + std::to_string(s.r) + "," + std::to_string(s.t) + ")";
        else if constexpr (std::is_same_v<S, RightGraft>)
          return "delta_" + std::to_string(s.k) + "(" + std::to_string(s.r) + "," + std::to_string(s.t) + ")";
        else
          return "delta(" + std::to_string(s.t) + ";" + join_ints(s.r) + ")";
      },
      spec);
}

MetricTree graft(const PartialGraft& spec, const MetricTree& rho, const MetricTree& tau) {
  check_indices(spec);
  require_kind(rho, TreeKind::Unpainted, "rho");
  require_kind(tau, TreeKind::Unpainted, "tau");
  require(rho.leaf_count() == spec.r && tau.leaf_count() == spec.t, "operand leaf counts do not match " + to_string(GraftSpec(spec)));
  Vertex host = rho.root();
  graft_at_leaf(host, spec.k, as_guest(tau, std::nullopt));
  return MetricTree(PlantedTree(TreeKind::Unpainted, std::move(host)));
}

MetricTree graft(const RightGraft& spec, const MetricTree& rho, const MetricTree& tau) {
  check_indices(spec);
  require_kind(rho, TreeKind::Painted, "rho");
  require_kind(tau, TreeKind::Unpainted, "tau");
  require(rho.leaf_count() == spec.r && tau.leaf_count() == spec.t, "operand leaf counts do not match " + to_string(GraftSpec(spec)));
  Vertex host = rho.root();
  graft_at_leaf(host, spec.k, as_guest(tau, VertexType::TypeI));
  return MetricTree(PlantedTree(TreeKind::Painted, std::move(host)));
}

MetricTree graft(const LeftGraft& spec, const MetricTree& tau, std::span<const MetricTree> rhos) {
  check_indices(spec);
  require_kind(tau, TreeKind::Unpainted, "tau");
  require(static_cast<int>(rhos.size()) == spec.t, "arity mismatch for " + to_string(GraftSpec(spec)));
  require(tau.leaf_count() == spec.t, "operand leaf counts do not match " + to_string(GraftSpec(spec)));
  Vertex host = tau.root();
  recolor(host, VertexType::TypeII);
  // Right to left so that earlier leaf indices stay put.
  for (int i = spec.t; i >= 1; --i) {
    const MetricTree& rho = rhos[i - 1];
    require_kind(rho, TreeKind::Painted, "rho_i");
    require(rho.leaf_count() == spec.r[i - 1], "operand leaf counts do not match " + to_string(GraftSpec(spec)));
    graft_at_leaf(host, i, as_guest(rho, std::nullopt));
  }
  return MetricTree(PlantedTree(TreeKind::Painted, std::move(host)));
}

MetricTree graft_partial(int k, const MetricTree& rho, const MetricTree& tau) {
  return graft(PartialGraft{k, rho.leaf_count(), tau.leaf_count()}, rho, tau);
}

MetricTree graft_right(int k, const MetricTree& rho, const MetricTree& tau) {
  return graft(RightGraft{k, rho.leaf_count(), tau.leaf_count()}, rho, tau);
}

MetricTree graft_left(const MetricTree& tau, std::span<const MetricTree> rhos) {
  LeftGraft spec{static_cast<int>(rhos.size()), {}};
  for (const auto& r : rhos) spec.r.push_back(r.leaf_count());
  return graft(spec, tau, rhos);
}

// ---------------------------------------------------------------------------
// Level-trees

namespace {

void collect_unpainted_unit_edges(const Vertex& v, std::vector<std::size_t>& path, bool is_root,
                                  std::vector<std::vector<std::size_t>>& out) {
  if (v.is_leaf()) return;
  if (!is_root && v.type == VertexType::TypeI && v.length && *v.length == 1) out.push_back(path);
  for (std::size_t i = 0; i < v.children.size(); ++i) {
    path.push_back(i);
    collect_unpainted_unit_edges(v.children[i], path, false, out);
    path.pop_back();
  }
}

// Cuts out the subtree at `path`, leaving a leaf; returns the subtree and the
// 1-based index of the new leaf.
std::pair<Vertex, int> cut_subtree(Vertex& root, const std::vector<std::size_t>& path) {
  Vertex* v = &root;
  int leaves_before = 0;
  for (std::size_t depth = 0; depth < path.size(); ++depth) {
    for (std::size_t i = 0; i < path[depth]; ++i) leaves_before += count_leaves(v->children[i]);
    v = &v->children[path[depth]];
  }
  Vertex sub = std::move(*v);
  *v = Vertex::leaf();
  return {std::move(sub), leaves_before + 1};
}

// Splits a Type II region containing v off the tree: each child of a crust
// vertex either joins the crust (Type II only) or hangs off it through a cut
// edge of length 1. Emits the unpainted image of the crust and the cut pieces.
void enumerate_crusts(const Vertex& v, const std::function<void(Vertex, std::vector<Vertex>)>& emit) {
  std::vector<std::vector<std::pair<Vertex, std::vector<Vertex>>>> options(v.children.size());
  for (std::size_t i = 0; i < v.children.size(); ++i) {
    const Vertex& c = v.children[i];
    if (c.length && *c.length == 1) {
      Vertex piece = c;
      piece.length.reset();
      options[i].push_back({Vertex::leaf(), {std::move(piece)}});
    }
    if (c.type == VertexType::TypeII) {
      enumerate_crusts(c, [&](Vertex sub, std::vector<Vertex> cuts) {
        sub.length = c.length;
        options[i].push_back({std::move(sub), std::move(cuts)});
      });
    }
    if (options[i].empty()) return;
  }
  std::vector<std::size_t> pick(v.children.size(), 0);
  while (true) {
    Vertex crust = Vertex::node(VertexType::Plain, {}, std::nullopt);
    std::vector<Vertex> cuts;
    for (std::size_t i = 0; i < pick.size(); ++i) {
      const auto& [sub, sub_cuts] = options[i][pick[i]];
      crust.children.push_back(sub);
      cuts.insert(cuts.end(), sub_cuts.begin(), sub_cuts.end());
    }
    emit(std::move(crust), std::move(cuts));
    bool advanced = false;
    for (std::size_t i = pick.size(); i-- > 0;) {
      if (++pick[i] < options[i].size()) {
        advanced = true;
        break;
      }
      pick[i] = 0;
    }
    if (!advanced) return;
  }
}

std::optional<LevelWitness> decide_level(const MetricTree& tree) {
  const Rational m = max_internal_length(tree);
  if (m == 0) return LevelWitness{LevelWitness::Rule::NoInternalLength, Rational(0), std::nullopt, {}};
  const MetricTree rescaled = tree.scaled(1 / m);

  std::vector<std::vector<std::size_t>> unit_edges;
  std::vector<std::size_t> path;
  collect_unpainted_unit_edges(rescaled.root(), path, true, unit_edges);
  for (const auto& p : unit_edges) {
    Vertex rest = rescaled.root();
    auto [sub, k] = cut_subtree(rest, p);
    sub.length.reset();
    recolor(sub, VertexType::Plain);
    MetricTree rho(PlantedTree(TreeKind::Painted, std::move(rest)));
    MetricTree sigma(PlantedTree(TreeKind::Unpainted, std::move(sub)));
    if (level_decomposition(rho)) {
      RightGraft spec{k, rho.leaf_count(), sigma.leaf_count()};
      return LevelWitness{LevelWitness::Rule::RightGraft, m, spec, {std::move(rho), std::move(sigma)}};
    }
  }

  if (rescaled.root().type != VertexType::TypeII) return std::nullopt;
  std::optional<LevelWitness> found;
  enumerate_crusts(rescaled.root(), [&](Vertex crust, std::vector<Vertex> cuts) {
    if (found) return;
    std::vector<MetricTree> pieces;
    for (auto& c : cuts) {
      MetricTree piece(PlantedTree(TreeKind::Painted, std::move(c)));
      if (!level_decomposition(piece)) return;
      pieces.push_back(std::move(piece));
    }
    MetricTree tau(PlantedTree(TreeKind::Unpainted, std::move(crust)));
    LeftGraft spec{tau.leaf_count(), {}};
    for (const auto& p : pieces) spec.r.push_back(p.leaf_count());
    std::vector<MetricTree> operands{std::move(tau)};
    operands.insert(operands.end(), pieces.begin(), pieces.end());
    found = LevelWitness{LevelWitness::Rule::LeftGraft, m, spec, std::move(operands)};
  });
  return found;
}

}  // namespace

std::optional<LevelWitness> level_decomposition(const MetricTree& tree) {
  if (tree.kind() != TreeKind::Painted) throw DomainError("level-trees are painted trees");
  thread_local std::unordered_map<std::string, std::optional<LevelWitness>> memo;
  const std::string key = tree.encode();
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  auto result = decide_level(tree);
  memo.emplace(key, result);
  return result;
}

bool is_level_tree(const MetricTree& tree) { return level_decomposition(tree).has_value(); }

std::string LevelWitness::describe() const {
  std::ostringstream os;
  switch (rule) {
    case Rule::NoInternalLength:
      os << "level: longest internal edge is 0";
      return os.str();
    case Rule::RightGraft:
    case Rule::LeftGraft:
      os << "level: rescaled by 1/" << to_string(scale) << " = " << to_string(*spec) << "(";
      for (std::size_t i = 0; i < operands.size(); ++i) os << (i ? ", " : "") << operands[i].encode();
      os << ")";
      return os.str();
  }
  return {};
}

// ---------------------------------------------------------------------------
// Relation verification

std::vector<MetricTree> sample_unpainted_points(int leaves, std::span<const Rational> samples) {
  std::vector<MetricTree> out;
  for (const auto& shape : enumerate_binary_unpainted(leaves)) {
    const int edges = shape.internal_edge_count();
    std::vector<std::size_t> idx(edges, 0);
    std::vector<Rational> lengths(edges);
    while (true) {
      for (int e = 0; e < edges; ++e) lengths[e] = samples[idx[e]];
      out.push_back(MetricTree::with_lengths(shape, lengths));
      int e = edges - 1;
      while (e >= 0 && ++idx[e] == samples.size()) idx[e--] = 0;
      if (e < 0) break;
    }
  }
  return out;
}

std::vector<MetricTree> sample_level_points(int leaves, std::span<const Rational> samples) {
  std::vector<MetricTree> out;
  for (const auto& shape : enumerate_binary_painted_shapes(leaves)) {
    const int edges = shape.internal_edge_count();
    std::vector<std::size_t> idx(edges, 0);
    std::vector<Rational> lengths(edges);
    while (true) {
      for (int e = 0; e < edges; ++e) lengths[e] = samples[idx[e]];
      MetricTree t = MetricTree::with_lengths(shape, lengths);
      if (is_level_tree(t)) out.push_back(std::move(t));
      int e = edges - 1;
      while (e >= 0 && ++idx[e] == samples.size()) idx[e--] = 0;
      if (e < 0) break;
    }
  }
  return out;
}

namespace {

struct SamplePool {
  std::map<int, std::vector<MetricTree>> k_points, j_points;
  const std::vector<MetricTree>& k(int n) const { return k_points.at(n); }
  const std::vector<MetricTree>& j(int n) const { return j_points.at(n); }
};

// All compositions of `total` into `parts` positive parts.
void compositions(int total, int parts, std::vector<int>& cur, const std::function<void(const std::vector<int>&)>& f) {
  if (parts == 0) {
    if (total == 0) f(cur);
    return;
  }
  for (int first = 1; first <= total - (parts - 1); ++first) {
    cur.push_back(first);
    compositions(total - first, parts - 1, cur, f);
    cur.pop_back();
  }
}

void for_each_tuple(const SamplePool& pool, const std::vector<int>& sizes, std::vector<const MetricTree*>& cur,
                    const std::function<void(const std::vector<const MetricTree*>&)>& f) {
  if (cur.size() == sizes.size()) {
    f(cur);
    return;
  }
  for (const auto& t : pool.j(sizes[cur.size()])) {
    cur.push_back(&t);
    for_each_tuple(pool, sizes, cur, f);
    cur.pop_back();
  }
}

std::vector<MetricTree> deref(const std::vector<const MetricTree*>& ptrs) {
  std::vector<MetricTree> out;
  out.reserve(ptrs.size());
  for (auto* p : ptrs) out.push_back(*p);
  return out;
}

class Checker {
 public:
  explicit Checker(std::string name) { result_.name = std::move(name); }

  void compare(const std::function<MetricTree()>& lhs, const std::function<MetricTree()>& rhs,
               const std::function<std::string()>& context) {
    ++result_.checked;
    try {
      MetricTree a = lhs();
      MetricTree b = rhs();
      if (!equal_as_points(a, b)) result_.failures.push_back(context() + ": " + a.encode() + " != " + b.encode());
    } catch (const DomainError& e) {
      result_.failures.push_back(context() + ": " + e.what());
    }
  }

  RelationResult take() { return std::move(result_); }

 private:
  RelationResult result_;
};

std::string ctx(std::initializer_list<std::pair<const char*, std::string>> parts) {
  std::string s;
  for (const auto& [k, v] : parts) s += (s.empty() ? "" : " ") + std::string(k) + "=" + v;
  return s;
}

RelationResult partial_associativity(const SamplePool& pool, int max_leaves) {
  Checker check("d_j(p,r+t-1)(1 x d_k(r,t)) = d_{j+k-1}(p+r-1,t)(d_j(p,r) x 1)");
  for (int p = 2; p <= max_leaves; ++p)
    for (int r = 2; p + r - 1 <= max_leaves; ++r)
      for (int t = 2; p + r + t - 2 <= max_leaves; ++t)
        for (int j = 1; j <= p; ++j)
          for (int k = 1; k <= r; ++k)
            for (const auto& rho : pool.k(p))
              for (const auto& sigma : pool.k(r))
                for (const auto& tau : pool.k(t))
                  check.compare([&] { return graft(PartialGraft{j, p, r + t - 1}, rho, graft(PartialGraft{k, r, t}, sigma, tau)); },
                                [&] { return graft(PartialGraft{j + k - 1, p + r - 1, t}, graft(PartialGraft{j, p, r}, rho, sigma), tau); },
                                [&] { return ctx({{"p", std::to_string(p)}, {"r", std::to_string(r)}, {"t", std::to_string(t)},
                                                  {"j", std::to_string(j)}, {"k", std::to_string(k)}, {"rho", rho.encode()},
                                                  {"sigma", sigma.encode()}, {"tau", tau.encode()}}); });
  return check.take();
}

RelationResult partial_commutation(const SamplePool& pool, int max_leaves) {
  Checker check("d_{j+r-1}(p+r-1,t)(d_k(p,r) x 1) = d_k(p+t-1,r)(d_j(p,t) x 1)(1 x T), k<j");
  for (int p = 2; p <= max_leaves; ++p)
    for (int r = 2; p + r - 1 <= max_leaves; ++r)
      for (int t = 2; p + r + t - 2 <= max_leaves; ++t)
        for (int j = 2; j <= p; ++j)
          for (int k = 1; k < j; ++k)
            for (const auto& rho : pool.k(p))
              for (const auto& sigma : pool.k(r))
                for (const auto& tau : pool.k(t))
                  check.compare([&] { return graft(PartialGraft{j + r - 1, p + r - 1, t}, graft(PartialGraft{k, p, r}, rho, sigma), tau); },
                                [&] { return graft(PartialGraft{k, p + t - 1, r}, graft(PartialGraft{j, p, t}, rho, tau), sigma); },
                                [&] { return ctx({{"p", std::to_string(p)}, {"r", std::to_string(r)}, {"t", std::to_string(t)},
                                                  {"j", std::to_string(j)}, {"k", std::to_string(k)}, {"rho", rho.encode()},
                                                  {"sigma", sigma.encode()}, {"tau", tau.encode()}}); });
  return check.take();
}

RelationResult right_associativity(const SamplePool& pool, int max_leaves) {
  Checker check("delta_j(p,r+t-1)(1 x d_k(r,t)) = delta_{j+k-1}(p+r-1,t)(delta_j(p,r) x 1)");
  for (int p = 1; p <= max_leaves; ++p)
    for (int r = 2; p + r - 1 <= max_leaves; ++r)
      for (int t = 2; p + r + t - 2 <= max_leaves; ++t)
        for (int j = 1; j <= p; ++j)
          for (int k = 1; k <= r; ++k)
            for (const auto& rho : pool.j(p))
              for (const auto& sigma : pool.k(r))
                for (const auto& tau : pool.k(t))
                  check.compare([&] { return graft(RightGraft{j, p, r + t - 1}, rho, graft(PartialGraft{k, r, t}, sigma, tau)); },
                                [&] { return graft(RightGraft{j + k - 1, p + r - 1, t}, graft(RightGraft{j, p, r}, rho, sigma), tau); },
                                [&] { return ctx({{"p", std::to_string(p)}, {"r", std::to_string(r)}, {"t", std::to_string(t)},
                                                  {"j", std::to_string(j)}, {"k", std::to_string(k)}, {"rho", rho.encode()},
                                                  {"sigma", sigma.encode()}, {"tau", tau.encode()}}); });
  return check.take();
}

RelationResult right_commutation(const SamplePool& pool, int max_leaves) {
  Checker check("delta_{j+r-1}(p+r-1,t)(delta_k(p,r) x 1) = delta_k(p+t-1,r)(delta_j(p,t) x 1)(1 x T), k<j");
  for (int p = 2; p <= max_leaves; ++p)
    for (int r = 2; p + r - 1 <= max_leaves; ++r)
      for (int t = 2; p + r + t - 2 <= max_leaves; ++t)
        for (int j = 2; j <= p; ++j)
          for (int k = 1; k < j; ++k)
            for (const auto& rho : pool.j(p))
              for (const auto& sigma : pool.k(r))
                for (const auto& tau : pool.k(t))
                  check.compare([&] { return graft(RightGraft{j + r - 1, p + r - 1, t}, graft(RightGraft{k, p, r}, rho, sigma), tau); },
                                [&] { return graft(RightGraft{k, p + t - 1, r}, graft(RightGraft{j, p, t}, rho, tau), sigma); },
                                [&] { return ctx({{"p", std::to_string(p)}, {"r", std::to_string(r)}, {"t", std::to_string(t)},
                                                  {"j", std::to_string(j)}, {"k", std::to_string(k)}, {"rho", rho.encode()},
                                                  {"sigma", sigma.encode()}, {"tau", tau.encode()}}); });
  return check.take();
}

std::string encode_all(const std::vector<const MetricTree*>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i]->encode();
  return s + "]";
}

RelationResult left_right_interchange(const SamplePool& pool, int max_leaves) {
  Checker check("delta_{p_1+..+p_{j-1}+k}(p,r)(delta(t;p_1..p_t) x 1) = delta(t;..,p_j+r-1,..)(1 x .. x delta_k(p_j,r) x .. x 1)T_j");
  for (int t = 2; t <= max_leaves; ++t)
    for (int r = 2; t + r - 1 <= max_leaves; ++r)
      for (int p = t; p + r - 1 <= max_leaves; ++p) {
        std::vector<int> cur;
        compositions(p, t, cur, [&](const std::vector<int>& ps) {
          for (int j = 1; j <= t; ++j)
            for (int k = 1; k <= ps[j - 1]; ++k) {
              const int offset = std::accumulate(ps.begin(), ps.begin() + (j - 1), 0);
              std::vector<int> merged = ps;
              merged[j - 1] += r - 1;
              for (const auto& tau : pool.k(t))
                for (const auto& rho : pool.k(r)) {
                  std::vector<const MetricTree*> pis;
                  for_each_tuple(pool, ps, pis, [&](const std::vector<const MetricTree*>& pi) {
                    check.compare(
                        [&] {
                          auto inner = deref(pi);
                          return graft(RightGraft{offset + k, p, r}, graft(LeftGraft{t, ps}, tau, inner), rho);
                        },
                        [&] {
                          auto parts = deref(pi);
                          parts[j - 1] = graft(RightGraft{k, ps[j - 1], r}, parts[j - 1], rho);
                          return graft(LeftGraft{t, merged}, tau, parts);
                        },
                        [&] {
                          return ctx({{"t", std::to_string(t)}, {"p", join_ints(ps)}, {"r", std::to_string(r)},
                                      {"j", std::to_string(j)}, {"k", std::to_string(k)}, {"tau", tau.encode()},
                                      {"pi", encode_all(pi)}, {"rho", rho.encode()}});
                        });
                  });
                }
            }
        });
      }
  return check.take();
}

RelationResult left_associativity(const SamplePool& pool, int max_leaves) {
  Checker check("delta(r+t-1;p)(d_k(r,t) x 1) = delta(r;..,p_k+..+p_{k+t-1},..)(1 x .. x delta(t;p_k..p_{k+t-1}) x .. x 1)T'_k");
  for (int r = 2; r <= max_leaves; ++r)
    for (int t = 2; r + t - 1 <= max_leaves; ++t)
      for (int total = r + t - 1; total <= max_leaves; ++total) {
        std::vector<int> cur;
        compositions(total, r + t - 1, cur, [&](const std::vector<int>& ps) {
          for (int k = 1; k <= r; ++k) {
            std::vector<int> outer(ps.begin(), ps.begin() + (k - 1));
            std::vector<int> inner(ps.begin() + (k - 1), ps.begin() + (k - 1 + t));
            outer.push_back(std::accumulate(inner.begin(), inner.end(), 0));
            outer.insert(outer.end(), ps.begin() + (k - 1 + t), ps.end());
            for (const auto& rho : pool.k(r))
              for (const auto& tau : pool.k(t)) {
                std::vector<const MetricTree*> pis;
                for_each_tuple(pool, ps, pis, [&](const std::vector<const MetricTree*>& pi) {
                  check.compare(
                      [&] { return graft(LeftGraft{r + t - 1, ps}, graft(PartialGraft{k, r, t}, rho, tau), deref(pi)); },
                      [&] {
                        auto all = deref(pi);
                        std::vector<MetricTree> middle(all.begin() + (k - 1), all.begin() + (k - 1 + t));
                        std::vector<MetricTree> parts(all.begin(), all.begin() + (k - 1));
                        parts.push_back(graft(LeftGraft{t, inner}, tau, middle));
                        parts.insert(parts.end(), all.begin() + (k - 1 + t), all.end());
                        return graft(LeftGraft{r, outer}, rho, parts);
                      },
                      [&] {
                        return ctx({{"r", std::to_string(r)}, {"t", std::to_string(t)}, {"p", join_ints(ps)},
                                    {"k", std::to_string(k)}, {"rho", rho.encode()}, {"tau", tau.encode()},
                                    {"pi", encode_all(pi)}});
                      });
                });
              }
          }
        });
      }
  return check.take();
}

}  // namespace

long long RelationReport::checked() const {
  long long n = 0;
  for (const auto& r : relations) n += r.checked;
  return n;
}

std::size_t RelationReport::failure_count() const {
  std::size_t n = 0;
  for (const auto& r : relations) n += r.failures.size();
  return n;
}

RelationReport verify_graft_relations(int max_leaves, std::span<const Rational> samples, int jobs) {
  if (max_leaves < 4) throw DomainError("max leaves must be at least 4");
  if (samples.empty()) throw DomainError("at least one length sample is required");
  for (const auto& s : samples)
    if (s < 0 || s > 1) throw DomainError("length sample " + to_string(s) + " outside [0,1]");

  // Unpainted operands have at most max_leaves - 1 leaves, painted ones at
  // most max_leaves - 2.
  SamplePool pool;
  for (int n = 2; n <= max_leaves - 1; ++n) pool.k_points[n] = sample_unpainted_points(n, samples);
  for (int n = 1; n <= max_leaves - 2; ++n) pool.j_points[n] = sample_level_points(n, samples);

  using Task = RelationResult (*)(const SamplePool&, int);
  const std::vector<Task> tasks = {partial_associativity, partial_commutation,    right_associativity,
                                   right_commutation,     left_right_interchange, left_associativity};
  RelationReport report;
  if (jobs <= 1) {
    for (auto task : tasks) report.relations.push_back(task(pool, max_leaves));
    return report;
  }
  std::vector<std::future<RelationResult>> pending;
  std::size_t next = 0;
  std::vector<std::optional<RelationResult>> results(tasks.size());
  // At most `jobs` relations in flight; results merged in task order.
  while (next < tasks.size() || !pending.empty()) {
    while (next < tasks.size() && static_cast<int>(pending.size()) < jobs)
      pending.push_back(std::async(std::launch::async, tasks[next++], std::cref(pool), max_leaves));
    const std::size_t first = next - pending.size();
    results[first] = pending.front().get();
    pending.erase(pending.begin());
  }
  for (auto& r : results) report.relations.push_back(std::move(*r));
  return report;
}

}  // namespace anforms
