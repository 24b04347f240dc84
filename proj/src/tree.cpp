#include "anforms/tree.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>

namespace anforms {

bool out_edge_painted(VertexType type) noexcept {
  return type == VertexType::TypeII || type == VertexType::TypeIII;
}

Vertex Vertex::node(VertexType type, std::vector<Vertex> children, std::optional<Rational> length) {
  Vertex v;
  v.type = type;
  v.children = std::move(children);
  v.length = std::move(length);
  return v;
}

bool operator==(const Vertex& a, const Vertex& b) {
  if (a.type != b.type || a.children.size() != b.children.size()) return false;
  if (a.length.has_value() != b.length.has_value()) return false;
  if (a.length && *a.length != *b.length) return false;
  return std::equal(a.children.begin(), a.children.end(), b.children.begin());
}

int count_leaves(const Vertex& v) {
  if (v.is_leaf()) return 1;
  int n = 0;
  for (const auto& c : v.children) n += count_leaves(c);
  return n;
}

namespace {

bool graft_rec(Vertex& v, int& remaining, Vertex& guest) {
  if (v.is_leaf()) {
    if (--remaining == 0) {
      v = std::move(guest);
      return true;
    }
    return false;
  }
  for (auto& c : v.children)
    if (graft_rec(c, remaining, guest)) return true;
  return false;
}

int count_internal_edges(const Vertex& v, bool is_root) {
  if (v.is_leaf()) return 0;
  int n = is_root ? 0 : 1;
  for (const auto& c : v.children) n += count_internal_edges(c, false);
  return n;
}

bool any_length(const Vertex& v) {
  if (v.length) return true;
  return std::any_of(v.children.begin(), v.children.end(), any_length);
}

void strip_lengths(Vertex& v) {
  v.length.reset();
  for (auto& c : v.children) strip_lengths(c);
}

char type_prefix(VertexType t) {
  switch (t) {
    case VertexType::TypeI: return 'u';
    case VertexType::TypeII: return 'p';
    case VertexType::TypeIII: return 'b';
    default: return '\0';
  }
}

void encode_rec(const Vertex& v, std::string& out) {
  if (v.is_leaf()) {
    out += '*';
  } else {
    if (char p = type_prefix(v.type)) out += p;
    out += '(';
    for (std::size_t i = 0; i < v.children.size(); ++i) {
      if (i) out += ' ';
      encode_rec(v.children[i], out);
    }
    out += ')';
  }
  if (v.length) {
    out += '@';
    out += to_string(*v.length);
  }
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  PlantedTree parse() {
    Vertex root = vertex();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters");
    if (saw_plain_ && saw_painted_) fail("mixes unpainted '(' with painted vertex prefixes");
    return PlantedTree(saw_painted_ ? TreeKind::Painted : TreeKind::Unpainted, std::move(root));
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw DomainError("tree syntax error at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  Vertex vertex() {
    skip_ws();
    Vertex v;
    char c = peek();
    if (c == '*') {
      ++pos_;
    } else {
      if (c == '(') {
        v.type = VertexType::Plain;
        saw_plain_ = true;
      } else if ((c == 'u' || c == 'p' || c == 'b') && pos_ + 1 < text_.size() && text_[pos_ + 1] == '(') {
        v.type = c == 'u' ? VertexType::TypeI : c == 'p' ? VertexType::TypeII : VertexType::TypeIII;
        saw_painted_ = true;
        ++pos_;
      } else {
        fail("expected '*', '(' or a painted vertex prefix");
      }
      ++pos_;  // '('
      skip_ws();
      while (peek() != ')') {
        if (peek() == '\0') fail("unterminated vertex");
        v.children.push_back(vertex());
        skip_ws();
      }
      ++pos_;  // ')'
      if (v.children.empty()) fail("internal vertex without children");
    }
    if (peek() == '@') {
      ++pos_;
      std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/' ||
                                     text_[pos_] == '-' || text_[pos_] == '+'))
        ++pos_;
      v.length = parse_rational(text_.substr(start, pos_ - start));
    }
    return v;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  bool saw_plain_ = false;
  bool saw_painted_ = false;
};

std::string child_path(const std::string& parent, std::size_t i) {
  return (parent == "root" ? std::string() : parent + ".") + std::to_string(i);
}

std::optional<Violation> check_vertex(const Vertex& v, TreeKind kind, bool is_root, const std::string& where,
                                      bool lengths_expected) {
  auto violation = [&](std::string clause) { return Violation{std::move(clause), where}; };

  if (v.is_leaf()) {
    if (!v.children.empty()) return violation("leaf with children");
    if (v.length) return violation("length on a non-internal edge");
    return std::nullopt;
  }
  if (v.children.empty()) return violation("internal vertex without incoming edges");

  if (kind == TreeKind::Unpainted) {
    if (v.type != VertexType::Plain) return violation("painted vertex type in an unpainted tree");
    if (v.arity() == 1) return violation("vertex with exactly two edges");
  } else {
    switch (v.type) {
      case VertexType::TypeI:
        if (v.arity() < 2) return violation("Type I vertex needs at least 2 incoming edges");
        for (const auto& c : v.children)
          if (!(c.is_leaf() || c.type == VertexType::TypeI)) return violation("Type I vertex has a painted incoming edge");
        break;
      case VertexType::TypeII:
        if (v.arity() < 2) return violation("Type II vertex needs at least 2 incoming edges");
        for (const auto& c : v.children)
          if (!out_edge_painted(c.type)) return violation("Type II vertex has an unpainted incoming edge");
        break;
      case VertexType::TypeIII:
        for (const auto& c : v.children)
          if (!(c.is_leaf() || c.type == VertexType::TypeI))
            return violation("Type III vertex has a painted incoming edge");
        break;
      default:
        return violation("painted tree vertex must be of Type I, II or III");
    }
  }

  if (is_root) {
    if (v.length) return violation("length on a non-internal edge");
  } else if (v.length) {
    if (*v.length < 0 || *v.length > 1) return violation("edge length outside [0,1]");
  } else if (lengths_expected) {
    return violation("internal edge without length");
  }

  for (std::size_t i = 0; i < v.children.size(); ++i)
    if (auto bad = check_vertex(v.children[i], kind, false, child_path(where, i), lengths_expected)) return bad;
  return std::nullopt;
}

void collect_lengths(const Vertex& v, bool is_root, std::vector<Rational>& out) {
  if (v.is_leaf()) return;
  if (!is_root) out.push_back(v.length.value_or(Rational(0)));
  for (const auto& c : v.children) collect_lengths(c, false, out);
}

void assign_lengths(Vertex& v, bool is_root, std::span<const Rational>& lengths) {
  if (v.is_leaf()) return;
  if (!is_root) {
    if (lengths.empty()) throw DomainError("too few edge lengths for shape");
    v.length = lengths.front();
    lengths = lengths.subspan(1);
  }
  for (auto& c : v.children) assign_lengths(c, false, lengths);
}

void scale_lengths(Vertex& v, const Rational& f) {
  if (v.length) v.length = *v.length * f;
  for (auto& c : v.children) scale_lengths(c, f);
}

bool binary_rec(const Vertex& v) {
  if (v.is_leaf()) return true;
  int want = v.type == VertexType::TypeIII ? 1 : 2;
  if (v.arity() != want) return false;
  return std::all_of(v.children.begin(), v.children.end(), binary_rec);
}

VertexType merged_type(bool out_painted, const std::vector<Vertex>& children, TreeKind kind) {
  if (kind == TreeKind::Unpainted) return VertexType::Plain;
  bool any_painted = false, any_unpainted = false;
  for (const auto& c : children) (out_edge_painted(c.type) ? any_painted : any_unpainted) = true;
  if (!out_painted) {
    if (any_painted) throw PaintedMergeError("collapse unites a painted edge into a Type I vertex");
    return VertexType::TypeI;
  }
  if (any_painted && any_unpainted)
    throw PaintedMergeError("collapse unites painted and unpainted incoming edges at one vertex");
  return any_painted ? VertexType::TypeII : VertexType::TypeIII;
}

Vertex reduce_vertex(const Vertex& v, TreeKind kind) {
  if (v.is_leaf()) return v;
  Vertex out;
  out.length = v.length;
  for (const auto& c : v.children) {
    Vertex rc = reduce_vertex(c, kind);
    if (!rc.is_leaf() && rc.length && *rc.length == 0) {
      for (auto& g : rc.children) out.children.push_back(std::move(g));
    } else {
      out.children.push_back(std::move(rc));
    }
  }
  out.type = merged_type(out_edge_painted(v.type), out.children, kind);
  return out;
}

void max_length_rec(const Vertex& v, Rational& best) {
  if (v.length && *v.length > best) best = *v.length;
  for (const auto& c : v.children) max_length_rec(c, best);
}

std::vector<PlantedTree> sorted_trees(TreeKind kind, std::vector<Vertex> roots) {
  std::vector<std::pair<std::string, PlantedTree>> keyed;
  keyed.reserve(roots.size());
  for (auto& r : roots) {
    PlantedTree t(kind, std::move(r));
    keyed.emplace_back(t.encode(), std::move(t));
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<PlantedTree> out;
  out.reserve(keyed.size());
  for (auto& [key, t] : keyed) out.push_back(std::move(t));
  return out;
}

// Every ordered sequence of subtrees whose leaf counts form a composition of
// `leaves` into at least `min_parts` parts; `make(k)` lists subtrees with k leaves.
std::vector<std::vector<Vertex>> child_sequences(int leaves, int min_parts,
                                                 const std::function<std::vector<Vertex>(int)>& make) {
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> current;
  std::map<int, std::vector<Vertex>> cache;
  std::function<void(int)> rec = [&](int remaining) {
    if (remaining == 0) {
      if (static_cast<int>(current.size()) >= min_parts) out.push_back(current);
      return;
    }
    // A lone part would already be the whole sequence.
    const int largest = current.empty() && min_parts >= 2 ? remaining - 1 : remaining;
    for (int first = 1; first <= largest; ++first) {
      auto it = cache.find(first);
      if (it == cache.end()) it = cache.emplace(first, make(first)).first;
      for (const auto& sub : it->second) {
        current.push_back(sub);
        rec(remaining - first);
        current.pop_back();
      }
    }
  };
  rec(leaves);
  return out;
}

// Unpainted subtrees (leaf or internal of the given type), any arity >= 2.
std::vector<Vertex> planar_subtrees(int leaves, VertexType type) {
  if (leaves == 1) return {Vertex::leaf()};
  std::vector<Vertex> out;
  for (auto& kids : child_sequences(leaves, 2, [type](int k) { return planar_subtrees(k, type); }))
    out.push_back(Vertex::node(type, std::move(kids)));
  return out;
}

std::vector<Vertex> binary_subtrees(int leaves, VertexType type) {
  if (leaves == 1) return {Vertex::leaf()};
  std::vector<Vertex> out;
  for (int left = 1; left < leaves; ++left)
    for (const auto& l : binary_subtrees(left, type))
      for (const auto& r : binary_subtrees(leaves - left, type)) out.push_back(Vertex::node(type, {l, r}));
  return out;
}

std::vector<Vertex> binary_painted_subtrees(int leaves) {
  std::vector<Vertex> out;
  for (auto& up : binary_subtrees(leaves, VertexType::TypeI)) out.push_back(Vertex::node(VertexType::TypeIII, {up}));
  for (int left = 1; left < leaves; ++left)
    for (const auto& l : binary_painted_subtrees(left))
      for (const auto& r : binary_painted_subtrees(leaves - left))
        out.push_back(Vertex::node(VertexType::TypeII, {l, r}));
  return out;
}

std::vector<Vertex> painted_subtrees(int leaves) {
  std::vector<Vertex> out;
  // Type III vertex over unpainted Type I subtrees.
  for (auto& kids : child_sequences(leaves, 1, [](int k) { return planar_subtrees(k, VertexType::TypeI); }))
    out.push_back(Vertex::node(VertexType::TypeIII, std::move(kids)));
  // Type II vertex over at least two painted subtrees.
  for (auto& kids : child_sequences(leaves, 2, [](int k) { return painted_subtrees(k); }))
    out.push_back(Vertex::node(VertexType::TypeII, std::move(kids)));
  return out;
}

}  // namespace

bool graft_at_leaf(Vertex& host, int k, Vertex guest) {
  if (k < 1) return false;
  int remaining = k;
  return graft_rec(host, remaining, guest);
}

int PlantedTree::internal_edge_count() const { return count_internal_edges(root_, true); }

bool PlantedTree::has_lengths() const { return any_length(root_); }

PlantedTree PlantedTree::shape() const {
  Vertex r = root_;
  strip_lengths(r);
  return PlantedTree(kind_, std::move(r));
}

std::string PlantedTree::encode() const {
  std::string out;
  encode_rec(root_, out);
  return out;
}

PlantedTree PlantedTree::decode(std::string_view text) { return Parser(text).parse(); }

std::optional<Violation> validate(const PlantedTree& tree) {
  const int n = tree.leaf_count();
  if (tree.kind() == TreeKind::Unpainted && n < 2) return Violation{"unpainted tree needs at least 2 leaves", "root"};
  if (tree.kind() == TreeKind::Painted && !out_edge_painted(tree.root().type))
    return Violation{"root edge must be painted", "root"};
  return check_vertex(tree.root(), tree.kind(), true, "root", tree.has_lengths());
}

bool is_binary(const PlantedTree& tree) { return binary_rec(tree.root()); }

MetricTree::MetricTree(PlantedTree tree) : tree_(std::move(tree)) {
  if (auto bad = validate(tree_)) throw DomainError("invalid tree (" + bad->where + "): " + bad->clause);
  if (tree_.internal_edge_count() > 0 && !tree_.has_lengths())
    throw DomainError("metric tree requires a length on every internal edge");
}

MetricTree MetricTree::with_lengths(const PlantedTree& shape, std::span<const Rational> lengths) {
  Vertex root = shape.root();
  strip_lengths(root);
  assign_lengths(root, true, lengths);
  if (!lengths.empty()) throw DomainError("too many edge lengths for shape");
  return MetricTree(PlantedTree(shape.kind(), std::move(root)));
}

std::vector<Rational> MetricTree::lengths() const {
  std::vector<Rational> out;
  collect_lengths(tree_.root(), true, out);
  return out;
}

MetricTree MetricTree::scaled(const Rational& factor) const {
  Vertex root = tree_.root();
  scale_lengths(root, factor);
  return MetricTree(PlantedTree(tree_.kind(), std::move(root)));
}

ReducedTree reduce(const MetricTree& tree) {
  Vertex root = reduce_vertex(tree.root(), tree.kind());
  return ReducedTree(MetricTree(PlantedTree(tree.kind(), std::move(root))));
}

bool equal_as_points(const MetricTree& a, const MetricTree& b) {
  if (a.kind() != b.kind()) throw DomainError("cannot compare painted and unpainted trees");
  if (a.leaf_count() != b.leaf_count()) throw DomainError("cannot compare trees with different leaf counts");
  return reduce(a).encode() == reduce(b).encode();
}

Rational max_internal_length(const MetricTree& tree) {
  Rational best(0);
  for (const auto& c : tree.root().children) max_length_rec(c, best);
  return best;
}

std::vector<PlantedTree> enumerate_binary_unpainted(int leaves) {
  if (leaves < 2) throw DomainError("binary unpainted trees need at least 2 leaves");
  return sorted_trees(TreeKind::Unpainted, binary_subtrees(leaves, VertexType::Plain));
}

std::vector<PlantedTree> enumerate_planar_trees(int leaves) {
  if (leaves < 2) throw DomainError("planar trees need at least 2 leaves");
  return sorted_trees(TreeKind::Unpainted, planar_subtrees(leaves, VertexType::Plain));
}

std::vector<PlantedTree> enumerate_binary_painted_shapes(int leaves) {
  if (leaves < 1) throw DomainError("painted trees need at least 1 leaf");
  return sorted_trees(TreeKind::Painted, binary_painted_subtrees(leaves));
}

std::vector<PlantedTree> enumerate_painted_trees(int leaves) {
  if (leaves < 1) throw DomainError("painted trees need at least 1 leaf");
  return sorted_trees(TreeKind::Painted, painted_subtrees(leaves));
}

std::string to_string(TreeKind kind) { return kind == TreeKind::Painted ? "painted" : "unpainted"; }

nlohmann::json to_json(const PlantedTree& tree) {
  return {{"kind", to_string(tree.kind())}, {"leaves", tree.leaf_count()}, {"encoding", tree.encode()}};
}

PlantedTree tree_from_json(const nlohmann::json& doc) {
  PlantedTree t = PlantedTree::decode(doc.at("encoding").get<std::string>());
  if (doc.at("kind").get<std::string>() != to_string(t.kind())) throw DomainError("tree JSON kind does not match encoding");
  if (doc.at("leaves").get<int>() != t.leaf_count()) throw DomainError("tree JSON leaf count does not match encoding");
  return t;
}

}  // namespace anforms
