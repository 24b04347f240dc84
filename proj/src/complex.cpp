#include "anforms/complex.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>

#include "anforms/cell_label.hpp"
#include "anforms/tree.hpp"

namespace anforms {

std::string to_string(Family family) {
  switch (family) {
    case Family::K: return "K";
    case Family::L: return "L";
    case Family::J: return "J";
    case Family::H: return "H";
  }
  return "?";
}

Family parse_family(std::string_view text) {
  if (text == "K") return Family::K;
  if (text == "L") return Family::L;
  if (text == "J") return Family::J;
  if (text == "H") return Family::H;
  throw DomainError("unknown complex family '" + std::string(text) + "' (expected K, L, J or H)");
}

CellComplex::CellComplex(Family family, int n, std::vector<Cell> cells, std::vector<std::vector<Incidence>> boundary)
    : family_(family), n_(n), cells_(std::move(cells)), boundary_(std::move(boundary)) {
  if (boundary_.size() != cells_.size()) throw DomainError("boundary map must list every cell");
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    for (const auto& inc : boundary_[i]) {
      if (inc.cell < 0 || inc.cell >= size()) throw DomainError("boundary refers to a missing cell");
      if (cells_[inc.cell].dim != cells_[i].dim - 1)
        throw DomainError("boundary of " + cells_[i].label + " contains " + cells_[inc.cell].label +
                          " of the wrong dimension");
    }
  }
}

int CellComplex::dimension() const {
  int d = -1;
  for (const auto& c : cells_) d = std::max(d, c.dim);
  return d;
}

namespace {

// A vertex of a cell tree tagged with its position in the product order.
struct TNode {
  VertexType type = VertexType::Leaf;
  int tag = -1;
  std::vector<TNode> kids;
};

int vertex_dim(VertexType type, std::size_t arity) {
  return static_cast<int>(arity) - (type == VertexType::TypeIII ? 1 : 2);
}

TNode tag_tree(const Vertex& v, int& next) {
  TNode t;
  t.type = v.type;
  if (v.is_leaf()) return t;
  t.tag = next++;
  for (const auto& c : v.children) t.kids.push_back(tag_tree(c, next));
  return t;
}

Vertex untag(const TNode& t) {
  if (t.type == VertexType::Leaf) return Vertex::leaf();
  Vertex v = Vertex::node(t.type, {});
  for (const auto& k : t.kids) v.children.push_back(untag(k));
  return v;
}

void preorder(const TNode& t, std::vector<const TNode*>& out) {
  if (t.type == VertexType::Leaf) return;
  out.push_back(&t);
  for (const auto& k : t.kids) preorder(k, out);
}

void shift_tags(TNode& t, int pivot, int shift) {
  if (t.tag > pivot) t.tag += shift;
  for (auto& k : t.kids) shift_tags(k, pivot, shift);
}

TNode expand(const Vertex& facet, std::vector<TNode>& kids, std::size_t& leaf, int& next_tag) {
  if (facet.is_leaf()) return std::move(kids[leaf++]);
  TNode t;
  t.type = facet.type;
  t.tag = next_tag++;
  for (const auto& c : facet.children) t.kids.push_back(expand(c, kids, leaf, next_tag));
  return t;
}

bool substitute(TNode& t, int target, const Vertex& facet) {
  if (t.tag == target) {
    std::vector<TNode> kids = std::move(t.kids);
    std::size_t leaf = 0;
    int next_tag = target;
    t = expand(facet, kids, leaf, next_tag);
    return true;
  }
  for (auto& k : t.kids)
    if (substitute(k, target, facet)) return true;
  return false;
}

Vertex corolla(VertexType type, int n) { return Vertex::node(type, std::vector<Vertex>(n, Vertex::leaf())); }

void recolor(Vertex& v, VertexType type) {
  if (v.is_leaf()) return;
  v.type = type;
  for (auto& c : v.children) recolor(c, type);
}

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

using Chain = std::map<std::string, int>;  // cell-tree encoding -> coefficient

struct Facet {
  Vertex shape;  // two-level tree replacing a vertex; leaves are its inputs
  int sign = 0;
};

class Builder {
 public:
  explicit Builder(BuildOptions options) : options_(options) {}

  void ensure_k(int n) {
    for (int a = 2; a <= n; ++a)
      if (!k_cells_.count(a)) build_k_level(a);
  }

  void ensure_j(int n) {
    ensure_k(std::max(2, n));
    for (int a = 1; a <= n; ++a)
      if (!j_cells_.count(a)) build_j_level(a);
  }

  CellComplex assemble(Family family, int n) {
    const bool k_family = family == Family::K || family == Family::L;
    const auto& trees = k_family ? k_cells_.at(n) : j_cells_.at(n);
    struct Entry {
      int dim;
      std::string label;
      const PlantedTree* tree;
    };
    std::vector<Entry> entries;
    for (const auto& t : trees) entries.push_back({cell_dimension(t.root()), CellLabel::canonical(t).str(), &t});
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return std::tie(a.dim, a.label) < std::tie(b.dim, b.label); });
    if (family == Family::L || family == Family::H) entries.pop_back();

    std::map<std::string, int> id_of;
    for (std::size_t i = 0; i < entries.size(); ++i) id_of[entries[i].tree->encode()] = static_cast<int>(i);

    std::vector<Cell> cells;
    std::vector<std::vector<Incidence>> boundary;
    for (const auto& e : entries) {
      cells.push_back({e.dim, e.label});
      std::vector<Incidence> incs;
      for (const auto& [key, coeff] : boundary_chain(*e.tree)) {
        auto it = id_of.find(key);
        if (it == id_of.end()) throw std::logic_error("face " + key + " of " + e.label + " is not a cell");
        incs.push_back({it->second, coeff});
      }
      std::sort(incs.begin(), incs.end(), [](const Incidence& a, const Incidence& b) { return a.cell < b.cell; });
      boundary.push_back(std::move(incs));
    }
    return CellComplex(family, n, std::move(cells), std::move(boundary));
  }

 private:
  // Boundary of a product cell: Leibniz rule over the vertices in preorder,
  // with each vertex replaced by the facets of its top cell. The Koszul sign
  // reorders the factors from substitution order into the new preorder.
  Chain boundary_chain(const PlantedTree& cell) {
    int count = 0;
    const TNode root = tag_tree(cell.root(), count);
    std::vector<const TNode*> verts;
    preorder(root, verts);
    std::vector<int> dims(count);
    for (const TNode* v : verts) dims[v->tag] = vertex_dim(v->type, v->kids.size());

    Chain chain;
    int prefix = 0;
    for (int i = 0; i < count; ++i) {
      const TNode* v = verts[i];
      if (dims[i] > 0) {
        const int leibniz = prefix % 2 ? -1 : 1;
        for (const Facet& f : facets(v->type, static_cast<int>(v->kids.size()))) {
          std::vector<int> facet_dims;
          {
            int c = 0;
            TNode ft = tag_tree(f.shape, c);
            std::vector<const TNode*> fv;
            preorder(ft, fv);
            for (const TNode* x : fv) facet_dims.push_back(vertex_dim(x->type, x->kids.size()));
          }
          const int q = static_cast<int>(facet_dims.size());
          TNode next = root;
          shift_tags(next, i, q - 1);
          substitute(next, i, f.shape);

          std::vector<int> new_dims(count + q - 1);
          for (int j = 0; j < count; ++j) {
            if (j < i) new_dims[j] = dims[j];
            if (j > i) new_dims[j + q - 1] = dims[j];
          }
          for (int j = 0; j < q; ++j) new_dims[i + j] = facet_dims[j];

          std::vector<const TNode*> order;
          preorder(next, order);
          int koszul = 0;
          for (std::size_t a = 0; a < order.size(); ++a)
            for (std::size_t b = a + 1; b < order.size(); ++b)
              if (order[a]->tag > order[b]->tag) koszul += new_dims[order[a]->tag] * new_dims[order[b]->tag];
          const int coeff = leibniz * f.sign * (koszul % 2 ? -1 : 1);
          chain[PlantedTree(cell.kind(), untag(next)).encode()] += coeff;
        }
      }
      prefix += dims[i];
    }
    for (auto it = chain.begin(); it != chain.end();) it = it->second == 0 ? chain.erase(it) : std::next(it);
    return chain;
  }

  // Facet shapes of the top cell of K_a (types Plain/I/II) or J_a (Type III).
  std::vector<Vertex> facet_shapes(VertexType type, int a) {
    std::vector<Vertex> out;
    if (type != VertexType::TypeIII) {
      for (int r = 2; r < a; ++r) {
        const int t = a - r + 1;
        for (int k = 1; k <= r; ++k) {
          Vertex v = corolla(type, r);
          v.children[k - 1] = corolla(type, t);
          out.push_back(std::move(v));
        }
      }
      return out;
    }
    for (int r = 1; r < a; ++r) {
      const int t = a - r + 1;
      for (int k = 1; k <= r; ++k) {
        Vertex v = corolla(VertexType::TypeIII, r);
        v.children[k - 1] = corolla(VertexType::TypeI, t);
        out.push_back(std::move(v));
      }
    }
    for (int t = 2; t <= a; ++t) {
      std::vector<int> cur;
      compositions(a, t, cur, [&](const std::vector<int>& rs) {
        Vertex v = Vertex::node(VertexType::TypeII, {});
        for (int r : rs) v.children.push_back(corolla(VertexType::TypeIII, r));
        out.push_back(std::move(v));
      });
    }
    return out;
  }

  const std::vector<Facet>& facets(VertexType type, int a) {
    auto key = std::make_pair(type, a);
    if (auto it = facet_cache_.find(key); it != facet_cache_.end()) return it->second;
    std::vector<Facet> out;
    const bool j_vertex = type == VertexType::TypeIII;
    const auto& signs = j_vertex ? j_signs_.at(a) : k_signs_.at(a);
    for (auto& shape : facet_shapes(type, a)) {
      Vertex plain = shape;
      if (!j_vertex) recolor(plain, VertexType::Plain);
      const TreeKind kind = j_vertex ? TreeKind::Painted : TreeKind::Unpainted;
      const int sign = signs.at(PlantedTree(kind, plain).encode());
      out.push_back({std::move(shape), sign});
    }
    return facet_cache_.emplace(key, std::move(out)).first->second;
  }

  // Orients the facets of a top cell so that their signed sum is a cycle:
  // every ridge lies in exactly two facets and must cancel. The first facet
  // in label order gets +1.
  std::map<std::string, int> orient_top(const std::vector<PlantedTree>& facet_trees, int top_dim) {
    struct Item {
      std::string label;
      std::string key;
      Chain boundary;
    };
    std::vector<Item> items;
    for (const auto& f : facet_trees) {
      Chain bd = top_dim == 1 ? Chain{{"", 1}} : boundary_chain(f);
      items.push_back({CellLabel::canonical(f).str(), f.encode(), std::move(bd)});
    }
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.label < b.label; });

    std::map<std::string, std::vector<std::pair<std::size_t, int>>> ridges;
    for (std::size_t i = 0; i < items.size(); ++i)
      for (const auto& [ridge, c] : items[i].boundary) ridges[ridge].push_back({i, c});
    std::vector<std::vector<const std::vector<std::pair<std::size_t, int>>*>> adj(items.size());
    for (const auto& [ridge, uses] : ridges) {
      if (uses.size() != 2) throw std::logic_error("ridge " + ridge + " does not lie in exactly two facets");
      for (const auto& u : uses) adj[u.first].push_back(&uses);
    }

    std::vector<int> sign(items.size(), 0);
    std::queue<std::size_t> todo;
    sign[0] = 1;
    todo.push(0);
    while (!todo.empty()) {
      const std::size_t f = todo.front();
      todo.pop();
      for (const auto* uses : adj[f]) {
        const auto& [a, ca] = (*uses)[0];
        const auto& [b, cb] = (*uses)[1];
        const std::size_t other = a == f ? b : a;
        const int c_self = a == f ? ca : cb;
        const int c_other = a == f ? cb : ca;
        if (std::abs(c_self) != 1 || std::abs(c_other) != 1) throw std::logic_error("non-unit ridge incidence");
        const int want = -sign[f] * c_self * c_other;
        if (sign[other] == 0) {
          sign[other] = want;
          todo.push(other);
        } else if (sign[other] != want) {
          throw std::logic_error("facets of a top cell are not coherently orientable");
        }
      }
    }
    std::map<std::string, int> out;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (sign[i] == 0) throw std::logic_error("boundary of a top cell is disconnected");
      out[items[i].key] = sign[i];
    }
    return out;
  }

  template <typename T>
  void in_order(std::vector<T>& v) {
    if (options_.reverse_generators) std::reverse(v.begin(), v.end());
  }

  std::vector<int> range(int lo, int hi) {
    std::vector<int> v;
    for (int i = lo; i <= hi; ++i) v.push_back(i);
    in_order(v);
    return v;
  }

  std::vector<PlantedTree> sorted_unique(std::map<std::string, PlantedTree>& found) {
    std::vector<PlantedTree> out;
    for (auto& [key, t] : found) out.push_back(std::move(t));
    return out;
  }

  void build_k_level(int n) {
    std::map<std::string, PlantedTree> found;
    for (int t : range(2, n - 1)) {
      const int r = n - t + 1;
      for (int k : range(1, r)) {
        auto outer = k_cells_.at(r);
        auto inner = k_cells_.at(t);
        in_order(outer);
        in_order(inner);
        for (const auto& a : outer)
          for (const auto& b : inner) {
            Vertex host = a.root();
            graft_at_leaf(host, k, b.root());
            PlantedTree cell(TreeKind::Unpainted, std::move(host));
            found.try_emplace(cell.encode(), cell);
          }
      }
    }
    std::vector<PlantedTree> facet_trees;
    for (auto& shape : facet_shapes(VertexType::Plain, n)) facet_trees.emplace_back(TreeKind::Unpainted, std::move(shape));
    if (n >= 3) k_signs_[n] = orient_top(facet_trees, n - 2);
    else k_signs_[n] = {};

    PlantedTree top(TreeKind::Unpainted, corolla(VertexType::Plain, n));
    found.try_emplace(top.encode(), top);
    k_cells_[n] = sorted_unique(found);
  }

  void build_j_level(int n) {
    std::map<std::string, PlantedTree> found;
    // δ_k(r,t): J_r x K_t
    for (int r : range(1, n - 1)) {
      const int t = n - r + 1;
      for (int k : range(1, r)) {
        auto outer = j_cells_.at(r);
        auto inner = k_cells_.at(t);
        in_order(outer);
        in_order(inner);
        for (const auto& a : outer)
          for (const auto& b : inner) {
            Vertex host = a.root();
            Vertex guest = b.root();
            recolor(guest, VertexType::TypeI);
            graft_at_leaf(host, k, std::move(guest));
            PlantedTree cell(TreeKind::Painted, std::move(host));
            found.try_emplace(cell.encode(), cell);
          }
      }
    }
    // δ(t; r_1..r_t): K_t x J_r1 x .. x J_rt
    for (int t : range(2, n)) {
      std::vector<std::vector<int>> splits;
      std::vector<int> cur;
      compositions(n, t, cur, [&](const std::vector<int>& rs) { splits.push_back(rs); });
      in_order(splits);
      for (const auto& rs : splits) {
        auto outer = k_cells_.at(t);
        in_order(outer);
        for (const auto& a : outer) {
          Vertex base = a.root();
          recolor(base, VertexType::TypeII);
          std::function<void(std::size_t, Vertex&)> fill = [&](std::size_t slot, Vertex& host) {
            if (slot == 0) {
              PlantedTree cell(TreeKind::Painted, host);
              found.try_emplace(cell.encode(), cell);
              return;
            }
            auto pieces = j_cells_.at(rs[slot - 1]);
            in_order(pieces);
            for (const auto& p : pieces) {
              Vertex next = host;
              graft_at_leaf(next, static_cast<int>(slot), p.root());
              fill(slot - 1, next);
            }
          };
          fill(rs.size(), base);
        }
      }
    }
    std::vector<PlantedTree> facet_trees;
    for (auto& shape : facet_shapes(VertexType::TypeIII, n)) facet_trees.emplace_back(TreeKind::Painted, std::move(shape));
    if (n >= 2) j_signs_[n] = orient_top(facet_trees, n - 1);
    else j_signs_[n] = {};

    PlantedTree top(TreeKind::Painted, corolla(VertexType::TypeIII, n));
    found.try_emplace(top.encode(), top);
    j_cells_[n] = sorted_unique(found);
  }

  BuildOptions options_;
  std::map<int, std::vector<PlantedTree>> k_cells_, j_cells_;
  std::map<int, std::map<std::string, int>> k_signs_, j_signs_;
  std::map<std::pair<VertexType, int>, std::vector<Facet>> facet_cache_;
};

}  // namespace

CellComplex build_k(int n, BuildOptions options) {
  if (n < 2 || n > kMaxAssociahedron)
    throw DomainError("K_n is built for 2 <= n <= " + std::to_string(kMaxAssociahedron));
  Builder b(options);
  b.ensure_k(n);
  return b.assemble(Family::K, n);
}

CellComplex build_j(int n, BuildOptions options) {
  if (n < 1 || n > kMaxMultiplihedron)
    throw DomainError("J_n is built for 1 <= n <= " + std::to_string(kMaxMultiplihedron));
  Builder b(options);
  b.ensure_j(n);
  return b.assemble(Family::J, n);
}

CellComplex build(Family family, int n, BuildOptions options) {
  switch (family) {
    case Family::K: return build_k(n, options);
    case Family::J: return build_j(n, options);
    case Family::L:
      if (n < 3) throw DomainError("L_n is built for 3 <= n <= " + std::to_string(kMaxAssociahedron));
      return boundary_subcomplex(build_k(n, options));
    case Family::H:
      if (n < 2) throw DomainError("H_n is built for 2 <= n <= " + std::to_string(kMaxMultiplihedron));
      return boundary_subcomplex(build_j(n, options));
  }
  throw DomainError("unknown family");
}

CellComplex boundary_subcomplex(const CellComplex& c) {
  if (c.family() != Family::K && c.family() != Family::J) throw DomainError("only K_n and J_n have a boundary subcomplex");
  std::vector<Cell> cells(c.cells().begin(), c.cells().end() - 1);
  std::vector<std::vector<Incidence>> boundary;
  for (int i = 0; i + 1 < c.size(); ++i) boundary.push_back(c.boundary(i));
  return CellComplex(c.family() == Family::K ? Family::L : Family::H, c.n(), std::move(cells), std::move(boundary));
}

std::vector<int> f_vector(const CellComplex& c) {
  std::vector<int> f(c.dimension() + 1, 0);
  for (const auto& cell : c.cells()) ++f[cell.dim];
  return f;
}

long long euler_characteristic(const CellComplex& c) {
  long long chi = 0;
  for (const auto& cell : c.cells()) chi += cell.dim % 2 ? -1 : 1;
  return chi;
}

bool boundary_squared_is_zero(const CellComplex& c) {
  for (int i = 0; i < c.size(); ++i) {
    std::map<int, long long> acc;
    for (const auto& face : c.boundary(i))
      for (const auto& ridge : c.boundary(face.cell)) acc[ridge.cell] += static_cast<long long>(face.coeff) * ridge.coeff;
    for (const auto& [cell, v] : acc)
      if (v != 0) return false;
  }
  return true;
}

nlohmann::json export_complex(const CellComplex& c) {
  nlohmann::json cells = nlohmann::json::array();
  nlohmann::json boundary = nlohmann::json::array();
  for (int i = 0; i < c.size(); ++i) {
    cells.push_back({{"id", i}, {"dim", c.cells()[i].dim}, {"label", c.cells()[i].label}});
    for (const auto& inc : c.boundary(i)) boundary.push_back({{"of", i}, {"cell", inc.cell}, {"coeff", inc.coeff}});
  }
  return {{"family", to_string(c.family())}, {"n", c.n()}, {"cells", cells}, {"boundary", boundary}};
}

CellComplex import_complex(const nlohmann::json& doc) {
  try {
    const Family family = parse_family(doc.at("family").get<std::string>());
    const int n = doc.at("n").get<int>();
    const auto& cells_doc = doc.at("cells");
    std::vector<Cell> cells(cells_doc.size());
    for (const auto& cd : cells_doc) {
      const int id = cd.at("id").get<int>();
      if (id < 0 || id >= static_cast<int>(cells.size())) throw DomainError("cell id out of range");
      cells[id] = {cd.at("dim").get<int>(), cd.at("label").get<std::string>()};
    }
    std::vector<std::vector<Incidence>> boundary(cells.size());
    for (const auto& bd : doc.at("boundary")) {
      const int of = bd.at("of").get<int>();
      if (of < 0 || of >= static_cast<int>(cells.size())) throw DomainError("boundary entry for a missing cell");
      boundary[of].push_back({bd.at("cell").get<int>(), bd.at("coeff").get<int>()});
    }
    for (auto& b : boundary)
      std::sort(b.begin(), b.end(), [](const Incidence& x, const Incidence& y) { return x.cell < y.cell; });
    return CellComplex(family, n, std::move(cells), std::move(boundary));
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed complex JSON: ") + e.what());
  }
}

}  // namespace anforms
