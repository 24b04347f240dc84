#include "anforms/cell_label.hpp"

#include <cctype>

namespace anforms {

namespace {

void recolor(Vertex& v, VertexType type) {
  if (v.is_leaf()) return;
  v.type = type;
  for (auto& c : v.children) recolor(c, type);
}

Vertex corolla(VertexType type, int n) { return Vertex::node(type, std::vector<Vertex>(n, Vertex::leaf())); }

class LabelParser {
 public:
  explicit LabelParser(std::string_view text) : text_(text) {}

  CellLabel parse() {
    CellLabel l = term();
    if (pos_ != text_.size()) fail("trailing characters");
    return l;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw DomainError("cell label syntax error at offset " + std::to_string(pos_) + ": " + what);
  }

  void expect(char c) {
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  int number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_ || pos_ - start > 6) fail("expected a number");
    return std::stoi(std::string(text_.substr(start, pos_ - start)));
  }

  CellLabel term() {
    if (pos_ >= text_.size()) fail("unexpected end");
    char c = text_[pos_++];
    switch (c) {
      case 'K': return CellLabel::top_k(number());
      case 'J': return CellLabel::top_j(number());
      case 'd':
      case 'r': {
        int k = number();
        expect('(');
        std::vector<int> declared{number()};
        expect(',');
        declared.push_back(number());
        expect(')');
        expect('[');
        CellLabel a = term();
        expect(',');
        CellLabel b = term();
        expect(']');
        CellLabel l = c == 'd' ? CellLabel::partial(k, std::move(a), std::move(b)) : CellLabel::right(k, std::move(a), std::move(b));
        return check_arities(std::move(l), declared);
      }
      case 'l': {
        expect('(');
        std::vector<int> declared{number()};
        expect(';');
        declared.push_back(number());
        while (pos_ < text_.size() && text_[pos_] == ',') {
          ++pos_;
          declared.push_back(number());
        }
        expect(')');
        expect('[');
        CellLabel a = term();
        expect(';');
        std::vector<CellLabel> bs{term()};
        while (pos_ < text_.size() && text_[pos_] == ',') {
          ++pos_;
          bs.push_back(term());
        }
        expect(']');
        return check_arities(CellLabel::left(std::move(a), std::move(bs)), declared);
      }
      default:
        --pos_;
        fail("expected K, J, d, r or l");
    }
  }

  CellLabel check_arities(CellLabel l, const std::vector<int>& declared) const {
    if (l.arities() != declared) fail("declared arities do not match the operands");
    return l;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

CellLabel canonical_k(const Vertex& v) {
  std::size_t first = 0;
  while (first < v.children.size() && v.children[first].is_leaf()) ++first;
  if (first == v.children.size()) return CellLabel::top_k(v.arity());
  Vertex rest = v;
  Vertex sub = std::move(rest.children[first]);
  rest.children[first] = Vertex::leaf();
  return CellLabel::partial(static_cast<int>(first) + 1, canonical_k(rest), canonical_k(sub));
}

CellLabel canonical_j(const Vertex& v);

// Splits the Type II region at v into its unpainted image and the painted
// pieces hanging off it.
Vertex crust_of(const Vertex& v, std::vector<const Vertex*>& pieces) {
  Vertex crust = Vertex::node(VertexType::Plain, {});
  for (const auto& c : v.children) {
    if (c.type == VertexType::TypeII) {
      crust.children.push_back(crust_of(c, pieces));
    } else {
      pieces.push_back(&c);
      crust.children.push_back(Vertex::leaf());
    }
  }
  return crust;
}

CellLabel canonical_j(const Vertex& v) {
  if (v.type == VertexType::TypeII) {
    std::vector<const Vertex*> pieces;
    Vertex crust = crust_of(v, pieces);
    std::vector<CellLabel> bs;
    for (const Vertex* p : pieces) bs.push_back(canonical_j(*p));
    return CellLabel::left(canonical_k(crust), std::move(bs));
  }
  if (v.type != VertexType::TypeIII) throw DomainError("J-family cell tree must have a Type II or III root");
  std::size_t first = 0;
  while (first < v.children.size() && v.children[first].is_leaf()) ++first;
  if (first == v.children.size()) return CellLabel::top_j(v.arity());
  Vertex rest = v;
  Vertex sub = std::move(rest.children[first]);
  rest.children[first] = Vertex::leaf();
  recolor(sub, VertexType::Plain);
  return CellLabel::right(static_cast<int>(first) + 1, canonical_j(rest), canonical_k(sub));
}

}  // namespace

CellLabel CellLabel::top_k(int n) {
  if (n < 2) throw DomainError("K_n needs n >= 2");
  CellLabel l;
  l.op_ = Op::TopK;
  l.index_ = n;
  return l;
}

CellLabel CellLabel::top_j(int n) {
  if (n < 1) throw DomainError("J_n needs n >= 1");
  CellLabel l;
  l.op_ = Op::TopJ;
  l.index_ = n;
  return l;
}

CellLabel CellLabel::partial(int k, CellLabel a, CellLabel b) {
  if (!a.is_k_term() || !b.is_k_term()) throw DomainError("d_k grafts K-terms onto K-terms");
  CellLabel l;
  l.op_ = Op::Partial;
  l.index_ = k;
  l.arities_ = {a.leaf_count(), b.leaf_count()};
  if (k < 1 || k > l.arities_[0]) throw DomainError("graft index out of range in cell label");
  l.args_ = {std::move(a), std::move(b)};
  return l;
}

CellLabel CellLabel::right(int k, CellLabel a, CellLabel b) {
  if (a.is_k_term() || !b.is_k_term()) throw DomainError("delta_k grafts a K-term onto a J-term");
  CellLabel l;
  l.op_ = Op::Right;
  l.index_ = k;
  l.arities_ = {a.leaf_count(), b.leaf_count()};
  if (k < 1 || k > l.arities_[0]) throw DomainError("graft index out of range in cell label");
  l.args_ = {std::move(a), std::move(b)};
  return l;
}

CellLabel CellLabel::left(CellLabel a, std::vector<CellLabel> bs) {
  if (!a.is_k_term()) throw DomainError("delta grafts J-terms onto a K-term");
  if (static_cast<int>(bs.size()) != a.leaf_count()) throw DomainError("delta needs one J-term per leaf");
  CellLabel l;
  l.op_ = Op::Left;
  l.arities_ = {a.leaf_count()};
  l.args_ = {std::move(a)};
  for (auto& b : bs) {
    if (b.is_k_term()) throw DomainError("delta grafts J-terms onto a K-term");
    l.arities_.push_back(b.leaf_count());
    l.args_.push_back(std::move(b));
  }
  return l;
}

CellLabel CellLabel::parse(std::string_view text) { return LabelParser(text).parse(); }

CellLabel CellLabel::canonical(const PlantedTree& cell_tree) {
  if (cell_tree.kind() == TreeKind::Unpainted) return canonical_k(cell_tree.root());
  return canonical_j(cell_tree.root());
}

int CellLabel::leaf_count() const {
  switch (op_) {
    case Op::TopK:
    case Op::TopJ: return index_;
    case Op::Partial:
    case Op::Right: return arities_[0] + arities_[1] - 1;
    case Op::Left: {
      int n = 0;
      for (std::size_t i = 1; i < arities_.size(); ++i) n += arities_[i];
      return n;
    }
  }
  return 0;
}

std::string CellLabel::str() const {
  auto pair = [&] { return "(" + std::to_string(arities_[0]) + "," + std::to_string(arities_[1]) + ")"; };
  switch (op_) {
    case Op::TopK: return "K" + std::to_string(index_);
    case Op::TopJ: return "J" + std::to_string(index_);
    case Op::Partial: return "d" + std::to_string(index_) + pair() + "[" + args_[0].str() + "," + args_[1].str() + "]";
    case Op::Right: return "r" + std::to_string(index_) + pair() + "[" + args_[0].str() + "," + args_[1].str() + "]";
    case Op::Left: {
      std::string s = "l(" + std::to_string(arities_[0]) + ";";
      for (std::size_t i = 1; i < arities_.size(); ++i) s += (i > 1 ? "," : "") + std::to_string(arities_[i]);
      s += ")[" + args_[0].str() + ";";
      for (std::size_t i = 1; i < args_.size(); ++i) s += (i > 1 ? "," : "") + args_[i].str();
      return s + "]";
    }
  }
  return {};
}

PlantedTree CellLabel::evaluate() const {
  switch (op_) {
    case Op::TopK: return PlantedTree(TreeKind::Unpainted, corolla(VertexType::Plain, index_));
    case Op::TopJ: return PlantedTree(TreeKind::Painted, corolla(VertexType::TypeIII, index_));
    case Op::Partial: {
      Vertex host = args_[0].evaluate().root();
      graft_at_leaf(host, index_, args_[1].evaluate().root());
      return PlantedTree(TreeKind::Unpainted, std::move(host));
    }
    case Op::Right: {
      Vertex host = args_[0].evaluate().root();
      Vertex guest = args_[1].evaluate().root();
      recolor(guest, VertexType::TypeI);
      graft_at_leaf(host, index_, std::move(guest));
      return PlantedTree(TreeKind::Painted, std::move(host));
    }
    case Op::Left: {
      Vertex host = args_[0].evaluate().root();
      recolor(host, VertexType::TypeII);
      for (int i = static_cast<int>(args_.size()) - 1; i >= 1; --i) graft_at_leaf(host, i, args_[i].evaluate().root());
      return PlantedTree(TreeKind::Painted, std::move(host));
    }
  }
  throw DomainError("unknown cell label operation");
}

int cell_dimension(const Vertex& v) {
  if (v.is_leaf()) return 0;
  int d = v.arity() - (v.type == VertexType::TypeIII ? 1 : 2);
  for (const auto& c : v.children) d += cell_dimension(c);
  return d;
}

}  // namespace anforms
