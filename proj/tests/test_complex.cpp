#include <gtest/gtest.h>

#include <random>

#include "anforms/cell_label.hpp"
#include "anforms/complex.hpp"

using namespace anforms;

namespace {

// Dense Gaussian elimination over the rationals.
long long dense_rank(std::vector<std::vector<Rational>> m) {
  long long rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < static_cast<long long>(m.size()); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][c] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == static_cast<std::size_t>(rank) || m[r][c] == 0) continue;
      const Rational f = m[r][c] / m[rank][c];
      for (std::size_t j = c; j < cols; ++j) m[r][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

std::vector<std::vector<std::pair<int, BigInt>>> sparse(const std::vector<std::vector<Rational>>& m) {
  std::vector<std::vector<std::pair<int, BigInt>>> out;
  for (const auto& row : m) {
    std::vector<std::pair<int, BigInt>> s;
    for (std::size_t j = 0; j < row.size(); ++j)
      if (row[j] != 0) s.emplace_back(static_cast<int>(j), row[j].get_num());
    out.push_back(std::move(s));
  }
  return out;
}

// Betti numbers from dense boundary matrices.
std::vector<long long> dense_betti(const CellComplex& c) {
  const int dim = c.dimension();
  std::vector<std::vector<int>> by_dim(dim + 1);
  std::vector<int> pos(c.size());
  for (int i = 0; i < c.size(); ++i) {
    pos[i] = static_cast<int>(by_dim[c.cells()[i].dim].size());
    by_dim[c.cells()[i].dim].push_back(i);
  }
  std::vector<long long> rank(dim + 2, 0);
  for (int d = 1; d <= dim; ++d) {
    std::vector<std::vector<Rational>> m(by_dim[d].size(), std::vector<Rational>(by_dim[d - 1].size()));
    for (std::size_t r = 0; r < by_dim[d].size(); ++r)
      for (const auto& inc : c.boundary(by_dim[d][r])) m[r][pos[inc.cell]] = inc.coeff;
    rank[d] = dense_rank(m);
  }
  std::vector<long long> betti;
  for (int d = 0; d <= dim; ++d)
    betti.push_back(static_cast<long long>(by_dim[d].size()) - rank[d] - rank[d + 1]);
  return betti;
}

std::vector<long long> sphere(int d) {
  std::vector<long long> b(d + 1, 0);
  b[0] += 1;
  b[d] += 1;
  return b;
}

}  // namespace

TEST(Complex, SmallFVectors) {
  EXPECT_EQ(f_vector(build_k(2)), (std::vector<int>{1}));
  EXPECT_EQ(f_vector(build_k(3)), (std::vector<int>{2, 1}));
  EXPECT_EQ(f_vector(build_k(4)), (std::vector<int>{5, 5, 1}));
  EXPECT_EQ(f_vector(build_k(5)), (std::vector<int>{14, 21, 9, 1}));
  EXPECT_EQ(f_vector(build_j(1)), (std::vector<int>{1}));
  EXPECT_EQ(f_vector(build_j(2)), (std::vector<int>{2, 1}));
  EXPECT_EQ(f_vector(build_j(3)), (std::vector<int>{6, 6, 1}));
  EXPECT_EQ(f_vector(build_j(4)), (std::vector<int>{21, 32, 13, 1}));
}

TEST(Complex, OneTopCell) {
  for (int n = 2; n <= 7; ++n) {
    const auto f = f_vector(build_k(n));
    EXPECT_EQ(static_cast<int>(f.size()), n - 1);
    EXPECT_EQ(f.back(), 1);
  }
  for (int n = 1; n <= 5; ++n) {
    const auto f = f_vector(build_j(n));
    EXPECT_EQ(static_cast<int>(f.size()), n);
    EXPECT_EQ(f.back(), 1);
  }
}

TEST(Complex, CountsMatchTreeEnumeration) {
  for (int n = 2; n <= 7; ++n) {
    const auto c = build_k(n);
    EXPECT_EQ(c.size(), static_cast<int>(enumerate_planar_trees(n).size())) << n;
    EXPECT_EQ(f_vector(c)[0], static_cast<int>(enumerate_binary_unpainted(n).size())) << n;
    if (n >= 3) {
      int facets = 0;
      for (int t = 2; t <= n - 1; ++t) facets += n - t + 1;
      EXPECT_EQ(f_vector(c)[n - 3], facets) << n;
    }
  }
  for (int n = 1; n <= 5; ++n) {
    const auto c = build_j(n);
    EXPECT_EQ(c.size(), static_cast<int>(enumerate_painted_trees(n).size())) << n;
    EXPECT_EQ(f_vector(c)[0], static_cast<int>(enumerate_binary_painted_shapes(n).size())) << n;
  }
}

TEST(Complex, EulerCharacteristics) {
  for (int n = 2; n <= 7; ++n) EXPECT_EQ(euler_characteristic(build_k(n)), 1) << n;
  for (int n = 1; n <= 5; ++n) EXPECT_EQ(euler_characteristic(build_j(n)), 1) << n;
  for (int n = 3; n <= 7; ++n)
    EXPECT_EQ(euler_characteristic(build(Family::L, n)), 1 + ((n - 3) % 2 == 0 ? 1 : -1)) << n;
  for (int n = 2; n <= 5; ++n)
    EXPECT_EQ(euler_characteristic(build(Family::H, n)), 1 + ((n - 2) % 2 == 0 ? 1 : -1)) << n;
  EXPECT_EQ(euler_characteristic(build(Family::L, 4)), 0);
  EXPECT_EQ(euler_characteristic(build(Family::L, 5)), 2);
}

TEST(Complex, BoundarySquaredVanishes) {
  for (int n = 2; n <= 7; ++n) EXPECT_TRUE(boundary_squared_is_zero(build_k(n))) << n;
  for (int n = 1; n <= 5; ++n) EXPECT_TRUE(boundary_squared_is_zero(build_j(n))) << n;
}

TEST(Complex, BoundaryCellsHaveOneLowerDimension) {
  for (const auto& c : {build_k(6), build_j(4)})
    for (int i = 0; i < c.size(); ++i)
      for (const auto& inc : c.boundary(i)) {
        EXPECT_EQ(c.cells()[inc.cell].dim, c.cells()[i].dim - 1);
        EXPECT_NE(inc.coeff, 0);
      }
}

TEST(Complex, SpheresAndDisks) {
  EXPECT_EQ(homology_ranks(build(Family::L, 4)), (std::vector<long long>{1, 1}));
  EXPECT_EQ(homology_ranks(build(Family::L, 5)), (std::vector<long long>{1, 0, 1}));
  EXPECT_EQ(homology_ranks(build(Family::H, 3)), (std::vector<long long>{1, 1}));
  for (int n = 3; n <= 7; ++n) EXPECT_EQ(homology_ranks(build(Family::L, n)), sphere(n - 3)) << n;
  for (int n = 2; n <= 5; ++n) EXPECT_EQ(homology_ranks(build(Family::H, n)), sphere(n - 2)) << n;
  for (int n = 2; n <= 6; ++n) {
    std::vector<long long> disk(n - 1, 0);
    disk[0] = 1;
    EXPECT_EQ(homology_ranks(build_k(n)), disk) << n;
  }
}

TEST(Complex, HomologyMatchesDenseElimination) {
  for (const auto& c : {build(Family::L, 5), build(Family::L, 6), build(Family::H, 4), build_j(4), build_k(5)})
    EXPECT_EQ(homology_ranks(c), dense_betti(c));
}

TEST(Complex, ReversedGeneratorOrderGivesSameComplex) {
  for (int n = 2; n <= 6; ++n)
    EXPECT_EQ(export_complex(build_k(n)), export_complex(build_k(n, {.reverse_generators = true}))) << n;
  for (int n = 1; n <= 5; ++n)
    EXPECT_EQ(export_complex(build_j(n)), export_complex(build_j(n, {.reverse_generators = true}))) << n;
}

TEST(Complex, ExportImportRoundTrip) {
  const auto k2 = export_complex(build_k(2));
  EXPECT_EQ(k2["family"], "K");
  EXPECT_EQ(k2["n"], 2);
  EXPECT_EQ(k2["cells"].size(), 1u);
  EXPECT_TRUE(k2["boundary"].empty());
  for (const auto& c : {build_k(4), build(Family::L, 5), build_j(3), build(Family::H, 4)}) {
    EXPECT_EQ(import_complex(export_complex(c)), c);
    EXPECT_EQ(import_complex(nlohmann::json::parse(export_complex(c).dump())), c);
  }
  const auto doc = export_complex(build_k(4));
  EXPECT_EQ(doc["cells"][0]["id"], 0);
  EXPECT_EQ(doc["cells"][0]["dim"], 0);
  ASSERT_FALSE(doc["boundary"].empty());
  EXPECT_TRUE(doc["boundary"][0].contains("of"));
}

TEST(Complex, ImportRejectsBadDocuments) {
  EXPECT_THROW(import_complex(nlohmann::json::parse("{}")), DomainError);
  auto doc = export_complex(build_k(3));
  doc["boundary"][0]["cell"] = 99;
  EXPECT_THROW(import_complex(doc), DomainError);
  doc = export_complex(build_k(3));
  doc["cells"][0]["dim"] = 1;
  EXPECT_THROW(import_complex(doc), DomainError);
  doc = export_complex(build_k(3));
  doc["family"] = "Q";
  EXPECT_THROW(import_complex(doc), DomainError);
}

TEST(Complex, RangeErrors) {
  EXPECT_THROW(build_k(1), DomainError);
  EXPECT_THROW(build_k(9), DomainError);
  EXPECT_THROW(build_j(0), DomainError);
  EXPECT_THROW(build_j(7), DomainError);
  EXPECT_THROW(build(Family::L, 2), DomainError);
  EXPECT_THROW(build(Family::H, 1), DomainError);
  EXPECT_THROW(parse_family("X"), DomainError);
  EXPECT_EQ(parse_family("H"), Family::H);
}

TEST(CellLabels, ParseRoundTripAndCanonicalForms) {
  for (const auto& c : {build_k(5), build_j(4)})
    for (const auto& cell : c.cells()) {
      const CellLabel label = CellLabel::parse(cell.label);
      EXPECT_EQ(label.str(), cell.label);
      EXPECT_EQ(label.canonical(), label) << cell.label;
      EXPECT_EQ(cell_dimension(label.evaluate().root()), cell.dim) << cell.label;
    }
}

TEST(CellLabels, RelatedTermsShareACanonicalForm) {
  const CellLabel k2 = CellLabel::top_k(2);
  const CellLabel a = CellLabel::partial(1, CellLabel::partial(1, k2, k2), k2);
  const CellLabel b = CellLabel::partial(1, k2, CellLabel::partial(1, k2, k2));
  EXPECT_NE(a, b);
  EXPECT_EQ(a.canonical(), b.canonical());
  const CellLabel c = CellLabel::partial(3, CellLabel::partial(1, k2, k2), k2);
  const CellLabel d = CellLabel::partial(1, CellLabel::partial(2, k2, k2), k2);
  EXPECT_EQ(c.canonical(), d.canonical());
  const CellLabel j1 = CellLabel::top_j(1);
  const CellLabel e = CellLabel::right(1, j1, k2);
  const CellLabel f = CellLabel::left(k2, {j1, j1});
  EXPECT_NE(e.canonical(), f.canonical());
  EXPECT_THROW(CellLabel::partial(3, k2, k2).evaluate(), DomainError);
  EXPECT_THROW(CellLabel::parse("d1(2,2)[K2"), DomainError);
}

TEST(Homology, SparseRankMatchesDenseRank) {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> value(-3, 3);
  std::uniform_int_distribution<int> shape(1, 8);
  for (int trial = 0; trial < 300; ++trial) {
    const int rows = shape(rng), cols = shape(rng);
    std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols));
    for (auto& row : m)
      for (auto& x : row) x = (rng() % 3 == 0) ? value(rng) : 0;
    if (trial % 5 == 0 && rows >= 2) m[1] = m[0];
    EXPECT_EQ(rational_rank(sparse(m)), dense_rank(m));
  }
  EXPECT_EQ(rational_rank({}), 0);
  EXPECT_EQ(rational_rank({{{0, BigInt(0)}}}), 0);
}
