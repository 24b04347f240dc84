#include <algorithm>

#include "anforms/complex.hpp"

namespace anforms {

namespace {

using SparseRow = std::vector<std::pair<int, BigInt>>;

void normalize(SparseRow& row) {
  BigInt g = 0;
  for (const auto& [col, v] : row) g = gcd(g, v);
  if (g > 1)
    for (auto& [col, v] : row) v /= g;
}

// a*x - b*y over sparse rows sorted by column, dropping zeros.
SparseRow combine(const BigInt& a, const SparseRow& x, const BigInt& b, const SparseRow& y) {
  SparseRow out;
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.emplace_back(x[i].first, a * x[i].second);
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.emplace_back(y[j].first, -b * y[j].second);
      ++j;
    } else {
      BigInt v = a * x[i].second - b * y[j].second;
      if (v != 0) out.emplace_back(x[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

long long rational_rank(std::vector<SparseRow> rows) {
  for (auto& r : rows) {
    std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseRow merged;
    for (auto& e : r) {
      if (!merged.empty() && merged.back().first == e.first) merged.back().second += e.second;
      else merged.push_back(std::move(e));
    }
    std::erase_if(merged, [](const auto& e) { return e.second == 0; });
    r = std::move(merged);
  }
  std::erase_if(rows, [](const SparseRow& r) { return r.empty(); });

  long long rank = 0;
  while (!rows.empty()) {
    // Pivot on the smallest leading column, preferring short rows.
    std::size_t p = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const int ci = rows[i].front().first, cp = rows[p].front().first;
      if (ci < cp || (ci == cp && rows[i].size() < rows[p].size())) p = i;
    }
    std::swap(rows[p], rows.back());
    SparseRow pivot = std::move(rows.back());
    rows.pop_back();
    ++rank;
    const int col = pivot.front().first;
    for (auto& r : rows) {
      if (r.front().first != col) continue;
      BigInt g = gcd(pivot.front().second, r.front().second);
      BigInt a = pivot.front().second / g, b = r.front().second / g;
      r = combine(a, r, b, pivot);
      normalize(r);
    }
    std::erase_if(rows, [](const SparseRow& r) { return r.empty(); });
  }
  return rank;
}

std::vector<long long> homology_ranks(const CellComplex& c) {
  const int top = c.dimension();
  if (top < 0) return {};
  std::vector<long long> count(top + 2, 0), rank(top + 2, 0);
  std::vector<std::vector<SparseRow>> matrices(top + 1);
  for (int i = 0; i < c.size(); ++i) {
    const int d = c.cells()[i].dim;
    ++count[d];
    SparseRow row;
    for (const auto& inc : c.boundary(i)) row.emplace_back(inc.cell, BigInt(inc.coeff));
    matrices[d].push_back(std::move(row));
  }
  for (int d = 1; d <= top; ++d) rank[d] = rational_rank(std::move(matrices[d]));
  std::vector<long long> betti(top + 1);
  for (int d = 0; d <= top; ++d) betti[d] = count[d] - rank[d] - rank[d + 1];
  return betti;
}

}  // namespace anforms
