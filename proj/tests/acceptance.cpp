// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "anforms/complex.hpp"
#include "anforms/gauge.hpp"
#include "anforms/operad.hpp"

using namespace anforms;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void check(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

struct Shell {
  int code = -1;
  std::string out;
};

Shell shell(const std::string& args) {
  Shell r;
  const std::string cmd = std::string(ANFORMS_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<Rational> grid(std::initializer_list<const char*> texts) {
  std::vector<Rational> out;
  for (const char* t : texts) out.push_back(parse_rational(t));
  return out;
}

std::string show(const std::vector<int>& v) {
  std::ostringstream s;
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
  return "(" + s.str() + ")";
}

std::vector<long long> sphere(int d) {
  std::vector<long long> b(d + 1, 0);
  b[0] += 1;
  b[d] += 1;
  return b;
}

Rational defining_sum(int l, const std::vector<Rational>& eps) {
  Rational total = 0;
  std::vector<int> parts;
  std::function<void(int)> walk = [&](int remaining) {
    if (remaining == 0) {
      Rational term = eps[parts.size() - 1];
      for (int j : parts) term *= Rational(2) / Rational(factorial(2 * j));
      total += term;
      return;
    }
    for (int j = 1; j <= remaining; ++j) {
      parts.push_back(j);
      walk(remaining - j);
      parts.pop_back();
    }
  };
  walk(l);
  return total;
}

const std::vector<std::string> kCliCommands{
    "gauge epsilon --n 3",
    "gauge divisor --n 3",
    "gauge congruence --primes 3,5,7,11,13",
    "gauge decide --k 5 --primes 5 --n 2",
    "gauge decide --k 3 --primes 3 --n 2",
    "gauge decide --k 9 --primes 3 --n 2",
    "gauge decide --k 1 --primes 2,3 --n 1",
    "gauge lower-bound --n 1 --sharper",
    "gauge lower-bound --n 3",
    "complex f-vector --family K --n 4",
    "complex f-vector --family J --n 3",
    "complex f-vector --family K --n 5",
    "complex homology --family L --n 6",
    "complex homology --family H --n 5",
    "complex export --family J --n 4",
    "trees level-test --tree 'p(b(*)@1 b(*)@1/2)'",
    "verify relations --max-leaves 6 --samples 0,1/3,1/2,1 --jobs 4",
};

Outcome c1() {
  Outcome o;
  const Shell r = shell("gauge epsilon --n 3");
  o.check(r.code == 0, "exit code " + std::to_string(r.code));
  o.check(r.out == "1/6 -1/180 1/1512\n", "output '" + r.out + "'");
  return o;
}

Outcome c2() {
  Outcome o;
  const auto eps = epsilon_sequence(12);
  o.check(eps == chern_oracle(12), "recursion and Chern oracle differ");
  for (int l = 1; l <= 12; ++l)
    o.check(defining_sum(l, eps) == Rational(1) / Rational(factorial(2 * l + 1)), "back-substitution l=" + std::to_string(l));
  return o;
}

Outcome c3() {
  Outcome o;
  const BigInt d = triviality_divisor(3);
  o.check(d == 7560, "divisor " + d.get_str());
  const std::string f = factorization_string(factorize(d));
  o.check(f == "2^3*3^3*5*7", "factorization " + f);
  return o;
}

Outcome c4() {
  Outcome o;
  for (unsigned long p : {3ul, 5ul, 7ul, 11ul, 13ul})
    o.check(epsilon_congruence(p).holds(), "p=" + std::to_string(p));
  return o;
}

Outcome c5() {
  Outcome o;
  struct Case {
    long k;
    std::vector<unsigned long> primes;
    int n;
    Verdict verdict;
    char clause;
  };
  const std::vector<Case> cases{{5, {5}, 2, Verdict::Trivial, 'b'},
                                {3, {3}, 2, Verdict::NotTrivial, 'd'},
                                {9, {3}, 2, Verdict::Trivial, 'd'},
                                {1, {2, 3}, 1, Verdict::NotTrivial, 'e'}};
  for (const auto& c : cases) {
    const auto v = decide_triviality(c.k, PrimeSet::of(c.primes), c.n);
    o.check(v.verdict == c.verdict && v.clause == c.clause,
            "k=" + std::to_string(c.k) + " gave " + to_string(v.verdict) + " (" + v.clause + ")");
  }
  return o;
}

Outcome c6() {
  Outcome o;
  o.check(lower_bound_types(1, true) == 6, "sharper n=1 is " + lower_bound_types(1, true).get_str());
  o.check(lower_bound_types(3, false) == 16, "plain n=3 is " + lower_bound_types(3, false).get_str());
  return o;
}

Outcome c7() {
  Outcome o;
  const std::vector<std::vector<int>> k{{1}, {2, 1}, {5, 5, 1}};
  const std::vector<std::vector<int>> j{{1}, {2, 1}, {6, 6, 1}};
  for (int n = 2; n <= 4; ++n) {
    const auto f = f_vector(build_k(n));
    o.check(f == k[n - 2], "K" + std::to_string(n) + " " + show(f));
  }
  for (int n = 1; n <= 3; ++n) {
    const auto f = f_vector(build_j(n));
    o.check(f == j[n - 1], "J" + std::to_string(n) + " " + show(f));
  }
  return o;
}

Outcome c8() {
  Outcome o;
  const CellComplex c = build_k(5);
  const auto f = f_vector(c);
  o.check(f == std::vector<int>{14, 21, 9, 1}, "f-vector " + show(f));
  o.check(f[0] == static_cast<int>(enumerate_binary_unpainted(5).size()), "vertex count");
  o.check(c.size() == static_cast<int>(enumerate_planar_trees(5).size()), "cell count");
  o.check(euler_characteristic(c) == 1, "Euler characteristic");
  return o;
}

Outcome c9() {
  Outcome o;
  for (int n = 4; n <= 7; ++n) {
    const CellComplex c = build(Family::L, n);
    o.check(boundary_squared_is_zero(c), "dd != 0 on L" + std::to_string(n));
    o.check(homology_ranks(c) == sphere(n - 3), "Betti numbers of L" + std::to_string(n));
  }
  for (int n = 3; n <= 5; ++n) {
    const CellComplex c = build(Family::H, n);
    o.check(boundary_squared_is_zero(c), "dd != 0 on H" + std::to_string(n));
    o.check(homology_ranks(c) == sphere(n - 2), "Betti numbers of H" + std::to_string(n));
  }
  return o;
}

Outcome c10() {
  Outcome o;
  const auto samples = grid({"0", "1/3", "1/2", "1"});
  const RelationReport report = verify_graft_relations(6, samples, 4);
  o.check(report.relations.size() == 6, "expected six relations");
  long long checked = 0;
  for (const auto& r : report.relations) {
    checked += r.checked;
    o.check(r.failures.empty(), r.name + ": " + std::to_string(r.failures.size()) + " failures");
    o.check(r.checked > 0, r.name + ": no instances");
  }
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(checked) + " instances";
  return o;
}

Outcome c11() {
  Outcome o;
  const auto samples = grid({"0", "1/3", "1/2", "1"});
  long long right = 0, left = 0;
  for (int r = 1; r <= 5; ++r) {
    const auto rhos = sample_level_points(r, samples);
    for (int t = 2; r + t - 1 <= 6; ++t) {
      const auto sigmas = sample_unpainted_points(t, samples);
      for (const auto& rho : rhos)
        for (const auto& sigma : sigmas)
          for (int k = 1; k <= r; ++k) {
            ++right;
            if (!is_level_tree(graft_right(k, rho, sigma))) o.check(false, "delta_k of " + rho.encode());
          }
    }
  }
  // Left grafts onto every unpainted tree with level factors of up to 6 leaves in total.
  const auto level_samples = grid({"0", "1/2", "1"});
  std::vector<std::vector<MetricTree>> level(7);
  for (int r = 1; r <= 5; ++r) level[r] = sample_level_points(r, level_samples);
  for (int t = 2; t <= 6; ++t) {
    const auto taus = sample_unpainted_points(t, level_samples);
    std::vector<MetricTree> chosen;
    std::function<void(int)> pick = [&](int remaining) {
      const int slot = static_cast<int>(chosen.size());
      if (slot == t) {
        if (remaining != 0) return;
        for (const auto& tau : taus) {
          ++left;
          if (!is_level_tree(graft_left(tau, chosen))) o.check(false, "delta of " + tau.encode());
        }
        return;
      }
      for (int r = 1; r <= remaining - (t - slot - 1); ++r)
        for (const auto& p : level[r]) {
          chosen.push_back(p);
          pick(remaining - r);
          chosen.pop_back();
        }
    };
    for (int n = t; n <= 6; ++n) pick(n);
  }
  o.check(!is_level_tree(MetricTree::decode("p(b(*)@1 b(*)@1/2)")), "(1,1/2) counterexample accepted");
  for (int n = 1; n <= 4; ++n)
    for (const auto& shape : enumerate_painted_trees(n)) {
      std::vector<Rational> ones(shape.internal_edge_count(), Rational(1));
      (void)is_level_tree(MetricTree::with_lengths(shape, ones));
    }
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(right) + " right and " + std::to_string(left) +
              " left grafts checked";
  return o;
}

Outcome c12() {
  Outcome o;
  for (const auto& c : kCliCommands) {
    const Shell a = shell(c), b = shell(c);
    o.check(a.code == 0 && b.code == 0, "'" + c + "' exit " + std::to_string(a.code));
    o.check(a.out == b.out && !a.out.empty(), "'" + c + "' output differs");
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;  // 0 means no time bound
    Outcome (*run)();
  };
  const std::vector<Criterion> criteria{
      {1, "epsilon table via CLI", 1, c1},
      {2, "Chern oracle equals recursion", 10, c2},
      {3, "triviality divisor", 0, c3},
      {4, "epsilon congruences", 30, c4},
      {5, "decision table examples", 0, c5},
      {6, "type-count lower bounds", 0, c6},
      {7, "small polytope f-vectors", 0, c7},
      {8, "K5 counts", 5, c8},
      {9, "sphere certification", 120, c9},
      {10, "grafting relations", 120, c10},
      {11, "level-tree properties", 0, c11},
      {12, "CLI determinism", 0, c12},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_s > 0 && secs >= c.limit_s) o.check(false, "over time limit");
    if (!o.ok) ++failed;
    std::printf("%s %2d %-32s %8.3fs%s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.empty() ? "" : "  ",
                o.detail.c_str());
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
