#include "anforms/cli.hpp"

#include <CLI11.hpp>

#include <istream>
#include <ostream>

#include "anforms/cell_label.hpp"
#include "anforms/complex.hpp"
#include "anforms/gauge.hpp"
#include "anforms/operad.hpp"
#include "anforms/tree.hpp"

namespace anforms::cli {

namespace {

using nlohmann::json;

struct Options {
  bool json = false;
  std::vector<std::string> trees;
  std::string kind;
  int leaves = 0;
  int k_index = 0;
  std::string family;
  int n = 0;
  std::string k_value;
  std::string primes;
  bool sharper = false;
  int max_leaves = 6;
  std::string samples = "0,1/3,1/2,1";
  int jobs = 1;
};

BigInt parse_bigint(const std::string& text) {
  BigInt z;
  const std::size_t start = !text.empty() && (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (text.size() == start || text.find_first_not_of("0123456789", start) != std::string::npos)
    throw DomainError("expected an integer, got '" + text + "'");
  z.set_str(text[0] == '+' ? text.substr(1) : text, 10);
  return z;
}

std::vector<Rational> parse_samples(const std::string& text) {
  std::vector<Rational> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    out.push_back(parse_rational(std::string_view(text).substr(pos, end - pos)));
    pos = end + 1;
  }
  return out;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

template <typename T>
std::string join_numbers(const std::vector<T>& v) {
  std::vector<std::string> parts;
  for (const auto& x : v) parts.push_back(std::to_string(x));
  return join(parts);
}

class Runner {
 public:
  Runner(const Options& o, std::istream& in, std::ostream& out) : o_(o), in_(in), out_(out) {}

  std::vector<std::string> tree_inputs() {
    if (!o_.trees.empty()) return o_.trees;
    std::vector<std::string> lines;
    for (std::string line; std::getline(in_, line);) {
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
      if (!line.empty()) lines.push_back(line);
    }
    return lines;
  }

  std::string single_tree() {
    auto trees = tree_inputs();
    if (trees.size() != 1) throw DomainError("expected exactly one tree, got " + std::to_string(trees.size()));
    return trees.front();
  }

  int trees_enumerate() {
    std::vector<PlantedTree> trees;
    if (o_.kind == "binary") trees = enumerate_binary_unpainted(o_.leaves);
    else if (o_.kind == "planar") trees = enumerate_planar_trees(o_.leaves);
    else if (o_.kind == "painted") trees = enumerate_binary_painted_shapes(o_.leaves);
    else trees = enumerate_painted_trees(o_.leaves);
    if (o_.json) {
      json arr = json::array();
      for (const auto& t : trees) arr.push_back(to_json(t));
      out_ << json{{"kind", o_.kind}, {"leaves", o_.leaves}, {"count", trees.size()}, {"trees", arr}}.dump() << "\n";
    } else {
      for (const auto& t : trees) out_ << t.encode() << "\n";
    }
    return kExitOk;
  }

  int trees_reduce() {
    const ReducedTree r = reduce(MetricTree::decode(single_tree()));
    if (o_.json) out_ << to_json(r.tree().tree()).dump() << "\n";
    else out_ << r.encode() << "\n";
    return kExitOk;
  }

  int trees_validate(std::ostream& err) {
    const PlantedTree t = PlantedTree::decode(single_tree());
    const auto v = validate(t);
    if (o_.json) {
      json doc{{"valid", !v}};
      if (v) {
        doc["clause"] = v->clause;
        doc["where"] = v->where;
      }
      out_ << doc.dump() << "\n";
    } else if (!v) {
      out_ << "valid\n";
    }
    if (v) {
      if (!o_.json) err << "invalid tree: " << v->clause << " at " << v->where << "\n";
      return kExitDomain;
    }
    return kExitOk;
  }

  int trees_equal() {
    auto trees = tree_inputs();
    if (trees.size() != 2) throw DomainError("equal needs exactly two trees");
    const bool same = equal_as_points(MetricTree::decode(trees[0]), MetricTree::decode(trees[1]));
    if (o_.json) out_ << json{{"equal", same}}.dump() << "\n";
    else out_ << (same ? "true" : "false") << "\n";
    return kExitOk;
  }

  int trees_level_test() {
    const MetricTree t = MetricTree::decode(single_tree());
    if (t.kind() != TreeKind::Painted) throw DomainError("level test needs a painted tree");
    const auto w = level_decomposition(t);
    if (o_.json) {
      json doc{{"level", w.has_value()}};
      if (w) doc["witness"] = w->describe();
      out_ << doc.dump() << "\n";
    } else {
      out_ << (w ? "true" : "false") << "\n";
      if (w) out_ << w->describe() << "\n";
    }
    return kExitOk;
  }

  int trees_graft() {
    auto inputs = tree_inputs();
    std::vector<MetricTree> trees;
    for (const auto& s : inputs) trees.push_back(MetricTree::decode(s));
    std::optional<MetricTree> result;
    if (o_.kind == "left") {
      if (trees.size() < 2) throw DomainError("left graft needs the unpainted tree followed by one tree per leaf");
      result = graft_left(trees[0], std::span<const MetricTree>(trees).subspan(1));
    } else {
      if (trees.size() != 2) throw DomainError(o_.kind + " graft needs exactly two trees (host, then grafted)");
      if (o_.k_index < 1) throw DomainError("graft needs --k >= 1");
      result = o_.kind == "partial" ? graft_partial(o_.k_index, trees[0], trees[1])
                                    : graft_right(o_.k_index, trees[0], trees[1]);
    }
    if (o_.json) out_ << to_json(result->tree()).dump() << "\n";
    else out_ << result->encode() << "\n";
    return kExitOk;
  }

  CellComplex complex() { return build(parse_family(o_.family), o_.n); }

  int complex_build() {
    const CellComplex c = complex();
    if (o_.json) {
      out_ << export_complex(c).dump() << "\n";
      return kExitOk;
    }
    for (int i = 0; i < c.size(); ++i) {
      std::string bd;
      for (const auto& inc : c.boundary(i)) bd += (bd.empty() ? "" : " ") + std::string(inc.coeff > 0 ? "+" : "-") +
                                                  (std::abs(inc.coeff) == 1 ? "" : std::to_string(std::abs(inc.coeff)) + "*") +
                                                  std::to_string(inc.cell);
      out_ << i << "\t" << c.cells()[i].dim << "\t" << c.cells()[i].label << "\t" << (bd.empty() ? "0" : bd) << "\n";
    }
    return kExitOk;
  }

  int complex_f_vector() {
    const auto f = f_vector(complex());
    if (o_.json) out_ << json{{"family", o_.family}, {"n", o_.n}, {"f_vector", f}}.dump() << "\n";
    else out_ << join_numbers(f) << "\n";
    return kExitOk;
  }

  int complex_euler() {
    const long long chi = euler_characteristic(complex());
    if (o_.json) out_ << json{{"family", o_.family}, {"n", o_.n}, {"euler", chi}}.dump() << "\n";
    else out_ << chi << "\n";
    return kExitOk;
  }

  int complex_homology() {
    const CellComplex c = complex();
    const bool squared_zero = boundary_squared_is_zero(c);
    const auto betti = homology_ranks(c);
    if (o_.json)
      out_ << json{{"family", o_.family}, {"n", o_.n}, {"boundary_squared_zero", squared_zero}, {"betti", betti}}.dump()
           << "\n";
    else out_ << join_numbers(betti) << "\n";
    if (!squared_zero) throw DomainError("boundary map does not square to zero");
    return kExitOk;
  }

  int complex_export() {
    out_ << export_complex(complex()).dump(2) << "\n";
    return kExitOk;
  }

  int gauge_epsilon() {
    std::vector<std::string> parts;
    for (const auto& e : epsilon_sequence(o_.n)) parts.push_back(to_string(e));
    if (o_.json) out_ << json{{"n", o_.n}, {"epsilon", parts}}.dump() << "\n";
    else out_ << join(parts) << "\n";
    return kExitOk;
  }

  int gauge_divisor() {
    const BigInt d = triviality_divisor(o_.n);
    if (o_.json)
      out_ << json{{"n", o_.n}, {"divisor", to_string(d)}, {"factorization", factorization_string(factorize(d))}}.dump()
           << "\n";
    else out_ << to_string(d) << "\n";
    return kExitOk;
  }

  int gauge_decide() {
    const auto v = decide_triviality(parse_bigint(o_.k_value), PrimeSet::parse(o_.primes), o_.n);
    if (o_.json) out_ << to_json(v).dump() << "\n";
    else out_ << to_string(v.verdict) << " (" << v.clause << ") " << v.reason << "\n";
    return kExitOk;
  }

  int gauge_congruence() {
    const PrimeSet primes = PrimeSet::parse(o_.primes);
    if (!primes.is_finite_nonempty()) throw DomainError("congruence needs an explicit list of odd primes");
    json arr = json::array();
    bool all = true;
    for (unsigned long p : primes.members()) {
      const auto r = epsilon_congruence(p);
      all = all && r.holds();
      if (o_.json) arr.push_back(to_json(r));
      else
        out_ << "p=" << p << " low=" << (r.low_terms_local ? "ok" : "FAIL") << " middle=" << (r.middle_term ? "ok" : "FAIL")
             << " top=" << (r.top_term ? "ok" : "FAIL") << " p*eps_" << p - 1 << "=" << to_string(r.top_scaled) << "\n";
    }
    if (o_.json) out_ << arr.dump() << "\n";
    return all ? kExitOk : kExitDomain;
  }

  int gauge_unit_class() {
    const auto v = local_unit_class(parse_bigint(o_.k_value), PrimeSet::parse(o_.primes));
    if (o_.json) {
      out_ << to_json(v).dump() << "\n";
    } else {
      std::vector<std::string> parts;
      for (const auto& x : v) parts.push_back(x.infinite ? "inf" : std::to_string(x.value));
      out_ << join(parts) << "\n";
    }
    return kExitOk;
  }

  int gauge_lower_bound() {
    const BigInt b = lower_bound_types(o_.n, o_.sharper);
    if (o_.json) out_ << json{{"n", o_.n}, {"sharper", o_.sharper}, {"bound", to_string(b)}}.dump() << "\n";
    else out_ << to_string(b) << "\n";
    return kExitOk;
  }

  int gauge_prime_pi() {
    const long long v = prime_pi(o_.n);
    if (o_.json) out_ << json{{"m", o_.n}, {"pi", v}}.dump() << "\n";
    else out_ << v << "\n";
    return kExitOk;
  }

  int verify_relations() {
    if (o_.jobs < 1) throw DomainError("--jobs must be at least 1");
    const auto samples = parse_samples(o_.samples);
    const RelationReport report = verify_graft_relations(o_.max_leaves, samples, o_.jobs);
    if (o_.json) {
      json arr = json::array();
      for (const auto& r : report.relations)
        arr.push_back({{"name", r.name}, {"checked", r.checked}, {"failures", r.failures}});
      out_ << json{{"max_leaves", o_.max_leaves}, {"relations", arr}, {"checked", report.checked()},
                   {"failures", report.failure_count()}}
                  .dump()
           << "\n";
    } else {
      for (const auto& r : report.relations) {
        out_ << r.name << "\tchecked " << r.checked << "\tfailures " << r.failures.size() << "\n";
        for (const auto& f : r.failures) out_ << "  " << f << "\n";
      }
      out_ << "total\tchecked " << report.checked() << "\tfailures " << report.failure_count() << "\n";
    }
    return report.failure_count() == 0 ? kExitOk : kExitDomain;
  }

 private:
  const Options& o_;
  std::istream& in_;
  std::ostream& out_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"A_n-forms toolkit: metric trees, associahedra and multiplihedra, gauge-group arithmetic", "anforms"};
  app.require_subcommand(1);
  Options o;
  std::function<int()> action;
  Runner runner(o, in, out);

  auto with_json = [&](CLI::App* cmd) { cmd->add_flag("--json", o.json, "JSON output"); };
  auto bind = [&](CLI::App* cmd, std::function<int()> f) {
    with_json(cmd);
    cmd->callback([&action, f] { action = f; });
  };

  auto* trees = app.add_subcommand("trees", "planted trees and their operations");
  trees->require_subcommand(1);
  {
    auto* c = trees->add_subcommand("enumerate", "list tree shapes by canonical encoding");
    c->add_option("--kind", o.kind, "binary | planar | painted | painted-all")
        ->required()
        ->check(CLI::IsMember({"binary", "planar", "painted", "painted-all"}));
    c->add_option("--leaves", o.leaves, "leaf count")->required();
    bind(c, [&] { return runner.trees_enumerate(); });

    c = trees->add_subcommand("reduce", "collapse zero-length internal edges");
    c->add_option("--tree", o.trees, "tree in bracket grammar (default: stdin)");
    bind(c, [&] { return runner.trees_reduce(); });

    c = trees->add_subcommand("validate", "check structural invariants");
    c->add_option("--tree", o.trees, "tree in bracket grammar (default: stdin)");
    bind(c, [&] { return runner.trees_validate(err); });

    c = trees->add_subcommand("equal", "compare two metric trees as points");
    c->add_option("--tree", o.trees, "two trees (default: stdin)");
    bind(c, [&] { return runner.trees_equal(); });

    c = trees->add_subcommand("level-test", "decide whether a painted metric tree is a level tree");
    c->add_option("--tree", o.trees, "tree in bracket grammar (default: stdin)");
    bind(c, [&] { return runner.trees_level_test(); });

    c = trees->add_subcommand("graft", "graft metric trees");
    c->add_option("--kind", o.kind, "partial | right | left")
        ->required()
        ->check(CLI::IsMember({"partial", "right", "left"}));
    c->add_option("--k", o.k_index, "leaf index for partial and right grafts");
    c->add_option("--tree", o.trees, "host tree first, then grafted trees (default: stdin)");
    bind(c, [&] { return runner.trees_graft(); });
  }

  auto* cx = app.add_subcommand("complex", "cell complexes K_n, L_n, J_n, H_n");
  cx->require_subcommand(1);
  {
    auto add = [&](const std::string& name, const std::string& help, std::function<int()> f) {
      auto* c = cx->add_subcommand(name, help);
      c->add_option("--family", o.family, "K | L | J | H")->required()->check(CLI::IsMember({"K", "L", "J", "H"}));
      c->add_option("--n", o.n, "leaf count")->required();
      bind(c, std::move(f));
    };
    add("build", "cells and boundary incidences", [&] { return runner.complex_build(); });
    add("f-vector", "cell counts by dimension", [&] { return runner.complex_f_vector(); });
    add("euler", "Euler characteristic", [&] { return runner.complex_euler(); });
    add("homology", "rational Betti numbers", [&] { return runner.complex_homology(); });
    add("export", "complex as JSON", [&] { return runner.complex_export(); });
  }

  auto* gauge = app.add_subcommand("gauge", "ε-sequence and triviality arithmetic");
  gauge->require_subcommand(1);
  {
    auto* c = gauge->add_subcommand("epsilon", "ε_1..ε_n");
    c->add_option("--n", o.n, "number of terms")->required();
    bind(c, [&] { return runner.gauge_epsilon(); });

    c = gauge->add_subcommand("divisor", "least D with D·ε_i integral for i <= n");
    c->add_option("--n", o.n, "number of terms")->required();
    bind(c, [&] { return runner.gauge_divisor(); });

    c = gauge->add_subcommand("decide", "fibrewise A_n-triviality of the localized adjoint bundle");
    c->add_option("--k", o.k_value, "Chern number")->required();
    c->add_option("--primes", o.primes, "comma-separated primes")->required();
    c->add_option("--n", o.n, "A_n level")->required();
    bind(c, [&] { return runner.gauge_decide(); });

    c = gauge->add_subcommand("congruence", "p-local congruences of the ε-sequence");
    c->add_option("--primes", o.primes, "odd primes <= 13")->required();
    bind(c, [&] { return runner.gauge_congruence(); });

    c = gauge->add_subcommand("unit-class", "p-adic valuations of k");
    c->add_option("--k", o.k_value, "Chern number")->required();
    c->add_option("--primes", o.primes, "comma-separated primes")->required();
    bind(c, [&] { return runner.gauge_unit_class(); });

    c = gauge->add_subcommand("lower-bound", "lower bound on the number of A_n-types");
    c->add_option("--n", o.n, "A_n level")->required();
    c->add_flag("--sharper", o.sharper, "use the sharper bound");
    bind(c, [&] { return runner.gauge_lower_bound(); });

    c = gauge->add_subcommand("prime-pi", "number of primes <= n");
    c->add_option("--n", o.n, "upper limit")->required();
    bind(c, [&] { return runner.gauge_prime_pi(); });
  }

  auto* verify = app.add_subcommand("verify", "self-checks");
  verify->require_subcommand(1);
  {
    auto* c = verify->add_subcommand("relations", "check the grafting relations on sample points");
    c->add_option("--max-leaves", o.max_leaves, "largest leaf count of a composite")->capture_default_str();
    c->add_option("--samples", o.samples, "edge lengths, e.g. 0,1/2,1")->capture_default_str();
    c->add_option("--jobs", o.jobs, "worker threads")->capture_default_str();
    bind(c, [&] { return runner.verify_relations(); });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }

  if (!action) {
    err << "usage error: no command given\n";
    return kExitUsage;
  }
  try {
    return action();
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}

}  // namespace anforms::cli
