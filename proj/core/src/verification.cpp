#include "lep/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <locale>
#include <sstream>
#include <unordered_map>

#include "lep/closed_forms.hpp"
#include "lep/estimators.hpp"
#include "lep/family.hpp"
#include "lep/forest_enum.hpp"
#include "lep/rng.hpp"
#include "lep/spectral.hpp"
#include "lep/wilson.hpp"

namespace lep {
namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double rel_error(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

bool same_tree(const RootedForest& f, Vertex x, Vertex y) { return root_of(f, x) == root_of(f, y); }

CriterionResult oracle_equivalence() {
  const std::vector<FamilySpec> graphs = {
      PathFamily{2},
      PathFamily{3},
      PathFamily{4},
      PathFamily{5},
      CycleFamily{3},
      CycleFamily{4},
      StarFamily{4, 1.0},
      CommunityStarFamily{5, 2, 0.5},
      BottleneckFamily{3, 3, 0.5},
      BottleneckFamily{3, 3, 1.0},
      BottleneckFamily{3, 3, 2.0},
      CompleteFamily{4},
  };
  double worst_z = 0.0;
  double worst_u = 0.0;
  std::size_t z_checks = 0;
  std::size_t u_checks = 0;
  for (const FamilySpec& spec : graphs) {
    const WeightedDigraph g = make_family(spec);
    const ForestEnsemble ens = enumerate_forests(g);
    const bool tree = is_undirected_tree(g);
    for (double q : {0.3, 1.0, 3.0}) {
      const double brute = brute_Z(ens, q);
      worst_z = std::max(worst_z, rel_error(brute, partition_function(g, q).to_double()));
      ++z_checks;
      if (auto closed = family_partition_function(spec, q)) {
        worst_z = std::max(worst_z, rel_error(brute, closed->to_double()));
        ++z_checks;
      }
      for (Vertex x = 0; x < g.size(); ++x) {
        for (Vertex y = x + 1; y < g.size(); ++y) {
          const double u =
              1.0 - brute_event(ens, q, [x, y](const RootedForest& f) { return same_tree(f, x, y); });
          if (tree) {
            worst_u = std::max(worst_u, std::abs(u - u_tree_exact(g, x, y, q)));
            ++u_checks;
          }
          if (auto closed = closed_form_correlation(spec, x, y, q)) {
            worst_u = std::max(worst_u, std::abs(u - *closed));
            ++u_checks;
          }
        }
      }
    }
  }
  CriterionResult r;
  r.passed = worst_z <= 1e-9 && worst_u <= 1e-9;
  r.detail = "Z: max rel err " + sci(worst_z) + " over " + std::to_string(z_checks) +
             " checks; U: max abs err " + sci(worst_u) + " over " + std::to_string(u_checks) +
             " checks";
  return r;
}

CriterionResult path_partition_agreement() {
  const PathMethod methods[] = {PathMethod::combinatorial, PathMethod::spectral,
                                PathMethod::chebyshev, PathMethod::recurrence};
  const double grid[] = {0.01, 0.1, 1.0, 10.0, 100.0};
  double worst_small = 0.0;
  for (std::size_t n = 1; n <= 50; ++n) {
    for (double q : grid) {
      const LogValue ref = z_path(n, q, PathMethod::closed);
      for (PathMethod m : methods) {
        worst_small = std::max(worst_small, relative_difference(ref, z_path(n, q, m)));
      }
    }
  }
  double worst_large = 0.0;
  for (std::size_t n : {1000u, 10000u, 100000u}) {
    for (double q : grid) {
      const LogValue a = z_path(n, q, PathMethod::closed);
      const LogValue b = z_path(n, q, PathMethod::recurrence);
      worst_large = std::max(worst_large, log_distance(a, b) / std::max(1.0, std::abs(a.logmag())));
    }
  }
  CriterionResult r;
  r.passed = worst_small <= 1e-9 && worst_large <= 1e-6;
  r.detail = "n<=50 max rel err " + sci(worst_small) + "; n up to 1e5 max rel log err " +
             sci(worst_large);
  return r;
}

CriterionResult cycle_partition_agreement() {
  double worst = 0.0;
  for (std::size_t n = 3; n <= 300; ++n) {
    const WeightedDigraph g = make_family(CycleFamily{n});
    for (double q : {0.5, 2.0}) {
      const LogValue det = partition_function(g, q);
      const LogValue via_path = z_cycle(n, q);
      const LogValue comb = z_cycle_combinatorial(n, q);
      worst = std::max({worst, relative_difference(det, via_path), relative_difference(det, comb),
                        relative_difference(via_path, comb)});
    }
  }
  CriterionResult r;
  r.passed = worst <= 1e-9;
  r.detail = "n in 3..300, q in {0.5, 2}: max rel err " + sci(worst);
  return r;
}

std::vector<std::pair<std::string, ForestPredicate>> russo_predicates() {
  auto roots = [](const RootedForest& f) { return f.root_count(); };
  auto largest_block = [](const RootedForest& f) {
    std::size_t best = 0;
    for (const auto& b : partition_of(f).blocks) {
      best = std::max(best, b.size());
    }
    return best;
  };
  return {
      {"0 is a root", [](const RootedForest& f) { return f.is_root(0); }},
      {"1 is a root", [](const RootedForest& f) { return f.is_root(1); }},
      {"0 and 2 are roots", [](const RootedForest& f) { return f.is_root(0) && f.is_root(2); }},
      {"one root", [=](const RootedForest& f) { return roots(f) == 1; }},
      {"two roots", [=](const RootedForest& f) { return roots(f) == 2; }},
      {"at least two roots", [=](const RootedForest& f) { return roots(f) >= 2; }},
      {"0,1 same block", [](const RootedForest& f) { return same_tree(f, 0, 1); }},
      {"0,2 same block", [](const RootedForest& f) { return same_tree(f, 0, 2); }},
      {"0 alone", [](const RootedForest& f) { return partition_of(f).blocks[0].size() == 1; }},
      {"largest block >= 3", [=](const RootedForest& f) { return largest_block(f) >= 3; }},
      {"edge 0->1", [](const RootedForest& f) { return f.parent[0] == 1; }},
      {"edge 1->0", [](const RootedForest& f) { return f.parent[1] == 0; }},
  };
}

CriterionResult russo_identity() {
  const std::vector<FamilySpec> graphs = {PathFamily{4}, CycleFamily{4}, StarFamily{5, 0.5},
                                          CompleteFamily{4}};
  const auto predicates = russo_predicates();
  double worst = 0.0;
  std::size_t checks = 0;
  for (const FamilySpec& spec : graphs) {
    const ForestEnsemble ens = enumerate_forests(make_family(spec));
    for (const auto& [name, pred] : predicates) {
      for (double q : {0.3, 1.0, 3.0}) {
        const RussoTerms t = russo_check(ens, q, pred);
        worst = std::max(worst, std::abs(t.lhs - t.rhs) / std::max(1.0, std::abs(t.rhs)));
        ++checks;
      }
    }
  }
  CriterionResult r;
  r.passed = worst <= 1e-6;
  r.detail = std::to_string(checks) + " checks, max scaled gap " + sci(worst);
  return r;
}

std::uint64_t forest_key(const RootedForest& f) {
  std::uint64_t key = 0;
  for (std::size_t v = f.size(); v-- > 0;) {
    key = key * (f.size() + 1) + static_cast<std::uint64_t>(f.parent[v] + 1);
  }
  return key;
}

CriterionResult sampler_law() {
  const std::vector<FamilySpec> graphs = {PathFamily{3}, StarFamily{4, 1.0}, CycleFamily{3},
                                          CompleteFamily{4}};
  const std::size_t replicas = 200000;
  double min_p = 1.0;
  std::uint64_t stream = 0;
  for (const FamilySpec& spec : graphs) {
    const WeightedDigraph g = make_family(spec);
    const ForestEnsemble ens = enumerate_forests(g);
    std::unordered_map<std::uint64_t, std::size_t> index;
    for (std::size_t i = 0; i < ens.size(); ++i) {
      index.emplace(forest_key(ens.forest(i)), i);
    }
    for (double q : {0.5, 2.0}) {
      const double z = brute_Z(ens, q);
      std::vector<double> probs(ens.size());
      for (std::size_t i = 0; i < ens.size(); ++i) {
        probs[i] = std::pow(q, static_cast<double>(ens.root_count(i))) * ens.weight(i) / z;
      }
      const auto counts = mc_histogram(
          g, q, replicas, derive_seed(0x5eed, stream++),
          [&](const RootedForest& f) { return index.at(forest_key(f)); }, ens.size());
      min_p = std::min(min_p, chi_square_test(counts, probs).p_value);
    }
  }
  CriterionResult r;
  r.passed = min_p > 1e-3;
  r.detail = "8 graph/q cases, R=2e5, min chi-square p " + sci(min_p);
  return r;
}

CriterionResult determinantal_roots() {
  const WeightedDigraph g = make_family(PathFamily{5});
  const double q = 1.0;
  const std::size_t replicas = 200000;
  const GreenKernel k = green_kernel(g, q);
  const auto counts = mc_histogram(
      g, q, replicas, 0xde7e,
      [](const RootedForest& f) {
        std::size_t mask = 0;
        for (Vertex v : root_set(f)) {
          mask |= std::size_t{1} << v;
        }
        return mask;
      },
      std::size_t{1} << g.size());

  double worst_sigma = 0.0;
  std::size_t sets = 0;
  auto check = [&](std::size_t want, std::vector<Vertex> a) {
    std::uint64_t hits = 0;
    for (std::size_t mask = 0; mask < counts.size(); ++mask) {
      if ((mask & want) == want) {
        hits += counts[mask];
      }
    }
    const double p = static_cast<double>(hits) / static_cast<double>(replicas);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(replicas));
    const double exact = roots_marginal(k, a);
    worst_sigma = std::max(worst_sigma, se > 0.0 ? std::abs(p - exact) / se
                                                 : (p == exact ? 0.0 : HUGE_VAL));
    ++sets;
  };
  for (Vertex x = 0; x < g.size(); ++x) {
    check(std::size_t{1} << x, {x});
    for (Vertex y = x + 1; y < g.size(); ++y) {
      check((std::size_t{1} << x) | (std::size_t{1} << y), {x, y});
    }
  }
  CriterionResult r;
  r.passed = worst_sigma < 4.0;
  r.detail = std::to_string(sets) + " sets, worst deviation " + sci(worst_sigma) + " sigma";
  return r;
}

CriterionResult path_asymptotics() {
  const double delta = 0.3;
  const PathRegime bulk{PathRegimeKind::bulk, 0.0, delta};
  const PathRegime edge{PathRegimeKind::boundary, delta, delta};
  const double bulk_limit = path_asymptotic_limit(bulk).value;
  const double edge_limit = path_asymptotic_limit(edge).value;
  bool decreasing = true;
  double prev_bulk = HUGE_VAL;
  double prev_edge = HUGE_VAL;
  double err_bulk = 0.0;
  double err_edge = 0.0;
  std::string trail;
  for (std::size_t n : {10000u, 100000u, 1000000u}) {
    const PathPair pb = path_regime_pair(n, bulk);
    const PathPair pe = path_regime_pair(n, edge);
    err_bulk = std::abs(u_path(n, pb.x, pb.y, pb.q) - bulk_limit);
    err_edge = std::abs(u_path(n, pe.x, pe.y, pe.q) - edge_limit);
    decreasing = decreasing && err_bulk < prev_bulk && err_edge < prev_edge;
    prev_bulk = err_bulk;
    prev_edge = err_edge;
    trail += " n=" + std::to_string(n) + ":" + sci(err_bulk) + "/" + sci(err_edge);
  }
  CriterionResult r;
  r.passed = err_bulk < 0.02 && err_edge < 0.02 && decreasing;
  r.detail = "bulk/boundary errors" + trail + (decreasing ? "" : " (not decreasing)");
  return r;
}

CriterionResult path_sandwich() {
  std::size_t upper_checked = 0;
  std::size_t lower_checked = 0;
  std::size_t grid_lower_checked = 0;
  std::size_t violations = 0;
  for (std::size_t d : {2u, 5u, 10u, 20u}) {
    const std::size_t n = 100 * d;
    const std::size_t x = n / 2 - d / 2;
    // m in {d^2, 4d^2} is the required grid. On it P(|S_m| < d/2) < 1/2, so
    // the smaller walk lengths are added to exercise the lower bound too.
    const std::size_t lengths[] = {d * d, 4 * d * d, 1, 2, (d * d + 15) / 16, (d * d + 7) / 8,
                                   (d * d + 3) / 4};
    for (double q : log_grid(1e-3, 1.0, 13)) {
      const double u = u_path(n, x, x + d, q);
      for (std::size_t i = 0; i < std::size(lengths); ++i) {
        const RwBounds b = path_rw_bounds(d, q, lengths[i]);
        ++upper_checked;
        if (u > b.upper) {
          ++violations;
        }
        if (b.lower) {
          ++lower_checked;
          grid_lower_checked += i < 2 ? 1 : 0;
          if (*b.lower > u) {
            ++violations;
          }
        }
      }
    }
  }
  CriterionResult r;
  r.passed = violations == 0 && lower_checked > 0;
  r.detail = std::to_string(upper_checked) + " upper and " + std::to_string(lower_checked) +
             " lower bounds (" + std::to_string(grid_lower_checked) +
             " lower bounds valid on m in {d^2, 4d^2}), " + std::to_string(violations) +
             " violations";
  return r;
}

CriterionResult tree_monotonicity() {
  Rng rng(0x7ee5);
  double worst_drop = 0.0;
  double worst_low = 0.0;
  double worst_high = 0.0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 49.0);
    std::vector<Edge> edges;
    double w_min = HUGE_VAL;
    double w_max = 0.0;
    for (Vertex v = 1; v < n; ++v) {
      const auto parent = static_cast<Vertex>(rng.uniform() * static_cast<double>(v));
      const double w = std::pow(10.0, -2.0 + 4.0 * rng.uniform());
      w_min = std::min(w_min, w);
      w_max = std::max(w_max, w);
      edges.push_back({parent, v, w});
    }
    const WeightedDigraph g = WeightedDigraph::undirected(n, edges);
    const auto x = static_cast<Vertex>(rng.uniform() * static_cast<double>(n));
    auto y = static_cast<Vertex>(rng.uniform() * static_cast<double>(n - 1));
    if (y >= x) {
      ++y;
    }
    double prev = -1.0;
    for (double q : log_grid(1e-9 * w_min, 1e9 * w_max, 100)) {
      const double u = u_tree_exact(g, x, y, q);
      if (prev >= 0.0) {
        worst_drop = std::max(worst_drop, prev - u);
      }
      prev = u;
    }
    worst_low = std::max(worst_low, u_tree_exact(g, x, y, 1e-9 * w_min));
    worst_high = std::max(worst_high, 1.0 - u_tree_exact(g, x, y, 1e9 * w_max));
  }
  CriterionResult r;
  r.passed = worst_drop <= 1e-12 && worst_low < 1e-6 && worst_high < 1e-6;
  r.detail = "200 trees: max decrease " + sci(worst_drop) + ", max U at q->0 " + sci(worst_low) +
             ", max 1-U at q->inf " + sci(worst_high);
  return r;
}

CriterionResult detection_phase_diagrams() {
  const std::size_t n = 200;
  const std::size_t k = 3;
  const double w = 1.0 / static_cast<double>(n);
  const CommunityStarFamily star{n, k, w};
  const double target = community_star_limits(0.0, -1.0, k).center_v1;

  // Exact sweep along q = n^alpha, alpha in -1.5..1.5.
  std::vector<double> grid;
  for (int i = -6; i <= 6; ++i) {
    grid.push_back(std::pow(static_cast<double>(n), 0.25 * i));
  }
  const std::vector<SweepQuery> query = {{"center_v1", 0, 1}};
  const SweepTable table = sweep(make_family(star), star, grid, query, 0, 0);
  const double at_zero = *table.rows[6].exact;
  const double closed = *closed_form_correlation(star, 0, 1, 1.0);
  const bool rising = std::is_sorted(table.rows.begin(), table.rows.end(),
                                     [](const SweepRow& a, const SweepRow& b) {
                                       return *a.exact < *b.exact;
                                     });

  const double crossing = bottleneck_half_crossing(400, 20, 1.0);
  const double boundary = 1.0 / 20.0;
  const double ratio = std::max(crossing / boundary, boundary / crossing);

  CriterionResult r;
  r.passed = std::abs(at_zero - target) <= 0.05 && std::abs(closed - at_zero) <= 1e-9 && rising &&
             ratio <= 3.0;
  r.detail = "community star U(c,x) at alpha=0: " + sci(at_zero) + " vs " + sci(target) +
             "; bottleneck half-crossing q=" + sci(crossing) + " vs w/m=" + sci(boundary);
  return r;
}

}  // namespace

const std::vector<Criterion>& acceptance_criteria() {
  static const std::vector<Criterion> criteria = {
      {1, "oracle equivalence on tiny graphs", 10.0, oracle_equivalence},
      {2, "path partition function, four expressions", 5.0, path_partition_agreement},
      {3, "cycle partition function", 0.0, cycle_partition_agreement},
      {4, "derivative of event probabilities in q", 0.0, russo_identity},
      {5, "sampler law against enumeration", 60.0, sampler_law},
      {6, "determinantal root marginals", 0.0, determinantal_roots},
      {7, "path correlation scaling limits", 5.0, path_asymptotics},
      {8, "random-walk bounds on path correlations", 0.0, path_sandwich},
      {9, "monotonicity of tree correlations in q", 0.0, tree_monotonicity},
      {10, "detection thresholds on community star and bottleneck", 10.0,
       detection_phase_diagrams},
  };
  return criteria;
}

CriterionResult run_criterion(const Criterion& c) {
  const auto start = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = c.run();
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.id = c.id;
  r.name = c.name;
  if (c.budget_seconds > 0.0 && r.seconds > c.budget_seconds) {
    r.passed = false;
    r.detail += "; exceeded budget of " + sci(c.budget_seconds) + " s";
  }
  return r;
}

std::string format_result(const CriterionResult& r) {
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.2f", r.seconds);
  return std::string(r.passed ? "PASS" : "FAIL") + " [" + std::to_string(r.id) + "] " + r.name +
         ": " + r.detail + " (" + secs + " s)";
}

}  // namespace lep
