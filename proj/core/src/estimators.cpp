#include "lep/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <locale>
#include <numeric>
#include <sstream>
#include <thread>
#include <variant>

#include <boost/math/special_functions/gamma.hpp>
#include <json.hpp>

#include "lep/closed_forms.hpp"
#include "lep/errors.hpp"
#include "lep/rng.hpp"
#include "lep/spectral.hpp"

namespace lep {
namespace {

SampleStats bernoulli_stats(std::uint64_t hits, std::size_t replicas, std::uint64_t seed) {
  SampleStats s;
  s.replicas = replicas;
  s.seed = seed;
  s.estimate = static_cast<double>(hits) / static_cast<double>(replicas);
  s.std_error = std::sqrt(s.estimate * (1.0 - s.estimate) / static_cast<double>(replicas));
  return s;
}

void require_replicas(std::size_t replicas, const char* where) {
  if (replicas == 0) {
    throw ParameterError(std::string(where) + ": replicas must be at least 1");
  }
}

}  // namespace

std::size_t default_thread_count() {
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

std::vector<std::uint64_t> mc_histogram(const WeightedDigraph& g, double q, std::size_t replicas,
                                        std::uint64_t seed,
                                        const std::function<std::size_t(const RootedForest&)>& bin,
                                        std::size_t bins, std::size_t threads) {
  const ForestSampler sampler(g, q);
  if (threads == 0) {
    threads = default_thread_count();
  }
  threads = std::min(threads, std::max<std::size_t>(1, replicas / 1024));

  std::vector<std::vector<std::uint64_t>> partial(threads, std::vector<std::uint64_t>(bins, 0));
  auto work = [&](std::size_t t) {
    // Contiguous replica ranges; replica r always uses stream r.
    const std::size_t begin = replicas * t / threads;
    const std::size_t end = replicas * (t + 1) / threads;
    for (std::size_t r = begin; r < end; ++r) {
      Rng rng = Rng::for_stream(seed, r);
      const std::size_t b = bin(sampler.sample(rng));
      if (b >= bins) {
        throw ParameterError("mc_histogram: bin index out of range");
      }
      ++partial[t][b];
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          work(t);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) {
      th.join();
    }
    for (const auto& e : errors) {
      if (e) {
        std::rethrow_exception(e);
      }
    }
  }
  std::vector<std::uint64_t> counts(bins, 0);
  for (const auto& p : partial) {
    for (std::size_t b = 0; b < bins; ++b) {
      counts[b] += p[b];
    }
  }
  return counts;
}

SampleStats mc_event(const WeightedDigraph& g, double q, const ForestPredicate& pred,
                     std::size_t replicas, std::uint64_t seed, std::size_t threads) {
  require_replicas(replicas, "mc_event");
  const auto counts = mc_histogram(
      g, q, replicas, seed, [&](const RootedForest& f) -> std::size_t { return pred(f) ? 1 : 0; },
      2, threads);
  return bernoulli_stats(counts[1], replicas, seed);
}

SampleStats mc_correlation(const WeightedDigraph& g, double q, Vertex x, Vertex y,
                           std::size_t replicas, std::uint64_t seed, std::size_t threads) {
  if (x >= g.size() || y >= g.size() || x == y) {
    throw ParameterError("mc_correlation: need two distinct vertices of the graph");
  }
  return mc_event(
      g, q, [x, y](const RootedForest& f) { return root_of(f, x) != root_of(f, y); }, replicas,
      seed, threads);
}

ChiSquare chi_square_test(std::span<const std::uint64_t> observed, std::span<const double> probs) {
  if (observed.size() != probs.size() || observed.empty()) {
    throw ParameterError("chi_square_test: observed and expected lengths differ");
  }
  const double total =
      static_cast<double>(std::accumulate(observed.begin(), observed.end(), std::uint64_t{0}));
  std::vector<double> obs;
  std::vector<double> exp;
  double pooled_obs = 0.0;
  double pooled_exp = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double e = probs[i] * total;
    if (e < 5.0) {
      pooled_obs += static_cast<double>(observed[i]);
      pooled_exp += e;
    } else {
      obs.push_back(static_cast<double>(observed[i]));
      exp.push_back(e);
    }
  }
  if (pooled_exp > 0.0 || pooled_obs > 0.0) {
    obs.push_back(pooled_obs);
    exp.push_back(pooled_exp);
  }
  ChiSquare out;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    if (exp[i] == 0.0) {
      // Mass where none is expected refutes the law outright.
      if (obs[i] > 0.0) {
        out.statistic = std::numeric_limits<double>::infinity();
        out.dof = obs.size() > 1 ? obs.size() - 1 : 1;
        out.p_value = 0.0;
        return out;
      }
      continue;
    }
    const double diff = obs[i] - exp[i];
    out.statistic += diff * diff / exp[i];
  }
  out.dof = obs.size() > 1 ? obs.size() - 1 : 0;
  out.p_value = out.dof == 0 ? 1.0
                             : boost::math::gamma_q(0.5 * static_cast<double>(out.dof),
                                                    0.5 * out.statistic);
  return out;
}

RootCountFit mc_root_count(const WeightedDigraph& g, double q, std::size_t replicas,
                           std::uint64_t seed, std::size_t threads) {
  require_replicas(replicas, "mc_root_count");
  if (!g.is_symmetric()) {
    throw StructureError("mc_root_count: the root-count law needs an undirected graph");
  }
  RootCountFit out;
  out.histogram = mc_histogram(
      g, q, replicas, seed, [](const RootedForest& f) { return f.root_count(); }, g.size() + 1,
      threads);
  out.expected = root_count_law(g, q);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t k = 0; k < out.histogram.size(); ++k) {
    const double c = static_cast<double>(out.histogram[k]);
    sum += c * static_cast<double>(k);
    sum_sq += c * static_cast<double>(k) * static_cast<double>(k);
  }
  const auto r = static_cast<double>(replicas);
  out.mean = sum / r;
  const double var = replicas > 1 ? (sum_sq - r * out.mean * out.mean) / (r - 1.0) : 0.0;
  out.mean_std_error = std::sqrt(std::max(var, 0.0) / r);
  out.fit = chi_square_test(out.histogram, out.expected);
  return out;
}

std::optional<double> closed_form_correlation(const FamilySpec& family, Vertex x, Vertex y,
                                              double q) {
  if (x == y) {
    throw ParameterError("closed_form_correlation: vertices must differ");
  }
  const std::size_t n = family_size(family);
  if (x >= n || y >= n) {
    throw ParameterError("closed_form_correlation: vertex out of range");
  }
  const Vertex lo = std::min(x, y);
  const Vertex hi = std::max(x, y);
  return std::visit(
      [&](const auto& f) -> std::optional<double> {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, PathFamily>) {
          return u_path(f.n, lo + 1, hi + 1, q);
        } else if constexpr (std::is_same_v<F, StarFamily>) {
          if (f.n < 3) {
            return std::nullopt;
          }
          const StarQuantities s = star_quantities(f.n, f.w, q);
          return lo == 0 ? s.u_center_leaf : s.u_leaf_leaf;
        } else if constexpr (std::is_same_v<F, CommunityStarFamily>) {
          const CommunityStarQuantities s = community_star_quantities(f.n, f.k, f.w, q);
          const bool lo_heavy = lo >= 1 && lo <= f.k;
          const bool hi_heavy = hi <= f.k;
          if (lo == 0) {
            return hi_heavy ? s.u_center_v1 : s.u_center_vw;
          }
          if (lo_heavy && hi_heavy) {
            return s.u_v1_v1;
          }
          return lo_heavy ? s.u_v1_vw : s.u_vw_vw;
        } else if constexpr (std::is_same_v<F, BottleneckFamily>) {
          if (lo == 0 && hi == f.n) {
            return bottleneck_quantities(f.n, f.m, f.w, q).u_bridge;
          }
          return std::nullopt;
        } else {
          return std::nullopt;
        }
      },
      family);
}

std::optional<LogValue> family_partition_function(const FamilySpec& family, double q) {
  return std::visit(
      [q](const auto& f) -> std::optional<LogValue> {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, PathFamily>) {
          return z_path(f.n, q);
        } else if constexpr (std::is_same_v<F, CycleFamily>) {
          return z_cycle(f.n, q);
        } else if constexpr (std::is_same_v<F, StarFamily>) {
          if (f.n < 3) {
            return std::nullopt;
          }
          return star_quantities(f.n, f.w, q).z;
        } else if constexpr (std::is_same_v<F, CommunityStarFamily>) {
          return community_star_quantities(f.n, f.k, f.w, q).z;
        } else if constexpr (std::is_same_v<F, BottleneckFamily>) {
          return bottleneck_quantities(f.n, f.m, f.w, q).z;
        } else if constexpr (std::is_same_v<F, CompleteFamily>) {
          return z_complete(f.n, q);
        } else {
          return std::nullopt;
        }
      },
      family);
}

std::optional<ExactValue> exact_correlation(const WeightedDigraph& g,
                                            const std::optional<FamilySpec>& family, Vertex x,
                                            Vertex y, double q) {
  if (x >= g.size() || y >= g.size() || x == y) {
    throw ParameterError("exact_correlation: need two distinct vertices of the graph");
  }
  if (g.size() <= kMaxEnumerationSize) {
    const ForestEnsemble ens = enumerate_forests(g);
    const double same = brute_event(
        ens, q, [x, y](const RootedForest& f) { return root_of(f, x) == root_of(f, y); });
    return ExactValue{1.0 - same, ExactMethod::enumeration};
  }
  if (is_undirected_tree(g) && tree_path(g, x, y).size() - 1 <= kMaxTreeDistance) {
    return ExactValue{u_tree_exact(g, x, y, q), ExactMethod::tree};
  }
  if (family) {
    if (auto v = closed_form_correlation(*family, x, y, q)) {
      return ExactValue{*v, ExactMethod::closed};
    }
  }
  return std::nullopt;
}

namespace {

std::string format_real(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(17);
  os << v;
  return os.str();
}

std::string optional_field(const std::optional<double>& v) {
  return v ? format_real(*v) : std::string();
}

}  // namespace

std::string SweepTable::to_csv() const {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << "q,tag,exact,estimate,stderr,R,seed\n";
  for (const SweepRow& r : rows) {
    os << format_real(r.q) << ',' << r.tag << ',' << optional_field(r.exact) << ','
       << optional_field(r.estimate) << ',' << optional_field(r.std_error) << ',' << r.replicas
       << ',' << r.seed << '\n';
  }
  return os.str();
}

std::string SweepTable::to_json() const {
  nlohmann::json doc = nlohmann::json::array();
  auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(); };
  for (const SweepRow& r : rows) {
    doc.push_back({{"q", r.q},
                   {"tag", r.tag},
                   {"exact", opt(r.exact)},
                   {"estimate", opt(r.estimate)},
                   {"stderr", opt(r.std_error)},
                   {"R", r.replicas},
                   {"seed", r.seed}});
  }
  return doc.dump(2);
}

SweepTable sweep(const WeightedDigraph& g, const std::optional<FamilySpec>& family,
                 std::span<const double> q_grid, std::span<const SweepQuery> queries,
                 std::size_t replicas, std::uint64_t seed, std::size_t threads) {
  for (std::size_t i = 0; i < q_grid.size(); ++i) {
    if (!(q_grid[i] > 0.0) || (i > 0 && !(q_grid[i] > q_grid[i - 1]))) {
      throw ParameterError("sweep: q grid must be positive and strictly ascending");
    }
  }
  std::optional<ForestEnsemble> ens;
  if (g.size() <= kMaxEnumerationSize && !queries.empty()) {
    ens = enumerate_forests(g);
  }
  SweepTable table;
  for (double q : q_grid) {
    for (const SweepQuery& query : queries) {
      SweepRow row;
      row.q = q;
      row.tag = query.tag;
      if (ens) {
        const Vertex x = query.x;
        const Vertex y = query.y;
        row.exact = 1.0 - brute_event(*ens, q, [x, y](const RootedForest& f) {
                      return root_of(f, x) == root_of(f, y);
                    });
      } else if (auto v = exact_correlation(g, family, query.x, query.y, q)) {
        row.exact = v->value;
      }
      if (replicas > 0) {
        row.replicas = replicas;
        row.seed = derive_seed(seed, table.rows.size());
        const SampleStats s = mc_correlation(g, q, query.x, query.y, replicas, row.seed, threads);
        row.estimate = s.estimate;
        row.std_error = s.std_error;
      }
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

SweepTable sweep(const FamilySpec& family, std::span<const double> q_grid,
                 std::span<const SweepQuery> queries, std::size_t replicas, std::uint64_t seed,
                 std::size_t threads) {
  return sweep(make_family(family), family, q_grid, queries, replicas, seed, threads);
}

std::vector<SweepQuery> family_queries(const FamilySpec& family) {
  return std::visit(
      [](const auto& f) -> std::vector<SweepQuery> {
        using F = std::decay_t<decltype(f)>;
        std::vector<SweepQuery> out;
        if constexpr (std::is_same_v<F, PathFamily>) {
          if (f.n >= 2) {
            out.push_back({"ends", 0, f.n - 1});
          }
        } else if constexpr (std::is_same_v<F, CycleFamily>) {
          out.push_back({"antipodal", 0, f.n / 2});
        } else if constexpr (std::is_same_v<F, StarFamily>) {
          out.push_back({"center_leaf", 0, 1});
          if (f.n >= 3) {
            out.push_back({"leaf_leaf", 1, 2});
          }
        } else if constexpr (std::is_same_v<F, CommunityStarFamily>) {
          const std::size_t light = f.n - 1 - f.k;
          if (f.k >= 1) {
            out.push_back({"center_v1", 0, 1});
          }
          if (light >= 1) {
            out.push_back({"center_vw", 0, f.k + 1});
          }
          if (f.k >= 2) {
            out.push_back({"v1_v1", 1, 2});
          }
          if (f.k >= 1 && light >= 1) {
            out.push_back({"v1_vw", 1, f.k + 1});
          }
          if (light >= 2) {
            out.push_back({"vw_vw", f.k + 1, f.k + 2});
          }
        } else if constexpr (std::is_same_v<F, HierarchicalTreeFamily>) {
          out.push_back({"root_child", 0, 1});
        } else if constexpr (std::is_same_v<F, BottleneckFamily>) {
          out.push_back({"bridge", 0, f.n});
          if (f.n >= 3) {
            out.push_back({"large", 1, 2});
          }
          if (f.m >= 3) {
            out.push_back({"small", f.n + 1, f.n + 2});
          }
          out.push_back({"across", 1, f.n + 1});
        } else if constexpr (std::is_same_v<F, CompleteFamily>) {
          if (f.n >= 2) {
            out.push_back({"pair", 0, 1});
          }
        }
        return out;
      },
      family);
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) {
    throw ParameterError("log_grid: need 0 < lo < hi and at least two points");
  }
  std::vector<double> grid(count);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

LayerExperiment detect_layers_experiment(std::size_t d, std::size_t h,
                                         const std::vector<double>& weights,
                                         std::size_t generation, std::span<const double> q_grid,
                                         std::size_t replicas, std::uint64_t seed,
                                         std::size_t threads) {
  if (generation < 1 || generation > h) {
    throw ParameterError("detect_layers_experiment: generation must lie in 1..h");
  }
  const HierarchicalTreeFamily family{d, h, weights};
  const WeightedDigraph g = make_family(family);

  LayerExperiment out;
  out.generation = generation;
  out.leaf_distance = h - generation;
  // Breadth-first numbering: depth g starts at 1 + d + ... + d^{g-1}.
  Vertex first = 0;
  for (std::size_t i = 0, width = 1; i < generation; ++i, width *= d) {
    first += width;
  }
  out.child = first;
  out.parent = (first - 1) / d;
  out.threshold = weights[generation - 1] *
                  std::pow(static_cast<double>(d), -static_cast<double>(out.leaf_distance));

  const std::vector<SweepQuery> query = {{"layer", out.parent, out.child}};
  out.table = sweep(g, family, q_grid, query, replicas, seed, threads);

  auto u = [&](double log_q) { return u_tree_exact(g, out.parent, out.child, std::exp(log_q)); };
  for (std::size_t i = 0; i + 1 < out.table.rows.size(); ++i) {
    const auto& a = out.table.rows[i];
    const auto& b = out.table.rows[i + 1];
    if (a.exact && b.exact && *a.exact < 0.5 && *b.exact >= 0.5) {
      double lo = std::log(a.q);
      double hi = std::log(b.q);
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (u(mid) < 0.5 ? lo : hi) = mid;
      }
      out.crossing = std::exp(0.5 * (lo + hi));
      break;
    }
  }
  return out;
}

}  // namespace lep
