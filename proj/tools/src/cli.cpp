#include "lep/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <locale>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lep/errors.hpp"
#include "lep/estimators.hpp"
#include "lep/family.hpp"
#include "lep/forest_enum.hpp"
#include "lep/graph.hpp"
#include "lep/rng.hpp"
#include "lep/spectral.hpp"
#include "lep/verification.hpp"
#include "lep/wilson.hpp"

namespace lep::cli {
namespace {

using nlohmann::json;

// Raised for malformed flag values; always names the flag.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string family;
  std::string graph_file;
  std::string q;
  std::string q_grid;
  std::string pair;
  std::size_t replicas = 0;
  bool replicas_set = false;
  std::uint64_t seed = 1;
  std::string format = "csv";
  std::string method = "auto";
  std::size_t threads = 0;
  std::vector<int> only;
};

struct Input {
  WeightedDigraph graph;
  std::optional<FamilySpec> family;
  std::string label;
};

std::string real(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(17);
  os << v;
  return os.str();
}

double parse_real(const std::string& text, const std::string& flag) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw UsageError(flag + ": '" + text + "' is not a number");
  }
  return v;
}

Input load_input(const Options& o) {
  if (o.family.empty() == o.graph_file.empty()) {
    throw UsageError("--family/--graph: give exactly one of them");
  }
  Input in;
  if (!o.family.empty()) {
    try {
      in.family = parse_family(o.family);
    } catch (const ParameterError& e) {
      throw UsageError(std::string("--family: ") + e.what());
    }
    in.graph = make_family(*in.family);
    in.label = to_string(*in.family);
    return in;
  }
  std::ifstream file(o.graph_file);
  if (!file) {
    throw UsageError("--graph: cannot open '" + o.graph_file + "'");
  }
  std::stringstream buf;
  buf << file.rdbuf();
  in.graph = load_edge_list(buf.str());
  in.label = o.graph_file;
  return in;
}

std::vector<double> load_grid(const Options& o, bool required) {
  if (!o.q.empty() && !o.q_grid.empty()) {
    throw UsageError("--q/--q-grid: give at most one of them");
  }
  if (!o.q.empty()) {
    return {parse_real(o.q, "--q")};
  }
  if (o.q_grid.empty()) {
    if (required) {
      throw UsageError("--q: an intensity or --q-grid is required");
    }
    return {};
  }
  const std::string& g = o.q_grid;
  std::vector<double> grid;
  if (g.rfind("log:", 0) == 0) {
    std::vector<std::string> parts;
    std::stringstream ss(g.substr(4));
    for (std::string p; std::getline(ss, p, ':');) {
      parts.push_back(p);
    }
    if (parts.size() != 3) {
      throw UsageError("--q-grid: expected log:LO:HI:COUNT");
    }
    const double lo = parse_real(parts[0], "--q-grid");
    const double hi = parse_real(parts[1], "--q-grid");
    const double count = parse_real(parts[2], "--q-grid");
    if (count < 2 || count != std::floor(count) || !(lo > 0) || !(hi > lo)) {
      throw UsageError("--q-grid: need 0 < LO < HI and an integer COUNT >= 2");
    }
    grid = log_grid(lo, hi, static_cast<std::size_t>(count));
  } else {
    std::stringstream ss(g);
    for (std::string p; std::getline(ss, p, ',');) {
      grid.push_back(parse_real(p, "--q-grid"));
    }
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || (i > 0 && !(grid[i] > grid[i - 1]))) {
      throw UsageError("--q-grid: values must be positive and strictly ascending");
    }
  }
  return grid;
}

// 1-based "x,y" to 0-based vertices.
std::pair<Vertex, Vertex> load_pair(const Options& o, const WeightedDigraph& g) {
  if (o.pair.empty()) {
    throw UsageError("--pair: a vertex pair X,Y is required");
  }
  const auto comma = o.pair.find(',');
  if (comma == std::string::npos) {
    throw UsageError("--pair: expected X,Y");
  }
  const double x = parse_real(o.pair.substr(0, comma), "--pair");
  const double y = parse_real(o.pair.substr(comma + 1), "--pair");
  const auto n = static_cast<double>(g.size());
  if (x != std::floor(x) || y != std::floor(y) || x < 1 || y < 1 || x > n || y > n || x == y) {
    throw UsageError("--pair: need two distinct vertices in 1.." + std::to_string(g.size()));
  }
  return {static_cast<Vertex>(x) - 1, static_cast<Vertex>(y) - 1};
}

void print_config(std::ostream& out, const std::string& command, const Options& o,
                  const Input& in) {
  if (o.format != "csv") {
    return;
  }
  out << "# command=" << command << " graph=" << in.label << " n=" << in.graph.size();
  if (!o.q.empty()) {
    out << " q=" << o.q;
  }
  if (!o.q_grid.empty()) {
    out << " q_grid=" << o.q_grid;
  }
  if (!o.pair.empty()) {
    out << " pair=" << o.pair;
  }
  out << " method=" << o.method << " replicas=" << o.replicas << " seed=" << o.seed << '\n';
}

json config_json(const std::string& command, const Options& o, const Input& in) {
  return {{"command", command}, {"graph", in.label},  {"n", in.graph.size()},
          {"q", o.q},           {"q_grid", o.q_grid}, {"pair", o.pair},
          {"method", o.method}, {"replicas", o.replicas}, {"seed", o.seed}};
}

int cmd_gen(const Options& o, std::ostream& out) {
  const Input in = load_input(o);
  if (o.format == "json") {
    json edges = json::array();
    for (const Edge& e : in.graph.edges()) {
      edges.push_back({e.src, e.dst, e.weight});
    }
    out << json{{"config", config_json("gen", o, in)}, {"n", in.graph.size()}, {"edges", edges}}
               .dump(2)
        << '\n';
    return kOk;
  }
  // The edge list is itself the output; its header carries the configuration.
  out << save_edge_list(in.graph);
  return kOk;
}

int cmd_z(const Options& o, std::ostream& out) {
  const Input in = load_input(o);
  const std::vector<double> grid = load_grid(o, true);
  std::optional<ForestEnsemble> ens;
  json rows = json::array();
  print_config(out, "z", o, in);
  if (o.format == "csv") {
    out << "q,method,log_z,z\n";
  }
  for (double q : grid) {
    std::string method = o.method;
    LogValue z;
    std::optional<double> direct;  // exact double from enumeration
    if (method == "auto") {
      method = in.graph.size() <= kMaxEnumerationSize ? "enum" : "det";
    }
    if (method == "enum") {
      if (!ens) {
        ens = enumerate_forests(in.graph);
      }
      direct = brute_Z(*ens, q);
      z = LogValue::from_double(*direct);
    } else if (method == "det") {
      z = partition_function(in.graph, q);
    } else if (method == "closed") {
      if (!in.family) {
        throw UsageError("--method: closed forms need --family");
      }
      const auto closed = family_partition_function(*in.family, q);
      if (!closed) {
        throw UsageError("--method: no closed-form partition function for " + in.label);
      }
      z = *closed;
    } else {
      throw UsageError("--method: z supports det, closed, enum or auto");
    }
    const bool representable = direct || z.representable();
    const double plain = direct ? *direct : z.to_double();
    if (o.format == "csv") {
      out << real(q) << ',' << method << ',' << real(z.logmag()) << ','
          << (representable ? real(plain) : "") << '\n';
    } else {
      rows.push_back({{"q", q},
                      {"method", method},
                      {"log_z", z.logmag()},
                      {"z", representable ? json(plain) : json()}});
    }
  }
  if (o.format == "json") {
    out << json{{"config", config_json("z", o, in)}, {"results", rows}}.dump(2) << '\n';
  }
  return kOk;
}

int cmd_corr(const Options& o, std::ostream& out) {
  const Input in = load_input(o);
  const std::vector<double> grid = load_grid(o, true);
  const auto [x, y] = load_pair(o, in.graph);
  std::optional<ForestEnsemble> ens;
  json rows = json::array();
  print_config(out, "corr", o, in);
  if (o.format == "csv") {
    out << "q,x,y,method,exact,estimate,stderr,R,seed\n";
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double q = grid[i];
    std::optional<double> exact;
    std::string method = o.method;
    if (method == "auto") {
      if (auto v = exact_correlation(in.graph, in.family, x, y, q)) {
        exact = v->value;
        method = v->method == ExactMethod::enumeration ? "enum"
                 : v->method == ExactMethod::tree      ? "det"
                                                       : "closed";
      } else {
        method = "mc";
      }
    } else if (method == "enum") {
      if (!ens) {
        ens = enumerate_forests(in.graph);
      }
      exact = 1.0 - brute_event(*ens, q, [x = x, y = y](const RootedForest& f) {
                return root_of(f, x) == root_of(f, y);
              });
    } else if (method == "det") {
      if (!is_undirected_tree(in.graph)) {
        throw UsageError("--method: det correlations need a tree");
      }
      exact = u_tree_exact(in.graph, x, y, q);
    } else if (method == "closed") {
      if (in.family) {
        exact = closed_form_correlation(*in.family, x, y, q);
      }
      if (!exact) {
        throw UsageError("--method: no closed form for this pair of " + in.label);
      }
    } else if (method != "mc") {
      throw UsageError("--method: expected det, closed, mc, enum or auto");
    }

    std::optional<SampleStats> mc;
    std::size_t replicas = o.replicas;
    if (method == "mc" && !o.replicas_set) {
      replicas = 100000;
    }
    if (replicas > 0 && (method == "mc" || o.replicas_set)) {
      mc = mc_correlation(in.graph, q, x, y, replicas, derive_seed(o.seed, i), o.threads);
    }
    if (o.format == "csv") {
      out << real(q) << ',' << x + 1 << ',' << y + 1 << ',' << method << ','
          << (exact ? real(*exact) : "") << ',' << (mc ? real(mc->estimate) : "") << ','
          << (mc ? real(mc->std_error) : "") << ',' << (mc ? mc->replicas : 0) << ','
          << (mc ? mc->seed : 0) << '\n';
    } else {
      rows.push_back({{"q", q},
                      {"x", x + 1},
                      {"y", y + 1},
                      {"method", method},
                      {"exact", exact ? json(*exact) : json()},
                      {"estimate", mc ? json(mc->estimate) : json()},
                      {"stderr", mc ? json(mc->std_error) : json()},
                      {"R", mc ? mc->replicas : 0},
                      {"seed", mc ? mc->seed : 0}});
    }
  }
  if (o.format == "json") {
    out << json{{"config", config_json("corr", o, in)}, {"results", rows}}.dump(2) << '\n';
  }
  return kOk;
}

int cmd_sample(const Options& o, std::ostream& out) {
  const Input in = load_input(o);
  const std::vector<double> grid = load_grid(o, true);
  if (grid.size() != 1) {
    throw UsageError("--q: sample takes a single intensity");
  }
  const std::size_t count = o.replicas_set ? o.replicas : 1;
  const ForestSampler sampler(in.graph, grid[0]);
  json rows = json::array();
  print_config(out, "sample", o, in);
  for (std::size_t r = 0; r < count; ++r) {
    Rng rng = Rng::for_stream(o.seed, r);
    const RootedForest f = sampler.sample(rng);
    const Partition p = partition_of(f);
    json doc = {{"replica", r},
                {"forest", json::parse(forest_to_json(f))},
                {"roots", root_set(f)},
                {"partition", p.blocks}};
    if (o.format == "csv") {
      out << doc.dump() << '\n';
    } else {
      rows.push_back(std::move(doc));
    }
  }
  if (o.format == "json") {
    out << json{{"config", config_json("sample", o, in)}, {"samples", rows}}.dump(2) << '\n';
  }
  return kOk;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  const Input in = load_input(o);
  const std::vector<double> grid = load_grid(o, true);
  std::vector<SweepQuery> queries;
  if (!o.pair.empty()) {
    const auto [x, y] = load_pair(o, in.graph);
    queries.push_back({"pair", x, y});
  } else if (in.family) {
    queries = family_queries(*in.family);
  } else {
    throw UsageError("--pair: required when sweeping an edge-list graph");
  }
  const SweepTable table =
      sweep(in.graph, in.family, grid, queries, o.replicas, o.seed, o.threads);
  if (o.format == "csv") {
    print_config(out, "sweep", o, in);
    out << table.to_csv();
  } else {
    out << json{{"config", config_json("sweep", o, in)}, {"rows", json::parse(table.to_json())}}
               .dump(2)
        << '\n';
  }
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  bool ok = true;
  json rows = json::array();
  if (o.format == "csv") {
    out << "# command=verify seed=fixed-per-criterion\n";
  }
  for (const Criterion& c : acceptance_criteria()) {
    if (!o.only.empty() && std::find(o.only.begin(), o.only.end(), c.id) == o.only.end()) {
      continue;
    }
    const CriterionResult r = run_criterion(c);
    ok = ok && r.passed;
    if (o.format == "csv") {
      out << format_result(r) << '\n' << std::flush;
    } else {
      rows.push_back({{"id", r.id},
                      {"name", r.name},
                      {"passed", r.passed},
                      {"detail", r.detail},
                      {"seconds", r.seconds}});
    }
  }
  if (o.format == "json") {
    out << json{{"passed", ok}, {"criteria", rows}}.dump(2) << '\n';
  }
  return ok ? kOk : kVerification;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Loop-erased partitioning: exact and Monte Carlo forest quantities", "lep"};
  app.require_subcommand(1);
  Options o;

  auto graph_flags = [&o](CLI::App* sub) {
    sub->add_option("--family", o.family, "family spec, e.g. path:n=10 or star:n=5,w=0.5");
    sub->add_option("--graph", o.graph_file, "edge-list file (src<TAB>dst<TAB>weight)");
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  };
  auto q_flags = [&o](CLI::App* sub) {
    sub->add_option("--q", o.q, "intensity q > 0");
    sub->add_option("--q-grid", o.q_grid, "log:LO:HI:COUNT or a comma-separated list");
  };
  auto mc_flags = [&o](CLI::App* sub) {
    sub->add_option("--replicas", o.replicas, "Monte Carlo replicas");
    sub->add_option("--seed", o.seed, "master seed");
    sub->add_option("--threads", o.threads, "worker threads (0 = all cores)");
  };

  CLI::App* gen = app.add_subcommand("gen", "print the edge list of a graph");
  graph_flags(gen);
  CLI::App* z = app.add_subcommand("z", "partition function Z(q) = det(qI - L)");
  graph_flags(z);
  q_flags(z);
  z->add_option("--method", o.method, "det, closed, enum or auto");
  CLI::App* corr = app.add_subcommand("corr", "two-point correlation U_q(x, y)");
  graph_flags(corr);
  q_flags(corr);
  mc_flags(corr);
  corr->add_option("--pair", o.pair, "1-based vertices X,Y");
  corr->add_option("--method", o.method, "det, closed, mc, enum or auto");
  CLI::App* sample = app.add_subcommand("sample", "draw rooted forests");
  graph_flags(sample);
  q_flags(sample);
  mc_flags(sample);
  CLI::App* sw = app.add_subcommand("sweep", "correlations over a q grid");
  graph_flags(sw);
  q_flags(sw);
  mc_flags(sw);
  sw->add_option("--pair", o.pair, "1-based vertices X,Y (default: family pairs)");
  CLI::App* verify = app.add_subcommand("verify", "run the acceptance checks");
  verify->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  verify->add_option("--only", o.only, "criterion ids to run");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  for (CLI::App* sub : {corr, sample, sw}) {
    if (sub->parsed() && sub->count("--replicas") > 0) {
      o.replicas_set = true;
    }
  }

  try {
    if (gen->parsed()) {
      return cmd_gen(o, out);
    }
    if (z->parsed()) {
      return cmd_z(o, out);
    }
    if (corr->parsed()) {
      return cmd_corr(o, out);
    }
    if (sample->parsed()) {
      return cmd_sample(o, out);
    }
    if (sw->parsed()) {
      return cmd_sweep(o, out);
    }
    return cmd_verify(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kNumeric;
  } catch (const std::invalid_argument& e) {
    // ParameterError and StructureError: bad values rather than bad syntax.
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::length_error& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const FormatError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kNumeric;
  }
}

}  // namespace lep::cli
