#include <charconv>
#include <locale>
#include <sstream>
#include <string>

#include "lep/errors.hpp"
#include "lep/graph.hpp"

namespace lep {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r' || s.back() == '\t')) {
    s.remove_suffix(1);
  }
  return s;
}

std::size_t parse_id(std::string_view s, std::size_t line_no) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw FormatError("line " + std::to_string(line_no) + ": bad vertex id '" + std::string(s) +
                      "'");
  }
  return v;
}

}  // namespace

WeightedDigraph load_edge_list(std::string_view text) {
  std::optional<std::size_t> declared_n;
  std::vector<Edge> edges;
  std::size_t max_id_plus_one = 0;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.empty()) {
      continue;
    }
    if (line.front() == '#') {
      auto body = trim(line.substr(1));
      if (body.starts_with("n=")) {
        declared_n = parse_id(trim(body.substr(2)), line_no);
      }
      continue;
    }
    std::string_view fields[3];
    std::size_t count = 0;
    while (!line.empty() && count < 4) {
      auto tab = line.find('\t');
      if (count < 3) {
        fields[count] = trim(line.substr(0, tab));
      }
      ++count;
      line = tab == std::string_view::npos ? std::string_view{} : line.substr(tab + 1);
    }
    if (count != 3) {
      throw FormatError("line " + std::to_string(line_no) + ": expected src<TAB>dst<TAB>weight");
    }
    Edge e;
    e.src = parse_id(fields[0], line_no);
    e.dst = parse_id(fields[1], line_no);
    std::istringstream ws{std::string(fields[2])};
    ws.imbue(std::locale::classic());
    ws >> e.weight;
    if (!ws || !ws.eof()) {
      throw FormatError("line " + std::to_string(line_no) + ": bad weight");
    }
    if (e.src == e.dst) {
      throw FormatError("line " + std::to_string(line_no) + ": self-loop at vertex " +
                        std::to_string(e.src));
    }
    if (!(e.weight > 0.0)) {
      throw FormatError("line " + std::to_string(line_no) + ": weight must be positive");
    }
    max_id_plus_one = std::max({max_id_plus_one, e.src + 1, e.dst + 1});
    edges.push_back(e);
  }
  const std::size_t n = declared_n.value_or(max_id_plus_one);
  if (max_id_plus_one > n) {
    throw FormatError("vertex id exceeds declared n=" + std::to_string(n));
  }
  try {
    return WeightedDigraph(n, std::move(edges));
  } catch (const ParameterError& err) {
    throw FormatError(err.what());
  }
}

std::string save_edge_list(const WeightedDigraph& g) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(17);
  os << "# n=" << g.size() << '\n';
  for (const Edge& e : g.edges()) {
    os << e.src << '\t' << e.dst << '\t' << e.weight << '\n';
  }
  return os.str();
}

}  // namespace lep
