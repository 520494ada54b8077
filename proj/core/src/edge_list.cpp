#include "graphlim/edge_list.hpp"

#include <fstream>
#include <sstream>

#include "graphlim/errors.hpp"

namespace graphlim {
namespace {

// Strips a trailing `#` comment and surrounding whitespace.
std::string strip(const std::string& line) {
  std::string s = line.substr(0, line.find('#'));
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Graph parse_edge_list(std::istream& in, const std::string& source_name) {
  std::string line;
  int line_no = 0;
  bool have_header = false;
  long long n = 0;
  long long d = 0;
  std::vector<Edge> edges;
  auto fail = [&](const std::string& why) {
    throw InvalidInput(source_name + ":" + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const std::string s = strip(line);
    if (s.empty()) continue;
    std::istringstream fields(s);
    long long a = 0;
    long long b = 0;
    std::string extra;
    if (!(fields >> a >> b) || (fields >> extra)) fail("expected two integers, got '" + s + "'");
    if (!have_header) {
      if (a < 0 || a > 100'000'000) fail("vertex count out of range");
      if (b < 1 || b > 1'000'000) fail("degree bound must be a positive integer");
      n = a;
      d = b;
      have_header = true;
      continue;
    }
    if (a < 0 || b < 0 || a >= n || b >= n) fail("edge endpoint out of range");
    if (a >= b) fail("edge must satisfy u < v");
    edges.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
  }
  if (!have_header) throw InvalidInput(source_name + ": missing `n d` header line");
  try {
    return Graph(static_cast<int>(n), edges, static_cast<int>(d));
  } catch (const InvalidInput& e) {
    throw InvalidInput(source_name + ": " + e.what());
  }
}

Graph read_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open edge list '" + path + "'");
  return parse_edge_list(in, path);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.vertex_count() << ' ' << g.degree_bound() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  write_edge_list(out, g);
  return out.str();
}

}  // namespace graphlim
