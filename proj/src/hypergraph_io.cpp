#include <fstream>
#include <sstream>

#include "rlab/errors.hpp"
#include "rlab/hypergraph.hpp"

namespace rlab {

namespace {

// Strips a `#` comment and reports whether anything but whitespace remains.
bool content_line(std::string& line) {
  if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
  return line.find_first_not_of(" \t\r") != std::string::npos;
}

}  // namespace

Hypergraph read_hypergraph(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  long long d = -1;
  long long n = -1;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    if (!content_line(line)) continue;
    std::istringstream fields(line);
    if (d < 0) {
      if (!(fields >> d >> n) || d < 1 || n < 1)
        throw InputError("line " + std::to_string(line_no) + ": expected header `d n`");
      std::string extra;
      if (fields >> extra) throw InputError("line " + std::to_string(line_no) + ": trailing data in header");
      continue;
    }
    Edge e;
    long long v;
    while (fields >> v) {
      if (v < 0 || v >= n) throw InputError("line " + std::to_string(line_no) + ": vertex out of range");
      e.push_back(static_cast<Vertex>(v));
    }
    if (!fields.eof()) throw InputError("line " + std::to_string(line_no) + ": non-integer token");
    if (e.size() != static_cast<std::size_t>(d))
      throw InputError("line " + std::to_string(line_no) + ": edge arity differs from d");
    edges.push_back(std::move(e));
  }
  if (d < 0) throw InputError("missing `d n` header");
  return Hypergraph::build(static_cast<std::size_t>(n), static_cast<unsigned>(d), std::move(edges));
}

void write_hypergraph(std::ostream& out, const Hypergraph& g) {
  out << g.d() << ' ' << g.n() << '\n';
  for (const auto& e : g.edges()) {
    for (std::size_t i = 0; i < e.size(); ++i) out << (i ? " " : "") << e[i];
    out << '\n';
  }
}

std::string hypergraph_to_string(const Hypergraph& g) {
  std::ostringstream s;
  write_hypergraph(s, g);
  return s.str();
}

Hypergraph load_hypergraph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return read_hypergraph(in);
}

void save_hypergraph(const std::string& path, const Hypergraph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  write_hypergraph(out, g);
}

}  // namespace rlab
