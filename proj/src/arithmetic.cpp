#include "rlab/arithmetic.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "rlab/errors.hpp"

namespace rlab {

namespace {

std::size_t mod(std::int64_t x, std::size_t m) {
  const auto r = x % static_cast<std::int64_t>(m);
  return static_cast<std::size_t>(r < 0 ? r + static_cast<std::int64_t>(m) : r);
}

bool content_line(std::string& line) {
  if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
  return line.find_first_not_of(" \t\r") != std::string::npos;
}

// Reads a positive header integer, then calls row(fields, line_no) per line.
template <class Row>
std::size_t read_sized(std::istream& in, const char* what, Row&& row) {
  std::string line;
  std::size_t line_no = 0;
  long long size = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!content_line(line)) continue;
    std::istringstream fields(line);
    if (size < 0) {
      std::string extra;
      if (!(fields >> size) || size < 1 || (fields >> extra))
        throw InputError("line " + std::to_string(line_no) + ": expected header `" + what + "`");
      continue;
    }
    row(fields, line_no, static_cast<std::size_t>(size));
  }
  if (size < 0) throw InputError(std::string("missing `") + what + "` header");
  return static_cast<std::size_t>(size);
}

}  // namespace

GridSet GridSet::make(std::size_t M, const std::vector<std::pair<std::int64_t, std::int64_t>>& points) {
  if (M < 1) throw InputError("grid side must be positive");
  GridSet g{M, std::vector<Bitset>(M, Bitset(M))};
  for (auto [a, b] : points) {
    if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= M || static_cast<std::size_t>(b) >= M)
      throw InputError("grid point out of range");
    g.rows[static_cast<std::size_t>(a)].set(static_cast<std::size_t>(b));
  }
  return g;
}

GridSet GridSet::full(std::size_t M) {
  if (M < 1) throw InputError("grid side must be positive");
  return GridSet{M, std::vector<Bitset>(M, Bitset(M, true))};
}

bool GridSet::contains(std::int64_t a, std::int64_t b) const { return rows[mod(a, M)].test(mod(b, M)); }

std::size_t GridSet::size() const {
  std::size_t s = 0;
  for (const auto& r : rows) s += r.count();
  return s;
}

Bitset GridSet::flat() const {
  Bitset f(M * M);
  for (std::size_t a = 0; a < M; ++a) rows[a].for_each([&](std::size_t b) { f.set(a * M + b); });
  return f;
}

BigInt count_aps(const ZnSet& a, std::size_t k, bool exclude_degenerate) {
  if (k < 1) throw InputError("progression length must be at least 1");
  const std::size_t n = a.N;
  BigInt total = 0;
  for (std::size_t r = exclude_degenerate ? 1 : 0; r < n; ++r) {
    Bitset hit = a.members;
    for (std::size_t j = 1; j < k && hit.any(); ++j) hit &= a.members.rotated((j * r) % n);
    total += static_cast<unsigned long>(hit.count());
  }
  return total;
}

BigInt count_corners(const GridSet& a, bool exclude_degenerate) {
  const std::size_t m = a.M;
  BigInt total = 0;
  for (std::size_t r = exclude_degenerate ? 1 : 0; r < m; ++r) {
    unsigned long c = 0;
    for (std::size_t x = 0; x < m; ++x) {
      // b in row x, b in row x+r, b+r in row x.
      c += (a.rows[x] & a.rows[(x + r) % m]).and_count(a.rows[x].rotated(r));
    }
    total += c;
  }
  return total;
}

Bitset ShiftSystem::shifted(std::int64_t p, std::int64_t q) const {
  const std::size_t m = a.M;
  Bitset out(m * m);
  const std::size_t dp = mod(p, m), dq = mod(q, m);
  for (std::size_t x = 0; x < m; ++x) {
    const Bitset row = a.rows[(x + dp) % m].rotated(dq);
    row.for_each([&](std::size_t y) { out.set(x * m + y); });
  }
  return out;
}

Rational tripartite_embed_prob(const ShiftSystem& sys, std::size_t N) {
  if (N < 1) throw InputError("N must be at least 1");
  std::map<std::pair<std::int64_t, std::int64_t>, Bitset> cache;
  auto at = [&](std::int64_t p, std::int64_t q) -> const Bitset& {
    const auto key = std::make_pair(static_cast<std::int64_t>(mod(p, sys.a.M)), static_cast<std::int64_t>(mod(q, sys.a.M)));
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, sys.shifted(key.first, key.second)).first;
    return it->second;
  };
  BigInt hits = 0;
  const auto n = static_cast<std::int64_t>(N);
  for (std::int64_t n1 = 1; n1 <= n; ++n1)
    for (std::int64_t n2 = 1; n2 <= n; ++n2)
      for (std::int64_t n3 = 1; n3 <= n; ++n3) {
        const Bitset& e12 = at(n1, n2);
        const Bitset& e23 = at(n3 - n2, n2);
        const Bitset& e31 = at(n1, n3 - n1);
        hits += static_cast<unsigned long>((e12 & e23).and_count(e31));
      }
  BigInt den = static_cast<unsigned long>(sys.points());
  den *= BigInt(static_cast<unsigned long>(N)) * static_cast<unsigned long>(N) * static_cast<unsigned long>(N);
  return make_rational(hits, den);
}

Rational recurrence_probability(const ShiftSystem& sys, std::int64_t n) {
  const Bitset base = sys.a.flat();
  const std::size_t c = (base & sys.shifted(n, 0)).and_count(sys.shifted(0, n));
  return make_rational(BigInt(static_cast<unsigned long>(c)), BigInt(static_cast<unsigned long>(sys.points())));
}

Rational recurrence_window_average(const ShiftSystem& sys, std::size_t N) {
  Rational sum = 0;
  const auto n = static_cast<std::int64_t>(N);
  for (std::int64_t k = -n; k <= n; ++k) sum += recurrence_probability(sys, k);
  return sum / Rational(static_cast<long>(2 * N + 1));
}

Rational tripartite_identity_rhs(const ShiftSystem& sys, std::size_t N) {
  if (N < 1) throw InputError("N must be at least 1");
  // n3 - n2 - n1 takes each value in [1-2N, N-2]; count multiplicities first.
  const auto n = static_cast<std::int64_t>(N);
  std::map<std::int64_t, long> mult;
  for (std::int64_t n1 = 1; n1 <= n; ++n1)
    for (std::int64_t n2 = 1; n2 <= n; ++n2)
      for (std::int64_t n3 = 1; n3 <= n; ++n3) ++mult[n3 - n2 - n1];
  Rational sum = 0;
  for (auto [k, c] : mult) sum += recurrence_probability(sys, k) * Rational(c);
  return sum / Rational(static_cast<long>(N * N * N));
}

Rational tripartite_upper_bound(const ShiftSystem& sys, std::size_t N) {
  if (N < 1) throw InputError("N must be at least 1");
  Rational sum = 0;
  const auto n = static_cast<std::int64_t>(N);
  for (std::int64_t k = -2 * n; k <= n; ++k) sum += recurrence_probability(sys, k);
  return sum / Rational(static_cast<long>(N));
}

Hypergraph corners_to_tripartite(const GridSet& a) {
  const std::size_t m = a.M;
  std::vector<Edge> edges;
  const auto M = static_cast<Vertex>(m);
  // Each (p, q) in A yields x=p ~ y=q, y=q ~ z=p+q and x=p ~ z=p+q.
  for (std::size_t p = 0; p < m; ++p)
    a.rows[p].for_each([&](std::size_t q) {
      const auto x = static_cast<Vertex>(p), y = M + static_cast<Vertex>(q);
      const auto z = 2 * M + static_cast<Vertex>((p + q) % m);
      edges.push_back({x, y});
      edges.push_back({y, z});
      edges.push_back({x, z});
    });
  return Hypergraph::build(3 * m, 2, std::move(edges));
}

ZnSet read_zn_set(std::istream& in) {
  std::vector<std::int64_t> elems;
  const std::size_t n = read_sized(in, "N", [&](std::istringstream& f, std::size_t line_no, std::size_t size) {
    long long v;
    std::string extra;
    if (!(f >> v) || (f >> extra)) throw InputError("line " + std::to_string(line_no) + ": expected one integer");
    if (v < 0 || static_cast<std::size_t>(v) >= size)
      throw InputError("line " + std::to_string(line_no) + ": element out of range");
    elems.push_back(v);
  });
  return ZnSet::make(n, elems);
}

void write_zn_set(std::ostream& out, const ZnSet& a) {
  out << a.N << '\n';
  a.members.for_each([&](std::size_t x) { out << x << '\n'; });
}

ZnSet load_zn_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return read_zn_set(in);
}

GridSet read_grid_set(std::istream& in) {
  std::vector<std::pair<std::int64_t, std::int64_t>> pts;
  const std::size_t m = read_sized(in, "M", [&](std::istringstream& f, std::size_t line_no, std::size_t size) {
    long long x, y;
    std::string extra;
    if (!(f >> x >> y) || (f >> extra)) throw InputError("line " + std::to_string(line_no) + ": expected `x y`");
    if (x < 0 || y < 0 || static_cast<std::size_t>(x) >= size || static_cast<std::size_t>(y) >= size)
      throw InputError("line " + std::to_string(line_no) + ": point out of range");
    pts.emplace_back(x, y);
  });
  return GridSet::make(m, pts);
}

void write_grid_set(std::ostream& out, const GridSet& a) {
  out << a.M << '\n';
  for (std::size_t x = 0; x < a.M; ++x) a.rows[x].for_each([&](std::size_t y) { out << x << ' ' << y << '\n'; });
}

GridSet load_grid_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return read_grid_set(in);
}

}  // namespace rlab
