#include "rlab/limits.hpp"

#include <map>
#include <ostream>

#include "rlab/errors.hpp"
#include "rlab/parallel.hpp"
#include "rlab/rng.hpp"

namespace rlab {

DensityRow density_vector(const Hypergraph& g, const std::vector<RegularEvent>& events, const DensityRowOptions& opt) {
  DensityRow row;
  for (std::size_t c = 0; c < events.size(); ++c) {
    if (opt.mode == DensityMode::exact) {
      row.exact.push_back(embed_prob_exact(g, events[c], opt.embed));
      row.value.push_back(row.exact.back().get_d());
    } else {
      const auto est = embed_prob_mc(g, events[c], opt.samples, mix64(opt.seed + c), opt.embed.threads);
      row.value.push_back(est.estimate);
      row.standard_error.push_back(est.standard_error);
    }
  }
  return row;
}

DensityTable density_table(const std::vector<Hypergraph>& graphs, const std::vector<RegularEvent>& events,
                           const DensityRowOptions& opt) {
  DensityTable t;
  for (const auto& e : events) t.columns.push_back(e.to_string());
  for (const auto& g : graphs) {
    auto row = density_vector(g, events, opt);
    t.value.push_back(std::move(row.value));
    if (opt.mode == DensityMode::exact)
      t.exact.push_back(std::move(row.exact));
    else
      t.standard_error.push_back(std::move(row.standard_error));
  }
  return t;
}

void DensityTable::write_csv(std::ostream& out) const {
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  };
  out << "row";
  for (const auto& c : columns) out << ',' << quote(c);
  out << '\n';
  for (std::size_t r = 0; r < value.size(); ++r) {
    out << r;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      out << ',';
      if (!exact.empty())
        out << to_string(exact[r][c]);
      else
        out << nlohmann::json(value[r][c]).dump();
    }
    out << '\n';
  }
}

Subsequence diagonal_subsequence(const DensityTable& table, double tol) {
  std::vector<std::size_t> rows(table.value.size());
  for (std::size_t r = 0; r < rows.size(); ++r) rows[r] = r;
  return diagonal_subsequence(table, rows, tol);
}

Subsequence diagonal_subsequence(const DensityTable& table, const std::vector<std::size_t>& rows, double tol) {
  if (!(tol > 0)) throw InputError("tolerance must be positive");
  if (table.value.empty()) throw InputError("density table is empty");
  const Rational width = rational_from_double(tol);
  Subsequence out;
  out.rows = rows;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    std::map<BigInt, std::vector<std::size_t>> bins;
    for (std::size_t r : out.rows) {
      const Rational v = table.exact.empty() ? rational_from_double(table.value[r][c]) : table.exact[r][c];
      BigInt k;
      const Rational q = v / width;
      mpz_fdiv_q(k.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
      bins[k].push_back(r);
    }
    const std::vector<std::size_t>* best = nullptr;
    for (const auto& [k, members] : bins)
      if (!best || members.size() > best->size()) best = &members;
    if (best) out.rows = *best;
  }
  out.degenerate = out.rows.size() < 2;
  return out;
}

std::vector<Vertex> trial_polls(std::size_t n, std::size_t count, std::uint64_t seed, std::size_t trial) {
  CounterStream rng(seed, stream_tag::regcurve, trial);
  std::vector<Vertex> polls(count);
  for (auto& p : polls) p = static_cast<Vertex>(rng.below(n));
  return polls;
}

Rational polling_defect(const Hypergraph& g, const std::vector<Vertex>& polls) {
  if (g.d() != 2) throw InputError("polling defect needs a graph (d = 2)");
  const std::size_t n = g.n();
  // Per signature class: vertex count, sum of degrees, sum of squared degrees.
  struct Acc {
    unsigned long count = 0;
    BigInt sum = 0, sq = 0;
  };
  std::map<std::vector<bool>, Acc> classes;
  std::vector<bool> sig(polls.size());
  for (Vertex v = 0; v < n; ++v) {
    for (std::size_t j = 0; j < polls.size(); ++j) sig[j] = g.adjacent(v, polls[j]);
    const auto deg = static_cast<unsigned long>(g.neighbors(v).count());
    auto& a = classes[sig];
    ++a.count;
    a.sum += deg;
    a.sq += BigInt(deg) * deg;
  }
  Rational total = 0;
  for (const auto& [s, a] : classes) total += Rational(a.sq) - Rational(a.sum * a.sum) / Rational(a.count);
  BigInt n3 = static_cast<unsigned long>(n);
  n3 = n3 * n3 * n3;
  total /= Rational(n3);
  total.canonicalize();
  return total;
}

RegularityCurve regularity_defect_curve(const Hypergraph& g, const std::vector<std::size_t>& poll_sizes,
                                        std::size_t trials, std::uint64_t seed, unsigned threads) {
  if (g.d() != 2) throw InputError("regularity curve needs a graph (d = 2)");
  if (trials < 1) throw InputError("need at least one trial");
  RegularityCurve c;
  c.poll_sizes = poll_sizes;
  c.trials = trials;
  std::size_t most = 0;
  for (auto s : poll_sizes) most = std::max(most, s);
  c.defect.assign(poll_sizes.size(), std::vector<Rational>(trials));
  parallel_for_blocks(trials, threads, [&](std::size_t t) {
    const auto polls = trial_polls(g.n(), most, seed, t);
    for (std::size_t i = 0; i < poll_sizes.size(); ++i)
      c.defect[i][t] = polling_defect(g, std::vector<Vertex>(polls.begin(), polls.begin() + poll_sizes[i]));
  });
  for (const auto& row : c.defect) {
    Rational sum = 0;
    for (const auto& d : row) sum += d;
    c.mean_defect.push_back(Rational(sum / Rational(static_cast<long>(trials))).get_d());
  }
  return c;
}

nlohmann::json RegularityCurve::to_json() const {
  nlohmann::json pts = nlohmann::json::array();
  for (std::size_t i = 0; i < poll_sizes.size(); ++i) {
    nlohmann::json per = nlohmann::json::array();
    for (const auto& d : defect[i]) per.push_back(rational_report(d));
    pts.push_back({{"poll_size", poll_sizes[i]}, {"mean_defect", mean_defect[i]}, {"trials", per}});
  }
  return {{"trials", trials}, {"curve", pts}};
}

}  // namespace rlab
