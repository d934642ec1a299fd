#pragma once

#include <cstdint>
#include <iosfwd>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "rlab/embedding.hpp"
#include "rlab/hypergraph.hpp"

namespace rlab {

enum class DensityMode { exact, mc };

struct DensityRowOptions {
  DensityMode mode = DensityMode::exact;
  std::uint64_t samples = 100000;  // mc only
  std::uint64_t seed = 0;          // mc only; column c uses mix64(seed + c)
  EmbedOptions embed;
};

// Rows are graphs, columns are events. `exact` is filled in exact mode only;
// `value` always holds the float rendering.
struct DensityTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> value;
  std::vector<std::vector<Rational>> exact;
  std::vector<std::vector<double>> standard_error;  // mc only

  bool is_exact() const { return !exact.empty() || value.empty(); }
  void write_csv(std::ostream& out) const;
};

struct DensityRow {
  std::vector<double> value;
  std::vector<Rational> exact;
  std::vector<double> standard_error;
};
DensityRow density_vector(const Hypergraph& g, const std::vector<RegularEvent>& events,
                          const DensityRowOptions& opt = {});
DensityTable density_table(const std::vector<Hypergraph>& graphs, const std::vector<RegularEvent>& events,
                           const DensityRowOptions& opt = {});

struct Subsequence {
  std::vector<std::size_t> rows;
  bool degenerate = false;  // fewer than two rows survive
};
// Column by column, keep the surviving rows in the fullest bin
// [k*tol, (k+1)*tol) (lowest k on ties). Exact values are binned exactly; float
// values are binned through their exact dyadic expansion.
Subsequence diagonal_subsequence(const DensityTable& table, double tol);
Subsequence diagonal_subsequence(const DensityTable& table, const std::vector<std::size_t>& rows, double tol);

struct RegularityCurve {
  std::vector<std::size_t> poll_sizes;
  std::vector<double> mean_defect;
  std::vector<std::vector<Rational>> defect;  // [size][trial], exact
  std::size_t trials = 0;

  nlohmann::json to_json() const;
};

// Defect of A_{1,3}, A_{2,3} over the factor generated by x_3's adjacency to
// the given poll vertices, with x_1, x_2, x_3 independent uniform. For binary
// events the L1 defect is the weighted within-class variance of deg(x_3)/n.
Rational polling_defect(const Hypergraph& g, const std::vector<Vertex>& polls);

// Trial t draws its polls from the stream (seed, t); size s uses the first s of
// them, so the sizes within a trial are nested.
RegularityCurve regularity_defect_curve(const Hypergraph& g, const std::vector<std::size_t>& poll_sizes,
                                        std::size_t trials, std::uint64_t seed, unsigned threads = 1);
std::vector<Vertex> trial_polls(std::size_t n, std::size_t count, std::uint64_t seed, std::size_t trial);

}  // namespace rlab
