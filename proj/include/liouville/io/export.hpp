#pragma once

// JSON / CSV export. Needs nlohmann/json ("json.hpp") on the include path.

#include <iomanip>
#include <limits>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "liouville/numerics/complex.hpp"
#include "liouville/virasoro/block.hpp"
#include "liouville/virasoro/partition.hpp"

namespace liouville::io {

using Json = nlohmann::ordered_json;

inline Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Json complex_list_json(const std::vector<Complex>& v) {
  Json out = Json::array();
  for (Complex z : v) out.push_back(complex_json(z));
  return out;
}

inline Json matrix_json(const Eigen::MatrixXcd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json basis_json(int level) {
  Json out = Json::array();
  for (const Partition& p : partitions_of(level)) out.push_back(p.to_string());
  return out;
}

// {"normalization", weights, "level_pairs": [{n, m, rows, cols, entries}]}
inline Json coefficients_json(const BlockCoefficients& b) {
  Json pairs = Json::array();
  for (int n = 0; n <= b.max_level; ++n)
    for (int m = 0; m <= b.max_level; ++m) {
      if (!b.has_block(n, m)) continue;
      pairs.push_back({{"n", n}, {"m", m}, {"rows", basis_json(n)}, {"cols", basis_json(m)},
                       {"entries", matrix_json(b.block(n, m))}});
    }
  return {{"normalization", b.normalization == Normalization::RawW ? "raw" : "orthonormalized"},
          {"delta_insert", complex_json(b.delta_insert)},
          {"delta_spec", complex_json(b.delta_spec)},
          {"central_charge", complex_json(b.central_charge)},
          {"max_level", b.max_level},
          {"level_pairs", std::move(pairs)}};
}

inline Json series_json(const BlockSeries& s) {
  Json out{{"kind", to_string(s.kind)},
           {"weights", complex_list_json(s.weights)},
           {"spectrum", complex_list_json(s.spectrum)},
           {"central_charge", complex_json(s.central_charge)},
           {"truncation", s.truncation},
           {"requested_truncation", s.requested_truncation}};
  if (is_two_point(s.kind)) {
    Json pairs = Json::array();
    for (int n = 0; n <= s.truncation; ++n)
      for (int m = 0; m <= s.truncation; ++m) pairs.push_back({{"n", n}, {"m", m}, {"value", complex_json(s.coeffs(n, m))}});
    out["coefficients"] = std::move(pairs);
  } else {
    out["coefficients"] = complex_list_json(s.one_point_coefficients());
  }
  return out;
}

// CSV with columns P, re, im. The header lines start with '#' and echo the
// parameters as key=value.
inline void write_samples_csv(std::ostream& os, const std::vector<std::pair<double, Complex>>& samples,
                              const std::vector<std::pair<std::string, std::string>>& params) {
  for (const auto& [k, v] : params) os << "# " << k << "=" << v << "\n";
  os << "P,re,im\n";
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const auto& [P, v] : samples) os << P << "," << v.real() << "," << v.imag() << "\n";
}

}  // namespace liouville::io
