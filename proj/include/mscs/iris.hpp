#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "mscs/errors.hpp"
#include "mscs/problem.hpp"

namespace mscs::cases {

inline constexpr std::size_t kIrisRows = 150;
inline constexpr std::size_t kIrisAttributes = 4;
inline constexpr std::size_t kIrisClasses = 3;
inline constexpr std::size_t kClusterDim = kIrisClasses * kIrisAttributes;

using Features = std::array<double, kIrisAttributes>;

struct IrisDataset {
  std::vector<Features> features;
  std::vector<int> labels;              // index into label_names
  std::vector<std::string> label_names;  // in order of first appearance

  void validate() const {
    if (features.size() != kIrisRows || labels.size() != kIrisRows)
      throw IngestionError("iris: expected " + std::to_string(kIrisRows) + " rows, got " +
                           std::to_string(features.size()));
    if (label_names.size() != kIrisClasses) throw IngestionError("iris: expected 3 distinct labels");
    std::array<std::size_t, kIrisClasses> counts{};
    for (int l : labels) ++counts[static_cast<std::size_t>(l)];
    for (std::size_t c : counts)
      if (c != kIrisRows / kIrisClasses) throw IngestionError("iris: expected 50 rows per label");
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace detail

/// Lines `f1,f2,f3,f4,label`. Blank lines are skipped.
inline IrisDataset parse_iris(std::istream& in) {
  IrisDataset data;
  std::map<std::string, int, std::less<>> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest = detail::trim(line);
    if (rest.empty()) continue;
    Features f{};
    for (std::size_t a = 0; a < kIrisAttributes; ++a) {
      const auto comma = rest.find(',');
      if (comma == std::string_view::npos) throw IngestionError("iris: too few fields", line_no);
      const auto field = detail::trim(rest.substr(0, comma));
      const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), f[a]);
      if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(f[a]))
        throw IngestionError("iris: bad number '" + std::string(field) + "'", line_no);
      rest.remove_prefix(comma + 1);
    }
    const auto label = detail::trim(rest);
    if (label.empty() || label.find(',') != std::string_view::npos)
      throw IngestionError("iris: expected a single label field", line_no);
    auto it = ids.find(label);
    if (it == ids.end()) {
      it = ids.emplace(std::string(label), static_cast<int>(data.label_names.size())).first;
      data.label_names.emplace_back(label);
    }
    data.features.push_back(f);
    data.labels.push_back(it->second);
  }
  data.validate();
  return data;
}

inline IrisDataset load_iris(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IngestionError("iris: cannot open '" + path + "'");
  return parse_iris(in);
}

inline double euclidean(const Features& p, std::span<const double> c) {
  double s = 0.0;
  for (std::size_t a = 0; a < kIrisAttributes; ++a) s += (p[a] - c[a]) * (p[a] - c[a]);
  return std::sqrt(s);
}

/// Index of the nearest of the three centres packed in `centres`; ties go to
/// the lower index.
inline std::size_t nearest_centre(const Features& p, std::span<const double> centres) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < kIrisClasses; ++c) {
    const double d = euclidean(p, centres.subspan(c * kIrisAttributes, kIrisAttributes));
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

inline double intra_cluster_distance(std::span<const double> centres, const IrisDataset& data) {
  double total = 0.0;
  for (const auto& p : data.features) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < kIrisClasses; ++c)
      best = std::min(best, euclidean(p, centres.subspan(c * kIrisAttributes, kIrisAttributes)));
    total += best;
  }
  return total;
}

/// 12-dimensional problem: three centres, bounded per attribute by the data range.
inline ObjectiveProblem clustering_problem(const IrisDataset& data) {
  data.validate();
  ObjectiveProblem p;
  p.name = "iris";
  Features lo, hi;
  lo.fill(std::numeric_limits<double>::infinity());
  hi.fill(-std::numeric_limits<double>::infinity());
  for (const auto& f : data.features)
    for (std::size_t a = 0; a < kIrisAttributes; ++a) {
      lo[a] = std::min(lo[a], f[a]);
      hi[a] = std::max(hi[a], f[a]);
    }
  for (std::size_t c = 0; c < kIrisClasses; ++c)
    for (std::size_t a = 0; a < kIrisAttributes; ++a) {
      p.lower.push_back(lo[a]);
      p.upper.push_back(hi[a]);
    }
  p.objective = [data](std::span<const double> x, RngStream*) { return intra_cluster_distance(x, data); };
  return p;
}

/// Fraction of points whose nearest centre maps to their label, maximized
/// over the six cluster-to-label bijections.
inline double clustering_accuracy(std::span<const double> centres, const IrisDataset& data) {
  if (centres.size() != kClusterDim) throw ParameterError("clustering accuracy: need 12 coordinates");
  // confusion[cluster][label]
  std::array<std::array<std::size_t, kIrisClasses>, kIrisClasses> confusion{};
  for (std::size_t i = 0; i < data.features.size(); ++i)
    ++confusion[nearest_centre(data.features[i], centres)][static_cast<std::size_t>(data.labels[i])];
  std::array<std::size_t, kIrisClasses> perm{0, 1, 2};
  std::size_t best = 0;
  do {
    std::size_t correct = 0;
    for (std::size_t c = 0; c < kIrisClasses; ++c) correct += confusion[c][perm[c]];
    best = std::max(best, correct);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(best) / static_cast<double>(data.features.size());
}

}  // namespace mscs::cases
