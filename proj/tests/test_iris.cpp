#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "mscs/iris.hpp"
#include "oracles.hpp"

using namespace mscs;
using namespace mscs::cases;

namespace {

const IrisDataset& iris() {
  static const IrisDataset d = load_iris(MSCS_IRIS_PATH);
  return d;
}

std::vector<oracle::Point> points(const IrisDataset& d) {
  std::vector<oracle::Point> out;
  for (const auto& f : d.features) out.push_back({f[0], f[1], f[2], f[3]});
  return out;
}

Vec class_means(const IrisDataset& d) {
  Vec c(12, 0.0);
  for (std::size_t i = 0; i < d.features.size(); ++i)
    for (std::size_t a = 0; a < 4; ++a) c[static_cast<std::size_t>(d.labels[i]) * 4 + a] += d.features[i][a] / 50.0;
  return c;
}

std::string file_text() {
  std::ifstream in(MSCS_IRIS_PATH);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(IrisLoad, CanonicalFile) {
  const auto& d = iris();
  ASSERT_EQ(d.features.size(), 150u);
  ASSERT_EQ(d.label_names.size(), 3u);
  EXPECT_EQ(d.label_names[0], "Iris-setosa");
  EXPECT_EQ(d.features[0], (Features{5.1, 3.5, 1.4, 0.2}));
  EXPECT_EQ(d.labels[0], 0);
  for (int l = 0; l < 3; ++l) EXPECT_EQ(std::count(d.labels.begin(), d.labels.end(), l), 50);
}

TEST(IrisLoad, RejectsMissingRow) {
  std::string text = file_text();
  text.erase(0, text.find('\n') + 1);
  std::istringstream in(text);
  EXPECT_THROW(parse_iris(in), IngestionError);
}

TEST(IrisLoad, MalformedLineCarriesLineNumber) {
  std::string text = file_text();
  std::size_t pos = 0;
  for (int i = 0; i < 6; ++i) pos = text.find('\n', pos) + 1;
  text.replace(pos, 3, "x.y");  // line 7
  std::istringstream in(text);
  try {
    parse_iris(in);
    FAIL() << "expected IngestionError";
  } catch (const IngestionError& e) {
    EXPECT_EQ(e.line(), 7u);
  }
  std::istringstream few("5.1,3.5,1.4,Iris-setosa\n");
  EXPECT_THROW(parse_iris(few), IngestionError);
  EXPECT_THROW(load_iris("/nonexistent/iris.data"), IngestionError);
}

TEST(IrisLoad, ToleratesBlankLinesAndCrlf) {
  std::string text = file_text();
  std::string crlf;
  for (char c : text) {
    if (c == '\n') crlf += '\r';
    crlf += c;
  }
  std::istringstream in(crlf + "\n\n");
  EXPECT_EQ(parse_iris(in).features.size(), 150u);
}

TEST(Clustering, ObjectiveMatchesBruteForce) {
  const auto& d = iris();
  const auto p = clustering_problem(d);
  ASSERT_EQ(p.dim(), 12u);
  const Vec means = class_means(d);
  EXPECT_NEAR(p.value(means), oracle::cluster_objective(points(d), means), 1e-9);
  RngStream r(41);
  for (int i = 0; i < 50; ++i) {
    Vec c(12);
    for (std::size_t k = 0; k < 12; ++k) c[k] = r.uniform(p.lower[k], p.upper[k]);
    ASSERT_NEAR(p.value(c), oracle::cluster_objective(points(d), c), 1e-9);
    ASSERT_EQ(clustering_accuracy(c, d), oracle::cluster_accuracy(points(d), d.labels, c));
  }
}

TEST(Clustering, BoundsAreAttributeRanges) {
  const auto p = clustering_problem(iris());
  EXPECT_EQ(p.lower[0], 4.3);
  EXPECT_EQ(p.upper[0], 7.9);
  EXPECT_EQ(p.lower[4], 4.3);
  EXPECT_EQ(p.upper[11], 2.5);
}

TEST(Clustering, DegenerateCentres) {
  const auto& d = iris();
  Vec mean(4, 0.0);
  for (const auto& f : d.features)
    for (std::size_t a = 0; a < 4; ++a) mean[a] += f[a] / 150.0;
  Vec c;
  for (int k = 0; k < 3; ++k) c.insert(c.end(), mean.begin(), mean.end());
  double expected = 0.0;
  for (const auto& f : d.features) expected += euclidean(f, mean);
  EXPECT_NEAR(intra_cluster_distance(c, d), expected, 1e-9);
  EXPECT_NEAR(clustering_accuracy(c, d), 50.0 / 150.0, 1e-15);
}

TEST(Clustering, UnusedCentreFarAwayChangesNothing) {
  const auto& d = iris();
  Vec c = class_means(d);
  Vec two = c;
  // Put centre 2 far outside the hull; centre 1 takes over its points.
  for (std::size_t a = 0; a < 4; ++a) {
    two[8 + a] = 100.0;
    c[8 + a] = 200.0;
  }
  EXPECT_EQ(intra_cluster_distance(c, d), intra_cluster_distance(two, d));
}

TEST(Clustering, PermutationAndRelabelingInvariance) {
  const auto& d = iris();
  const Vec c = class_means(d);
  Vec swapped = c;
  std::swap_ranges(swapped.begin(), swapped.begin() + 4, swapped.begin() + 8);
  EXPECT_NEAR(intra_cluster_distance(c, d), intra_cluster_distance(swapped, d), 1e-9);
  EXPECT_EQ(clustering_accuracy(c, d), clustering_accuracy(swapped, d));
  IrisDataset relabeled = d;
  for (auto& l : relabeled.labels) l = (l + 1) % 3;
  EXPECT_EQ(clustering_accuracy(c, d), clustering_accuracy(c, relabeled));
  EXPECT_NEAR(clustering_accuracy(c, d), oracle::cluster_accuracy(points(d), d.labels, c), 1e-15);
  EXPECT_THROW(clustering_accuracy(Vec(11, 0.0), d), ParameterError);
}
