#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numbers>

#include "postselect/error.hpp"
#include "postselect/montecarlo.hpp"
#include "support.hpp"

using namespace postselect;
using Catch::Approx;

namespace {

// Kolmogorov-Smirnov statistic of a sample against the CDF of the FS
// distance between two uniform points of CP^1, P(FS <= t) = sin^2 t.
double ks_against_uniform_fs(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const double m = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = std::sin(xs[i]) * std::sin(xs[i]);
    d = std::max({d, f - static_cast<double>(i) / m, static_cast<double>(i + 1) / m - f});
  }
  return d;
}

}  // namespace

TEST_CASE("sampled FS distances follow the uniform law", "[montecarlo]") {
  std::mt19937_64 rng(61);
  std::mt19937_64 urng(62);
  std::vector<double> plain, rotated;
  double sum = 0.0;
  const int count = 10000;
  for (int k = 0; k < count; ++k) {
    const auto p = sample_point(2, rng), q = sample_point(2, rng);
    const double d = fs_distance(p, q);
    plain.push_back(d);
    sum += d;
    const ComplexMatrix u = testsupport::random_unitary(2, urng);
    rotated.push_back(fs_distance(ProjectivePoint::from_vector(u * sample_point(2, rng).vector()),
                                  ProjectivePoint::from_vector(u * sample_point(2, rng).vector())));
  }
  CHECK(sum / count == Approx(std::numbers::pi / 4).margin(0.01));
  CHECK(ks_against_uniform_fs(plain) < 0.02);
  CHECK(ks_against_uniform_fs(rotated) < 0.02);
}

TEST_CASE("suite sampling is deterministic and valid", "[montecarlo]") {
  std::mt19937_64 a(5), b(5);
  const Suite s = sample_suite(3, 6, a), t = sample_suite(3, 6, b);
  CHECK(suite_distance(s, t) == 0.0);
  CHECK(s.n() == 3);
  CHECK(s.ell() == 6);
  CHECK(stream_seed(42, 0) != stream_seed(42, 1));
  CHECK(stream_seed(42, 7) == stream_seed(42, 7));
  CHECK_THROWS_AS(sample_suite(1, 3, a), Error);
}

TEST_CASE("n+1 point suites are always approximable", "[montecarlo]") {
  CHECK(estimate_fraction(2, 3, 1e-3, 50, 1) == 1.0);
  CHECK(exact_fraction(2, 3, 200, 2) == 1.0);
  CHECK(exact_fraction(3, 4, 200, 3) == 1.0);
  CHECK(estimate_fraction(2, 4, std::numbers::pi / 2, 50, 4) == 1.0);
}

TEST_CASE("early-exit estimates agree with thresholded distances", "[montecarlo]") {
  const std::vector<double> grid{0.05, 0.1, 0.2, 0.4};
  const auto dist = approximable_distances(2, 4, 60, 9);
  const auto fr = fractions_below(dist, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(estimate_fraction(2, 4, grid[i], 60, 9) == fr[i]);
    if (i > 0) CHECK(fr[i] >= fr[i - 1]);
  }
}

TEST_CASE("threaded and serial runs agree", "[montecarlo]") {
  SamplingOptions serial, threaded;
  serial.threads = 1;
  threaded.threads = 3;
  CHECK(approximable_distances(2, 4, 12, 17, serial) == approximable_distances(2, 4, 12, 17, threaded));
}

TEST_CASE("scaling fit on planted laws", "[montecarlo]") {
  const std::vector<double> grid{0.05, 0.1, 0.2};
  std::vector<double> sq, cube;
  for (double e : grid) {
    sq.push_back(e * e);
    cube.push_back(0.7 * e * e * e);
  }
  auto r = fit_scaling(2, 4, grid, sq, 100, 1);
  CHECK(r.slope == Approx(2.0).margin(1e-12));
  CHECK(r.predicted_exponent == 2.0);
  CHECK(r.notes.empty());
  r = fit_scaling(2, 4, grid, cube, 100, 1);
  CHECK(r.slope == Approx(3.0).margin(1e-12));
  CHECK(fit_scaling(3, 6, grid, sq, 1, 1).predicted_exponent == 8.0);

  const std::vector<double> four{0.05, 0.1, 0.2, 0.4};
  r = fit_scaling(2, 4, four, {0.0025, 0.01, 0.04, 1.0}, 100, 1);
  CHECK(r.notes.size() == 1);
  CHECK(r.slope == Approx(2.0).margin(1e-12));

  CHECK_THROWS_AS(fit_scaling(2, 4, grid, {0.0, 0.01, 0.04}, 100, 1), Error);
  CHECK_THROWS_AS(fit_scaling(2, 4, {0.1, 0.05, 0.2}, sq, 100, 1), Error);
}

TEST_CASE("scaling pipeline is reproducible", "[montecarlo]") {
  const std::vector<double> grid{0.1, 0.2, 0.4};
  const auto a = run_scaling(2, 4, grid, 80, 42);
  const auto b = run_scaling(2, 4, grid, 80, 42);
  CHECK(a.fractions == b.fractions);
  CHECK(a.slope == b.slope);
  CHECK(a.slope > 0.0);
}
