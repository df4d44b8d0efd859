#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "postselect/suites.hpp"

namespace postselect {

// Seed of the independent stream for sample `index` (splitmix64 finalizer of
// the pair), so results do not depend on how samples are scheduled.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) noexcept;

// FS-uniform point: a normalized standard complex Gaussian vector.
ProjectivePoint sample_point(std::size_t n, std::mt19937_64& rng);

// 2*ell i.i.d. uniform points; the domain half is redrawn until distinct.
Suite sample_suite(std::size_t n, std::size_t ell, std::mt19937_64& rng);

// Fit settings used inside the sampling pipeline.
FitOptions pipeline_fit_options();

struct SamplingOptions {
  FitOptions fit = pipeline_fit_options();
  unsigned threads = 0;  // 0: hardware concurrency
};

// Fraction of sampled suites with an "approximable" verdict at eps. A lower
// bound on the true fraction, since the optimizer may miss witnesses.
double estimate_fraction(std::size_t n, std::size_t ell, double eps, std::size_t samples,
                         std::uint64_t seed, const SamplingOptions& opts = {});

// Best fit distance of every sample (no early exit), reusable across an
// eps grid: sample k is approximable at eps iff distances[k] < eps.
std::vector<double> approximable_distances(std::size_t n, std::size_t ell, std::size_t samples,
                                           std::uint64_t seed, const SamplingOptions& opts = {});

std::vector<double> fractions_below(const std::vector<double>& distances,
                                    const std::vector<double>& eps_grid);

// Fraction of sampled suites that exact_realize_suite realizes.
double exact_fraction(std::size_t n, std::size_t ell, std::size_t samples, std::uint64_t seed);

struct ScalingReport {
  std::size_t n = 0;
  std::size_t ell = 0;
  std::vector<double> eps_grid;
  std::vector<double> fractions;
  double slope = 0.0;
  double intercept = 0.0;
  double predicted_exponent = 0.0;  // 2 (ell - n - 1)(n - 1)
  std::size_t samples_per_eps = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> notes;  // grid points left out of the fit
};

// OLS of log(fraction) on log(eps). Fractions equal to 0 or 1 are excluded
// with a note; fewer than 3 usable points throws DegenerateGrid.
ScalingReport fit_scaling(std::size_t n, std::size_t ell, std::vector<double> eps_grid,
                          std::vector<double> fractions, std::size_t samples, std::uint64_t seed);

// Samples once, fits each suite once, and thresholds the distances on the grid.
ScalingReport run_scaling(std::size_t n, std::size_t ell, const std::vector<double>& eps_grid,
                          std::size_t samples, std::uint64_t seed, const SamplingOptions& opts = {});

}  // namespace postselect
