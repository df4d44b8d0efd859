#include "postselect/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <exception>
#include <mutex>
#include <thread>

#include "postselect/error.hpp"

namespace postselect {

namespace {

std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void require_shape(std::size_t n, std::size_t ell) {
  if (n < 2 || ell < 1) throw Error(ErrorCode::BadOptions, "sampling needs n >= 2 and ell >= 1");
}

// Runs body(k) for k in [0, count) across worker threads; each index writes
// only its own slot, so the result is schedule independent.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  if (threads <= 1) {
    for (std::size_t k = 0; k < count; ++k) body(k);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t k = t; k < count; k += threads) body(k);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

Suite sample_at(std::size_t n, std::size_t ell, std::uint64_t seed, std::size_t k) {
  std::mt19937_64 rng(stream_seed(seed, k));
  return sample_suite(n, ell, rng);
}

}  // namespace

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(seed) ^ index);
}

ProjectivePoint sample_point(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  for (;;) {
    std::vector<cplx> c(n);
    double nrm2 = 0.0;
    for (auto& z : c) {
      z = {gauss(rng), gauss(rng)};
      nrm2 += std::norm(z);
    }
    if (nrm2 > 0.0) return ProjectivePoint(std::move(c));
  }
}

Suite sample_suite(std::size_t n, std::size_t ell, std::mt19937_64& rng) {
  require_shape(n, ell);
  std::vector<ProjectivePoint> domain;
  while (domain.size() < ell) {
    ProjectivePoint p = sample_point(n, rng);
    const bool fresh = std::none_of(domain.begin(), domain.end(), [&](const ProjectivePoint& q) {
      return fs_distance(p, q) <= kPointTol;
    });
    if (fresh) domain.push_back(std::move(p));
  }
  std::vector<ProjectivePoint> range;
  for (std::size_t i = 0; i < ell; ++i) range.push_back(sample_point(n, rng));
  return Suite(std::move(domain), std::move(range));
}

FitOptions pipeline_fit_options() {
  FitOptions f;
  f.restarts = 5;
  return f;
}

double estimate_fraction(std::size_t n, std::size_t ell, double eps, std::size_t samples,
                         std::uint64_t seed, const SamplingOptions& opts) {
  require_shape(n, ell);
  if (!(eps > 0.0) || samples == 0) throw Error(ErrorCode::BadOptions, "need eps > 0 and samples >= 1");
  std::vector<char> hit(samples, 0);
  parallel_for(samples, opts.threads, [&](std::size_t k) {
    FitOptions fo = opts.fit;
    fo.seed = stream_seed(seed, k);
    hit[k] = is_eps_approximable(sample_at(n, ell, seed, k), eps, fo).yes ? 1 : 0;
  });
  const auto count = std::count(hit.begin(), hit.end(), 1);
  return static_cast<double>(count) / static_cast<double>(samples);
}

std::vector<double> approximable_distances(std::size_t n, std::size_t ell, std::size_t samples,
                                           std::uint64_t seed, const SamplingOptions& opts) {
  require_shape(n, ell);
  std::vector<double> dist(samples, 0.0);
  parallel_for(samples, opts.threads, [&](std::size_t k) {
    FitOptions fo = opts.fit;
    fo.seed = stream_seed(seed, k);
    fo.stop_below = 0.0;
    dist[k] = fit_suite(sample_at(n, ell, seed, k), fo).max_fs;
  });
  return dist;
}

std::vector<double> fractions_below(const std::vector<double>& distances,
                                    const std::vector<double>& eps_grid) {
  if (distances.empty()) throw Error(ErrorCode::BadOptions, "no samples");
  std::vector<double> out;
  for (double eps : eps_grid) {
    const auto count = std::count_if(distances.begin(), distances.end(), [eps](double d) { return d < eps; });
    out.push_back(static_cast<double>(count) / static_cast<double>(distances.size()));
  }
  return out;
}

double exact_fraction(std::size_t n, std::size_t ell, std::size_t samples, std::uint64_t seed) {
  require_shape(n, ell);
  if (samples == 0) throw Error(ErrorCode::BadOptions, "samples must be positive");
  std::size_t ok = 0;
  for (std::size_t k = 0; k < samples; ++k) {
    if (exact_realize_suite(sample_at(n, ell, seed, k))) ++ok;
  }
  return static_cast<double>(ok) / static_cast<double>(samples);
}

ScalingReport fit_scaling(std::size_t n, std::size_t ell, std::vector<double> eps_grid,
                          std::vector<double> fractions, std::size_t samples, std::uint64_t seed) {
  if (eps_grid.size() != fractions.size()) {
    throw Error(ErrorCode::DimensionMismatch, "one fraction per grid point");
  }
  for (std::size_t i = 0; i < eps_grid.size(); ++i) {
    if (!(eps_grid[i] > 0.0) || (i > 0 && !(eps_grid[i] > eps_grid[i - 1]))) {
      throw Error(ErrorCode::DegenerateGrid, "eps grid must be positive and strictly increasing");
    }
    if (!(fractions[i] >= 0.0 && fractions[i] <= 1.0)) {
      throw Error(ErrorCode::BadOptions, "fractions must lie in [0, 1]");
    }
  }
  ScalingReport r;
  r.n = n;
  r.ell = ell;
  r.samples_per_eps = samples;
  r.seed = seed;
  r.predicted_exponent = 2.0 * (static_cast<double>(ell) - static_cast<double>(n) - 1.0) *
                         (static_cast<double>(n) - 1.0);

  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < eps_grid.size(); ++i) {
    if (fractions[i] <= 0.0 || fractions[i] >= 1.0) {
      r.notes.push_back("eps=" + std::to_string(eps_grid[i]) + " excluded: fraction " +
                        (fractions[i] <= 0.0 ? "0" : "1"));
      continue;
    }
    xs.push_back(std::log(eps_grid[i]));
    ys.push_back(std::log(fractions[i]));
  }
  r.eps_grid = std::move(eps_grid);
  r.fractions = std::move(fractions);
  if (xs.size() < 3) throw Error(ErrorCode::DegenerateGrid, "fewer than 3 usable grid points");

  const double m = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i] / m;
    my += ys[i] / m;
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  return r;
}

ScalingReport run_scaling(std::size_t n, std::size_t ell, const std::vector<double>& eps_grid,
                          std::size_t samples, std::uint64_t seed, const SamplingOptions& opts) {
  const auto dist = approximable_distances(n, ell, samples, seed, opts);
  return fit_scaling(n, ell, eps_grid, fractions_below(dist, eps_grid), samples, seed);
}

}  // namespace postselect
