#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "postselect/linalg.hpp"
#include "postselect/projective.hpp"

namespace postselect {

// Finite transformation of CP^{n-1}: domain[i] -> range[i]. Domain points are
// pairwise distinct (FS distance > kPointTol).
class Suite {
 public:
  Suite(std::vector<ProjectivePoint> domain, std::vector<ProjectivePoint> range);

  std::size_t n() const noexcept { return n_; }
  std::size_t ell() const noexcept { return domain_.size(); }
  std::span<const ProjectivePoint> domain() const noexcept { return domain_; }
  std::span<const ProjectivePoint> range() const noexcept { return range_; }
  // Coordinate j of the 2*ell-tuple (domain first).
  const ProjectivePoint& point(std::size_t j) const;

 private:
  std::size_t n_ = 0;
  std::vector<ProjectivePoint> domain_;
  std::vector<ProjectivePoint> range_;
};

// Max FS distance over all 2*ell coordinates.
double suite_distance(const Suite& a, const Suite& b);

// Builds an n = 2 suite from Riemann-sphere points.
Suite riemann_suite(std::span<const RiemannPoint> domain, std::span<const RiemannPoint> range);

// ---- exact realization ----

// L (normalized to ||L||_max = 1) with Q L carrying every domain point to its
// range point, found in the nullspace of L v_i - mu_i w_i = 0 with all mu_i
// bounded away from zero. nullopt when no such L exists at tolerance.
std::optional<ComplexMatrix> exact_realize_suite(const Suite& sigma);

// lambda_min/lambda_max of the realizing operator, defined only when the
// realizing operator is unique up to scale. nullopt otherwise.
std::optional<double> suite_rho(const Suite& sigma);

// ---- approximation by PL suites ----

struct FitOptions {
  int restarts = 20;
  int max_iters = 500;
  std::uint64_t seed = 0;
  double initial_step = 0.1;
  double min_step = 1e-10;
  // Stop as soon as max_fs drops below this value; the search path itself
  // does not depend on it.
  double stop_below = 0.0;
};

struct FitResult {
  Suite tau;        // PL suite: range = Q L (domain)
  ComplexMatrix l;  // invertible witness
  double max_fs = 0.0;
  bool converged = false;
};

// Heuristic minimization of the max FS distance from sigma to a PL suite,
// moving both the operator and the domain points. Multi-start pattern search;
// the result is an upper bound on the true distance.
FitResult fit_suite(const Suite& sigma, const FitOptions& opts = {});

struct ApproxVerdict {
  bool yes = false;  // false means "unknown", never "no"
  std::optional<FitResult> witness;
};

ApproxVerdict is_eps_approximable(const Suite& sigma, double eps, FitOptions opts = {});

// ---- single-qubit structure ----

enum class SingleQubitClass {
  ExactlyRealizablePL,
  ExactlyRealizableSingular,
  BorderOfPL,
  NotInfinitelyApproximable,
};

const char* to_string(SingleQubitClass c) noexcept;

SingleQubitClass classify_single_qubit(const Suite& sigma);

struct BorderStep {
  Suite suite;      // PL suite on the domain of sigma
  ComplexMatrix l;  // operator realizing it
};

// k-th PL approximant of a border suite: conjugate the repeated range point p
// and the outlier q to (0, infinity), send the outlier's domain point to
// infinity by g, and restrict f^{-1} o (g / k) to the domain.
BorderStep border_sequence(const Suite& sigma, double k);

struct VarietyCheck {
  bool on_variety = true;
  std::vector<double> residuals;
};

// Cross-ratio equations chi(a1,a2,a3,ai) = chi(b1,b2,b3,bi), fractions
// cleared, each residual relative to the size of its two products.
VarietyCheck pl_variety_check(const Suite& sigma);

// |(ab + cd)/2 - ((a+b)/2)((c+d)/2)| for range (a,b,c,d) of a suite with
// domain (0, infinity, 1, -1).
double averages_identity_check(const Suite& sigma);

}  // namespace postselect
