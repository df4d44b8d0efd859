#pragma once

// Single-qubit suites with known structure, shared by unit and acceptance
// tests. Domains are a unitary rotation of a spread-out reference set, so
// distinct-range structure is never masked by clustered domain points.

#include <random>
#include <vector>

#include "postselect/suites.hpp"
#include "support.hpp"

namespace testsupport {

inline std::vector<postselect::ProjectivePoint> spread_domain(std::size_t ell, std::mt19937_64& rng) {
  using postselect::RiemannPoint;
  const RiemannPoint ref[6] = {RiemannPoint::from_value(0.0),  RiemannPoint::infinity(),
                               RiemannPoint::from_value(1.0),  RiemannPoint::from_value(-1.0),
                               RiemannPoint::from_value(cplx(0.0, 1.0)), RiemannPoint::from_value(cplx(0.0, -1.0))};
  const ComplexMatrix u = random_unitary(2, rng);
  std::vector<postselect::ProjectivePoint> out;
  for (std::size_t i = 0; i < ell; ++i) {
    out.push_back(postselect::ProjectivePoint::from_vector(u * postselect::from_riemann(ref[i]).vector()));
  }
  return out;
}

// Point at FS distance >= min_fs from every point in `avoid`.
inline postselect::ProjectivePoint far_point(const std::vector<postselect::ProjectivePoint>& avoid,
                                            double min_fs, std::mt19937_64& rng) {
  for (;;) {
    auto p = random_point(2, rng);
    bool ok = true;
    for (const auto& q : avoid) ok = ok && postselect::fs_distance(p, q) >= min_fs;
    if (ok) return p;
  }
}

inline postselect::Suite pl_suite(std::size_t ell, std::mt19937_64& rng) {
  auto dom = spread_domain(ell, rng);
  const ComplexMatrix l = gaussian(2, 2, rng);
  std::vector<postselect::ProjectivePoint> ran;
  for (const auto& p : dom) ran.push_back(*postselect::apply_ql(l, p));
  return {std::move(dom), std::move(ran)};
}

// Range: ell-1 copies of p and one q at position `outlier`.
inline postselect::Suite border_suite(std::size_t ell, std::size_t outlier, std::mt19937_64& rng) {
  auto dom = spread_domain(ell, rng);
  const auto p = random_point(2, rng);
  const auto q = far_point({p}, 0.5, rng);
  std::vector<postselect::ProjectivePoint> ran(ell, p);
  ran[outlier] = q;
  return {std::move(dom), std::move(ran)};
}

// Range given by cluster labels, e.g. {0,0,1,1} for 2+2; clusters well apart.
inline postselect::Suite clustered_suite(const std::vector<int>& labels, std::mt19937_64& rng) {
  auto dom = spread_domain(labels.size(), rng);
  std::vector<postselect::ProjectivePoint> centers;
  int k = 0;
  for (int l : labels) k = std::max(k, l + 1);
  for (int i = 0; i < k; ++i) centers.push_back(far_point(centers, 0.5, rng));
  std::vector<postselect::ProjectivePoint> ran;
  for (int l : labels) ran.push_back(centers[static_cast<std::size_t>(l)]);
  return {std::move(dom), std::move(ran)};
}

}  // namespace testsupport
