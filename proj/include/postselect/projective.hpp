#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "postselect/linalg.hpp"

namespace postselect {

// Point of CP^{n-1}. Stored as the canonical representative: unit norm, with
// the entry of largest magnitude rotated to be real and positive.
class ProjectivePoint {
 public:
  ProjectivePoint() = default;
  explicit ProjectivePoint(std::vector<cplx> coords);
  static ProjectivePoint from_vector(const ComplexMatrix& v);

  std::size_t dim() const noexcept { return coords_.size(); }
  std::span<const cplx> coords() const noexcept { return coords_; }
  const cplx& operator[](std::size_t i) const { return coords_[i]; }
  ComplexMatrix vector() const;

 private:
  std::vector<cplx> coords_;
};

// Equality tolerance on FS distance, shared by suites and tetrad analysis.
inline constexpr double kPointTol = 1e-9;

double fs_distance(const ProjectivePoint& p, const ProjectivePoint& q);

// Q(L v), or nullopt when L v vanishes (relative to ||L||_max).
std::optional<ProjectivePoint> apply_ql(const ComplexMatrix& l, const ProjectivePoint& p);

bool in_general_position(std::span<const ProjectivePoint> points, std::size_t n);

// Invertible L (normalized to ||L||_max = 1) with Q L mapping ps[i] to qs[i];
// unique up to a scalar. Both tuples hold n+1 points in general position.
ComplexMatrix pl_from_correspondence(std::span<const ProjectivePoint> ps,
                                     std::span<const ProjectivePoint> qs);

// ---- Riemann sphere (n = 2) ----

// Homogeneous pair (a : b) with value a/b; b = 0 is infinity.
// Canonicalized so that max(|a|, |b|) = 1.
class RiemannPoint {
 public:
  RiemannPoint() : a_(0.0), b_(1.0) {}
  RiemannPoint(cplx a, cplx b);
  static RiemannPoint from_value(cplx z) { return {z, 1.0}; }
  static RiemannPoint infinity() { return {1.0, 0.0}; }

  cplx a() const noexcept { return a_; }
  cplx b() const noexcept { return b_; }
  bool is_infinite() const noexcept { return b_ == cplx{}; }
  // a/b; callers check is_infinite() first.
  cplx value() const { return a_ / b_; }

 private:
  cplx a_;
  cplx b_;
};

// Fractional linear map z -> (m00 z + m01) / (m10 z + m11).
class Moebius {
 public:
  explicit Moebius(ComplexMatrix m);  // throws SingularMatrix if not invertible
  const ComplexMatrix& matrix() const noexcept { return m_; }
  Moebius inverse() const;
  friend Moebius compose(const Moebius& f, const Moebius& g);  // f after g

 private:
  ComplexMatrix m_;
};

RiemannPoint to_riemann(const ProjectivePoint& p);
ProjectivePoint from_riemann(const RiemannPoint& z);

RiemannPoint moebius_apply(const Moebius& f, const RiemannPoint& z);

// Euclidean distance between Bloch-sphere images, 2 sin(FS).
double chordal_distance(const RiemannPoint& x, const RiemannPoint& y);
double fs_distance(const RiemannPoint& x, const RiemannPoint& y);

enum class TetradConfiguration { Distinct, TwoOneOne, TwoTwo, ThreeOne, Four };

// Coincidence pattern with points identified at FS distance <= kPointTol.
TetradConfiguration tetrad_configuration(const RiemannPoint& a, const RiemannPoint& b,
                                         const RiemannPoint& c, const RiemannPoint& d);

// chi(a,b,c,d) = ((a-c)/(b-c)) * ((b-d)/(a-d)) evaluated on homogeneous
// brackets, so infinity and the coincident 2+1+1 / 2+2 limits need no special
// cases. Throws SingularConfiguration for 3+1 and 4 tetrads.
RiemannPoint cross_ratio(const RiemannPoint& a, const RiemannPoint& b, const RiemannPoint& c,
                         const RiemannPoint& d);

// Inverse stereographic projection from the north pole; infinity -> (0,0,1).
std::array<double, 3> to_bloch(const RiemannPoint& z);

}  // namespace postselect
