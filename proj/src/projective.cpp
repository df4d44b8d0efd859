#include "postselect/projective.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "postselect/combinations.hpp"
#include "postselect/error.hpp"

namespace postselect {

namespace {

// a_x b_y - b_x a_y; proportional to x - y for finite points.
cplx bracket(const RiemannPoint& x, const RiemannPoint& y) {
  return x.a() * y.b() - x.b() * y.a();
}

void require_dim(const ProjectivePoint& p, std::size_t n, const char* what) {
  if (p.dim() != n) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": expected dimension " +
                                                  std::to_string(n) + ", got " +
                                                  std::to_string(p.dim()));
  }
}

// Columns a_i v_i with v_{n+1} = sum_i a_i v_i, so the matrix sends e_i to
// v_i (i <= n) and e_1 + ... + e_n to v_{n+1}.
ComplexMatrix standard_frame(std::span<const ProjectivePoint> vs) {
  const std::size_t n = vs.front().dim();
  ComplexMatrix basis(n, n);
  for (std::size_t j = 0; j < n; ++j) basis.set_col(j, vs[j].vector());
  const ComplexMatrix coeffs = solve(basis, vs[n].vector());
  ComplexMatrix frame(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t r = 0; r < n; ++r) frame(r, j) = coeffs[j] * basis(r, j);
  return frame;
}

}  // namespace

ProjectivePoint::ProjectivePoint(std::vector<cplx> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw Error(ErrorCode::DimensionMismatch, "projective point needs coordinates");
  std::size_t lead = 0;
  double nrm2 = 0.0;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    const auto& z = coords_[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(ErrorCode::NonFinite, "projective point has NaN or Inf coordinate");
    }
    nrm2 += std::norm(z);
    if (std::abs(z) > std::abs(coords_[lead])) lead = i;
  }
  if (nrm2 == 0.0) throw Error(ErrorCode::ZeroVector, "the zero vector is not a projective point");
  const cplx rot = std::conj(coords_[lead]) / (std::abs(coords_[lead]) * std::sqrt(nrm2));
  for (auto& z : coords_) z *= rot;
  coords_[lead] = std::abs(coords_[lead]);
}

ProjectivePoint ProjectivePoint::from_vector(const ComplexMatrix& v) {
  return ProjectivePoint(std::vector<cplx>(v.data().begin(), v.data().end()));
}

ComplexMatrix ProjectivePoint::vector() const { return ComplexMatrix::column(coords_); }

double fs_distance(const ProjectivePoint& p, const ProjectivePoint& q) {
  require_dim(q, p.dim(), "fs_distance");
  // arccos |<p,q>| evaluated as atan2(|p ^ q|, |<p,q>|): the plain arccos
  // cannot resolve angles below ~1.5e-8 near 1. The wedge norm comes from
  // the Lagrange identity |p|^2 |q|^2 - |<p,q>|^2 = sum_{i<j} |p_i q_j - p_j q_i|^2.
  cplx s = 0.0;
  double wedge2 = 0.0;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    s += std::conj(p[i]) * q[i];
    for (std::size_t j = i + 1; j < p.dim(); ++j) wedge2 += std::norm(p[i] * q[j] - p[j] * q[i]);
  }
  return std::atan2(std::sqrt(wedge2), std::abs(s));
}

std::optional<ProjectivePoint> apply_ql(const ComplexMatrix& l, const ProjectivePoint& p) {
  if (!l.is_square() || l.cols() != p.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "apply_ql: operator and point dimensions differ");
  }
  const ComplexMatrix image = l * p.vector();
  if (!(norm(image) > 1e-10 * l.max_abs())) return std::nullopt;
  return ProjectivePoint::from_vector(image);
}

bool in_general_position(std::span<const ProjectivePoint> points, std::size_t n) {
  if (points.empty()) throw Error(ErrorCode::BadOptions, "in_general_position: empty list");
  for (const auto& p : points) require_dim(p, n, "in_general_position");
  const std::size_t k = std::min(n, points.size());
  for (const auto& subset : combinations(points.size(), k)) {
    ComplexMatrix m(n, k);
    for (std::size_t j = 0; j < k; ++j) m.set_col(j, points[subset[j]].vector());
    const auto s = singular_values(m);
    if (!(s.back() > kDefaultRankTol * s.front())) return false;
  }
  return true;
}

ComplexMatrix pl_from_correspondence(std::span<const ProjectivePoint> ps,
                                     std::span<const ProjectivePoint> qs) {
  if (ps.empty() || ps.size() != qs.size() || ps.size() != ps.front().dim() + 1) {
    throw Error(ErrorCode::DimensionMismatch, "pl_from_correspondence needs n+1 points per side");
  }
  const std::size_t n = ps.front().dim();
  if (!in_general_position(ps, n)) {
    throw Error(ErrorCode::NotGeneralPosition, "source points are not in general position");
  }
  if (!in_general_position(qs, n)) {
    throw Error(ErrorCode::NotGeneralPosition, "target points are not in general position");
  }
  ComplexMatrix l = standard_frame(qs) * inverse(standard_frame(ps));
  return l * cplx(1.0 / l.max_abs());
}

// ---- Riemann sphere ----

RiemannPoint::RiemannPoint(cplx a, cplx b) : a_(a), b_(b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (!std::isfinite(scale)) throw Error(ErrorCode::NonFinite, "Riemann point has NaN or Inf");
  if (scale == 0.0) throw Error(ErrorCode::ZeroVector, "(0 : 0) is not a point");
  a_ /= scale;
  b_ /= scale;
}

Moebius::Moebius(ComplexMatrix m) : m_(std::move(m)) {
  if (m_.rows() != 2 || m_.cols() != 2) throw Error(ErrorCode::DimensionMismatch, "Moebius map is 2x2");
  const double scale = m_.max_abs();
  if (!(scale > 0.0) || !m_.all_finite()) {
    throw Error(ErrorCode::SingularMatrix, "Moebius matrix is zero or non-finite");
  }
  m_ *= cplx(1.0 / scale);
  const cplx det = m_(0, 0) * m_(1, 1) - m_(0, 1) * m_(1, 0);
  if (std::abs(det) < 1e-12) throw Error(ErrorCode::SingularMatrix, "Moebius matrix is not invertible");
}

Moebius Moebius::inverse() const {
  return Moebius(ComplexMatrix{{m_(1, 1), -m_(0, 1)}, {-m_(1, 0), m_(0, 0)}});
}

Moebius compose(const Moebius& f, const Moebius& g) { return Moebius(f.m_ * g.m_); }

RiemannPoint to_riemann(const ProjectivePoint& p) {
  require_dim(p, 2, "to_riemann");
  return {p[0], p[1]};
}

ProjectivePoint from_riemann(const RiemannPoint& z) { return ProjectivePoint({z.a(), z.b()}); }

RiemannPoint moebius_apply(const Moebius& f, const RiemannPoint& z) {
  const ComplexMatrix& m = f.matrix();
  return {m(0, 0) * z.a() + m(0, 1) * z.b(), m(1, 0) * z.a() + m(1, 1) * z.b()};
}

double chordal_distance(const RiemannPoint& x, const RiemannPoint& y) {
  const double nx = std::hypot(std::abs(x.a()), std::abs(x.b()));
  const double ny = std::hypot(std::abs(y.a()), std::abs(y.b()));
  return 2.0 * std::abs(bracket(x, y)) / (nx * ny);
}

double fs_distance(const RiemannPoint& x, const RiemannPoint& y) {
  return fs_distance(from_riemann(x), from_riemann(y));
}

namespace {

// Cluster labels for a tetrad, coincidence closed under transitivity.
std::array<int, 4> tetrad_clusters(const std::array<const RiemannPoint*, 4>& pts) {
  const double tol = 2.0 * std::sin(kPointTol);
  std::array<int, 4> label{0, 1, 2, 3};
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (chordal_distance(*pts[i], *pts[j]) <= tol) {
        const int from = label[j], to = label[i];
        for (auto& l : label)
          if (l == from) l = to;
      }
    }
  }
  return label;
}

}  // namespace

TetradConfiguration tetrad_configuration(const RiemannPoint& a, const RiemannPoint& b,
                                         const RiemannPoint& c, const RiemannPoint& d) {
  const auto label = tetrad_clusters({&a, &b, &c, &d});
  std::array<int, 4> counts{};
  for (int l : label) ++counts[l];
  std::sort(counts.begin(), counts.end(), std::greater<>());
  if (counts[0] == 4) return TetradConfiguration::Four;
  if (counts[0] == 3) return TetradConfiguration::ThreeOne;
  if (counts[0] == 2 && counts[1] == 2) return TetradConfiguration::TwoTwo;
  if (counts[0] == 2) return TetradConfiguration::TwoOneOne;
  return TetradConfiguration::Distinct;
}

RiemannPoint cross_ratio(const RiemannPoint& a, const RiemannPoint& b, const RiemannPoint& c,
                         const RiemannPoint& d) {
  const std::array<const RiemannPoint*, 4> pts{&a, &b, &c, &d};
  const auto label = tetrad_clusters(pts);
  const auto cfg = tetrad_configuration(a, b, c, d);
  if (cfg == TetradConfiguration::ThreeOne || cfg == TetradConfiguration::Four) {
    throw Error(ErrorCode::SingularConfiguration,
                "cross-ratio has no continuous extension to 3+1 or 4 tetrads");
  }
  // Coincident points contribute an exact zero bracket.
  auto br = [&](int i, int j) { return label[i] == label[j] ? cplx{} : bracket(*pts[i], *pts[j]); };
  const cplx num = br(0, 2) * br(1, 3);
  const cplx den = br(1, 2) * br(0, 3);
  // Identical homogeneous products (the a=b, c=d tetrad) give exactly 1.
  if (num == den) return {cplx{1.0}, cplx{1.0}};
  return {num, den};
}

std::array<double, 3> to_bloch(const RiemannPoint& z) {
  const cplx ab = z.a() * std::conj(z.b());
  const double na = std::norm(z.a()), nb = std::norm(z.b());
  const double s = na + nb;
  return {2.0 * ab.real() / s, 2.0 * ab.imag() / s, (na - nb) / s};
}

}  // namespace postselect
