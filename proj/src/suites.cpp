#include "postselect/suites.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "postselect/error.hpp"
#include "postselect/realize.hpp"

namespace postselect {

namespace {

constexpr double kMuRelTol = 1e-7;
constexpr int kNullspaceAttempts = 50;
constexpr std::uint64_t kCombinationSeed = 0x9e3779b97f4a7c15ULL;

// Cluster labels (index of the first member) at FS tolerance kPointTol,
// closed under transitivity.
std::vector<std::size_t> cluster_labels(std::span<const ProjectivePoint> pts) {
  std::vector<std::size_t> label(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) label[i] = i;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (label[i] != label[j] && fs_distance(pts[i], pts[j]) <= kPointTol) {
        const std::size_t from = std::max(label[i], label[j]);
        const std::size_t to = std::min(label[i], label[j]);
        for (auto& l : label)
          if (l == from) l = to;
      }
    }
  }
  return label;
}

struct NullspaceSystem {
  std::vector<ComplexMatrix> basis;
  std::size_t n = 0;
  std::size_t ell = 0;
};

NullspaceSystem realization_nullspace(const Suite& sigma) {
  const std::size_t n = sigma.n(), ell = sigma.ell();
  ComplexMatrix a(n * ell, n * n + ell);
  for (std::size_t i = 0; i < ell; ++i) {
    const auto& v = sigma.domain()[i];
    const auto& w = sigma.range()[i];
    for (std::size_t r = 0; r < n; ++r) {
      const std::size_t row = i * n + r;
      for (std::size_t c = 0; c < n; ++c) a(row, r * n + c) = v[c];
      a(row, n * n + i) = -w[r];
    }
  }
  return {nullspace(a, kDefaultRankTol), n, ell};
}

// Splits a nullspace vector into (L, mu) and accepts it when every mu_i is
// bounded away from zero and L realizes the suite.
std::optional<ComplexMatrix> accept_candidate(const Suite& sigma, const ComplexMatrix& x) {
  const std::size_t n = sigma.n(), ell = sigma.ell();
  double mu_max = 0.0, mu_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ell; ++i) {
    const double m = std::abs(x[n * n + i]);
    mu_max = std::max(mu_max, m);
    mu_min = std::min(mu_min, m);
  }
  if (!(mu_max > 0.0) || mu_min < kMuRelTol * mu_max) return std::nullopt;

  ComplexMatrix l(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) l(r, c) = x[r * n + c];
  if (!(l.max_abs() > 0.0)) return std::nullopt;
  l *= cplx(1.0 / l.max_abs());

  for (std::size_t i = 0; i < ell; ++i) {
    const auto image = apply_ql(l, sigma.domain()[i]);
    if (!image || fs_distance(*image, sigma.range()[i]) > 1e-7) return std::nullopt;
  }
  return l;
}

}  // namespace

Suite::Suite(std::vector<ProjectivePoint> domain, std::vector<ProjectivePoint> range)
    : domain_(std::move(domain)), range_(std::move(range)) {
  if (domain_.empty() || domain_.size() != range_.size()) {
    throw Error(ErrorCode::InvalidSuite, "suite needs equally many (>= 1) domain and range points");
  }
  n_ = domain_.front().dim();
  for (const auto* half : {&domain_, &range_}) {
    for (const auto& p : *half) {
      if (p.dim() != n_) throw Error(ErrorCode::DimensionMismatch, "suite points differ in dimension");
    }
  }
  for (std::size_t i = 0; i < domain_.size(); ++i) {
    for (std::size_t j = i + 1; j < domain_.size(); ++j) {
      if (fs_distance(domain_[i], domain_[j]) <= kPointTol) {
        throw Error(ErrorCode::InvalidSuite, "domain points " + std::to_string(i) + " and " +
                                                 std::to_string(j) + " coincide");
      }
    }
  }
}

const ProjectivePoint& Suite::point(std::size_t j) const {
  return j < domain_.size() ? domain_[j] : range_.at(j - domain_.size());
}

double suite_distance(const Suite& a, const Suite& b) {
  if (a.ell() != b.ell() || a.n() != b.n()) {
    throw Error(ErrorCode::DimensionMismatch, "suites have different shapes");
  }
  double d = 0.0;
  for (std::size_t j = 0; j < 2 * a.ell(); ++j) d = std::max(d, fs_distance(a.point(j), b.point(j)));
  return d;
}

Suite riemann_suite(std::span<const RiemannPoint> domain, std::span<const RiemannPoint> range) {
  std::vector<ProjectivePoint> d, r;
  for (const auto& z : domain) d.push_back(from_riemann(z));
  for (const auto& z : range) r.push_back(from_riemann(z));
  return Suite(std::move(d), std::move(r));
}

std::optional<ComplexMatrix> exact_realize_suite(const Suite& sigma) {
  const NullspaceSystem sys = realization_nullspace(sigma);
  if (sys.basis.empty()) return std::nullopt;
  if (sys.basis.size() == 1) return accept_candidate(sigma, sys.basis.front());

  std::mt19937_64 rng(kCombinationSeed);
  std::normal_distribution<double> gauss;
  for (int attempt = 0; attempt < kNullspaceAttempts; ++attempt) {
    ComplexMatrix x(sys.basis.front().rows(), 1);
    for (const auto& b : sys.basis) x += b * cplx(gauss(rng), gauss(rng));
    if (auto l = accept_candidate(sigma, x)) return l;
  }
  return std::nullopt;
}

std::optional<double> suite_rho(const Suite& sigma) {
  const NullspaceSystem sys = realization_nullspace(sigma);
  if (sys.basis.size() != 1) return std::nullopt;
  const auto l = accept_candidate(sigma, sys.basis.front());
  if (!l) return std::nullopt;
  return rho(*l);
}

ApproxVerdict is_eps_approximable(const Suite& sigma, double eps, FitOptions opts) {
  if (!(eps > 0.0)) throw Error(ErrorCode::BadOptions, "eps must be positive");
  opts.stop_below = eps;
  FitResult fit = fit_suite(sigma, opts);
  ApproxVerdict v;
  v.yes = fit.max_fs < eps;
  if (v.yes) v.witness = std::move(fit);
  return v;
}

const char* to_string(SingleQubitClass c) noexcept {
  switch (c) {
    case SingleQubitClass::ExactlyRealizablePL: return "ExactlyRealizablePL";
    case SingleQubitClass::ExactlyRealizableSingular: return "ExactlyRealizableSingular";
    case SingleQubitClass::BorderOfPL: return "BorderOfPL";
    case SingleQubitClass::NotInfinitelyApproximable: return "NotInfinitelyApproximable";
  }
  return "Unknown";
}

namespace {

struct RangeStructure {
  std::size_t distinct = 0;
  std::size_t largest = 0;        // size of the largest cluster
  std::size_t largest_label = 0;  // first index of that cluster
};

RangeStructure range_structure(const Suite& sigma) {
  const auto label = cluster_labels(sigma.range());
  std::vector<std::size_t> counts(label.size(), 0);
  for (auto l : label) ++counts[l];
  RangeStructure s;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) continue;
    ++s.distinct;
    if (counts[i] > s.largest) {
      s.largest = counts[i];
      s.largest_label = i;
    }
  }
  return s;
}

}  // namespace

SingleQubitClass classify_single_qubit(const Suite& sigma) {
  if (sigma.n() != 2) {
    throw Error(ErrorCode::WrongDimension, "single-qubit classification needs n = 2");
  }
  const std::size_t ell = sigma.ell();
  const RangeStructure s = range_structure(sigma);
  if (ell < 3) {
    return (ell >= 2 && s.distinct == 1) ? SingleQubitClass::ExactlyRealizableSingular
                                         : SingleQubitClass::ExactlyRealizablePL;
  }
  if (s.distinct == 1) return SingleQubitClass::ExactlyRealizableSingular;
  if (s.distinct == ell) {
    return exact_realize_suite(sigma) ? SingleQubitClass::ExactlyRealizablePL
                                      : SingleQubitClass::NotInfinitelyApproximable;
  }
  if (s.largest == ell - 1) return SingleQubitClass::BorderOfPL;
  return SingleQubitClass::NotInfinitelyApproximable;
}

BorderStep border_sequence(const Suite& sigma, double k) {
  if (!(k > 0.0)) throw Error(ErrorCode::BadOptions, "k must be positive");
  if (classify_single_qubit(sigma) != SingleQubitClass::BorderOfPL) {
    throw Error(ErrorCode::NotBorder, "suite is not on the border of PL");
  }
  const auto label = cluster_labels(sigma.range());
  const RangeStructure s = range_structure(sigma);
  std::size_t outlier = 0;
  while (label[outlier] == s.largest_label) ++outlier;

  const RiemannPoint p = to_riemann(sigma.range()[s.largest_label]);
  const RiemannPoint q = to_riemann(sigma.range()[outlier]);
  const ProjectivePoint& d = sigma.domain()[outlier];

  // f(z) = ([z,p] : [z,q]) sends p -> 0 and q -> infinity.
  const ComplexMatrix f{{p.b(), -p.a()}, {q.b(), -q.a()}};
  // g(z) = (<d,z> : [z,d]) is unitary and sends d -> infinity; dividing by k
  // scales its denominator.
  const ComplexMatrix g_over_k{{std::conj(d[0]), std::conj(d[1])}, {k * d[1], -k * d[0]}};

  ComplexMatrix l = inverse(f) * g_over_k;
  l *= cplx(1.0 / l.max_abs());

  std::vector<ProjectivePoint> range;
  range.reserve(sigma.ell());
  for (const auto& x : sigma.domain()) {
    const auto image = apply_ql(l, x);
    if (!image) throw Error(ErrorCode::SingularMatrix, "border approximant lost a point");
    range.push_back(*image);
  }
  std::vector<ProjectivePoint> domain(sigma.domain().begin(), sigma.domain().end());
  return {Suite(std::move(domain), std::move(range)), std::move(l)};
}

VarietyCheck pl_variety_check(const Suite& sigma) {
  if (sigma.n() != 2) throw Error(ErrorCode::WrongDimension, "variety equations are for n = 2");
  VarietyCheck out;
  const std::size_t ell = sigma.ell();
  if (ell <= 3) return out;

  std::vector<RiemannPoint> a, b;
  for (std::size_t i = 0; i < ell; ++i) {
    a.push_back(to_riemann(sigma.domain()[i]));
    b.push_back(to_riemann(sigma.range()[i]));
  }
  for (std::size_t i = 3; i < ell; ++i) {
    const RiemannPoint ca = cross_ratio(a[0], a[1], a[2], a[i]);
    const RiemannPoint cb = cross_ratio(b[0], b[1], b[2], b[i]);
    const cplx lhs = ca.a() * cb.b();
    const cplx rhs = cb.a() * ca.b();
    const double scale = std::abs(lhs) + std::abs(rhs);
    const double r = scale > 0.0 ? std::abs(lhs - rhs) / scale : 0.0;
    out.residuals.push_back(r);
    if (r > 1e-8) out.on_variety = false;
  }
  return out;
}

double averages_identity_check(const Suite& sigma) {
  if (sigma.n() != 2 || sigma.ell() != 4) {
    throw Error(ErrorCode::WrongDimension, "averages identity needs n = 2, ell = 4");
  }
  const RiemannPoint expected[4] = {RiemannPoint::from_value(0.0), RiemannPoint::infinity(),
                                    RiemannPoint::from_value(1.0), RiemannPoint::from_value(-1.0)};
  for (std::size_t i = 0; i < 4; ++i) {
    if (fs_distance(to_riemann(sigma.domain()[i]), expected[i]) > 1e-12) {
      throw Error(ErrorCode::WrongDomain, "domain must be (0, inf, 1, -1)");
    }
  }
  cplx v[4];
  for (std::size_t i = 0; i < 4; ++i) {
    const RiemannPoint z = to_riemann(sigma.range()[i]);
    if (std::abs(z.b()) <= 1e-12) {
      throw Error(ErrorCode::InfiniteRangePoint, "range point " + std::to_string(i) + " is infinity");
    }
    v[i] = z.value();
  }
  const cplx lhs = (v[0] * v[1] + v[2] * v[3]) / 2.0;
  const cplx rhs = ((v[0] + v[1]) / 2.0) * ((v[2] + v[3]) / 2.0);
  return std::abs(lhs - rhs);
}

}  // namespace postselect
