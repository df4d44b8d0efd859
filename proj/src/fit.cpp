#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "postselect/combinations.hpp"
#include "postselect/error.hpp"
#include "postselect/suites.hpp"

namespace postselect {

namespace {

constexpr double kDetFloor = 1e-12;
constexpr double kInitialPerturbation = 1e-3;

// sin^2 of the FS angle between u and v, via the Lagrange identity
// |u|^2|v|^2 - |<u,v>|^2 = sum_{i<j} |u_i v_j - u_j v_i|^2, which keeps full
// relative accuracy for nearly parallel vectors.
double sin2_fs(const cplx* u, const cplx* v, std::size_t n) {
  double wedge = 0.0, nu = 0.0, nv = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    nu += std::norm(u[i]);
    nv += std::norm(v[i]);
    for (std::size_t j = i + 1; j < n; ++j) wedge += std::norm(u[i] * v[j] - u[j] * v[i]);
  }
  return wedge / (nu * nv);
}

// Parameter layout: real/imag parts of L (row-major), then of the domain
// perturbations delta_i, point by point.
class Objective {
 public:
  explicit Objective(const Suite& sigma) : n_(sigma.n()), ell_(sigma.ell()) {
    for (std::size_t i = 0; i < ell_; ++i) {
      for (std::size_t r = 0; r < n_; ++r) {
        v_.push_back(sigma.domain()[i][r]);
        w_.push_back(sigma.range()[i][r]);
      }
    }
    l_.resize(n_ * n_);
    p_.resize(n_);
    img_.resize(n_);
  }

  std::size_t dim() const { return 2 * n_ * n_ + 2 * n_ * ell_; }

  // Max over all 2*ell coordinates of sin^2 FS; +inf when L is numerically
  // singular relative to its size.
  double operator()(const std::vector<double>& x) {
    for (std::size_t k = 0; k < n_ * n_; ++k) l_[k] = {x[2 * k], x[2 * k + 1]};
    if (!invertible()) return std::numeric_limits<double>::infinity();
    const std::size_t off = 2 * n_ * n_;
    double worst = 0.0;
    for (std::size_t i = 0; i < ell_; ++i) {
      double pn = 0.0;
      for (std::size_t r = 0; r < n_; ++r) {
        const std::size_t k = i * n_ + r;
        p_[r] = v_[k] + cplx(x[off + 2 * k], x[off + 2 * k + 1]);
        pn += std::norm(p_[r]);
      }
      if (!(pn > 0.0)) return std::numeric_limits<double>::infinity();
      worst = std::max(worst, sin2_fs(&v_[i * n_], p_.data(), n_));
      double in = 0.0;
      for (std::size_t r = 0; r < n_; ++r) {
        cplx s = 0.0;
        for (std::size_t c = 0; c < n_; ++c) s += l_[r * n_ + c] * p_[c];
        img_[r] = s;
        in += std::norm(s);
      }
      if (!(in > 0.0)) return std::numeric_limits<double>::infinity();
      worst = std::max(worst, sin2_fs(&w_[i * n_], img_.data(), n_));
    }
    return worst;
  }

  ComplexMatrix operator_of(const std::vector<double>& x) const {
    ComplexMatrix l(n_, n_);
    for (std::size_t k = 0; k < n_ * n_; ++k) l[k] = {x[2 * k], x[2 * k + 1]};
    return l;
  }

  std::vector<ProjectivePoint> domain_of(const std::vector<double>& x) const {
    const std::size_t off = 2 * n_ * n_;
    std::vector<ProjectivePoint> pts;
    for (std::size_t i = 0; i < ell_; ++i) {
      std::vector<cplx> c(n_);
      for (std::size_t r = 0; r < n_; ++r) {
        const std::size_t k = i * n_ + r;
        c[r] = v_[k] + cplx(x[off + 2 * k], x[off + 2 * k + 1]);
      }
      pts.emplace_back(std::move(c));
    }
    return pts;
  }

 private:
  bool invertible() const {
    double fro2 = 0.0;
    for (const auto& z : l_) fro2 += std::norm(z);
    if (!(fro2 > 0.0) || !std::isfinite(fro2)) return false;
    const double det = std::abs(determinant(ComplexMatrix(n_, n_, l_)));
    return det / std::pow(fro2, 0.5 * static_cast<double>(n_)) >= kDetFloor;
  }

  std::size_t n_, ell_;
  std::vector<cplx> v_, w_, l_, p_, img_;
};

std::vector<double> pack_operator(const ComplexMatrix& l, std::size_t total_dim) {
  std::vector<double> x(total_dim, 0.0);
  const double scale = l.frobenius();
  for (std::size_t k = 0; k < l.size(); ++k) {
    x[2 * k] = l[k].real() / scale;
    x[2 * k + 1] = l[k].imag() / scale;
  }
  return x;
}

// Adds a small multiple of I when L is (numerically) singular.
ComplexMatrix make_invertible(ComplexMatrix l) {
  l *= cplx(1.0 / l.frobenius());
  const double n = static_cast<double>(l.rows());
  double det = std::abs(determinant(l));
  double eta = 1e-6;
  while (det < 1e3 * kDetFloor && eta < 1.0) {
    const ComplexMatrix shifted = l + ComplexMatrix::identity(l.rows()) * cplx(eta);
    det = std::abs(determinant(shifted)) / std::pow(shifted.frobenius(), n);
    if (det >= 1e3 * kDetFloor) return shifted;
    eta *= 10.0;
  }
  return l;
}

// Interpolants through (n+1)-subsets of the correspondence; range points not
// in general position are nudged deterministically first.
std::vector<ComplexMatrix> subset_interpolants(const Suite& sigma) {
  std::vector<ComplexMatrix> out;
  const std::size_t n = sigma.n();
  if (sigma.ell() < n + 1) return out;
  std::mt19937_64 rng(0x5bd1e995ULL);
  std::normal_distribution<double> gauss;
  for (const auto& subset : combinations(sigma.ell(), n + 1)) {
    std::vector<ProjectivePoint> ps, qs;
    for (auto i : subset) {
      ps.push_back(sigma.domain()[i]);
      qs.push_back(sigma.range()[i]);
    }
    if (!in_general_position(ps, n)) continue;
    if (!in_general_position(qs, n)) {
      for (auto& q : qs) {
        std::vector<cplx> c(q.coords().begin(), q.coords().end());
        for (auto& z : c) z += kInitialPerturbation * cplx(gauss(rng), gauss(rng));
        q = ProjectivePoint(std::move(c));
      }
      if (!in_general_position(qs, n)) continue;
    }
    out.push_back(pl_from_correspondence(ps, qs));
  }
  return out;
}

// sin^2 threshold equivalent to FS < stop_below (FS never exceeds pi/2).
double stop_threshold(double stop_below) {
  if (!(stop_below > 0.0)) return 0.0;
  if (stop_below > std::acos(0.0)) return 2.0;
  const double s = std::sin(stop_below);
  return s * s;
}

struct SearchOutcome {
  std::vector<double> x;
  double value = std::numeric_limits<double>::infinity();
  bool converged = false;
};

// Opportunistic coordinate pattern search: poll +-step along each axis,
// move on the first improvement, halve the step when a full poll fails.
SearchOutcome pattern_search(Objective& f, std::vector<double> x, const FitOptions& opts) {
  SearchOutcome out;
  double fx = f(x);
  double step = opts.initial_step;
  const double stop = stop_threshold(opts.stop_below);
  const std::size_t d = x.size();
  for (int iter = 0; iter < opts.max_iters; ++iter) {
    if (fx < stop) break;
    bool improved = false;
    for (std::size_t k = 0; k < d && !improved; ++k) {
      for (double sign : {1.0, -1.0}) {
        const double saved = x[k];
        x[k] = saved + sign * step;
        const double fy = f(x);
        if (fy < fx) {
          fx = fy;
          improved = true;
          break;
        }
        x[k] = saved;
      }
    }
    if (!improved) {
      step *= 0.5;
      if (step < opts.min_step) {
        out.converged = true;
        break;
      }
    }
  }
  out.x = std::move(x);
  out.value = fx;
  return out;
}

}  // namespace

FitResult fit_suite(const Suite& sigma, const FitOptions& opts) {
  if (opts.restarts <= 0 || opts.max_iters <= 0) {
    throw Error(ErrorCode::BadOptions, "restarts and max_iters must be positive");
  }
  if (!(opts.initial_step > 0.0) || !(opts.min_step > 0.0)) {
    throw Error(ErrorCode::BadOptions, "steps must be positive");
  }
  Objective f(sigma);
  const std::size_t n = sigma.n();

  std::vector<ComplexMatrix> inits;
  if (auto l = exact_realize_suite(sigma)) inits.push_back(make_invertible(*l));
  for (auto& l : subset_interpolants(sigma)) inits.push_back(std::move(l));

  SearchOutcome best;
  for (int r = 0; r < opts.restarts; ++r) {
    ComplexMatrix l0;
    if (static_cast<std::size_t>(r) < inits.size()) {
      l0 = inits[static_cast<std::size_t>(r)];
    } else {
      std::mt19937_64 rng(opts.seed + static_cast<std::uint64_t>(r));
      std::normal_distribution<double> gauss;
      l0 = ComplexMatrix(n, n);
      for (auto& z : l0.data()) z = {gauss(rng), gauss(rng)};
    }
    SearchOutcome run = pattern_search(f, pack_operator(l0, f.dim()), opts);
    if (run.value < best.value || best.x.empty()) best = std::move(run);
    if (best.value < stop_threshold(opts.stop_below)) break;
  }

  ComplexMatrix l = f.operator_of(best.x);
  l *= cplx(1.0 / l.max_abs());
  std::vector<ProjectivePoint> domain = f.domain_of(best.x);
  std::vector<ProjectivePoint> range;
  range.reserve(domain.size());
  for (const auto& p : domain) range.push_back(*apply_ql(l, p));

  FitResult out{Suite(std::move(domain), std::move(range)), std::move(l), 0.0, best.converged};
  out.max_fs = suite_distance(sigma, out.tau);
  return out;
}

}  // namespace postselect
