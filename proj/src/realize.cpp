#include "postselect/realize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "postselect/error.hpp"
#include "postselect/gram.hpp"

namespace postselect {

namespace {

constexpr double kContractTol = 1e-9;

void require_square(const ComplexMatrix& l, const char* what) {
  if (!l.is_square() || l.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": operator must be square");
  }
}

void require_unitary(const ComplexMatrix& u, double tol, ErrorCode code, const std::string& what) {
  const double defect = unitarity_defect(u);
  if (!(defect <= tol)) {
    throw Error(code, what + ": unitarity defect " + std::to_string(defect));
  }
}

}  // namespace

ContractionSpectrum contraction_spectrum(const ComplexMatrix& l) {
  require_square(l, "contraction_spectrum");
  if (!l.all_finite()) throw Error(ErrorCode::NonFinite, "contraction_spectrum: NaN or Inf entry");
  if (!(l.max_abs() > 0.0)) throw Error(ErrorCode::ZeroOperator, "operator is zero");
  const EigenSystem es = hermitian_eigensystem(l.adjoint() * l);
  ContractionSpectrum out;
  out.lambda_min = std::max(es.values.front(), 0.0);
  out.lambda_max = std::max(es.values.back(), 0.0);
  out.weakly_contracting = out.lambda_max <= 1.0 + kContractTol;
  return out;
}

ComplexMatrix dilate_literal(const ComplexMatrix& l) {
  const ContractionSpectrum spec = contraction_spectrum(l);
  if (!spec.weakly_contracting) {
    throw Error(ErrorCode::NotContracting,
                "lambda_max(L^dagger L) = " + std::to_string(spec.lambda_max) + " > 1");
  }
  const std::size_t n = l.rows();
  const ComplexMatrix defect = ComplexMatrix::identity(n) - l.adjoint() * l;
  const ComplexMatrix x = vectors_with_gram({(defect + defect.adjoint()) * cplx(0.5), 1.0});

  ComplexMatrix first(2 * n, n);
  first.set_block(0, 0, l);
  first.set_block(n, 0, x);
  return orthonormal_completion(first, 2 * n);
}

DilationResult exact_realize(const ComplexMatrix& l, Scaling scaling) {
  const ContractionSpectrum spec = contraction_spectrum(l);
  double c = 1.0;
  if (scaling == Scaling::Optimal || spec.lambda_max > 1.0) c = 1.0 / std::sqrt(spec.lambda_max);

  DilationResult out;
  out.scale_c = c;
  out.lambda_min = spec.lambda_min;
  out.lambda_max = spec.lambda_max;
  out.u = dilate_literal(l * cplx(c));
  out.gsp = scaling == Scaling::Optimal ? spec.lambda_min / spec.lambda_max
                                        : c * c * spec.lambda_min;
  return out;
}

PostSelectOutcome apply_postselected(const ComplexMatrix& u, const ComplexMatrix& psi) {
  if (!u.is_square() || u.rows() % 2 != 0 || psi.size() * 2 != u.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "apply_postselected: U must be 2n x 2n for psi in C^n");
  }
  require_unitary(u, 1e-8, ErrorCode::NotUnitary, "apply_postselected");
  if (std::abs(norm(psi) - 1.0) > 1e-9) {
    throw Error(ErrorCode::NotNormalized, "apply_postselected: ||psi|| = " + std::to_string(norm(psi)));
  }
  const std::size_t n = psi.size();
  PostSelectOutcome out;
  out.state = ComplexMatrix(n, 1);
  for (std::size_t r = 0; r < n; ++r) {
    cplx s = 0.0;
    for (std::size_t c = 0; c < n; ++c) s += u(r, c) * psi[c];
    out.state[r] = s;
  }
  const double nn = norm(out.state);
  out.success_prob = nn * nn;
  return out;
}

DilationResult realize_convex_combination(std::span<const ComplexMatrix> unitaries,
                                          std::span<const double> weights) {
  if (unitaries.empty() || unitaries.size() != weights.size()) {
    throw Error(ErrorCode::BadWeights, "need one weight per unitary");
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (std::any_of(weights.begin(), weights.end(), [](double w) { return !(w >= 0.0); }) ||
      std::abs(total - 1.0) > 1e-10) {
    throw Error(ErrorCode::BadWeights, "weights must be nonnegative and sum to 1");
  }
  const std::size_t n = unitaries.front().rows();
  ComplexMatrix l(n, n);
  for (std::size_t i = 0; i < unitaries.size(); ++i) {
    const ComplexMatrix& ui = unitaries[i];
    if (!ui.is_square() || ui.rows() != n) {
      throw Error(ErrorCode::DimensionMismatch, "convex combination members differ in size");
    }
    require_unitary(ui, 1e-8, ErrorCode::NotUnitaryMember,
                    "member " + std::to_string(i));
    l += ui * cplx(weights[i]);
  }
  const ContractionSpectrum spec = contraction_spectrum(l);
  DilationResult out;
  out.scale_c = 1.0;
  out.lambda_min = spec.lambda_min;
  out.lambda_max = spec.lambda_max;
  out.gsp = spec.lambda_min;
  out.u = dilate_literal(l);
  return out;
}

double rho(const ComplexMatrix& l) {
  const ContractionSpectrum spec = contraction_spectrum(l);
  return spec.lambda_min / spec.lambda_max;
}

double guaranteed_success_probability(const ComplexMatrix& u) {
  if (!u.is_square() || u.rows() % 2 != 0 || u.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "expected a 2n x 2n unitary");
  }
  require_unitary(u, 1e-8, ErrorCode::NotUnitary, "guaranteed_success_probability");
  const std::size_t n = u.rows() / 2;
  const ComplexMatrix m = u.block(0, 0, n, n);
  const EigenSystem es = hermitian_eigensystem(m.adjoint() * m);
  return std::max(es.values.front(), 0.0);
}

}  // namespace postselect
