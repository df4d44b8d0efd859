#include "postselect/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "postselect/error.hpp"

namespace postselect {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NotOrthonormal: return "NotOrthonormal";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::ZeroOperator: return "ZeroOperator";
    case ErrorCode::NotContracting: return "NotContracting";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NotUnitaryMember: return "NotUnitaryMember";
    case ErrorCode::BadWeights: return "BadWeights";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotGeneralPosition: return "NotGeneralPosition";
    case ErrorCode::SingularConfiguration: return "SingularConfiguration";
    case ErrorCode::BadOptions: return "BadOptions";
    case ErrorCode::WrongDimension: return "WrongDimension";
    case ErrorCode::NotBorder: return "NotBorder";
    case ErrorCode::WrongDomain: return "WrongDomain";
    case ErrorCode::InfiniteRangePoint: return "InfiniteRangePoint";
    case ErrorCode::DegenerateGrid: return "DegenerateGrid";
    case ErrorCode::InvalidSuite: return "InvalidSuite";
    case ErrorCode::NotDensityMatrix: return "NotDensityMatrix";
    case ErrorCode::NotTracePreserving: return "NotTracePreserving";
    case ErrorCode::MissingSeed: return "MissingSeed";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::ZeroVector: return "ZeroVector";
  }
  return "Unknown";
}

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                    std::to_string(b.cols()));
  }
}

void require_finite(const ComplexMatrix& m, const char* what) {
  if (!m.all_finite()) throw Error(ErrorCode::NonFinite, std::string(what) + ": NaN or Inf entry");
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw Error(ErrorCode::DimensionMismatch, "entry count does not match rows*cols");
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::column(std::span<const cplx> values) {
  return {values.size(), 1, std::vector<cplx>(values.begin(), values.end())};
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

ComplexMatrix ComplexMatrix::col(std::size_t j) const {
  ComplexMatrix out(rows_, 1);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, j);
  return out;
}

void ComplexMatrix::set_col(std::size_t j, const ComplexMatrix& v) {
  if (v.size() != rows_) throw Error(ErrorCode::DimensionMismatch, "set_col length");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, j) = v[r];
}

ComplexMatrix ComplexMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr,
                                   std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) {
    throw Error(ErrorCode::DimensionMismatch, "block out of range");
  }
  ComplexMatrix out(nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) out(r, c) = (*this)(r0 + r, c0 + c);
  return out;
}

void ComplexMatrix::set_block(std::size_t r0, std::size_t c0, const ComplexMatrix& b) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) {
    throw Error(ErrorCode::DimensionMismatch, "set_block out of range");
  }
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) (*this)(r0 + r, c0 + c) = b(r, c);
}

double ComplexMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

double ComplexMatrix::frobenius() const noexcept {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

bool ComplexMatrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](const cplx& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

cplx ComplexMatrix::trace() const {
  if (!is_square()) throw Error(ErrorCode::DimensionMismatch, "trace of non-square matrix");
  cplx t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  require_same_shape(*this, o, "operator+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  require_same_shape(*this, o, "operator-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix product " + std::to_string(a.rows()) +
                                                  "x" + std::to_string(a.cols()) + " * " +
                                                  std::to_string(b.rows()) + "x" +
                                                  std::to_string(b.cols()));
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }

cplx inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "inner product");
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm(const ComplexMatrix& v) { return v.frobenius(); }

ComplexMatrix normalized(const ComplexMatrix& v) {
  const double n = norm(v);
  if (n == 0.0) throw Error(ErrorCode::ZeroOperator, "cannot normalize the zero vector");
  return v * cplx(1.0 / n);
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double unitarity_defect(const ComplexMatrix& m) {
  if (!m.is_square()) return std::numeric_limits<double>::infinity();
  return max_abs_diff(m.adjoint() * m, ComplexMatrix::identity(m.rows()));
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (!m.is_square()) return std::numeric_limits<double>::infinity();
  return max_abs_diff(m, m.adjoint());
}

// Cyclic complex Jacobi. Each rotation W = D*J combines a phase D that makes
// A(p,q) real positive with the real symmetric Schur rotation J.
EigenSystem hermitian_eigensystem(const ComplexMatrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::DimensionMismatch, "eigensystem of non-square matrix");
  require_finite(m, "hermitian_eigensystem");
  const double scale = m.max_abs();
  if (hermiticity_defect(m) > 1e-9 * scale) {
    throw Error(ErrorCode::NotHermitian, "||M - M^dagger||_max exceeds 1e-9 ||M||_max");
  }
  const std::size_t n = m.rows();
  ComplexMatrix a = (m + m.adjoint()) * cplx(0.5);
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double fro = a.frobenius();
  for (int sweep = 0; sweep < 100 && fro > 0.0; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) <= 1e-16 * fro) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const cplx phase = std::conj(apq) / mag;  // e^{-i phi}
        const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cplx wpp = c, wpq = s, wqp = -s * phase, wqq = c * phase;

        for (std::size_t r = 0; r < n; ++r) {
          const cplx x = a(r, p), y = a(r, q);
          a(r, p) = x * wpp + y * wqp;
          a(r, q) = x * wpq + y * wqq;
        }
        for (std::size_t col = 0; col < n; ++col) {
          const cplx x = a(p, col), y = a(q, col);
          a(p, col) = std::conj(wpp) * x + std::conj(wqp) * y;
          a(q, col) = std::conj(wpq) * x + std::conj(wqq) * y;
        }
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t r = 0; r < n; ++r) {
          const cplx x = v(r, p), y = v(r, q);
          v(r, p) = x * wpp + y * wqp;
          v(r, q) = x * wpq + y * wqq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() < a(j, j).real();
  });
  EigenSystem es;
  es.values.reserve(n);
  es.vectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    es.values.push_back(a(order[k], order[k]).real());
    for (std::size_t r = 0; r < n; ++r) es.vectors(r, k) = v(r, order[k]);
  }
  return es;
}

// One-sided (Hestenes) Jacobi on the columns of a.
Svd singular_value_decomposition(const ComplexMatrix& a) {
  require_finite(a, "singular_value_decomposition");
  const std::size_t m = a.rows(), n = a.cols();
  ComplexMatrix u = a;
  ComplexMatrix v = ComplexMatrix::identity(n);

  auto rotate = [](ComplexMatrix& x, std::size_t i, std::size_t j, cplx phase, double c,
                   double s) {
    for (std::size_t r = 0; r < x.rows(); ++r) {
      const cplx xi = x(r, i), xj = x(r, j) * phase;
      x(r, i) = c * xi - s * xj;
      x(r, j) = s * xi + c * xj;
    }
  };

  for (int sweep = 0; sweep < 80; ++sweep) {
    bool rotated = false;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        double alpha = 0.0, beta = 0.0;
        cplx gamma = 0.0;
        for (std::size_t r = 0; r < m; ++r) {
          alpha += std::norm(u(r, i));
          beta += std::norm(u(r, j));
          gamma += std::conj(u(r, i)) * u(r, j);
        }
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= 1e-15 * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const cplx phase = std::conj(gamma) / g;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        rotate(u, i, j, phase, c, s);
        rotate(v, i, j, phase, c, s);
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sv(n);
  for (std::size_t j = 0; j < n; ++j) sv[j] = norm(u.col(j));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return sv[i] > sv[j]; });

  Svd out;
  out.u = ComplexMatrix(m, n);
  out.v = ComplexMatrix(n, n);
  out.s.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    out.s.push_back(sv[j]);
    const double inv = sv[j] > 0.0 ? 1.0 / sv[j] : 0.0;
    for (std::size_t r = 0; r < m; ++r) out.u(r, k) = u(r, j) * inv;
    for (std::size_t r = 0; r < n; ++r) out.v(r, k) = v(r, j);
  }
  return out;
}

std::vector<double> singular_values(const ComplexMatrix& a) {
  return singular_value_decomposition(a).s;
}

std::size_t numerical_rank(const ComplexMatrix& a, double tol_rel) {
  const auto s = singular_values(a);
  if (s.empty() || s.front() == 0.0) return 0;
  const double threshold = tol_rel * s.front();
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [&](double x) { return x > threshold; }));
}

ComplexMatrix orthonormal_completion(const ComplexMatrix& partial, std::size_t dim) {
  if (partial.rows() != dim || partial.cols() > dim) {
    throw Error(ErrorCode::DimensionMismatch, "partial basis must be dim x k with k <= dim");
  }
  require_finite(partial, "orthonormal_completion");
  const std::size_t k = partial.cols();
  if (k > 0) {
    const double defect = max_abs_diff(partial.adjoint() * partial, ComplexMatrix::identity(k));
    if (defect > 1e-9) {
      throw Error(ErrorCode::NotOrthonormal,
                  "input columns deviate from orthonormality by " + std::to_string(defect));
    }
  }

  ComplexMatrix out(dim, dim);
  out.set_block(0, 0, partial);
  std::vector<bool> used(dim, false);

  // Residual of e_i against the columns built so far, orthogonalized twice.
  auto residual = [&](std::size_t i, std::size_t filled) {
    ComplexMatrix r(dim, 1);
    r[i] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < filled; ++j) {
        cplx proj = 0.0;
        for (std::size_t row = 0; row < dim; ++row) proj += std::conj(out(row, j)) * r[row];
        for (std::size_t row = 0; row < dim; ++row) r[row] -= proj * out(row, j);
      }
    }
    return r;
  };

  for (std::size_t filled = k; filled < dim; ++filled) {
    std::size_t best = dim;
    double best_norm = -1.0;
    ComplexMatrix best_vec;
    for (std::size_t i = 0; i < dim; ++i) {
      if (used[i]) continue;
      ComplexMatrix r = residual(i, filled);
      const double nr = norm(r);
      if (nr > best_norm + 1e-12) {
        best = i;
        best_norm = nr;
        best_vec = std::move(r);
      }
    }
    used[best] = true;
    out.set_col(filled, best_vec * cplx(1.0 / best_norm));
  }
  return out;
}

std::vector<ComplexMatrix> nullspace(const ComplexMatrix& a, double tol_rel) {
  if (!(tol_rel > 0.0 && tol_rel < 1.0)) {
    throw Error(ErrorCode::BadOptions, "tol_rel must lie in (0, 1)");
  }
  const Svd svd = singular_value_decomposition(a);
  const double smax = svd.s.empty() ? 0.0 : svd.s.front();
  std::vector<ComplexMatrix> basis;
  for (std::size_t k = 0; k < svd.s.size(); ++k) {
    if (smax == 0.0 || svd.s[k] <= tol_rel * smax) basis.push_back(svd.v.col(k));
  }
  return basis;
}

LuResult lu_decompose(const ComplexMatrix& a) {
  if (!a.is_square()) throw Error(ErrorCode::DimensionMismatch, "LU of non-square matrix");
  const std::size_t n = a.rows();
  LuResult res{a, std::vector<std::size_t>(n), 1, false};
  std::iota(res.perm.begin(), res.perm.end(), 0);
  ComplexMatrix& lu = res.lu;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t r = k + 1; r < n; ++r)
      if (std::abs(lu(r, k)) > std::abs(lu(piv, k))) piv = r;
    if (lu(piv, k) == cplx{}) {
      res.singular = true;
      continue;
    }
    if (piv != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(lu(k, c), lu(piv, c));
      std::swap(res.perm[k], res.perm[piv]);
      res.sign = -res.sign;
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      const cplx f = lu(r, k) / lu(k, k);
      lu(r, k) = f;
      for (std::size_t c = k + 1; c < n; ++c) lu(r, c) -= f * lu(k, c);
    }
  }
  return res;
}

cplx determinant(const ComplexMatrix& a) {
  const LuResult lu = lu_decompose(a);
  if (lu.singular) return 0.0;
  cplx d = static_cast<double>(lu.sign);
  for (std::size_t i = 0; i < a.rows(); ++i) d *= lu.lu(i, i);
  return d;
}

ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "solve: row mismatch");
  const LuResult lu = lu_decompose(a);
  if (lu.singular) throw Error(ErrorCode::SingularMatrix, "solve: matrix is singular");
  const std::size_t n = a.rows();
  ComplexMatrix x(n, b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) {
    std::vector<cplx> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      cplx s = b(lu.perm[i], c);
      for (std::size_t j = 0; j < i; ++j) s -= lu.lu(i, j) * y[j];
      y[i] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
      cplx s = y[i];
      for (std::size_t j = i + 1; j < n; ++j) s -= lu.lu(i, j) * x(j, c);
      x(i, c) = s / lu.lu(i, i);
    }
  }
  return x;
}

ComplexMatrix inverse(const ComplexMatrix& a) {
  return solve(a, ComplexMatrix::identity(a.rows()));
}

}  // namespace postselect
