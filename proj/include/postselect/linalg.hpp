#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace postselect {

using cplx = std::complex<double>;

// Dense row-major complex matrix. Column vectors are n x 1 matrices.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> data);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static ComplexMatrix column(std::span<const cplx> values);
  static ComplexMatrix diagonal(std::span<const cplx> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  // Flat access, handy for column vectors.
  cplx& operator[](std::size_t i) { return data_[i]; }
  const cplx& operator[](std::size_t i) const { return data_[i]; }

  std::span<cplx> data() noexcept { return data_; }
  std::span<const cplx> data() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix col(std::size_t j) const;
  void set_col(std::size_t j, const ComplexMatrix& v);
  ComplexMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const ComplexMatrix& b);

  double max_abs() const noexcept;
  double frobenius() const noexcept;
  bool all_finite() const noexcept;
  cplx trace() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, cplx s);

// <a|b> over all entries, conjugate-linear in a.
cplx inner(const ComplexMatrix& a, const ComplexMatrix& b);
double norm(const ComplexMatrix& v);
ComplexMatrix normalized(const ComplexMatrix& v);

// max-abs entry of (a - b); shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// max-abs entry of M^dagger M - I.
double unitarity_defect(const ComplexMatrix& m);

// max-abs entry of M - M^dagger.
double hermiticity_defect(const ComplexMatrix& m);

// Eigenvalues ascending, column j of `vectors` paired with values[j].
struct EigenSystem {
  std::vector<double> values;
  ComplexMatrix vectors;
};

inline constexpr double kDefaultRankTol = 1e-9;

EigenSystem hermitian_eigensystem(const ComplexMatrix& m);

// Thin SVD by one-sided Jacobi: a = u * diag(s) * v^dagger, s descending.
// u is rows x k, v is cols x k with k = cols; columns of u that pair with a
// zero singular value are zero.
struct Svd {
  ComplexMatrix u;
  std::vector<double> s;
  ComplexMatrix v;
};

Svd singular_value_decomposition(const ComplexMatrix& a);
std::vector<double> singular_values(const ComplexMatrix& a);

// Numerical rank with threshold tol_rel * sigma_max.
std::size_t numerical_rank(const ComplexMatrix& a, double tol_rel = kDefaultRankTol);

// Extends k orthonormal columns of `partial` (m x k) to an m x m unitary.
// Gram-Schmidt against the standard basis, first k columns copied verbatim.
ComplexMatrix orthonormal_completion(const ComplexMatrix& partial, std::size_t dim);

// Orthonormal basis of the numerical nullspace, one column vector per entry.
std::vector<ComplexMatrix> nullspace(const ComplexMatrix& a, double tol_rel = kDefaultRankTol);

// LU with partial pivoting. `singular` is set when a pivot vanishes exactly.
struct LuResult {
  ComplexMatrix lu;
  std::vector<std::size_t> perm;
  int sign = 1;
  bool singular = false;
};

LuResult lu_decompose(const ComplexMatrix& a);
cplx determinant(const ComplexMatrix& a);
// Solves a x = b. Throws SingularMatrix when a pivot vanishes.
ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix inverse(const ComplexMatrix& a);

}  // namespace postselect
