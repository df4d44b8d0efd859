#pragma once

#include <vector>

#include "postselect/linalg.hpp"

namespace postselect {

// Unit-trace Hermitian PSD matrix (tolerances 1e-10 on Hermiticity and
// trace, -1e-9 on the least eigenvalue). Stored exactly Hermitian.
class DensityMatrix {
 public:
  explicit DensityMatrix(const ComplexMatrix& rho);  // throws NotDensityMatrix
  static DensityMatrix pure(const ComplexMatrix& psi);

  std::size_t dim() const noexcept { return rho_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return rho_; }

 private:
  ComplexMatrix rho_;
};

// Kraus operators K_i (n_out x n_in) with sum_i K_i^dagger K_i = I.
class KrausChannel {
 public:
  // Throws NotTracePreserving when the completeness defect exceeds `tol`.
  explicit KrausChannel(std::vector<ComplexMatrix> kraus, double tol = 1e-8);

  std::size_t n_in() const noexcept { return n_in_; }
  std::size_t n_out() const noexcept { return n_out_; }
  const std::vector<ComplexMatrix>& kraus() const noexcept { return kraus_; }

  // max-abs entry of sum_i K_i^dagger K_i - I.
  double completeness_defect() const;

 private:
  std::vector<ComplexMatrix> kraus_;
  std::size_t n_in_ = 0;
  std::size_t n_out_ = 0;
};

// K_i = P_i U E: embed with the ancilla in |0>, apply U, read the ancilla
// outcome i. With the realize basis convention K_0 and K_1 are the
// top-left and bottom-left n x n blocks of U.
KrausChannel build_kraus(const ComplexMatrix& u);

DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho);

struct Branch {
  ComplexMatrix sub_state;  // K_i rho K_i^dagger, unnormalized
  double prob = 0.0;        // its trace
};

Branch postselect_branch(const KrausChannel& ch, std::size_t i, const DensityMatrix& rho);

}  // namespace postselect
