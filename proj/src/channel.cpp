#include "postselect/channel.hpp"

#include <cmath>
#include <string>

#include "postselect/error.hpp"

namespace postselect {

DensityMatrix::DensityMatrix(const ComplexMatrix& rho) {
  if (!rho.is_square() || rho.rows() == 0) {
    throw Error(ErrorCode::NotDensityMatrix, "density matrix must be square and nonempty");
  }
  if (!rho.all_finite()) throw Error(ErrorCode::NonFinite, "density matrix has NaN or Inf");
  if (hermiticity_defect(rho) > 1e-10) throw Error(ErrorCode::NotDensityMatrix, "not Hermitian");
  rho_ = (rho + rho.adjoint()) * cplx(0.5);
  const double tr = rho_.trace().real();
  if (std::abs(tr - 1.0) > 1e-10) {
    throw Error(ErrorCode::NotDensityMatrix, "trace " + std::to_string(tr) + " != 1");
  }
  const double least = hermitian_eigensystem(rho_).values.front();
  if (least < -1e-9) {
    throw Error(ErrorCode::NotDensityMatrix, "negative eigenvalue " + std::to_string(least));
  }
}

DensityMatrix DensityMatrix::pure(const ComplexMatrix& psi) {
  if (psi.cols() != 1) throw Error(ErrorCode::DimensionMismatch, "pure state needs a column vector");
  const ComplexMatrix v = normalized(psi);
  return DensityMatrix(v * v.adjoint());
}

KrausChannel::KrausChannel(std::vector<ComplexMatrix> kraus, double tol) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw Error(ErrorCode::NotTracePreserving, "channel needs Kraus operators");
  n_out_ = kraus_.front().rows();
  n_in_ = kraus_.front().cols();
  for (const auto& k : kraus_) {
    if (k.rows() != n_out_ || k.cols() != n_in_) {
      throw Error(ErrorCode::DimensionMismatch, "Kraus operators differ in shape");
    }
  }
  const double defect = completeness_defect();
  if (!(defect <= tol)) {
    throw Error(ErrorCode::NotTracePreserving, "completeness defect " + std::to_string(defect));
  }
}

double KrausChannel::completeness_defect() const {
  ComplexMatrix s = ComplexMatrix::identity(n_in_) * cplx(-1.0);
  for (const auto& k : kraus_) s += k.adjoint() * k;
  return s.max_abs();
}

KrausChannel build_kraus(const ComplexMatrix& u) {
  if (!u.is_square() || u.rows() == 0 || u.rows() % 2 != 0) {
    throw Error(ErrorCode::DimensionMismatch, "build_kraus expects a 2n x 2n unitary");
  }
  const double defect = unitarity_defect(u);
  if (!(defect <= 1e-8)) throw Error(ErrorCode::NotUnitary, "unitarity defect " + std::to_string(defect));
  const std::size_t n = u.rows() / 2;
  return KrausChannel({u.block(0, 0, n, n), u.block(n, 0, n, n)});
}

DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho) {
  if (rho.dim() != ch.n_in()) throw Error(ErrorCode::DimensionMismatch, "state and channel differ in size");
  ComplexMatrix out(ch.n_out(), ch.n_out());
  for (const auto& k : ch.kraus()) out += k * rho.matrix() * k.adjoint();
  return DensityMatrix(out);
}

Branch postselect_branch(const KrausChannel& ch, std::size_t i, const DensityMatrix& rho) {
  if (rho.dim() != ch.n_in()) throw Error(ErrorCode::DimensionMismatch, "state and channel differ in size");
  if (i >= ch.kraus().size()) {
    throw Error(ErrorCode::DimensionMismatch, "no outcome " + std::to_string(i));
  }
  const ComplexMatrix& k = ch.kraus()[i];
  Branch b;
  b.sub_state = k * rho.matrix() * k.adjoint();
  b.prob = b.sub_state.trace().real();
  return b;
}

}  // namespace postselect
