#include <catch_amalgamated.hpp>

#include "postselect/error.hpp"
#include "postselect/gram.hpp"
#include "support.hpp"

using namespace postselect;

namespace {

double gram_error(const ComplexMatrix& x, const ComplexMatrix& q) {
  return max_abs_diff(x.adjoint() * x, q);
}

}  // namespace

TEST_CASE("identity Gram gives orthonormal vectors", "[gram]") {
  const ComplexMatrix x = vectors_with_gram({ComplexMatrix::identity(3)});
  CHECK(unitarity_defect(x) < 1e-12);
}

TEST_CASE("rank-one Gram gives equal unit vectors", "[gram]") {
  const ComplexMatrix q{{1.0, 1.0}, {1.0, 1.0}};
  const ComplexMatrix x = vectors_with_gram({q});
  CHECK(gram_error(x, q) < 1e-12);
  CHECK(max_abs_diff(x.col(0), x.col(1)) < 1e-12);
  CHECK(norm(x.col(0)) == Catch::Approx(1.0));
}

TEST_CASE("defect Gram of a contraction", "[gram]") {
  std::mt19937_64 rng(11);
  const ComplexMatrix l = testsupport::random_contraction(4, rng);
  const ComplexMatrix q = ComplexMatrix::identity(4) - l.adjoint() * l;
  CHECK(gram_error(vectors_with_gram({q}), q) <= 1e-8);
}

TEST_CASE("random PSD matrices of every rank round-trip", "[gram][property]") {
  std::mt19937_64 rng(12);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (std::size_t rank = 0; rank <= n; ++rank) {
      const ComplexMatrix b = testsupport::gaussian(rank, n, rng);
      const ComplexMatrix q = rank == 0 ? ComplexMatrix(n, n) : b.adjoint() * b;
      const ComplexMatrix x = vectors_with_gram({q});
      CHECK(gram_error(x, q) <= 1e-8 * std::max(q.max_abs(), 1e-300));
    }
  }
}

TEST_CASE("negative eigenvalue is rejected", "[gram]") {
  std::mt19937_64 rng(13);
  const ComplexMatrix v = testsupport::random_unitary(3, rng);
  const std::vector<cplx> d{1.0, 0.5, -0.1};
  const ComplexMatrix q = v * ComplexMatrix::diagonal(d) * v.adjoint();
  try {
    vectors_with_gram({q});
    FAIL("expected NotPSD");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPSD);
  }
  try {
    vectors_with_gram({ComplexMatrix{{1.0, 2.0}, {0.0, 1.0}}});
    FAIL("expected NotHermitian");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotHermitian);
  }
}
