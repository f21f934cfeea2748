#include <Eigen/Dense>
#include <sstream>

#include "doctest.h"
#include "hodgehx/csr.hpp"
#include "hodgehx/parallel.hpp"
#include "hodgehx/rng.hpp"
#include "oracles.hpp"

using namespace hodgehx;

namespace {

// random triplets with duplicates and explicit zeros mixed in
std::vector<Triplet> random_triplets(Rng& rng, int rows, int cols, int count) {
  std::vector<Triplet> t;
  for (int k = 0; k < count; ++k) {
    const int i = static_cast<int>(rng.next_u64() % rows);
    const int j = static_cast<int>(rng.next_u64() % cols);
    const double v = rng.next_double() - 0.5;
    t.push_back({i, j, v});
    if (k % 7 == 0) t.push_back({i, j, 2.0 * v});  // duplicate slot
    if (k % 11 == 0) t.push_back({i, j, 0.0});     // explicit zero
  }
  return t;
}

Eigen::MatrixXd dense_of(const std::vector<Triplet>& t, int rows, int cols) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, cols);
  for (const Triplet& x : t) m(x.row, x.col) += x.value;
  return m;
}

}  // namespace

TEST_SUITE("csr") {
  TEST_CASE("from_triplets compresses duplicates against a dense oracle") {
    Rng rng(11);
    for (int trial = 0; trial < 5; ++trial) {
      const int rows = 17, cols = 13;
      const auto trips = random_triplets(rng, rows, cols, 120);
      const CsrMatrix a = CsrMatrix::from_triplets(rows, cols, trips);
      CHECK(a.valid_structure());
      const Eigen::MatrixXd d = dense_of(trips, rows, cols);
      CHECK((oracle::to_dense(a) - d).norm() < 1e-14 * (1.0 + d.norm()));
      for (const double v : a.values()) CHECK(v != 0.0);
    }
  }

  TEST_CASE("products and sums match Eigen") {
    Rng rng(12);
    const int n = 20, m = 15, k = 18;
    const auto ta = random_triplets(rng, n, m, 90);
    const auto tb = random_triplets(rng, m, k, 80);
    const auto tc = random_triplets(rng, n, m, 70);
    const CsrMatrix a = CsrMatrix::from_triplets(n, m, ta);
    const CsrMatrix b = CsrMatrix::from_triplets(m, k, tb);
    const CsrMatrix c = CsrMatrix::from_triplets(n, m, tc);
    const Eigen::MatrixXd da = oracle::to_dense(a), db = oracle::to_dense(b),
                          dc = oracle::to_dense(c);

    std::vector<double> x(m);
    for (double& v : x) v = rng.next_double();
    Eigen::Map<const Eigen::VectorXd> ex(x.data(), m);
    const std::vector<double> y = a.multiply_vector(x);
    const Eigen::VectorXd ey = da * ex;
    for (int i = 0; i < n; ++i) CHECK(y[i] == doctest::Approx(ey[i]).epsilon(1e-13));

    std::vector<double> xt(n);
    for (double& v : xt) v = rng.next_double();
    Eigen::Map<const Eigen::VectorXd> ext(xt.data(), n);
    const std::vector<double> yt = a.multiply_transpose_vector(xt);
    const Eigen::VectorXd eyt = da.transpose() * ext;
    for (int i = 0; i < m; ++i) CHECK(yt[i] == doctest::Approx(eyt[i]).epsilon(1e-13));

    CHECK((oracle::to_dense(a.transpose()) - da.transpose()).norm() < 1e-13);
    CHECK((oracle::to_dense(a.multiply(b)) - da * db).norm() < 1e-12);
    CHECK((oracle::to_dense(add(a, c, 2.0, -0.5)) - (2.0 * da - 0.5 * dc)).norm() < 1e-13);
    CHECK(a.multiply(b).valid_structure());
    CHECK(a.transpose().valid_structure());
  }

  TEST_CASE("scalar queries") {
    const CsrMatrix a = CsrMatrix::from_triplets(
        2, 2, {{0, 0, 2.0}, {0, 1, -1.0}, {1, 0, 3.0}, {1, 1, 4.0}});
    CHECK(a.entry(0, 1) == -1.0);
    CHECK(a.entry(1, 1) == 4.0);
    CHECK(a.diagonal() == std::vector<double>{2.0, 4.0});
    CHECK(a.inf_norm() == doctest::Approx(7.0));
    CHECK(a.frobenius_norm() == doctest::Approx(std::sqrt(4.0 + 1.0 + 9.0 + 16.0)));
    CHECK(a.max_asymmetry() == doctest::Approx(4.0));
    const CsrMatrix id = CsrMatrix::identity(3);
    CHECK(id.nnz() == 3);
    CHECK(id.entry(2, 2) == 1.0);
    const CsrMatrix d = CsrMatrix::diagonal_matrix({1.0, 2.0});
    CHECK(d.entry(1, 1) == 2.0);
  }

  TEST_CASE("matrix market round trip") {
    Rng rng(13);
    const auto trips = random_triplets(rng, 9, 9, 40);
    const CsrMatrix a = CsrMatrix::from_triplets(9, 9, trips);
    std::stringstream buf;
    write_matrix_market(a, buf);
    const CsrMatrix b = read_matrix_market(buf);
    REQUIRE(b.rows() == a.rows());
    REQUIRE(b.nnz() == a.nnz());
    CHECK(b.col_idx() == a.col_idx());
    CHECK(b.values() == a.values());  // 17 digits keep doubles exact
  }

  TEST_CASE("products are bitwise independent of the thread count") {
    Rng rng(14);
    const int n = 5000;
    std::vector<Triplet> trips;
    for (int i = 0; i < n; ++i) {
      trips.push_back({i, i, 2.0 + rng.next_double()});
      trips.push_back({i, (i * 37 + 11) % n, rng.next_double() - 0.5});
    }
    const CsrMatrix a = CsrMatrix::from_triplets(n, n, trips);
    std::vector<double> x(n);
    for (double& v : x) v = rng.next_double();
    set_thread_cap(1);
    const std::vector<double> y1 = a.multiply_vector(x);
    set_thread_cap(8);
    const std::vector<double> y8 = a.multiply_vector(x);
    set_thread_cap(0);
    CHECK(y1 == y8);
  }
}
