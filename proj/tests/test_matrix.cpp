#include "hopfkit/matrix.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using hopfkit::Cyc;
using hopfkit::Mat;
using hopfkit::Rat;

namespace {

Mat from_ints(const std::vector<std::vector<long>>& rows, long order = 1) {
  Mat m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()), order);
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < rows[r].size(); ++c)
      if (rows[r][c] != 0) m.set(static_cast<int>(r), static_cast<int>(c), Cyc(rows[r][c], order));
  return m;
}

Mat random_rational_mat(std::mt19937& rng, int rows, int cols) {
  Mat m(rows, cols);
  std::uniform_int_distribution<int> num(-3, 3);
  std::uniform_int_distribution<int> den(1, 4);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      Rat q(num(rng), den(rng));
      q.canonicalize();
      if (q != 0) m.set(r, c, Cyc(q));
    }
  return m;
}

// Independent oracle: dense row-reduction over Q, operating on rows (the
// implementation under test eliminates columns).
int oracle_row_rank(const Mat& m) {
  std::vector<std::vector<Rat>> a(static_cast<size_t>(m.rows()),
                                  std::vector<Rat>(static_cast<size_t>(m.cols()), Rat(0)));
  for (int c = 0; c < m.cols(); ++c)
    for (const auto& e : m.col(c)) a[static_cast<size_t>(e.row)][static_cast<size_t>(c)] = e.val.rational_part();
  int rank = 0;
  for (int col = 0; col < m.cols() && rank < m.rows(); ++col) {
    int pivot = -1;
    for (int r = rank; r < m.rows(); ++r)
      if (a[static_cast<size_t>(r)][static_cast<size_t>(col)] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(a[static_cast<size_t>(rank)], a[static_cast<size_t>(pivot)]);
    Rat lead = a[static_cast<size_t>(rank)][static_cast<size_t>(col)];
    for (auto& x : a[static_cast<size_t>(rank)]) x /= lead;
    for (int r = 0; r < m.rows(); ++r) {
      if (r == rank) continue;
      Rat f = a[static_cast<size_t>(r)][static_cast<size_t>(col)];
      if (f == 0) continue;
      for (int c2 = 0; c2 < m.cols(); ++c2)
        a[static_cast<size_t>(r)][static_cast<size_t>(c2)] -= f * a[static_cast<size_t>(rank)][static_cast<size_t>(c2)];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

TEST_CASE("kernel and image basics") {
  SECTION("kernel of the identity is empty") {
    Mat id = Mat::identity(3);
    CHECK(id.kernel().cols() == 0);
    CHECK(id.rank() == 3);
  }
  SECTION("kernel of [[1,1],[1,1]] is spanned by (1,-1)") {
    Mat m = from_ints({{1, 1}, {1, 1}});
    Mat k = m.kernel();
    REQUIRE(k.cols() == 1);
    CHECK(k.at(0, 0) == Cyc(1));
    CHECK(k.at(1, 0) == Cyc(-1));
  }
  SECTION("image is a canonical normal form") {
    Mat a = from_ints({{1, 2}, {2, 4}, {0, 0}});
    Mat b = from_ints({{3}, {6}, {0}});
    CHECK(a.image() == b.image());
  }
}

TEST_CASE("rank + nullity = cols for random rational matrices") {
  std::mt19937 rng(20240812);
  for (int trial = 0; trial < 20; ++trial) {
    Mat m = random_rational_mat(rng, 5, 7);
    int rank = m.rank();
    CHECK(rank == oracle_row_rank(m));
    CHECK(rank + m.kernel().cols() == 7);
    CHECK(m.image().cols() == rank);
    // kernel columns really are annihilated
    Mat prod = m * m.kernel();
    CHECK(prod.is_zero_mat());
  }
}

TEST_CASE("inverse composes to the identity both ways") {
  std::mt19937 rng(99);
  int found = 0;
  while (found < 8) {
    Mat m = random_rational_mat(rng, 4, 4);
    if (m.rank() < 4) continue;
    ++found;
    Mat inv = m.inverse();
    CHECK(m * inv == Mat::identity(4));
    CHECK(inv * m == Mat::identity(4));
  }
  CHECK_THROWS_AS(from_ints({{1, 1}, {1, 1}}).inverse(), hopfkit::SingularMatrixError);
}

TEST_CASE("solve returns a solution or reports inconsistency") {
  Mat a = from_ints({{1, 2}, {2, 4}});
  Mat b_ok = from_ints({{3}, {6}});
  Mat b_bad = from_ints({{3}, {7}});
  auto x = a.solve(b_ok);
  REQUIRE(x.has_value());
  CHECK(a * *x == b_ok);
  CHECK_FALSE(a.solve(b_bad).has_value());
}

TEST_CASE("kronecker product") {
  SECTION("kron(I2, I3) = I6") {
    CHECK(Mat::kron(Mat::identity(2), Mat::identity(3)) == Mat::identity(6));
  }
  SECTION("index convention, enumerated by hand") {
    // A = [[0,1],[1,0]] swaps e0<->e1; kron(A, I2) must send
    // e0(x)e0 -> e2, e0(x)e1 -> e3, e1(x)e0 -> e0, e1(x)e1 -> e1.
    Mat a = from_ints({{0, 1}, {1, 0}});
    Mat k = Mat::kron(a, Mat::identity(2));
    std::vector<int> expected_row{2, 3, 0, 1};
    for (int c = 0; c < 4; ++c) {
      REQUIRE(k.col(c).size() == 1);
      CHECK(k.col(c)[0].row == expected_row[static_cast<size_t>(c)]);
      CHECK(k.col(c)[0].val.is_one());
    }
  }
  SECTION("functoriality on random 2x2 blocks") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
      Mat a = random_rational_mat(rng, 2, 2);
      Mat b = random_rational_mat(rng, 2, 2);
      Mat c = random_rational_mat(rng, 2, 2);
      Mat d = random_rational_mat(rng, 2, 2);
      CHECK(Mat::kron(a, b) * Mat::kron(c, d) == Mat::kron(a * c, b * d));
    }
  }
  SECTION("associativity in the flat index convention") {
    std::mt19937 rng(6);
    for (int trial = 0; trial < 6; ++trial) {
      Mat a = random_rational_mat(rng, 2, 3);
      Mat b = random_rational_mat(rng, 3, 2);
      Mat c = random_rational_mat(rng, 2, 2);
      CHECK(Mat::kron(Mat::kron(a, b), c) == Mat::kron(a, Mat::kron(b, c)));
    }
  }
  SECTION("kron_apply agrees with materialized kron") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 6; ++trial) {
      Mat a = random_rational_mat(rng, 3, 2);
      Mat b = random_rational_mat(rng, 2, 3);
      Mat m = random_rational_mat(rng, 6, 4);
      CHECK(Mat::kron_apply(a, b, m) == Mat::kron(a, b) * m);
    }
  }
}

TEST_CASE("swap map") {
  Mat s23 = hopfkit::swap_map(2, 3);
  Mat s32 = hopfkit::swap_map(3, 2);
  CHECK(s32 * s23 == Mat::identity(6));
  std::mt19937 rng(8);
  Mat a = random_rational_mat(rng, 2, 2);
  Mat b = random_rational_mat(rng, 3, 3);
  // naturality: swap . (a(x)b) = (b(x)a) . swap
  CHECK(s23 * Mat::kron(a, b) == Mat::kron(b, a) * s23);
}

TEST_CASE("cyclotomic entries: elimination over Q(zeta_3)") {
  Mat m(2, 2, 3);
  Cyc w = Cyc::root_of_unity(3, 1);
  m.set(0, 0, Cyc::one(3));
  m.set(0, 1, w);
  m.set(1, 0, w * w);
  m.set(1, 1, Cyc::one(3));
  // det = 1 - w^3 = 0, so rank 1
  CHECK(m.rank() == 1);
  CHECK(m.kernel().cols() == 1);
  Mat k = m.kernel();
  CHECK((m * k).is_zero_mat());
}
