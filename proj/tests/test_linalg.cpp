#include <catch2/catch_amalgamated.hpp>

#include "wardrop/linalg.hpp"

using namespace wardrop;

TEST_CASE("lu_solve on a well-conditioned system") {
  Mat a(3, 3, 0.0);
  a(0, 0) = 4;
  a(0, 1) = 1;
  a(1, 0) = 1;
  a(1, 1) = 3;
  a(1, 2) = 1;
  a(2, 1) = 1;
  a(2, 2) = 2;
  Vec x_true = {1.0, -2.0, 0.5};
  Vec b = matvec(a, x_true);
  auto x = lu_solve(a, b);
  REQUIRE(x.has_value());
  for (int i = 0; i < 3; ++i) CHECK_THAT((*x)[i], Catch::Matchers::WithinAbs(x_true[i], 1e-12));
}

TEST_CASE("lu_solve reports singular matrices") {
  Mat a(2, 2, 0.0);
  a(0, 0) = 1;
  a(0, 1) = 2;
  a(1, 0) = 2;
  a(1, 1) = 4;
  CHECK_FALSE(lu_solve(a, Vec{1.0, 2.0}).has_value());
}

TEST_CASE("lstsq solves overdetermined and rank-deficient systems") {
  Mat a(4, 2, 0.0);
  for (int i = 0; i < 4; ++i) {
    a(i, 0) = 1.0;
    a(i, 1) = i;
  }
  Vec b = {1.0, 2.0, 3.0, 4.0};  // exact fit: 1 + i
  Vec x = lstsq(a, b);
  CHECK_THAT(x[0], Catch::Matchers::WithinAbs(1.0, 1e-10));
  CHECK_THAT(x[1], Catch::Matchers::WithinAbs(1.0, 1e-10));

  Mat d(2, 3, 0.0);  // duplicated column
  d(0, 0) = 1;
  d(0, 1) = 1;
  d(0, 2) = 0;
  d(1, 2) = 1;
  Vec y = lstsq(d, Vec{2.0, 3.0});
  Vec r = matvec(d, y);
  CHECK_THAT(r[0], Catch::Matchers::WithinAbs(2.0, 1e-10));
  CHECK_THAT(r[1], Catch::Matchers::WithinAbs(3.0, 1e-10));
}

TEST_CASE("independent_rows strips redundancy") {
  Mat h(3, 3, 0.0);
  h(0, 0) = 1;
  h(0, 1) = -1;
  h(1, 1) = 1;
  h(1, 2) = -1;
  // row 2 = -(row 0 + row 1)
  h(2, 0) = -1;
  h(2, 2) = 1;
  auto keep = independent_rows(h);
  CHECK(keep.size() == 2);
}

TEST_CASE("min_norm_on_face picks the least-norm point of a segment") {
  // face: x1 + x2 = 2, x >= 0; least-norm point is (1, 1)
  Mat e(1, 2, 1.0);
  Vec x = min_norm_on_face(e, Vec{2.0}, Vec{2.0, 0.0});
  CHECK_THAT(x[0], Catch::Matchers::WithinAbs(1.0, 1e-9));
  CHECK_THAT(x[1], Catch::Matchers::WithinAbs(1.0, 1e-9));

  // face: 2x1 + x2 = 2, x >= 0 (the tied best-response face of the two-route
  // game): least-norm point is (4/5, 2/5)
  Mat e2(1, 2, 0.0);
  e2(0, 0) = 2.0;
  e2(0, 1) = 1.0;
  Vec x2 = min_norm_on_face(e2, Vec{2.0}, Vec{1.0, 0.0});
  CHECK_THAT(x2[0], Catch::Matchers::WithinAbs(0.8, 1e-9));
  CHECK_THAT(x2[1], Catch::Matchers::WithinAbs(0.4, 1e-9));

  // binding nonnegativity: face x1 - x2 = 1 restricted to x >= 0
  Mat e3(1, 2, 0.0);
  e3(0, 0) = 1.0;
  e3(0, 1) = -1.0;
  Vec x3 = min_norm_on_face(e3, Vec{1.0}, Vec{1.5, 0.5});
  CHECK_THAT(x3[0], Catch::Matchers::WithinAbs(1.0, 1e-9));
  CHECK_THAT(x3[1], Catch::Matchers::WithinAbs(0.0, 1e-9));
}
