#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "test_main.hpp"

using namespace enlarge;
using namespace enlarge::testing;
using doctest::Approx;

namespace {

Body hexagon() {
  // D3 orbit zonotope of e1: generators (2/6) g e1 over six group elements, merged.
  Mat g(2, 3);
  for (int k = 0; k < 3; ++k) {
    const double t = k * std::numbers::pi / 3;
    g.col(k) << 2.0 / 3 * std::cos(t), 2.0 / 3 * std::sin(t);
  }
  return Body::zonotope(g);
}

Body strip_space_ball() {
  Mat a(1, 2);
  a << 1, -1;
  return Body::intersection(Body::ball(2), Body::hpolytope(a, Vec::Ones(1)));
}

Body random_zonotope(Rng& rng, int n, int k) {
  std::normal_distribution<double> g;
  Mat y(n, k);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) y(i, j) = g(rng);
  return Body::zonotope(y);
}

Body random_hpolytope(Rng& rng, int n, int m) {
  std::normal_distribution<double> g;
  Mat a(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = g(rng);
  a.topRows(n) += 3 * Mat::Identity(n, n);
  Vec b(m);
  for (auto& x : b) x = 0.5 + std::abs(g(rng));
  return Body::hpolytope(a, b);
}

// Shoelace oracle independent of the library: angular sort of the vertex set.
double shoelace_oracle(const Mat& y) {
  const int k = static_cast<int>(y.cols());
  std::vector<Vec> pts;
  for (long mask = 0; mask < (1L << k); ++mask) {
    Vec p = Vec::Zero(2);
    for (int j = 0; j < k; ++j) p += ((mask >> j) & 1 ? 1.0 : -1.0) * y.col(j);
    pts.push_back(p);
  }
  // Gift wrapping.
  std::vector<Vec> hull;
  std::size_t start = 0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i](0) < pts[start](0) || (pts[i](0) == pts[start](0) && pts[i](1) < pts[start](1))) start = i;
  std::size_t cur = start;
  do {
    hull.push_back(pts[cur]);
    std::size_t next = (cur + 1) % pts.size();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Vec a = pts[next] - pts[cur], b = pts[i] - pts[cur];
      const double cr = a(0) * b(1) - a(1) * b(0);
      if (cr < 0 || (cr == 0 && b.norm() > a.norm())) next = i;
    }
    cur = next;
  } while (cur != start && hull.size() <= pts.size());
  double area = 0;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Vec& p = hull[i];
    const Vec& q = hull[(i + 1) % hull.size()];
    area += p(0) * q(1) - q(0) * p(1);
  }
  return std::abs(area) / 2;
}

}  // namespace

TEST_CASE("support examples") {
  CHECK(support(Body::zonotope(Mat::Identity(2, 2)), v2(1, 1)) == Approx(2));
  CHECK(support(Body::ball(2), v2(3, 4)) == Approx(5));
  CHECK(support(polar(Body::cube(2)), v2(1, 1)) == Approx(1));
}

TEST_CASE("gauge examples") {
  CHECK(gauge(Body::cube(2), v2(0.5, -1)) == Approx(1));
  CHECK(gauge(strip_space_ball(), v2(1, 1)) == Approx(std::sqrt(2.0)));
  CHECK(gauge(Body::zonotope(Mat::Identity(2, 2)), v2(1, 1)) == Approx(1));
  CHECK(gauge(Body::cube(2), Vec::Zero(2)) == 0.0);
}

TEST_CASE("contains_point examples") {
  CHECK(contains_point(Body::cube(2), v2(1, 1)));
  CHECK_FALSE(contains_point(Body::ball(2), v2(1, 1)));
  CHECK(contains_point(hexagon(), v2(1, 0)));
}

TEST_CASE("contains_body examples") {
  auto r1 = contains_body(Body::l1_ball(2), Body::ball(2));
  CHECK(r1.contained);
  CHECK(r1.mode == ContainmentMode::Exact);
  auto r2 = contains_body(Body::cube(2), Body::ball(2));
  CHECK_FALSE(r2.contained);
  CHECK(r2.worst_slack == Approx(std::sqrt(2.0) - 1));
  auto r3 = contains_body(Body::ball(2), hexagon());
  CHECK(r3.contained);
  CHECK(r3.mode == ContainmentMode::Exact);
}

TEST_CASE("containment falls back to sampling over budget") {
  Rng rng(1);
  Body z = random_zonotope(rng, 4, 14);
  ContainmentOptions opt;
  opt.vertex_budget = 10;
  auto res = contains_body(z, Body::ball(4, 100.0), {}, opt);
  CHECK(res.contained);
  CHECK(res.mode == ContainmentMode::Sampled);
  CHECK(res.budget_fallback);
  opt.allow_sampled = false;
  CHECK_THROWS_AS(contains_body(z, Body::ball(4, 100.0), {}, opt), UnsupportedRepresentation);
}

TEST_CASE("constructors") {
  Mat s1(2, 1), s2(2, 1);
  s1 << 1, 0;
  s2 << 0, 1;
  Body sq = minkowski_sum(Body::zonotope(s1), Body::zonotope(s2));
  CHECK(support(sq, v2(1, 1)) == Approx(2));
  Rng rng(2);
  std::normal_distribution<double> g;
  for (int k = 0; k < 10; ++k) {
    Vec a = v2(g(rng), g(rng));
    CHECK(support(polar(polar(Body::cube(2))), a) == Approx(support(Body::cube(2), a)).epsilon(1e-9));
  }
  Mat r(2, 2);
  r << 0, -1, 1, 0;
  Body image = linear_image(r, Body::zonotope(s1));
  auto img = as<Zonotope>(image);
  REQUIRE(img);
  CHECK(img->generators.isApprox(s2));
  Mat singular = Mat::Zero(2, 2);
  CHECK_THROWS_AS(linear_image(singular, Body::cube(2)), UnsupportedRepresentation);
  CHECK(support(scale(2.5, Body::ball(2)), v2(1, 0)) == Approx(2.5));
}

TEST_CASE("linear images follow h_MA(a) = h_A(M^T a)") {
  Rng rng(4);
  std::normal_distribution<double> g;
  Mat m(3, 3);
  for (int i = 0; i < 9; ++i) m(i / 3, i % 3) = g(rng);
  std::vector<Body> bodies = {random_zonotope(rng, 3, 5), random_hpolytope(rng, 3, 6),
                              Body::vpolytope(Mat::Random(3, 4) + 2 * Mat::Identity(3, 4))};
  for (const Body& b : bodies) {
    Body mb = linear_image(m, b);
    for (int k = 0; k < 10; ++k) {
      Vec a = v3(g(rng), g(rng), g(rng));
      CHECK(support(mb, a) == Approx(support(b, Vec(m.transpose() * a))).epsilon(1e-8));
    }
  }
}

TEST_CASE("duality, additivity and homogeneity on random bodies") {
  Rng rng(9);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 2 + trial % 2;
    std::vector<Body> bodies = {random_zonotope(rng, n, n + 2), random_hpolytope(rng, n, n + 3),
                                Body::vpolytope(Mat::Random(n, n + 2) + 2 * Mat::Identity(n, n + 2)),
                                Body::ball(n, 0.5 + trial)};
    for (const Body& b : bodies) {
      Vec a(n);
      for (auto& x : a) x = g(rng);
      CHECK(support(polar(b), a) == Approx(gauge(b, a)).epsilon(1e-8));
      CHECK(support(b, Vec(3.0 * a)) == Approx(3.0 * support(b, a)).epsilon(1e-10));
    }
    Vec a(n);
    for (auto& x : a) x = g(rng);
    Body s = Body::sum(bodies[0], bodies[1]);
    CHECK(support(s, a) == Approx(support(bodies[0], a) + support(bodies[1], a)).epsilon(1e-9));
    CHECK(support(Body::sum(bodies[2], bodies[3]), a) ==
          Approx(support(bodies[2], a) + support(bodies[3], a)).epsilon(1e-9));
  }
}

TEST_CASE("intersection support against polyhedral LP and disc-strip closed forms") {
  Body b = strip_space_ball();
  // On the diagonal the strip is inactive.
  CHECK(support(b, v2(1, 1)) == Approx(std::sqrt(2.0)).epsilon(1e-7));
  // Across the strip: max <(1,-1), x> over the disc-strip is 1.
  CHECK(support(b, v2(1, -1)) == Approx(1.0).epsilon(1e-7));
  // e1: the disc point (1,0) is inside the strip.
  CHECK(support(b, v2(1, 0)) == Approx(1.0).epsilon(1e-7));
  // Polyhedral intersections go through one LP.
  Body p = Body::intersection(Body::cube(2), Body::l1_ball(2));
  CHECK(support(p, v2(1, 1)) == Approx(1.0));
}

TEST_CASE("support of the disc-strip on a dense circle matches boundary sampling") {
  Body b = strip_space_ball();
  for (int k = 0; k < 24; ++k) {
    const double t = k * std::numbers::pi / 12;
    const Vec a = v2(std::cos(t), std::sin(t));
    double best = 0;
    for (int j = 0; j < 20000; ++j) {
      const double s = j * 2 * std::numbers::pi / 20000;
      Vec x = v2(std::cos(s), std::sin(s));
      x /= std::max(1.0, std::abs(x(0) - x(1)));
      best = std::max(best, a.dot(x));
    }
    CHECK(support(b, a) == Approx(best).epsilon(1e-6));
  }
}

TEST_CASE("volume examples") {
  CHECK(volume(Body::cube(3)) == Approx(8));
  CHECK(volume(Body::zonotope(cols({v2(1, 0), v2(0, 1), v2(1, 1)}))) == Approx(12));
  CHECK(volume(Body::zonotope(Mat::Identity(2, 2))) == Approx(4));
  CHECK(volume(Body::ball(2)) == Approx(std::numbers::pi));
  CHECK(volume(Body::ball(3)) == Approx(4 * std::numbers::pi / 3));
  CHECK(volume(Body::l1_ball(3)) == Approx(8.0 / 6));
  CHECK(volume(Body::l1_ball(2)) == Approx(2));
  CHECK(volume(polar(Body::cube(3))) == Approx(8.0 / 6));
  CHECK(volume(Body::cube(5, 0.5)) == Approx(1));
  CHECK_THROWS_AS(volume(Body::vpolytope(Mat::Identity(4, 4) + Mat::Ones(4, 4) * 0.1)), UnsupportedRepresentation);
}

TEST_CASE("3-D facet volume matches the zonotope determinant formula") {
  Rng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    Body z = random_zonotope(rng, 3, 3 + trial % 4);
    auto zz = as<Zonotope>(z);
    Body asv = Body::vpolytope(*zonotope_vertices(zz->generators));
    CHECK(volume(asv) == Approx(volume(z)).epsilon(1e-8));
  }
}

TEST_CASE("zonotope volume agrees with a shoelace oracle") {
  Rng rng(21);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 60; ++trial) {
    const int k = 2 + trial % 4;
    Mat y(2, k);
    for (int i = 0; i < 2 * k; ++i) y(i % 2, i / 2) = g(rng);
    const double oracle = shoelace_oracle(y);
    CHECK(volume(Body::zonotope(y)) == Approx(oracle).epsilon(1e-8));
  }
}

TEST_CASE("mutual containment implies equal support") {
  Rng rng(30);
  Body z = random_zonotope(rng, 2, 4);
  Body v = Body::vpolytope(*zonotope_vertices(as<Zonotope>(z)->generators));
  REQUIRE(contains_body(z, v).contained);
  REQUIRE(contains_body(v, z).contained);
  const Mat& net = direction_net(2);
  for (int k = 0; k < net.cols(); k += 7)
    CHECK(std::abs(support(z, net.col(k)) - support(v, net.col(k))) <= 2e-9);
}

TEST_CASE("normed spaces") {
  NormedSpace l1 = NormedSpace::lp(2, 1);
  CHECK(l1.norm(v2(1, -2)) == Approx(3));
  CHECK(l1.dual_norm(v2(1, -2)) == Approx(2));
  CHECK(NormedSpace::lp(3, 2).is_euclidean());
  Mat a(1, 2);
  a << 1, -1;
  CHECK_THROWS_AS(NormedSpace(Body::hpolytope(a, Vec::Ones(1))), InputError);
  CHECK_THROWS_AS(NormedSpace(Body::zonotope(cols({v2(1, 1)}))), InputError);
  CHECK_NOTHROW(NormedSpace(strip_space_ball()));
  // Triangle inequality and homogeneity on samples.
  Rng rng(8);
  std::normal_distribution<double> g;
  NormedSpace x(strip_space_ball());
  for (int k = 0; k < 50; ++k) {
    Vec p = v2(g(rng), g(rng)), q = v2(g(rng), g(rng));
    CHECK(x.norm(Vec(p + q)) <= x.norm(p) + x.norm(q) + 1e-9);
    CHECK(x.norm(Vec(-2.0 * p)) == Approx(2.0 * x.norm(p)));
  }
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(Body::hpolytope(Mat::Identity(2, 2), Vec::Ones(3)), InputError);
  CHECK_THROWS_AS(Body::hpolytope(Mat::Identity(2, 2), -Vec::Ones(2)), InputError);
  CHECK_THROWS_AS(Body::ball(2, 0), InputError);
  CHECK_THROWS_AS(support(Body::cube(2), Vec::Ones(3)), InputError);
  CHECK_THROWS_AS(Body::sum(Body::cube(2), Body::cube(3)), InputError);
  Mat bad = Mat::Identity(2, 2);
  bad(0, 0) = std::nan("");
  CHECK_THROWS_AS(Body::zonotope(bad), InputError);
}

TEST_CASE("cartesian products") {
  Body p = cartesian_product(Body::cube(2), Body::cube(1, 2.0));
  CHECK(p.dim() == 3);
  CHECK(volume(p) == Approx(16));
  Body q = cartesian_product(Body::zonotope(Mat::Identity(2, 2)), Body::zonotope(Mat::Identity(1, 1)));
  CHECK(as<Zonotope>(q) != nullptr);
  CHECK(volume(q) == Approx(8));
}
