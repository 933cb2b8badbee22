// Acceptance gate: one PASS/FAIL line per criterion. Run with a criterion id (c1..c12) or "all".

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <string>

#include "enlarge/euclidean.hpp"
#include "enlarge/search.hpp"
#include "generators.hpp"

using namespace enlarge;
using namespace enlarge::testing;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Vec unit(Rng& rng, int n) {
  Vec v = gaussian(rng, n);
  return v / v.norm();
}

double norm_sum(const Certificate& c) {
  double s = 0;
  for (const Pair& p : c.pairs()) s += p.y.norm();
  return s;
}

Certificate scaled_pairs(const Certificate& c, double factor) {
  std::vector<Pair> p;
  for (const Pair& q : c.pairs()) p.push_back({q.f, factor * q.y});
  return Certificate(c.space(), c.enlargement(), p);
}

std::vector<std::pair<std::string, OrthogonalGroupAction>> frame_groups() {
  std::vector<std::pair<std::string, OrthogonalGroupAction>> g;
  for (int k = 3; k <= 8; ++k) g.emplace_back("d" + std::to_string(k), groups::dihedral(k));
  g.emplace_back("octahedral", groups::octahedral());
  g.emplace_back("icosahedral", groups::icosahedral());
  return g;
}

// Frame identity on group orbits.
Outcome c1() {
  const double tol_residual = 1e-9, time_limit = 10.0;
  const auto t0 = Clock::now();
  Rng rng(101);
  double worst = 0;
  int orbits = 0;
  for (const auto& [name, g] : frame_groups())
    for (int s = 0; s < 20; ++s) {
      const Certificate c = orbit_zonotope(g, unit(rng, g.dim()));
      ++orbits;
      for (int t = 0; t < 100; ++t) {
        const Vec x = gaussian(rng, g.dim());
        Vec r = -x;
        for (const Pair& p : c.pairs()) r += p.f.dot(x) * p.y;
        worst = std::max(worst, r.norm() / x.norm());
      }
    }
  const double secs = seconds_since(t0);
  return {worst <= tol_residual && secs < time_limit,
          fmt("%d orbits, worst relative residual %.3g (<= %.0e), %.2fs (< %.0fs)", orbits, worst, tol_residual, secs,
              time_limit)};
}

// Smallness criterion.
Outcome c2() {
  const double rel = 1e-12, floor_tol = 1e-9;
  Rng rng(202);
  int orbit_bad = 0, scaled_bad = 0, orbits = 0;
  for (const auto& [name, g] : frame_groups())
    for (int s = 0; s < 5; ++s) {
      const Certificate c = orbit_zonotope(g, unit(rng, g.dim()));
      ++orbits;
      const auto rep = smallness_check(c);
      if (std::abs(rep.generator_norm_sum - g.dim()) > rel * g.dim() || rep.verdict != Smallness::Small) ++orbit_bad;
      if (smallness_check(scaled_pairs(c, 1.1)).verdict != Smallness::NotSmall) ++scaled_bad;
    }
  int below = 0, invalid = 0;
  std::string first_invalid;
  double worst_gap = std::numeric_limits<double>::infinity();
  for (int t = 0; t < 1000; ++t) {
    const int n = 2 + t % 3;
    const Certificate c = random_euclidean_certificate(rng, n);
    const VerificationReport v = verify_certificate(c);
    if (!v.valid && invalid++ == 0)
      first_invalid = fmt(" [first invalid #%d: dual excess %.3g, residual %.3g, containment slack %.3g]", t, v.dual_excess,
                          v.reconstruction_residual, v.containment.worst_slack);
    const double gap = norm_sum(c) - n;
    worst_gap = std::min(worst_gap, gap);
    if (gap < -floor_tol) ++below;
  }
  return {orbit_bad == 0 && scaled_bad == 0 && below == 0 && invalid == 0,
          fmt("%d orbits off n: %d, scaled not flagged: %d; 1000 random: %d invalid, %d below n-1e-9 (min gap %.3g)",
              orbits, orbit_bad, scaled_bad, invalid, below, worst_gap) +
              first_invalid};
}

// Projection constant closed form and Monte Carlo.
Outcome c3() {
  const double closed_tol = 1e-15, mc_rel = 0.01, time_limit = 30.0;
  const auto t0 = Clock::now();
  const bool exact1 = lambda_euclidean(1) == 1.0;
  const double e2 = std::abs(lambda_euclidean(2) - 4.0 / std::numbers::pi);
  const double e3 = std::abs(lambda_euclidean(3) - 1.5);
  double worst_rel = 0;
  for (int n : {2, 3}) {
    Vec z = Vec::Zero(n);
    z(0) = 1.0;
    const auto est = monte_carlo_average_support(Body::zonotope(Mat(z)), Vec::Unit(n, 0), 100000, 303 + n);
    const double expected = average_segment_radius(z);
    worst_rel = std::max(worst_rel, std::abs(est.mean - expected) / expected);
  }
  const double secs = seconds_since(t0);
  return {exact1 && e2 <= closed_tol && e3 <= closed_tol && worst_rel <= mc_rel && secs < time_limit,
          fmt("lambda(1) exact: %s, |lambda(2)-4/pi| %.2g, |lambda(3)-3/2| %.2g, MC rel err %.4f (<= %.2f), %.2fs",
              exact1 ? "yes" : "no", e2, e3, worst_rel, mc_rel, secs)};
}

// Parallelepipeds and convex combinations.
Outcome c4() {
  Rng rng(404);
  int fails = 0;
  for (int t = 0; t < 50; ++t) {
    const int n = 2 + t % 3;
    const NormedSpace x(random_polytopal_ball(rng, n));
    if (!verify_certificate(parallelepiped_certificate(x, random_frame(rng, x).f)).valid) ++fails;
  }
  int comb_fails = 0;
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + t % 2;
    const NormedSpace x(random_polytopal_ball(rng, n));
    const Certificate a = parallelepiped_certificate(x, random_frame(rng, x).f);
    const Certificate b = parallelepiped_certificate(x, random_frame(rng, x).f);
    const double lambda = std::uniform_real_distribution<double>(0, 1)(rng);
    if (!verify_certificate(convex_combination(a, b, lambda)).valid) ++comb_fails;
  }
  return {fails == 0 && comb_fails == 0,
          fmt("parallelepipeds: %d/50 failed; convex combinations: %d/20 failed", fails, comb_fails)};
}

// Theorem 1 property suite.
Outcome c5() {
  const double c2_floor = 0.05;
  Rng rng(505);
  int holds = 0, instances = 0, skipped = 0;
  double worst_gauge = 0;
  while (instances < 200) {
    const int n = 2 + instances % 2;
    const NormedSpace x(random_polytopal_ball(rng, n));
    const Frame fr = random_frame(rng, x);
    double c2v;
    try {
      c2v = compute_c2(x, fr.f, fr.x).c2;
    } catch (const PreconditionError&) {
      ++skipped;
      continue;
    }
    if (c2v <= c2_floor) {
      ++skipped;
      continue;
    }
    // Enlargement (1 + t) P with t below the c3 > 0 threshold; the pool contains the frame.
    const double t = 0.9 * std::uniform_real_distribution<double>(0, 1)(rng) * c2v / (2 - c2v);
    Mat rows(n, n);
    for (int i = 0; i < n; ++i) rows.row(i) = fr.f[i].transpose();
    const Body target = Body::hpolytope(rows, Vec::Constant(n, 1 + t));
    FunctionalPool pool = default_pool(x, 64);
    for (const Vec& f : fr.f) pool.add(f, PoolTag::User);
    const SearchResult found = find_certificate(x, target, pool);
    if (!found.found()) {
      ++skipped;
      continue;
    }
    ++instances;
    const Theorem1Report rep = theorem1_check(x, fr.f, fr.x, *found.certificate);
    worst_gauge = std::max(worst_gauge, rep.worst_gauge);
    if (rep.holds && !rep.inconclusive) ++holds;
  }
  return {holds == 200, fmt("holds %d/200 (worst vertex gauge %.6f, %d frames resampled)", holds, worst_gauge, skipped)};
}

// Corollary minimality.
Outcome c6() {
  const double margin_tol = 1e-6;
  auto basis = [](int n) {
    std::vector<Vec> e;
    for (int i = 0; i < n; ++i) e.push_back(Vec::Unit(n, i));
    return e;
  };
  const auto l22 = corollary_minimality_check(NormedSpace::lp(2, 2), basis(2), basis(2));
  const auto l23 = corollary_minimality_check(NormedSpace::lp(3, 2), basis(3), basis(3));
  const auto l12 = corollary_minimality_check(NormedSpace::lp(2, 1), basis(2), basis(2));
  const double expected = 1 - 1 / std::sqrt(2.0);
  const bool ok = l22.minimal && std::abs(l22.margin - expected) <= margin_tol && l23.minimal && !l12.minimal &&
                  l12.margin == 0.0;
  return {ok, fmt("l2^2 minimal %d margin %.9f (1-1/sqrt2 = %.9f); l2^3 minimal %d; l1^2 minimal %d margin %.3g", l22.minimal,
                  l22.margin, expected, l23.minimal, l12.minimal, l12.margin)};
}

// Disc cut by a strip.
Outcome c7() {
  const double f3_tol = 1e-12;
  std::string detail;
  bool ok = true;
  for (double eps : {std::numbers::pi / 16, std::numbers::pi / 8, std::numbers::pi / 6, std::numbers::pi / 5}) {
    const PartitionReport p = partition_property_check(eps);
    const bool good = p.holds && p.worst_margin > 0 && std::abs(p.f3_x1 - 1) <= f3_tol && std::abs(p.f3_x2 + 1) <= f3_tol;
    ok = ok && good;
    detail += fmt("eps=%.4f holds=%d margin=%.4f strip=%.4f; ", eps, p.holds, p.worst_margin, p.strip_margin);
  }
  return {ok, detail + "f3 = (1,-1) at e1, e2"};
}

// Prismify.
Outcome c8() {
  const double h_tol = 1e-9;
  Rng rng(808);
  int fails = 0;
  double worst_h = 0;
  for (int t = 0; t < 50; ++t) {
    const SlabInstance s = random_slab_certificate(rng, 2 + t % 2);
    const PrismResult p = prismify(s.cert, s.x1, s.h, s.basis);
    for (std::size_t j = 1; j < p.certificate.pairs().size(); ++j)
      worst_h = std::max(worst_h, std::abs(s.h.dot(p.certificate.pairs()[j].y)));
    const bool inside = p.inside_input.contained && p.inside_input.mode == ContainmentMode::Exact;
    if (!p.verification.valid || !inside || worst_h > h_tol) ++fails;
  }
  return {fails == 0, fmt("%d/50 failed, worst |h(y_j)| %.3g (<= %.0e)", fails, worst_h, h_tol)};
}

// Direct sums.
Outcome c9() {
  const double rel = 1e-12;
  const Certificate hex = orbit_zonotope(groups::dihedral(3), Vec::Unit(2, 0));
  const Certificate cube = orbit_zonotope(groups::dihedral(4), Vec::Unit(2, 0));
  const Certificate segment(NormedSpace::lp(1, 2), Body::zonotope(Mat::Ones(1, 1)), {{Vec::Ones(1), Vec::Ones(1)}});
  bool ok = true;
  std::string detail;
  for (auto [name, a, b] : {std::tuple{"hexagon+segment", hex, segment}, std::tuple{"cube+cube", cube, cube}}) {
    const Certificate s = direct_sum(a, b);
    const auto rep = smallness_check(s);
    const bool good = verify_certificate(s).valid && rep.verdict == Smallness::Small &&
                      std::abs(rep.generator_norm_sum - s.dim()) <= rel * s.dim();
    ok = ok && good;
    detail += fmt("%s: valid+small %d, sum %.15g (n+m = %d); ", name, good, rep.generator_norm_sum, s.dim());
  }
  return {ok, detail};
}

// Minimal volume in the Euclidean plane.
Outcome c10() {
  const double vol_limit = 4.05, hausdorff_limit = 0.05, bound_slack = 1e-6, time_limit = 120.0;
  const auto t0 = Clock::now();
  Mat pool(2, 16);
  for (int k = 0; k < 16; ++k) pool.col(k) << std::cos(k * std::numbers::pi / 8), std::sin(k * std::numbers::pi / 8);
  double best = std::numeric_limits<double>::infinity(), hd = 0, lowest = best;
  for (int gens = 4; gens <= 6; ++gens) {
    MinVolumeOptions opt;
    opt.generators = gens;
    opt.restarts = 100;
    opt.seed = 1000 + gens;
    const MinVolumeResult r = min_volume_search(NormedSpace::lp(2, 2), pool, opt);
    for (double v : r.history)
      if (!std::isnan(v)) lowest = std::min(lowest, v);
    if (r.found && r.volume < best) {
      best = r.volume;
      hd = hausdorff_to_circumscribed_square(r.certificate->zonotope());
    }
  }
  const double secs = seconds_since(t0);
  return {best <= vol_limit && hd <= hausdorff_limit && lowest >= 4 - bound_slack && secs < time_limit,
          fmt("best volume %.9f (<= %.2f), Hausdorff %.3g (<= %.2f), lowest restart volume %.9f (>= 4 - 1e-6), %.1fs", best,
              vol_limit, hd, hausdorff_limit, lowest, secs)};
}

// Hadamard certificates.
Outcome c11() {
  const double tol_support = 1e-9;
  int invalid = 0;
  double worst = -1;
  for (int n = 1; n <= 8; ++n) {
    const Certificate h = hadamard_certificate(n);
    if (!verify_certificate(h).valid) ++invalid;
    if (n == 1) continue;
    const Body z = h.zonotope();
    const Mat& net = direction_net(n);
    for (Eigen::Index k = 0; k < net.cols(); ++k) worst = std::max(worst, support(z, net.col(k)) - 1.0);
  }
  return {invalid == 0 && worst <= tol_support,
          fmt("%d/8 invalid, worst support excess over the ball %.3g (<= %.0e)", invalid, worst, tol_support)};
}

// Independent containment check: enumerate zonotope vertices, test them against the target
// by support or gauge evaluation without going through contains_body.
bool independent_inside(const Body& z, const Body& target) {
  const auto& g = as<Zonotope>(z)->generators;
  const auto verts = zonotope_vertices(g);
  if (!verts) return false;
  for (Eigen::Index k = 0; k < verts->cols(); ++k) {
    double gv;
    if (auto h = as<HPolytope>(target)) {
      gv = ((h->normals * verts->col(k)).cwiseAbs().array() / h->offsets.array()).maxCoeff();
    } else {
      gv = gauge(target, verts->col(k));
    }
    if (gv > 1 + 1e-8) return false;
  }
  return true;
}

Outcome c12() {
  struct Instance {
    std::string name;
    NormedSpace space;
    Body target;
  };
  Rng rng(1212);
  const NormedSpace rp(random_polytopal_ball(rng, 2));
  const Frame fr = random_frame(rng, rp);
  Mat rows(2, 2);
  rows << fr.f[0].transpose(), fr.f[1].transpose();
  Mat hexv(2, 3);
  for (int k = 0; k < 3; ++k) hexv.col(k) << std::cos(k * std::numbers::pi / 3), std::sin(k * std::numbers::pi / 3);
  const Body hex_ball = Body::vpolytope(hexv);
  std::vector<Instance> family{
      {"l1^2 in cube", NormedSpace::lp(2, 1), Body::cube(2)},
      {"l2^2 in 1.05 cube", NormedSpace::lp(2, 2), Body::cube(2, 1.05)},
      {"l2^2 in D3 hexagon", NormedSpace::lp(2, 2), orbit_zonotope(groups::dihedral(3), Vec::Unit(2, 0)).zonotope()},
      {"l2^2 in 1.5 ball", NormedSpace::lp(2, 2), Body::ball(2, 1.5)},
      {"linf^2 in cube", NormedSpace::lp(2, std::numeric_limits<double>::infinity()), Body::cube(2)},
      {"l1^3 in cube", NormedSpace::lp(3, 1), Body::cube(3)},
      {"l2^3 in 1.1 cube", NormedSpace::lp(3, 2), Body::cube(3, 1.1)},
      {"strip disc in cube", theorem2_space(), Body::cube(2)},
      {"random polytope in 1.1 P", rp, Body::hpolytope(rows, Vec::Constant(2, 1.1))},
      {"hexagon in itself", NormedSpace(hex_ball), hex_ball},
  };
  int unsound = 0, non_monotone = 0, found_any = 0;
  std::string detail;
  for (const Instance& in : family) {
    FunctionalPool pool = default_pool(in.space, 24);
    if (in.name == "random polytope in 1.1 P")
      for (const Vec& f : fr.f) pool.add(f, PoolTag::User);
    bool seen = false;
    for (std::size_t k = 1; k <= pool.size(); k += std::max<std::size_t>(1, pool.size() / 8)) {
      const SearchResult r = find_certificate(in.space, in.target, pool.head(k));
      if (r.found()) {
        if (!verify_certificate(*r.certificate).valid || !independent_inside(r.certificate->zonotope(), in.target)) ++unsound;
      } else if (seen) {
        ++non_monotone;
      }
      seen = seen || r.found();
    }
    const SearchResult full = find_certificate(in.space, in.target, pool);
    if (!full.found()) detail += in.name + "; ";
    if (full.found()) {
      ++found_any;
      if (!independent_inside(full.certificate->zonotope(), in.target)) ++unsound;
    } else if (seen) {
      ++non_monotone;
    }
  }
  return {unsound == 0 && non_monotone == 0,
          fmt("10 instances, %d found with the full pool, %d unsound successes, %d monotonicity breaks", found_any, unsound,
              non_monotone) +
              (detail.empty() ? "" : " (not found: " + detail.substr(0, detail.size() - 2) + ")")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::map<std::string, std::pair<std::string, std::function<Outcome()>>> criteria{
      {"c1", {"frame identity", c1}},     {"c2", {"smallness", c2}},
      {"c3", {"lambda consistency", c3}}, {"c4", {"parallelepipeds and convex combinations", c4}},
      {"c5", {"theorem 1 suite", c5}},    {"c6", {"cube minimality", c6}},
      {"c7", {"disc cut by a strip", c7}}, {"c8", {"prismify", c8}},
      {"c9", {"direct sums", c9}},        {"c10", {"minimal volume", c10}},
      {"c11", {"hadamard", c11}},         {"c12", {"search soundness", c12}},
  };
  const std::string which = argc > 1 ? argv[1] : "all";
  int failed = 0, ran = 0;
  for (int i = 1; i <= 12; ++i) {
    const std::string id = "c" + std::to_string(i);
    if (which != "all" && which != id) continue;
    const auto& [title, run] = criteria.at(id);
    ++ran;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%-4s %s  %s: %s\n", id.c_str(), o.pass ? "PASS" : "FAIL", title.c_str(), o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  if (ran == 0) {
    std::fprintf(stderr, "unknown criterion %s\n", which.c_str());
    return 2;
  }
  return failed == 0 ? 0 : 1;
}
