// enlarge: command line front end for certificate verification, search and the desk experiments.

#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "enlarge/euclidean.hpp"
#include "enlarge/io.hpp"
#include "enlarge/search.hpp"
#include "enlarge/svg.hpp"

using namespace enlarge;
using io::Json;

namespace {

struct Globals {
  double eps_feas = 1e-9;
  double eps_eq = 1e-9;
  std::uint64_t seed = 1;
  bool json = false;

  Tolerances tol() const {
    Tolerances t;
    t.feas = eps_feas;
    t.eq = eps_eq;
    t.validate();
    return t;
  }
};

Json containment_json(const ContainmentResult& c) {
  Json j;
  j["contained"] = c.contained;
  j["mode"] = c.mode == ContainmentMode::Exact ? "exact" : "sampled";
  j["route"] = c.route;
  j["worst_slack"] = c.worst_slack;
  if (c.witness.size()) j["witness"] = io::to_json(c.witness);
  if (c.budget_fallback) j["budget_fallback"] = true;
  return j;
}

Json verification_json(const VerificationReport& v) {
  Json j;
  j["valid"] = v.valid;
  j["dual_ok"] = v.dual_ok;
  j["reconstruction_ok"] = v.reconstruction_ok;
  j["containment_ok"] = v.containment_ok;
  j["dual_excess"] = v.dual_excess;
  j["worst_pair"] = v.worst_pair;
  j["reconstruction_residual"] = v.reconstruction_residual;
  j["containment"] = containment_json(v.containment);
  j["unit_ball_inside"] = containment_json(v.unit_ball_inside);
  return j;
}

// Plain output: one "key: value" line per top-level field.
void emit(const Json& report, const Globals& g) {
  if (g.json) {
    std::cout << io::dump(report);
    return;
  }
  for (const auto& [k, v] : report.items()) {
    std::string text = v.is_string() ? v.get<std::string>() : io::dump(v, 0);
    if (!text.empty() && text.back() == '\n') text.pop_back();
    std::cout << k << ": " << text << "\n";
  }
}

Vec coords(const std::string& text, const std::string& what) {
  try {
    return parse_coords(text);
  } catch (const InputError& e) {
    throw InputError(what + ": " + e.what());
  }
}

OrthogonalGroupAction load_group(const std::string& spec, const Tolerances& tol) {
  if (spec.size() < 5 || spec.substr(spec.size() - 5) != ".json") return groups::by_name(spec);
  const Json doc = io::load(spec);
  const bool gens = doc.contains("generators");
  const char* key = gens ? "generators" : "elements";
  if (!doc.contains(key) || !doc[key].is_array() || doc[key].empty())
    throw io::DocumentError(spec, "/elements", "expected a non-empty array of matrices");
  std::vector<Mat> mats;
  for (std::size_t i = 0; i < doc[key].size(); ++i)
    mats.push_back(io::columns_from_json(doc[key][i], std::string("/") + key + "/" + std::to_string(i), -1, spec).transpose());
  return gens ? OrthogonalGroupAction::generated_by(mats, tol) : OrthogonalGroupAction(mats, tol);
}

int run_verify(const std::string& path, const Globals& g) {
  const Certificate cert = io::certificate_from_json(io::load(path), path);
  const VerificationReport v = verify_certificate(cert, g.tol());
  Json r = verification_json(v);
  r["pairs"] = cert.pairs().size();
  emit(r, g);
  return v.valid ? 0 : 1;
}

int run_find(const std::string& space_path, const std::string& target_path, int budget, int gens,
             const std::string& out_path, const Globals& g) {
  const Tolerances tol = g.tol();
  const NormedSpace space = io::space_from_json(io::load(space_path), "", space_path);
  const Body target = io::body_from_json(io::load(target_path), "", target_path);
  const FunctionalPool pool = default_pool(space, budget, tol);
  const SearchResult res = find_certificate(space, target, pool, gens, tol);
  Json r;
  r["status"] = to_string(res.status);
  r["pool_size"] = pool.size();
  r["generators"] = res.diagnostics.generators;
  r["lp_variables"] = res.diagnostics.lp_variables;
  r["lp_rows"] = res.diagnostics.lp_rows;
  r["containment_rows"] = res.diagnostics.containment_rows;
  r["exact_rows"] = res.diagnostics.exact_rows;
  r["refinements"] = res.diagnostics.refinements;
  r["message"] = res.diagnostics.message;
  if (res.found()) {
    r["verification"] = verification_json(*res.verification);
    if (!out_path.empty()) {
      std::ofstream(out_path) << io::dump(io::to_json(*res.certificate));
    } else {
      r["certificate"] = io::to_json(*res.certificate);
    }
  }
  emit(r, g);
  return res.found() ? 0 : 1;
}

int run_orbit(const std::string& group, const std::string& y_text, bool allow, const Globals& g) {
  const Tolerances tol = g.tol();
  const Certificate cert = orbit_zonotope(load_group(group, tol), coords(y_text, "--y"), allow, tol);
  std::cout << io::dump(io::to_json(cert));
  return 0;
}

int run_small(const std::string& path, const Globals& g) {
  const Certificate cert = io::certificate_from_json(io::load(path), path == "-" ? "<stdin>" : path);
  const SmallnessReport s = smallness_check(cert, g.tol());
  Json r;
  r["verdict"] = to_string(s.verdict);
  r["generator_norm_sum"] = s.generator_norm_sum;
  r["dim"] = s.dim;
  r["lambda"] = s.lambda_n;
  emit(r, g);
  return s.verdict == Smallness::Small ? 0 : 1;
}

int run_prismify(const std::string& path, const std::string& h_text, const std::string& x1_text,
                 const std::string& out_path, const Globals& g) {
  const Tolerances tol = g.tol();
  const Certificate cert = io::certificate_from_json(io::load(path), path);
  const Vec h = coords(h_text, "--h");
  const Vec x1 = coords(x1_text, "--x1");
  if (h.size() != cert.dim()) throw InputError("--h has the wrong dimension");
  const PrismResult p = prismify(cert, x1, h, orthogonal_complement(h), tol);
  Json r;
  r["prism_shape"] = p.prism_shape;
  r["inside_input"] = p.inside_input.contained;
  r["verification"] = verification_json(p.verification);
  r["b1"] = p.atoms.b1;
  r["b2"] = p.atoms.b2;
  if (!out_path.empty())
    std::ofstream(out_path) << io::dump(io::to_json(p.certificate));
  else
    r["certificate"] = io::to_json(p.certificate);
  emit(r, g);
  return p.verification.valid && p.prism_shape && p.inside_input.contained ? 0 : 1;
}

int run_average(const std::string& body_path, const std::string& dir_text, int trials, const Globals& g) {
  const Body body = io::body_from_json(io::load(body_path), "", body_path);
  const Vec a = coords(dir_text, "--dir");
  const MonteCarloEstimate est = monte_carlo_average_support(body, a, trials, g.seed, g.tol());
  Json r;
  r["mean"] = est.mean;
  r["standard_error"] = est.standard_error;
  r["trials"] = est.trials;
  r["seed"] = g.seed;
  bool ok = true;
  if (auto z = as<Zonotope>(body)) {
    double expected = 0;
    for (Eigen::Index j = 0; j < z->generators.cols(); ++j) expected += average_segment_radius(z->generators.col(j)) * a.norm();
    r["closed_form"] = expected;
    r["z_score"] = est.standard_error > 0 ? (est.mean - expected) / est.standard_error : 0.0;
    ok = std::abs(est.mean - expected) <= 3 * est.standard_error + 1e-12;
  }
  r["lambda"] = lambda_euclidean(body.dim());
  emit(r, g);
  return ok ? 0 : 1;
}

int run_minvol(const std::string& space_path, int restarts, int gens, int budget, const std::string& out_path,
               const Globals& g) {
  const Tolerances tol = g.tol();
  const NormedSpace space = io::space_from_json(io::load(space_path), "", space_path);
  const FunctionalPool pool = default_pool(space, budget, tol);
  Mat m(space.dim(), static_cast<Eigen::Index>(pool.size()));
  for (std::size_t j = 0; j < pool.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = pool.functionals[j];
  MinVolumeOptions opt;
  opt.restarts = restarts;
  opt.generators = gens;
  opt.seed = g.seed;
  const MinVolumeResult res = min_volume_search(space, m, opt, tol);
  Json r;
  r["found"] = res.found;
  r["volume"] = res.volume;
  r["feasible_restarts"] = res.feasible_restarts;
  r["restarts"] = restarts;
  r["volume_bound_ok"] = res.volume_bound_ok;
  r["norm_sum_bound_ok"] = res.norm_sum_bound_ok;
  if (res.found) {
    if (space.dim() == 2) r["hausdorff_to_square"] = hausdorff_to_circumscribed_square(res.certificate->zonotope(), tol);
    if (!out_path.empty())
      std::ofstream(out_path) << io::dump(io::to_json(*res.certificate));
    else
      r["certificate"] = io::to_json(*res.certificate);
  }
  emit(r, g);
  return res.found && res.volume_bound_ok && res.norm_sum_bound_ok ? 0 : 1;
}

int run_theorem1(const std::string& space_path, const std::string& cert_path, const std::string& frame_path,
                 const Globals& g) {
  const Tolerances tol = g.tol();
  const NormedSpace space = io::space_from_json(io::load(space_path), "", space_path);
  const Certificate cert = io::certificate_from_json(io::load(cert_path), cert_path);
  const Json frame = io::load(frame_path);
  for (const char* key : {"functionals", "points"})
    if (!frame.contains(key)) throw io::DocumentError(frame_path, std::string("/") + key, "missing field");
  const Mat f = io::columns_from_json(frame["functionals"], "/functionals", space.dim(), frame_path);
  const Mat x = io::columns_from_json(frame["points"], "/points", space.dim(), frame_path);
  std::vector<Vec> fv, xv;
  for (Eigen::Index j = 0; j < f.cols(); ++j) fv.push_back(f.col(j));
  for (Eigen::Index j = 0; j < x.cols(); ++j) xv.push_back(x.col(j));
  const Theorem1Report t = theorem1_check(space, fv, xv, cert, tol);
  Json r;
  r["holds"] = t.holds;
  r["inconclusive"] = t.inconclusive;
  r["advisory"] = t.advisory;
  r["c1"] = t.c1;
  r["c2"] = t.c2;
  r["c3"] = t.c3;
  r["worst_gauge"] = t.worst_gauge;
  if (t.witness.size()) r["witness"] = io::to_json(t.witness);
  emit(r, g);
  return t.holds ? 0 : 1;
}

int run_theorem2(double eps, const Globals& g) {
  const PartitionReport p = partition_property_check(eps, 10000, g.tol());
  Json r;
  r["eps"] = p.eps;
  r["partition_property"] = p.holds;
  r["bound"] = p.bound;
  r["worst_margin"] = p.worst_margin;
  r["worst_functional"] = io::to_json(p.worst_functional);
  r["strip_margin"] = p.strip_margin;
  r["exact_max"] = p.exact_max;
  r["f3_x1"] = p.f3_x1;
  r["f3_x2"] = p.f3_x2;
  emit(r, g);
  return p.holds ? 0 : 1;
}

int run_render(const std::vector<std::string>& paths, const std::string& out, const Globals& g) {
  std::vector<Body> bodies;
  for (const std::string& p : paths) {
    const Json doc = io::load(p);
    // Certificates render as their zonotope over the enlargement.
    if (doc.is_object() && doc.contains("pairs")) {
      const Certificate c = io::certificate_from_json(doc, p);
      bodies.push_back(c.enlargement());
      bodies.push_back(c.zonotope());
    } else {
      bodies.push_back(io::body_from_json(doc, "", p));
    }
  }
  const std::string svg = render_svg(bodies, g.tol());
  if (out.empty() || out == "-") {
    std::cout << svg;
  } else {
    std::ofstream f(out);
    if (!f) throw InputError(out + ": cannot write");
    f << svg;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sufficient enlargement certificates: verification, search and experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--eps-feas", g.eps_feas, "Feasibility tolerance")->capture_default_str();
  app.add_option("--eps-eq", g.eps_eq, "Equality tolerance")->capture_default_str();
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_flag("--json", g.json, "Machine-readable report");

  std::function<int()> action;

  auto* verify = app.add_subcommand("verify", "Verify a certificate document");
  std::string cert_path;
  verify->add_option("cert", cert_path, "Certificate JSON (- for stdin)")->required();
  verify->callback([&] { action = [&] { return run_verify(cert_path, g); }; });

  auto* find = app.add_subcommand("find", "Search for a certificate with a given enlargement");
  std::string space_path, target_path, out_path;
  int budget = 16, gens = 0;
  find->add_option("--space", space_path, "Unit ball or space JSON")->required();
  find->add_option("--target", target_path, "Enlargement body JSON")->required();
  find->add_option("--pool-budget", budget, "Functional pool size")->capture_default_str();
  find->add_option("--gens", gens, "Use the first N pool functionals (0 = all)")->capture_default_str();
  find->add_option("-o,--output", out_path, "Write the certificate here");
  find->callback([&] { action = [&] { return run_find(space_path, target_path, budget, gens, out_path, g); }; });

  auto* orbit = app.add_subcommand("orbit", "Orbit zonotope certificate for l2^n");
  std::string group, y_text;
  bool allow = false;
  orbit->add_option("--group", group, "d3..dK, cK, octahedral, icosahedral or matrices.json")->required();
  orbit->add_option("--y", y_text, "Unit vector, comma separated")->required();
  orbit->add_flag("--allow-commutant", allow, "Accept groups with a non-trivial commutant");
  orbit->callback([&] { action = [&] { return run_orbit(group, y_text, allow, g); }; });

  auto* small = app.add_subcommand("small-check", "Generator norm sum test for l2^n certificates");
  std::string small_path = "-";
  small->add_option("cert", small_path, "Certificate JSON (default stdin)");
  small->callback([&] { action = [&] { return run_small(small_path, g); }; });

  auto* prism = app.add_subcommand("prismify", "Merge the +-h atoms of a slab-bounded certificate");
  prism->set_help_flag("--help", "Print this help message and exit");
  std::string prism_path, h_text, x1_text, prism_out;
  prism->add_option("cert", prism_path, "Certificate JSON")->required();
  prism->add_option("--h", h_text, "Slab functional")->required();
  prism->add_option("--x1", x1_text, "Point with h(x1) = 1")->required();
  prism->add_option("-o,--output", prism_out, "Write the certificate here");
  prism->callback([&] { action = [&] { return run_prismify(prism_path, h_text, x1_text, prism_out, g); }; });

  auto* average = app.add_subcommand("average", "Monte Carlo Haar average of a support function");
  std::string body_path, dir_text;
  int trials = 10000;
  average->add_option("--body", body_path, "Body JSON")->required();
  average->add_option("--dir", dir_text, "Direction")->required();
  average->add_option("--trials", trials, "Haar samples")->capture_default_str();
  average->callback([&] { action = [&] { return run_average(body_path, dir_text, trials, g); }; });

  auto* minvol = app.add_subcommand("minvol", "Multi-start search for small-volume certificates");
  std::string mv_space, mv_out;
  int restarts = 100, mv_gens = 4, mv_budget = 16;
  minvol->add_option("--space", mv_space, "Unit ball or space JSON")->required();
  minvol->add_option("--restarts", restarts)->capture_default_str();
  minvol->add_option("--gens", mv_gens, "Generators per certificate")->capture_default_str();
  minvol->add_option("--pool-budget", mv_budget, "Functional pool size")->capture_default_str();
  minvol->add_option("-o,--output", mv_out, "Write the best certificate here");
  minvol->callback([&] { action = [&] { return run_minvol(mv_space, restarts, mv_gens, mv_budget, mv_out, g); }; });

  auto* t1 = app.add_subcommand("theorem1", "Parallelepiped inside an inflated certificate zonotope");
  std::string t1_space, t1_cert, t1_frame;
  t1->add_option("--space", t1_space)->required();
  t1->add_option("--cert", t1_cert)->required();
  t1->add_option("--frame", t1_frame, "{\"functionals\": [...], \"points\": [...]}")->required();
  t1->callback([&] { action = [&] { return run_theorem1(t1_space, t1_cert, t1_frame, g); }; });

  auto* example = app.add_subcommand("example", "Worked examples");
  example->require_subcommand(1);
  auto* t2 = example->add_subcommand("theorem2", "Partition property for the disc cut by a strip");
  double eps = std::numbers::pi / 6;
  t2->add_option("--eps", eps, "Angle in (0, pi/4)")->capture_default_str();
  t2->callback([&] { action = [&] { return run_theorem2(eps, g); }; });

  auto* render = app.add_subcommand("render", "SVG drawing of planar bodies or certificates");
  std::vector<std::string> render_paths;
  std::string render_out;
  render->add_option("inputs", render_paths, "Body or certificate JSON files")->required();
  render->add_option("-o,--output", render_out, "SVG file (default stdout)");
  render->callback([&] { action = [&] { return run_render(render_paths, render_out, g); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return e.get_exit_code() == 0 ? app.exit(e) : (app.exit(e), 2);
  }
  try {
    return action();
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.witness.size()) std::cerr << "witness: " << io::dump(io::to_json(e.witness), 0);
    return 2;
  } catch (const HypothesisError& e) {
    std::cerr << "hypothesis failed: " << e.what() << "\n";
    return 1;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const RankError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedRepresentation& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
