#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "test_main.hpp"

#include <filesystem>

#include "enlarge/io.hpp"
#include "enlarge/svg.hpp"

using namespace enlarge;
using namespace enlarge::testing;
using doctest::Approx;
namespace fs = std::filesystem;

namespace {

std::string fixture(const std::string& name) { return std::string(ENLARGE_FIXTURES) + "/" + name; }

std::string error_of(const std::string& text) {
  try {
    io::certificate_from_json(io::parse(text, "doc"), "doc");
  } catch (const io::DocumentError& e) {
    return e.where;
  }
  return "";
}

}  // namespace

TEST_CASE("every fixture round-trips byte for byte") {
  int count = 0;
  for (const auto& entry : fs::directory_iterator(ENLARGE_FIXTURES)) {
    if (entry.path().extension() != ".json") continue;
    const std::string path = entry.path().string();
    const std::string text = io::read_source(path);
    CAPTURE(path);
    const io::Json doc = io::parse(text, path);
    CHECK(io::dump(doc) == text);
    // Through the typed model as well.
    if (doc.contains("pairs")) {
      CHECK(io::dump(io::to_json(io::certificate_from_json(doc, path))) == text);
    } else if (doc.contains("unit_ball")) {
      CHECK(io::dump(io::to_json(io::space_from_json(doc, "", path))) == text);
    } else if (doc.contains("kind")) {
      CHECK(io::dump(io::to_json(io::body_from_json(doc, "", path))) == text);
    }
    ++count;
  }
  CHECK(count >= 10);
}

TEST_CASE("numbers keep 17 significant digits") {
  Vec v(3);
  v << 0.1, 1.0 / 3.0, -2.5e-300;
  const std::string text = io::dump(io::to_json(v), 0);
  CHECK(text == "[0.10000000000000001,0.33333333333333331,-2.5e-300]\n");
  const Vec back = io::vec_from_json(io::parse(text));
  CHECK(back == v);
}

TEST_CASE("loaded fixtures carry the expected geometry") {
  const Certificate hex = io::certificate_from_json(io::load(fixture("hexagon_cert.json")));
  CHECK(verify_certificate(hex).valid);
  CHECK(hex.pairs().size() == 6);
  CHECK_FALSE(verify_certificate(io::certificate_from_json(io::load(fixture("invalid_cert.json")))).valid);
  const NormedSpace t2 = io::space_from_json(io::load(fixture("theorem2_space.json")));
  CHECK(t2.norm(v2(1, -1)) == Approx(2.0));
  CHECK(t2.norm(v2(1, 1)) == Approx(std::sqrt(2.0)));
  CHECK(t2.norm(v2(0.5, -0.5)) == Approx(1.0));
  const Body mixed = io::body_from_json(io::load(fixture("mixed_body.json")));
  CHECK(mixed.kind() == "sum");
}

TEST_CASE("malformed documents report line or field") {
  try {
    io::parse("{\n  \"kind\": \"zonotope\",\n  \"generators\": [[1, 0],]\n}", "doc");
    FAIL("no error");
  } catch (const io::DocumentError& e) {
    CHECK(e.where == "line 3, column 25");
  }
  const std::string space = R"("space": {"dim": 2, "unit_ball": {"kind": "ball2", "dim": 2}})";
  CHECK(error_of("{" + space + R"(, "enlargement": {"kind": "ball2", "dim": 2}, "pairs": [{"f": [1, 0], "y": [1]}]})") ==
        "/pairs/0/y");
  CHECK(error_of("{" + space + R"(, "enlargement": {"kind": "blob"}, "pairs": []})") == "/enlargement/kind");
  CHECK(error_of("{" + space + R"(, "pairs": []})") == "/enlargement");
  CHECK(error_of("{" + space + R"(, "enlargement": {"kind": "ball2", "dim": 2, "radius": -1}, "pairs": []})") ==
        "/enlargement");
  CHECK(error_of(R"({"space": {"dim": 3, "unit_ball": {"kind": "ball2", "dim": 2}}, "enlargement": {"kind": "ball2", "dim": 2}, "pairs": []})") ==
        "/space/dim");
  CHECK(error_of(R"({"space": {"unit_ball": {"kind": "hpolytope", "normals": [[1, 0]], "offsets": [1]}}, "enlargement": {"kind": "ball2", "dim": 2}, "pairs": []})") ==
        "/space");
  CHECK_THROWS_AS(io::read_source("/nonexistent/file.json"), InputError);
}

TEST_CASE("svg rendering") {
  const Certificate hex = io::certificate_from_json(io::load(fixture("hexagon_cert.json")));
  const Mat poly = boundary_polygon(hex.zonotope());
  CHECK(poly.cols() == 6);
  for (Eigen::Index k = 0; k < 6; ++k) CHECK(poly.col(k).norm() == Approx(4.0 / 3.0));
  const std::string svg = render_svg({Body::ball(2), hex.zonotope()});
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("<circle") != std::string::npos);
  CHECK(svg.find("scale(1,-1)") != std::string::npos);
  CHECK(boundary_polygon(Body::ball(2, 2.0)).col(0).norm() == Approx(2.0));
  CHECK_THROWS_AS(boundary_polygon(Body::ball(3)), InputError);
}
