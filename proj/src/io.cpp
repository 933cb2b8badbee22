#include "enlarge/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace enlarge::io {

DocumentError::DocumentError(const std::string& src, const std::string& at, const std::string& what)
    : InputError(src + ": " + at + ": " + what), source(src), where(at) {}

std::string read_source(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  ss << in.rdbuf();
  return ss.str();
}

Json parse(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string what = e.what();
    if (auto p = what.find("syntax error"); p != std::string::npos) what = what.substr(p);
    throw DocumentError(source, "line " + std::to_string(line) + ", column " + std::to_string(col), what);
  }
}

Json load(const std::string& path) { return parse(read_source(path), path == "-" ? "<stdin>" : path); }

namespace {

void write(std::string& out, const Json& j, int indent, int depth) {
  const std::string pad = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const auto flat = [](const Json& a) {
    for (const auto& x : a)
      if (x.is_structured()) return false;
    return true;
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ",";
        first = false;
        out += pad + Json(k).dump() + (indent > 0 ? ": " : ":");
        write(out, v, indent, depth + 1);
      }
      out += close + "}";
      return;
    }
    case Json::value_t::array: {
      // Arrays of scalars stay on one line.
      const bool inline_ = flat(j);
      out += "[";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += inline_ && indent > 0 ? ", " : ",";
        first = false;
        if (!inline_) out += pad;
        write(out, v, indent, depth + 1);
      }
      if (!inline_ && !j.empty()) out += close;
      out += "]";
      return;
    }
    case Json::value_t::number_float: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

std::string join(const std::string& pointer, const std::string& key) { return pointer + "/" + key; }

const Json& field(const Json& doc, const std::string& key, const std::string& pointer, const std::string& source) {
  if (!doc.is_object()) throw DocumentError(source, pointer.empty() ? "/" : pointer, "expected an object");
  auto it = doc.find(key);
  if (it == doc.end()) throw DocumentError(source, join(pointer, key), "missing field");
  return *it;
}

double number(const Json& doc, const std::string& pointer, const std::string& source) {
  if (!doc.is_number()) throw DocumentError(source, pointer, "expected a number");
  const double v = doc.get<double>();
  if (!std::isfinite(v)) throw DocumentError(source, pointer, "non-finite number");
  return v;
}

int optional_dim(const Json& doc, const std::string& pointer, const std::string& source) {
  if (!doc.contains("dim")) return -1;
  const Json& d = doc["dim"];
  if (!d.is_number_integer() || d.get<int>() < 1) throw DocumentError(source, join(pointer, "dim"), "expected a positive integer");
  return d.get<int>();
}

template <typename F>
auto wrap(const std::string& source, const std::string& pointer, F&& f) {
  try {
    return f();
  } catch (const DocumentError&) {
    throw;
  } catch (const InputError& e) {
    throw DocumentError(source, pointer.empty() ? "/" : pointer, e.what());
  }
}

}  // namespace

std::string dump(const Json& doc, int indent) {
  std::string out;
  write(out, doc, indent, 0);
  out += "\n";
  return out;
}

Json to_json(const Vec& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

namespace {

Json columns_json(const Mat& m) {
  Json a = Json::array();
  for (Eigen::Index j = 0; j < m.cols(); ++j) a.push_back(to_json(Vec(m.col(j))));
  return a;
}

}  // namespace

Json to_json(const Body& body) {
  Json j;
  j["kind"] = body.kind();
  if (auto h = as<HPolytope>(body)) {
    j["normals"] = columns_json(h->normals.transpose());
    j["offsets"] = to_json(h->offsets);
    if (h->normals.rows() == 0) j["dim"] = body.dim();
  } else if (auto v = as<VPolytope>(body)) {
    j["vertices"] = columns_json(v->vertices);
    if (v->vertices.cols() == 0) j["dim"] = body.dim();
  } else if (auto z = as<Zonotope>(body)) {
    j["generators"] = columns_json(z->generators);
    if (z->generators.cols() == 0) j["dim"] = body.dim();
  } else if (auto b = as<EuclideanBall>(body)) {
    j["dim"] = b->dim;
    j["radius"] = b->radius;
  } else if (auto p = as<Polar>(body)) {
    j["body"] = to_json(p->inner);
  } else if (auto s = as<Scaled>(body)) {
    j["factor"] = s->factor;
    j["body"] = to_json(s->inner);
  } else if (auto m = as<MinkowskiSum>(body)) {
    j["left"] = to_json(m->left);
    j["right"] = to_json(m->right);
  } else if (auto i = as<IntersectionPair>(body)) {
    j["left"] = to_json(i->left);
    j["right"] = to_json(i->right);
  }
  return j;
}

Json to_json(const NormedSpace& space) {
  Json j;
  j["dim"] = space.dim();
  j["unit_ball"] = to_json(space.unit_ball());
  return j;
}

Json to_json(const Certificate& cert) {
  Json j;
  j["space"] = to_json(cert.space());
  j["enlargement"] = to_json(cert.enlargement());
  Json pairs = Json::array();
  for (const Pair& p : cert.pairs()) {
    Json q;
    q["f"] = to_json(p.f);
    q["y"] = to_json(p.y);
    pairs.push_back(std::move(q));
  }
  j["pairs"] = std::move(pairs);
  return j;
}

Vec vec_from_json(const Json& doc, const std::string& pointer, int dim, const std::string& source) {
  if (!doc.is_array()) throw DocumentError(source, pointer, "expected an array of numbers");
  if (dim >= 0 && static_cast<int>(doc.size()) != dim)
    throw DocumentError(source, pointer, "expected " + std::to_string(dim) + " entries, got " + std::to_string(doc.size()));
  Vec v(static_cast<Eigen::Index>(doc.size()));
  for (std::size_t i = 0; i < doc.size(); ++i) v(static_cast<Eigen::Index>(i)) = number(doc[i], join(pointer, std::to_string(i)), source);
  return v;
}

Mat columns_from_json(const Json& doc, const std::string& pointer, int dim, const std::string& source) {
  if (!doc.is_array()) throw DocumentError(source, pointer, "expected an array of arrays");
  if (doc.empty()) {
    if (dim < 1) throw DocumentError(source, pointer, "empty array needs an explicit dim");
    return Mat(dim, 0);
  }
  if (dim < 0) {
    if (!doc[0].is_array()) throw DocumentError(source, join(pointer, "0"), "expected an array of numbers");
    dim = static_cast<int>(doc[0].size());
  }
  if (dim < 1) throw DocumentError(source, join(pointer, "0"), "empty vector");
  Mat m(dim, static_cast<Eigen::Index>(doc.size()));
  for (std::size_t j = 0; j < doc.size(); ++j)
    m.col(static_cast<Eigen::Index>(j)) = vec_from_json(doc[j], join(pointer, std::to_string(j)), dim, source);
  return m;
}

Body body_from_json(const Json& doc, const std::string& pointer, const std::string& source) {
  const Json& kind_doc = field(doc, "kind", pointer, source);
  if (!kind_doc.is_string()) throw DocumentError(source, join(pointer, "kind"), "expected a string");
  const std::string kind = kind_doc.get<std::string>();
  const int dim = optional_dim(doc, pointer, source);
  return wrap(source, pointer, [&]() -> Body {
    if (kind == "hpolytope") {
      const Mat rows = columns_from_json(field(doc, "normals", pointer, source), join(pointer, "normals"), dim, source);
      const Vec b = vec_from_json(field(doc, "offsets", pointer, source), join(pointer, "offsets"),
                                  static_cast<int>(rows.cols()), source);
      return Body::hpolytope(rows.transpose(), b);
    }
    if (kind == "vpolytope")
      return Body::vpolytope(columns_from_json(field(doc, "vertices", pointer, source), join(pointer, "vertices"), dim, source));
    if (kind == "zonotope")
      return Body::zonotope(
          columns_from_json(field(doc, "generators", pointer, source), join(pointer, "generators"), dim, source));
    if (kind == "ball2") {
      if (dim < 1) throw DocumentError(source, join(pointer, "dim"), "missing field");
      const double r = doc.contains("radius") ? number(doc["radius"], join(pointer, "radius"), source) : 1.0;
      return Body::ball(dim, r);
    }
    if (kind == "polar") return Body::polar_of(body_from_json(field(doc, "body", pointer, source), join(pointer, "body"), source));
    if (kind == "scaled")
      return Body::scaled(number(field(doc, "factor", pointer, source), join(pointer, "factor"), source),
                          body_from_json(field(doc, "body", pointer, source), join(pointer, "body"), source));
    if (kind == "sum" || kind == "intersection") {
      Body l = body_from_json(field(doc, "left", pointer, source), join(pointer, "left"), source);
      Body r = body_from_json(field(doc, "right", pointer, source), join(pointer, "right"), source);
      return kind == "sum" ? Body::sum(std::move(l), std::move(r)) : Body::intersection(std::move(l), std::move(r));
    }
    throw DocumentError(source, join(pointer, "kind"), "unknown body kind '" + kind + "'");
  });
}

NormedSpace space_from_json(const Json& doc, const std::string& pointer, const std::string& source) {
  if (doc.is_object() && doc.contains("unit_ball")) {
    Body b = body_from_json(doc["unit_ball"], join(pointer, "unit_ball"), source);
    const int dim = optional_dim(doc, pointer, source);
    if (dim >= 0 && dim != b.dim())
      throw DocumentError(source, join(pointer, "dim"), "does not match the unit ball dimension " + std::to_string(b.dim()));
    return wrap(source, pointer, [&] { return NormedSpace(std::move(b)); });
  }
  Body b = body_from_json(doc, pointer, source);
  return wrap(source, pointer, [&] { return NormedSpace(std::move(b)); });
}

Certificate certificate_from_json(const Json& doc, const std::string& source) {
  NormedSpace space = space_from_json(field(doc, "space", "", source), "/space", source);
  Body enlargement = body_from_json(field(doc, "enlargement", "", source), "/enlargement", source);
  const Json& pairs_doc = field(doc, "pairs", "", source);
  if (!pairs_doc.is_array()) throw DocumentError(source, "/pairs", "expected an array");
  std::vector<Pair> pairs;
  for (std::size_t j = 0; j < pairs_doc.size(); ++j) {
    const std::string at = "/pairs/" + std::to_string(j);
    pairs.push_back({vec_from_json(field(pairs_doc[j], "f", at, source), at + "/f", space.dim(), source),
                     vec_from_json(field(pairs_doc[j], "y", at, source), at + "/y", space.dim(), source)});
  }
  return wrap(source, "", [&] { return Certificate(space, enlargement, std::move(pairs)); });
}

}  // namespace enlarge::io
