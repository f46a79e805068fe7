#include "torus_jscc/json_io.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace torus_jscc {

namespace {

json vec_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Vec vec_from(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw Error(ErrorKind::Parse, std::string(what) + ": expected a nonempty array");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw Error(ErrorKind::Parse, std::string(what) + ": expected numbers");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw Error(ErrorKind::Parse, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

double number(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number()) throw Error(ErrorKind::Parse, std::string("field \"") + key + "\" must be a number");
  return v.get<double>();
}

}  // namespace

json to_json(const LatticeBasis& basis) {
  json rows = json::array();
  for (int i = 0; i < basis.rank(); ++i) rows.push_back(vec_json(basis.rows().row(i).transpose()));
  return rows;
}

json to_json(const TorusSpec& torus) { return json{{"c", vec_json(torus.c())}}; }

json to_json(const CurveSpec& curve) {
  return json{{"c", vec_json(curve.torus().c())},     {"u", curve.u()},
              {"length", curve.length()},             {"spacing", curve.spacing()},
              {"ball_lower", curve.ball_lower()},     {"ball_upper", curve.ball_upper()}};
}

json to_json(const LayerCodebook& codebook) {
  json layers = json::array();
  for (const auto& t : codebook.layers) layers.push_back(to_json(t));
  return json{{"delta", codebook.min_sep / 2.0}, {"layers", layers}};
}

json to_json(const SchemeCode& scheme) {
  json curves = json::array();
  for (const auto& cs : scheme.curves()) curves.push_back(to_json(cs));
  return json{{"alpha", scheme.alpha()},
              {"delta", scheme.delta()},
              {"ball_radius", scheme.ball_radius()},
              {"total_length", scheme.total_length()},
              {"curves", curves}};
}

LatticeBasis basis_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw Error(ErrorKind::Parse, "basis: expected an array of rows");
  std::vector<Vec> rows;
  for (const auto& r : j) rows.push_back(vec_from(r, "basis row"));
  Mat m(static_cast<Eigen::Index>(rows.size()), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) throw Error(ErrorKind::Parse, "basis rows differ in length");
    m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  }
  return LatticeBasis(std::move(m));
}

TorusSpec torus_from_json(const json& j) {
  const Vec c = vec_from(field(j, "c"), "c");
  if (std::abs(c.norm() - 1.0) > 1e-9) throw Error(ErrorKind::Parse, "c must be a unit vector");
  return TorusSpec::normalized(c);
}

CurveSpec curve_from_json(const json& j) {
  const json& u = field(j, "u");
  if (!u.is_array()) throw Error(ErrorKind::Parse, "u must be an array of integers");
  IntVec uv;
  for (const auto& e : u) {
    if (!e.is_number_integer()) throw Error(ErrorKind::Parse, "u must be an array of integers");
    uv.push_back(e.get<std::int64_t>());
  }
  return CurveSpec(torus_from_json(j), std::move(uv));
}

LayerCodebook codebook_from_json(const json& j) {
  const double delta = number(j, "delta");
  const json& layers = field(j, "layers");
  if (!layers.is_array()) throw Error(ErrorKind::Parse, "layers must be an array");
  std::vector<TorusSpec> ts;
  for (const auto& l : layers) ts.push_back(torus_from_json(l));
  return make_codebook(std::move(ts), delta);
}

SchemeCode scheme_from_json(const json& j) {
  const json& curves = field(j, "curves");
  if (!curves.is_array()) throw Error(ErrorKind::Parse, "curves must be an array");
  std::vector<CurveSpec> cs;
  for (const auto& c : curves) cs.push_back(curve_from_json(c));
  return SchemeCode(std::move(cs), number(j, "alpha"), number(j, "delta"));
}

}  // namespace torus_jscc
