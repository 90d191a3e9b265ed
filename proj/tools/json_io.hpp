#pragma once

#include <json.hpp>

#include "qtt/braid.hpp"
#include "qtt/cg.hpp"

namespace qtt::io {

using json = nlohmann::json;

inline json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline cplx cplx_from(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  if (j.is_object()) return {j.value("re", 0.0), j.value("im", 0.0)};
  throw Error("InvalidArgument", "complex numbers are written as x, [re, im] or {re, im}: got " + j.dump());
}

inline json to_json(const Mat& m) {
  json re = json::array(), im = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json a = json::array(), b = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      a.push_back(m(r, c).real());
      b.push_back(m(r, c).imag());
    }
    re.push_back(a);
    im.push_back(b);
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

inline json to_json(const StandardModuleSpec& s) {
  return {{"x1", to_json(s.x1)}, {"lambda", to_json(s.lambda)}, {"hp", to_json(s.hp)}, {"hdel", to_json(s.hdel)}};
}

inline StandardModuleSpec standard_from(const json& j) {
  StandardModuleSpec s;
  s.x1 = cplx_from(j.at("x1"));
  s.lambda = cplx_from(j.at("lambda"));
  s.hp = cplx_from(j.at("hp"));
  s.hdel = cplx_from(j.at("hdel"));
  if (s.x1 == 0.0 || s.lambda == 0.0 || s.hp == 0.0 || s.hdel == 0.0)
    throw Error("InvalidParameters", "standard module parameters must be nonzero");
  return s;
}

inline json to_json(const WeightModuleSpec& s) {
  json j{{"family", s.family_name()}};
  switch (s.family) {
    case WeightModuleSpec::Family::Diag:
      j["mu"] = to_json(s.mu);
      j["eps"] = s.eps;
      j["n"] = s.n;
      break;
    case WeightModuleSpec::Family::Cyclic:
      j["lambda"] = to_json(s.lambda);
      j["mu"] = to_json(s.mu);
      j["a"] = to_json(s.a);
      j["b"] = to_json(s.b);
      break;
    case WeightModuleSpec::Family::Semi:
      j["lambda"] = to_json(s.lambda);
      j["mu"] = to_json(s.mu);
      j["c"] = to_json(s.c);
      break;
  }
  return j;
}

inline WeightModuleSpec weight_from(const json& j) {
  const std::string f = j.at("family").get<std::string>();
  if (f == "diag") return WeightModuleSpec::diag(cplx_from(j.at("mu")), j.at("eps").get<int>(), j.at("n").get<int>());
  if (f == "cyclic")
    return WeightModuleSpec::cyclic(cplx_from(j.at("lambda")), cplx_from(j.at("mu")), cplx_from(j.value("a", json(0.0))),
                                    cplx_from(j.value("b", json(0.0))));
  if (f == "semi") return WeightModuleSpec::semi(cplx_from(j.at("lambda")), cplx_from(j.at("mu")), cplx_from(j.at("c")));
  throw Error("InvalidArgument", "family must be diag, cyclic or semi");
}

inline json to_json(const MatrixRep& r) {
  return {{"E", to_json(r.E)}, {"F", to_json(r.F)}, {"Khalf", to_json(r.Kh)}, {"Lhalf", to_json(r.Lh)}};
}

}  // namespace qtt::io
