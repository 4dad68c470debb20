#include "projrec/cli/json_io.hpp"

#include <cmath>

namespace projrec::cli {

Json to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const CVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

Json to_json(const CMatrix& a) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) out.push_back(to_json(CVector(a.row(i).transpose())));
  return out;
}

Json to_json(const RVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw Json::type_error::create(302, "expected a number or an [re, im] pair", &j);
  return {j[0].get<double>(), j[1].get<double>()};
}

CVector vector_from_json(const Json& j) {
  if (!j.is_array()) throw Json::type_error::create(302, "expected an array of entries", &j);
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
  return v;
}

CMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw Json::type_error::create(302, "expected a non-empty array of rows", &j);
  const std::size_t cols = j[0].size();
  CMatrix a(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (j[i].size() != cols) throw Json::type_error::create(302, "ragged matrix", &j);
    a.row(static_cast<Eigen::Index>(i)) = vector_from_json(j[i]).transpose();
  }
  return a;
}

bool all_finite(const Json& j) {
  if (j.is_number_float()) return std::isfinite(j.get<double>());
  if (j.is_array() || j.is_object()) {
    for (const auto& x : j)
      if (!all_finite(x)) return false;
  }
  return true;
}

}  // namespace projrec::cli
