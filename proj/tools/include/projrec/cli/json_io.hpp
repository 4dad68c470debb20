#pragma once

#include <json.hpp>

#include <projrec/linalg.hpp>

namespace projrec::cli {

using Json = nlohmann::json;

// Complex numbers are [re, im]; vectors are arrays of them and matrices are
// arrays of rows.
Json to_json(const Complex& z);
Json to_json(const CVector& v);
Json to_json(const CMatrix& a);
Json to_json(const RVector& v);

Complex complex_from_json(const Json& j);
CVector vector_from_json(const Json& j);
CMatrix matrix_from_json(const Json& j);

// Every number in j is finite.
bool all_finite(const Json& j);

}  // namespace projrec::cli
