#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "steer/errors.hpp"
#include "steer/measurements.hpp"
#include "steer/states.hpp"

namespace steer::io {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Document does not follow the schema. `path` names the offending entry.
class SchemaError : public Error {
 public:
  SchemaError(const std::string& path, const std::string& message)
      : Error(path + ": " + message), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

// Complex numbers are [re, im]; matrices are arrays of rows; vectors are
// arrays of complex numbers.
Json to_json(Complex z);
Json to_json(const Matrix& m);
Json to_json(const Vector& v);

Complex complex_from_json(const Json& j, const std::string& path);
Matrix matrix_from_json(const Json& j, const std::string& path);
Vector vector_from_json(const Json& j, const std::string& path);

/// {"schema_version": 1, "kind": "density_operator", "dims": [..], "matrix": [..]}
Json state_document(const DensityOperator& rho);
/// {"schema_version": 1, "kind": "pure_state", "dims": [..], "vector": [..]}
Json state_document(const PureState& psi);

/// Reads either document kind; a pure state is returned as its projector.
DensityOperator state_from_document(const Json& doc, const std::string& path = "state");

Json to_json(const Povm& povm);
Json to_json(const NonDegeneratePvm& pvm);

/// {"label": "...", "povm": [matrix, ...]} or {"label": "...", "pvm": [vector, ...]}.
struct ParsedMeasurement {
  LabeledMeasurement measurement;
  std::optional<NonDegeneratePvm> pvm;
};

ParsedMeasurement measurement_from_json(const Json& j, const std::string& path,
                                        const std::string& default_label);

/// Reads a key of `obj` if present, checking its type.
const Json* find(const Json& obj, const std::string& key, const std::string& path);
double number_at(const Json& obj, const std::string& key, const std::string& path);

}  // namespace steer::io
