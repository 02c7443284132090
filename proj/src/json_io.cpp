#include "steer/json_io.hpp"

#include <cmath>
#include <string>

namespace steer::io {
namespace {

std::string index_path(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

void require_version(const Json& doc, const std::string& path) {
  const Json* v = find(doc, "schema_version", path);
  if (v == nullptr) throw SchemaError(path, "missing schema_version");
  if (!v->is_number_integer() || v->get<int>() != kSchemaVersion) {
    throw SchemaError(path + ".schema_version",
                      "unsupported schema version " + v->dump());
  }
}

Dims dims_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw SchemaError(path, "dims must be a non-empty array");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_integer() || j[i].get<long long>() < 1) {
      throw SchemaError(index_path(path, i), "dimension must be a positive integer");
    }
    out.push_back(j[i].get<std::size_t>());
  }
  return Dims(std::move(out));
}

}  // namespace

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

Complex complex_from_json(const Json& j, const std::string& path) {
  double re = 0.0, im = 0.0;
  if (j.is_number()) {
    re = j.get<double>();
  } else if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    re = j[0].get<double>();
    im = j[1].get<double>();
  } else {
    throw SchemaError(path, "expected a complex number [re, im], got " + j.dump());
  }
  if (!std::isfinite(re) || !std::isfinite(im)) throw SchemaError(path, "non-finite number");
  return {re, im};
}

Matrix matrix_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw SchemaError(path, "matrix must be a non-empty array of rows");
  const std::size_t n = j.size();
  Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r) {
    const std::string rp = index_path(path, r);
    if (!j[r].is_array()) throw SchemaError(rp, "row must be an array");
    if (j[r].size() != n) {
      throw SchemaError(rp, "row has " + std::to_string(j[r].size()) +
                                " entries, expected " + std::to_string(n) +
                                " (matrix must be square)");
    }
    for (std::size_t c = 0; c < n; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          complex_from_json(j[r][c], index_path(rp, c));
    }
  }
  return m;
}

Vector vector_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw SchemaError(path, "vector must be a non-empty array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i], index_path(path, i));
  }
  return v;
}

Json state_document(const DensityOperator& rho) {
  return Json{{"schema_version", kSchemaVersion},
              {"kind", "density_operator"},
              {"dims", rho.dims().factors()},
              {"matrix", to_json(rho.matrix())}};
}

Json state_document(const PureState& psi) {
  return Json{{"schema_version", kSchemaVersion},
              {"kind", "pure_state"},
              {"dims", psi.dims().factors()},
              {"vector", to_json(psi.vector())}};
}

DensityOperator state_from_document(const Json& doc, const std::string& path) {
  if (!doc.is_object()) throw SchemaError(path, "state document must be an object");
  require_version(doc, path);
  const Json* dims_j = find(doc, "dims", path);
  if (dims_j == nullptr) throw SchemaError(path, "missing dims");
  const Dims dims = dims_from_json(*dims_j, path + ".dims");

  std::string kind;
  if (const Json* k = find(doc, "kind", path)) {
    if (!k->is_string()) throw SchemaError(path + ".kind", "must be a string");
    kind = k->get<std::string>();
  } else {
    kind = doc.contains("vector") ? "pure_state" : "density_operator";
  }

  if (kind == "density_operator") {
    const Json* m = find(doc, "matrix", path);
    if (m == nullptr) throw SchemaError(path, "missing matrix");
    Matrix mat = matrix_from_json(*m, path + ".matrix");
    if (static_cast<std::size_t>(mat.rows()) != dims.total()) {
      throw SchemaError(path + ".matrix", "size " + std::to_string(mat.rows()) +
                                              " does not match dims product " +
                                              std::to_string(dims.total()));
    }
    return DensityOperator(std::move(mat), dims);
  }
  if (kind == "pure_state") {
    const Json* v = find(doc, "vector", path);
    if (v == nullptr) throw SchemaError(path, "missing vector");
    Vector vec = vector_from_json(*v, path + ".vector");
    if (static_cast<std::size_t>(vec.size()) != dims.total()) {
      throw SchemaError(path + ".vector", "length does not match dims product");
    }
    return PureState(std::move(vec), dims).density();
  }
  throw SchemaError(path + ".kind", "unknown state kind '" + kind + "'");
}

Json to_json(const Povm& povm) {
  Json out = Json::array();
  for (const auto& e : povm.effects()) out.push_back(to_json(e.matrix()));
  return out;
}

Json to_json(const NonDegeneratePvm& pvm) {
  Json out = Json::array();
  for (const auto& v : pvm.vectors()) out.push_back(to_json(v));
  return out;
}

ParsedMeasurement measurement_from_json(const Json& j, const std::string& path,
                                        const std::string& default_label) {
  if (!j.is_object()) throw SchemaError(path, "measurement must be an object");
  std::string label = default_label;
  if (const Json* l = find(j, "label", path)) {
    if (!l->is_string()) throw SchemaError(path + ".label", "must be a string");
    label = l->get<std::string>();
  }
  const Json* pvm_j = find(j, "pvm", path);
  const Json* povm_j = find(j, "povm", path);
  if ((pvm_j == nullptr) == (povm_j == nullptr)) {
    throw SchemaError(path, "exactly one of 'pvm' or 'povm' is required");
  }
  if (pvm_j != nullptr) {
    if (!pvm_j->is_array() || pvm_j->empty()) throw SchemaError(path + ".pvm", "must be a non-empty array");
    std::vector<Vector> vs;
    for (std::size_t i = 0; i < pvm_j->size(); ++i) {
      vs.push_back(vector_from_json((*pvm_j)[i], index_path(path + ".pvm", i)));
    }
    NonDegeneratePvm pvm(std::move(vs));
    return ParsedMeasurement{{label, pvm.to_povm()}, std::move(pvm)};
  }
  if (!povm_j->is_array() || povm_j->empty()) throw SchemaError(path + ".povm", "must be a non-empty array");
  std::vector<Matrix> effects;
  for (std::size_t i = 0; i < povm_j->size(); ++i) {
    effects.push_back(matrix_from_json((*povm_j)[i], index_path(path + ".povm", i)));
  }
  return ParsedMeasurement{{label, povm_validate(effects)}, std::nullopt};
}

const Json* find(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw SchemaError(path, "expected an object");
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double number_at(const Json& obj, const std::string& key, const std::string& path) {
  const Json* v = find(obj, key, path);
  if (v == nullptr) throw SchemaError(path, "missing '" + key + "'");
  if (!v->is_number()) throw SchemaError(path + "." + key, "must be a number");
  return v->get<double>();
}

}  // namespace steer::io
