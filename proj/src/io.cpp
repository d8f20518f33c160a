#include "hoqt/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hoqt/error.hpp"

namespace hoqt {

using nlohmann::json;

std::string serialize_map(const TypedMap& m) {
  json dims = json::object();
  for (const auto& [label, d] : m.registry().dims()) dims[label] = d;
  json rows = json::array();
  const Matrix& a = m.matrix();
  for (Index i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < a.cols(); ++j) row.push_back({a(i, j).real(), a(i, j).imag()});
    rows.push_back(std::move(row));
  }
  json doc;
  doc["format_version"] = kMapFormatVersion;
  doc["type"] = format_type(m.type());
  doc["dims"] = std::move(dims);
  doc["matrix"] = std::move(rows);
  doc["convention"] = std::string(kCoordinateConvention);
  return doc.dump() + "\n";
}

namespace {

const json& field(const json& doc, const char* name) {
  const auto it = doc.find(name);
  if (it == doc.end()) throw FormatError(std::string("map file lacks \"") + name + "\"");
  return *it;
}

double number(const json& v, const char* what) {
  if (!v.is_number()) throw FormatError(std::string("non-numeric ") + what);
  return v.get<double>();
}

}  // namespace

TypedMap deserialize_map(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("map file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw FormatError("map file must be a JSON object");

  const json& version = field(doc, "format_version");
  if (!version.is_number_integer() || version.get<int>() != kMapFormatVersion) {
    throw FormatError("unsupported format_version " + version.dump());
  }
  const json& convention = field(doc, "convention");
  if (!convention.is_string() || convention.get<std::string>() != kCoordinateConvention) {
    throw FormatError("unsupported coordinate convention " + convention.dump());
  }

  const json& dims_doc = field(doc, "dims");
  if (!dims_doc.is_object()) throw FormatError("\"dims\" must be an object");
  std::map<std::string, int> dims;
  for (const auto& [label, d] : dims_doc.items()) {
    if (!d.is_number_integer()) throw FormatError("dimension of " + label + " is not an integer");
    dims[label] = d.get<int>();
  }

  RegistryPtr reg;
  Type type;
  try {
    reg = make_registry(SystemRegistry(std::move(dims)));
    const json& type_doc = field(doc, "type");
    if (!type_doc.is_string()) throw FormatError("\"type\" must be a string");
    type = parse_type(type_doc.get<std::string>(), *reg);
    space_dim(type, *reg);
  } catch (const FormatError&) {
    throw;
  } catch (const Error& e) {
    throw FormatError(std::string("map file: ") + e.what());
  }

  const auto [rows, cols] = matrix_shape(type, *reg);
  const json& matrix_doc = field(doc, "matrix");
  if (!matrix_doc.is_array() || static_cast<Index>(matrix_doc.size()) != rows) {
    throw FormatError("matrix of type " + format_type(type) + " needs " + std::to_string(rows) + " rows");
  }
  Matrix a(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const json& row = matrix_doc[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      throw FormatError("row " + std::to_string(i) + " needs " + std::to_string(cols) + " entries");
    }
    for (Index j = 0; j < cols; ++j) {
      const json& z = row[static_cast<std::size_t>(j)];
      if (!z.is_array() || z.size() != 2) throw FormatError("matrix entries must be [re, im] pairs");
      a(i, j) = Complex(number(z[0], "real part"), number(z[1], "imaginary part"));
    }
  }
  try {
    return TypedMap(type, reg, std::move(a));
  } catch (const Error& e) {
    throw FormatError(std::string("map file: ") + e.what());
  }
}

void save_map(const TypedMap& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << serialize_map(m);
  if (!out) throw Error("failed writing " + path);
}

TypedMap load_map(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return deserialize_map(text.str());
}

std::string verdict_to_json(const ConeVerdict& v, int indent) {
  json doc;
  doc["decision"] = to_string(v.decision);
  doc["method"] = to_string(v.method);
  doc["tolerance"] = v.tolerance;
  if (v.min_eigenvalue) doc["min_eigenvalue"] = *v.min_eigenvalue;
  if (v.witness) {
    json w = json::object();
    if (v.witness->probe_type) w["probe_type"] = *v.witness->probe_type;
    if (v.witness->probe_seed) w["probe_seed"] = *v.witness->probe_seed;
    w["spectrum"] = v.witness->spectrum;
    if (!v.witness->note.empty()) w["note"] = v.witness->note;
    doc["witness"] = std::move(w);
  }
  if (v.method == Method::definitional) doc["probes_used"] = v.probes_used;
  return doc.dump(indent);
}

}  // namespace hoqt
