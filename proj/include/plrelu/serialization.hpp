#pragma once

#include "plrelu/cone_decomposition.hpp"
#include "plrelu/pl_mesh.hpp"
#include "plrelu/relu_network.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace plrelu::io {

using json = nlohmann::json;

/// Exact numbers travel as strings ("3", "-1.25", "2/7"); JSON integers are
/// also accepted. JSON floating-point literals are rejected as inexact.
inline Scalar scalar_from_json(const json& j) {
  if (j.is_string()) return parse_scalar(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(j.dump());
  if (j.is_number_float())
    throw ParseError("floating-point literal " + j.dump() + " is not exact; quote it as a decimal string");
  throw ParseError("expected a number, got " + j.dump());
}

inline json scalar_to_json(const Scalar& s) { return format_scalar(s); }

inline Point point_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("expected a coordinate array, got " + j.dump());
  std::vector<Scalar> coords;
  for (const auto& c : j) coords.push_back(scalar_from_json(c));
  return Point(std::move(coords));
}

inline json point_to_json(const Point& p) {
  json out = json::array();
  for (const auto& c : p.coords()) out.push_back(scalar_to_json(c));
  return out;
}

namespace detail {

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::size_t dim_field(const json& j) {
  const auto& d = field(j, "dim");
  if (!d.is_number_unsigned() || d.get<std::size_t>() == 0) throw ParseError("'dim' must be a positive integer");
  return d.get<std::size_t>();
}

} // namespace detail

inline PLMesh mesh_from_json(const json& j) {
  const std::size_t dim = detail::dim_field(j);
  std::vector<Point> vertices;
  for (const auto& v : detail::field(j, "vertices")) vertices.push_back(point_from_json(v));
  std::vector<Scalar> values;
  for (const auto& v : detail::field(j, "values")) values.push_back(scalar_from_json(v));
  std::vector<SimplexIndices> simplices;
  for (const auto& s : detail::field(j, "simplices")) {
    if (!s.is_array()) throw ParseError("simplex must be an index array");
    SimplexIndices idx;
    for (const auto& i : s) {
      if (!i.is_number_unsigned()) throw ParseError("simplex index must be a nonnegative integer, got " + i.dump());
      idx.push_back(i.get<std::size_t>());
    }
    simplices.push_back(std::move(idx));
  }
  try {
    return PLMesh(dim, std::move(vertices), std::move(values), std::move(simplices));
  } catch (const std::logic_error& e) {
    throw ParseError(std::string("malformed mesh: ") + e.what());
  }
}

inline json mesh_to_json(const PLMesh& mesh) {
  json j;
  j["dim"] = mesh.dim();
  j["vertices"] = json::array();
  for (const auto& v : mesh.vertices()) j["vertices"].push_back(point_to_json(v));
  j["values"] = json::array();
  for (const auto& v : mesh.values()) j["values"].push_back(scalar_to_json(v));
  j["simplices"] = mesh.simplices();
  return j;
}

inline SignedDecomposition decomposition_from_json(const json& j) {
  SignedDecomposition dec;
  dec.dim = detail::dim_field(j);
  dec.cone_point = point_from_json(detail::field(j, "cone_point"));
  if (dec.cone_point.dim() != dec.dim + 1) throw ParseError("cone_point must have dim+1 coordinates");
  for (const auto& t : detail::field(j, "terms")) {
    const auto& s = detail::field(t, "sign");
    if (!s.is_number_integer() || (s.get<int>() != 1 && s.get<int>() != -1))
      throw ParseError("term sign must be 1 or -1");
    std::vector<Point> vertices;
    for (const auto& v : detail::field(t, "vertices")) vertices.push_back(point_from_json(v));
    if (vertices.size() != dec.dim + 2) throw ParseError("term needs dim+2 vertices");
    for (const auto& v : vertices)
      if (v.dim() != dec.dim + 1) throw ParseError("term vertex must have dim+1 coordinates");
    try {
      dec.terms.push_back({s.get<int>(), LiftedSimplex(std::move(vertices))});
    } catch (const DegeneracyError& e) {
      throw ParseError(std::string("degenerate term: ") + e.what());
    }
  }
  return dec;
}

inline json decomposition_to_json(const SignedDecomposition& dec) {
  json j;
  j["dim"] = dec.dim;
  j["cone_point"] = point_to_json(dec.cone_point);
  j["terms"] = json::array();
  for (const auto& term : dec.terms) {
    json t;
    t["sign"] = term.sign;
    t["vertices"] = json::array();
    for (const auto& v : term.simplex.vertices()) t["vertices"].push_back(point_to_json(v));
    j["terms"].push_back(std::move(t));
  }
  return j;
}

inline ReluNetwork network_from_json(const json& j) {
  const auto& d = detail::field(j, "input_dim");
  if (!d.is_number_unsigned()) throw ParseError("'input_dim' must be a nonnegative integer");
  std::size_t width = d.get<std::size_t>();
  std::vector<DenseLayer> layers;
  for (const auto& l : detail::field(j, "layers")) {
    DenseLayer layer;
    const auto& rows = detail::field(l, "weights");
    const auto& bias = detail::field(l, "bias");
    const auto act = detail::field(l, "activation").get<std::string>();
    if (act == "relu") layer.activation = Activation::relu;
    else if (act == "identity") layer.activation = Activation::identity;
    else throw ParseError("unknown activation '" + act + "'");
    layer.inputs = width;
    layer.outputs = rows.size();
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != width)
        throw ParseError("weight row length does not match the layer input width " + std::to_string(width));
      for (const auto& w : row) layer.weights.push_back(w.get<double>());
    }
    for (const auto& b : bias) layer.bias.push_back(b.get<double>());
    width = layer.outputs;
    layers.push_back(std::move(layer));
  }
  try {
    return ReluNetwork(d.get<std::size_t>(), std::move(layers));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("malformed network: ") + e.what());
  }
}

inline json network_to_json(const ReluNetwork& net) {
  json j;
  j["input_dim"] = net.input_dim();
  j["layers"] = json::array();
  for (const auto& l : net.layers()) {
    json layer;
    layer["weights"] = json::array();
    for (std::size_t o = 0; o < l.outputs; ++o) {
      json row = json::array();
      for (std::size_t i = 0; i < l.inputs; ++i) row.push_back(l.weight(o, i));
      layer["weights"].push_back(std::move(row));
    }
    layer["bias"] = l.bias;
    layer["activation"] = to_string(l.activation);
    j["layers"].push_back(std::move(layer));
  }
  return j;
}

enum class ArtifactKind { mesh, decomposition, network };

inline ArtifactKind detect_artifact(const json& j) {
  if (j.is_object()) {
    if (j.contains("simplices")) return ArtifactKind::mesh;
    if (j.contains("terms")) return ArtifactKind::decomposition;
    if (j.contains("layers")) return ArtifactKind::network;
  }
  throw ParseError("unrecognized artifact: expected a mesh, decomposition or network object");
}

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed for '" + path + "'");
}

} // namespace plrelu::io
