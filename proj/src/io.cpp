#include "qgamma/io.hpp"

#include <fstream>
#include <sstream>

namespace qgamma {

namespace {

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, const char* where) {
  if (!j.is_array() || j.empty()) {
    throw ParseError(std::string(where) + ": matrix must be a nonempty array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.at(0).size());
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j.at(static_cast<std::size_t>(i));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ParseError(std::string(where) + ": ragged matrix rows");
    }
    for (Eigen::Index k = 0; k < cols; ++k) {
      const Json& entry = row.at(static_cast<std::size_t>(k));
      if (!entry.is_array() || entry.size() != 2 || !entry.at(0).is_number() ||
          !entry.at(1).is_number()) {
        throw ParseError(std::string(where) + ": entries must be [re, im] number pairs");
      }
      m(i, k) = Complex(entry.at(0).get<double>(), entry.at(1).get<double>());
    }
  }
  return m;
}

Json element_to_json(const AlgebraShape& shape, const std::vector<Matrix>& blocks) {
  Json j;
  j["shape"] = shape.blocks();
  Json arr = Json::array();
  for (const Matrix& m : blocks) arr.push_back(matrix_to_json(m));
  j["blocks"] = std::move(arr);
  return j;
}

std::pair<AlgebraShape, std::vector<Matrix>> element_from_json(const Json& j, const char* where) {
  if (!j.is_object() || !j.contains("shape") || !j.contains("blocks")) {
    throw ParseError(std::string(where) + ": expected an object with 'shape' and 'blocks'");
  }
  std::vector<int> dims;
  try {
    dims = j.at("shape").get<std::vector<int>>();
  } catch (const Json::exception&) {
    throw ParseError(std::string(where) + ": 'shape' must be an array of integers");
  }
  AlgebraShape shape{[&] {
    try {
      return AlgebraShape(dims);
    } catch (const Error& e) {
      throw ParseError(std::string(where) + ": " + e.what());
    }
  }()};
  const Json& jb = j.at("blocks");
  if (!jb.is_array() || static_cast<int>(jb.size()) != shape.block_count()) {
    throw ParseError(std::string(where) + ": 'blocks' must match the shape");
  }
  std::vector<Matrix> blocks;
  blocks.reserve(jb.size());
  for (const Json& bm : jb) blocks.push_back(matrix_from_json(bm, where));
  return {std::move(shape), std::move(blocks)};
}

}  // namespace

Json to_json(const HermitianElement& x) { return element_to_json(x.shape(), x.blocks()); }

Json to_json(const State& s) { return element_to_json(s.shape(), s.blocks()); }

Json to_json(const GammaVector& x) {
  Json j = element_to_json(x.shape(), x.blocks());
  j["gamma"] = x.gamma();
  return j;
}

Json to_json(const Channel& t) {
  Json j;
  j["in_shape"] = t.in_shape().blocks();
  j["out_shape"] = t.out_shape().blocks();
  Json arr = Json::array();
  for (const Matrix& k : t.kraus()) arr.push_back(matrix_to_json(k));
  j["kraus"] = std::move(arr);
  return j;
}

Json to_json(const ConstraintSet& set) {
  Json j;
  j["gamma"] = set.gamma();
  Json arr = Json::array();
  for (const Constraint& c : set.constraints()) {
    Json jc;
    jc["a"] = to_json(c.a);
    jc["c"] = c.c;
    arr.push_back(std::move(jc));
  }
  j["constraints"] = std::move(arr);
  return j;
}

HermitianElement hermitian_from_json(const Json& j) {
  auto [shape, blocks] = element_from_json(j, "hermitian_from_json");
  return HermitianElement(std::move(shape), std::move(blocks));
}

State state_from_json(const Json& j) {
  auto [shape, blocks] = element_from_json(j, "state_from_json");
  return State(std::move(shape), std::move(blocks));
}

GammaVector gamma_vector_from_json(const Json& j) {
  if (!j.contains("gamma") || !j.at("gamma").is_number()) {
    throw ParseError("gamma_vector_from_json: missing numeric 'gamma'");
  }
  auto [shape, blocks] = element_from_json(j, "gamma_vector_from_json");
  return GammaVector(j.at("gamma").get<double>(), std::move(shape), std::move(blocks));
}

Channel channel_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("in_shape") || !j.contains("out_shape") ||
      !j.contains("kraus")) {
    throw ParseError("channel_from_json: expected 'in_shape', 'out_shape' and 'kraus'");
  }
  std::vector<int> din;
  std::vector<int> dout;
  try {
    din = j.at("in_shape").get<std::vector<int>>();
    dout = j.at("out_shape").get<std::vector<int>>();
  } catch (const Json::exception&) {
    throw ParseError("channel_from_json: shapes must be integer arrays");
  }
  const Json& jk = j.at("kraus");
  if (!jk.is_array() || jk.empty()) {
    throw ParseError("channel_from_json: 'kraus' must be a nonempty array");
  }
  std::vector<Matrix> kraus;
  kraus.reserve(jk.size());
  for (const Json& km : jk) kraus.push_back(matrix_from_json(km, "channel_from_json"));
  try {
    return Channel(AlgebraShape(din), AlgebraShape(dout), std::move(kraus));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("channel_from_json: ") + e.what());
  }
}

ConstraintSet constraint_set_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("gamma") || !j.contains("constraints")) {
    throw ParseError("constraint_set_from_json: expected 'gamma' and 'constraints'");
  }
  if (!j.at("gamma").is_number()) {
    throw ParseError("constraint_set_from_json: 'gamma' must be a number");
  }
  const Json& jc = j.at("constraints");
  if (!jc.is_array() || jc.empty()) {
    throw ParseError("constraint_set_from_json: 'constraints' must be a nonempty array");
  }
  std::vector<Constraint> constraints;
  constraints.reserve(jc.size());
  for (const Json& item : jc) {
    if (!item.is_object() || !item.contains("a") || !item.contains("c") ||
        !item.at("c").is_number()) {
      throw ParseError("constraint_set_from_json: each constraint needs 'a' and numeric 'c'");
    }
    constraints.push_back(
        Constraint{hermitian_from_json(item.at("a")), item.at("c").get<double>()});
  }
  try {
    return ConstraintSet(j.at("gamma").get<double>(), std::move(constraints));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("constraint_set_from_json: ") + e.what());
  }
}

Json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw ParseError("'" + path.string() + "': " + e.what());
  }
  return j;
}

void save_json(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
}

State load_state(const std::filesystem::path& path) {
  try {
    return state_from_json(load_json(path));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError("'" + path.string() + "': " + e.what());
  }
}

ConstraintSet load_constraint_set(const std::filesystem::path& path) {
  return constraint_set_from_json(load_json(path));
}

}  // namespace qgamma
