#include "qmc/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace qmc::io {

namespace {

void expect(bool ok, const std::string& what) {
  if (!ok) throw Error(what);
}

bool is_flat(const Json& j) {
  if (!j.is_array()) return !j.is_object();
  for (const auto& e : j)
    if (e.is_object() || (e.is_array() && !std::all_of(e.begin(), e.end(), [](const Json& x) { return x.is_primitive(); })))
      return false;
  return true;
}

// Indented layout that keeps matrix rows and vectors of [re, im] pairs on one line.
void format(const Json& j, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(depth + 1), ' '), close(static_cast<std::size_t>(depth), ' ');
  if (is_flat(j)) {
    out += j.dump();
  } else if (j.is_array()) {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += pad;
      format(j[i], depth + 1, out);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += close + "]";
  } else {
    out += "{\n";
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
      out += pad + Json(it.key()).dump() + ": ";
      format(it.value(), depth + 1, out);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += close + "}";
  }
}

}  // namespace

Json complex_to_json(Complex<double> z) { return Json::array({z.real(), z.imag()}); }

Complex<double> complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  expect(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(),
         "complex entries must be [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json vector_to_json(const VectorXc& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

VectorXc vector_from_json(const Json& j) {
  expect(j.is_array(), "vector must be a list of [re, im] pairs");
  VectorXc v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
  return v;
}

Json matrix_to_json(const MatrixXc& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    out.push_back(std::move(row));
  }
  return out;
}

MatrixXc matrix_from_json(const Json& j) {
  expect(j.is_array() && !j.empty(), "matrix must be a non-empty list of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  expect(j[0].is_array(), "matrix rows must be lists");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  MatrixXc m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    expect(row.is_array() && static_cast<Eigen::Index>(row.size()) == cols, "matrix rows differ in length");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
  }
  return m;
}

Model model_from_json(const Json& j, const Tolerances<double>& tol) {
  expect(j.is_object(), "model file must be an object");
  expect(j.contains("dimension") && j["dimension"].is_number_integer(), "model file needs an integer \"dimension\"");
  expect(j.contains("kraus") && j["kraus"].is_array() && !j["kraus"].empty(),
         "model file needs a non-empty \"kraus\" list");
  const auto n = j["dimension"].get<Eigen::Index>();
  expect(n > 0, "model dimension must be positive");
  std::vector<MatrixXc> kraus;
  for (const auto& k : j["kraus"]) {
    kraus.push_back(matrix_from_json(k));
    expect(kraus.back().rows() == n && kraus.back().cols() == n,
           "Kraus operator " + std::to_string(kraus.size() - 1) + " is not " + std::to_string(n) + " x " +
               std::to_string(n));
  }
  Model model{Channel<double>(std::move(kraus), true, tol), {}};
  if (j.contains("labels")) {
    model.labels = j["labels"].get<std::vector<std::string>>();
    expect(static_cast<Eigen::Index>(model.labels.size()) == n, "labels must name every basis state");
  }
  return model;
}

Json model_to_json(const Channel<double>& channel, const std::vector<std::string>& labels) {
  Json out;
  out["dimension"] = channel.dim();
  out["kraus"] = Json::array();
  for (const auto& e : channel.kraus()) out["kraus"].push_back(matrix_to_json(e));
  if (!labels.empty()) out["labels"] = labels;
  return out;
}

Subspace<double> subspace_from_json(const Json& j, Eigen::Index n, const Tolerances<double>& tol) {
  expect(j.is_object() && j.contains("vectors") && j["vectors"].is_array(), "subspace file needs a \"vectors\" list");
  if (j.contains("dimension"))
    expect(j["dimension"].get<Eigen::Index>() == n, "subspace dimension does not match the model");
  MatrixXc columns(n, static_cast<Eigen::Index>(j["vectors"].size()));
  Eigen::Index c = 0;
  for (const auto& v : j["vectors"]) {
    const VectorXc vec = vector_from_json(v);
    expect(vec.size() == n, "subspace vector has length " + std::to_string(vec.size()) + ", expected " +
                                std::to_string(n));
    columns.col(c++) = vec;
  }
  return Subspace<double>::span(columns, tol);
}

Json subspace_to_json(const Subspace<double>& s) {
  Json out;
  out["dimension"] = s.ambient_dim();
  out["vectors"] = Json::array();
  for (Eigen::Index k = 0; k < s.dim(); ++k) out["vectors"].push_back(vector_to_json(s.basis().col(k)));
  return out;
}

State state_from_json(const Json& j, Eigen::Index n, const Tolerances<double>& tol) {
  expect(j.is_object(), "state file must be an object");
  if (j.contains("pure")) {
    VectorXc psi = vector_from_json(j["pure"]);
    expect(psi.size() == n, "pure state has length " + std::to_string(psi.size()) + ", expected " + std::to_string(n));
    const double norm = psi.norm();
    expect(norm > 0, "pure state is the zero vector");
    const bool off = std::abs(norm - 1.0) > 1e-6;
    psi /= norm;
    return {DensityOperator<double>::pure(psi, tol), off};
  }
  expect(j.contains("density"), "state file needs \"pure\" or \"density\"");
  const MatrixXc rho = matrix_from_json(j["density"]);
  expect(rho.rows() == n && rho.cols() == n, "density matrix is not " + std::to_string(n) + " x " + std::to_string(n));
  return {DensityOperator<double>(rho, tol), false};
}

Json state_to_json(const MatrixXc& rho) {
  Json out;
  out["density"] = matrix_to_json(rho);
  return out;
}

std::string pretty(const Json& j) {
  std::string out;
  format(j, 0, out);
  return out;
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  expect(static_cast<bool>(in), "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(path + ": " + e.what());
  }
}

void write_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  expect(static_cast<bool>(out), "cannot write " + path);
  out << pretty(j) << '\n';
}

Model read_model(const std::string& path, const Tolerances<double>& tol) {
  const Json j = read_json(path);
  try {
    return model_from_json(j, tol);
  } catch (const std::exception& e) {
    throw Error(path + ": " + e.what());
  }
}

Subspace<double> read_subspace(const std::string& path, Eigen::Index n, const Tolerances<double>& tol) {
  const Json j = read_json(path);
  try {
    return subspace_from_json(j, n, tol);
  } catch (const std::exception& e) {
    throw Error(path + ": " + e.what());
  }
}

State read_state(const std::string& path, Eigen::Index n, const Tolerances<double>& tol) {
  const Json j = read_json(path);
  try {
    return state_from_json(j, n, tol);
  } catch (const std::exception& e) {
    throw Error(path + ": " + e.what());
  }
}

}  // namespace qmc::io
