#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qmc/analysis.hpp"

// Structured-text (JSON) model, state and subspace files. Complex numbers are
// [re, im] pairs; doubles are written with 17 significant digits.
namespace qmc::io {

using Json = nlohmann::json;

struct Model {
  Channel<double> channel;
  std::vector<std::string> labels;
};

struct State {
  DensityOperator<double> rho;
  bool renormalized = false;  // a pure vector was off by more than 1e-6
};

Json complex_to_json(Complex<double> z);
Complex<double> complex_from_json(const Json& j);
Json vector_to_json(const VectorXc& v);
VectorXc vector_from_json(const Json& j);
Json matrix_to_json(const MatrixXc& m);
MatrixXc matrix_from_json(const Json& j);

/// {"dimension": n, "kraus": [matrix, ...], "labels": [...]}; rejects
/// anything that is not a trace-preserving channel.
Model model_from_json(const Json& j, const Tolerances<double>& tol = {});
Json model_to_json(const Channel<double>& channel, const std::vector<std::string>& labels = {});

/// {"vectors": [vector, ...]} with an optional "dimension"; the vectors need not
/// be orthonormal and may be empty (zero subspace).
Subspace<double> subspace_from_json(const Json& j, Eigen::Index n, const Tolerances<double>& tol = {});
Json subspace_to_json(const Subspace<double>& s);

/// {"pure": vector} or {"density": matrix}.
State state_from_json(const Json& j, Eigen::Index n, const Tolerances<double>& tol = {});
Json state_to_json(const MatrixXc& rho);

/// Indented JSON with matrix rows and vectors kept on single lines.
std::string pretty(const Json& j);

Json read_json(const std::string& path);
void write_json(const std::string& path, const Json& j);

Model read_model(const std::string& path, const Tolerances<double>& tol = {});
Subspace<double> read_subspace(const std::string& path, Eigen::Index n, const Tolerances<double>& tol = {});
State read_state(const std::string& path, Eigen::Index n, const Tolerances<double>& tol = {});

}  // namespace qmc::io
