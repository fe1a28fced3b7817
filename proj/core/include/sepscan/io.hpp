#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "sepscan/gadgets.hpp"
#include "sepscan/linalg.hpp"
#include "sepscan/qsep.hpp"
#include "sepscan/verdict.hpp"
#include "sepscan/witness.hpp"

namespace sepscan {

using Json = nlohmann::json;

/// Reads and parses a JSON file. Throws InputError on I/O or syntax errors.
Json read_json_file(const std::filesystem::path& file);
void write_json_file(const std::filesystem::path& file, const Json& j);

// Double form: {"m", "n", "matrix": [[[re, im], ...], ...]}, row-major.
Json matrix_to_json(const ComplexMatrix& a);
ComplexMatrix matrix_from_json(const Json& j, int dim);

Json density_to_json(const DensityMatrix& rho);
/// Validates shape, Hermiticity, unit trace and PSD.
DensityMatrix density_from_json(const Json& j);

/// Same layout as a density matrix; only Hermiticity is enforced.
Json operator_to_json(const HermitianOp& a, int m, int n);
struct OperatorFile {
  HermitianOp a;
  int m = 0;
  int n = 0;
};
OperatorFile operator_from_json(const Json& j);

// Exact form: every scalar is {"num": "...", "den": "..."}.
Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j);
Json qmatrix_to_json(const QMatrix& a, int m, int n);
/// Returns the matrix with its (m, n). Requires exact Hermiticity.
QMatrix qmatrix_from_json(const Json& j, int& m, int& n);

Json verdict_to_json(const Verdict& v);
Verdict verdict_from_json(const Json& j);

Json instance_to_json(const QsepInstance& inst);
QsepInstance instance_from_json(const Json& j);
Json certificate_to_json(const QsepCertificate& cert);
QsepCertificate certificate_from_json(const Json& j);

Json graph_to_json(const Graph& g);
Graph graph_from_json(const Json& j);

Json witness_to_json(const WitnessCert& cert, int m, int n);

}  // namespace sepscan
