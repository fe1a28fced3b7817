#include "sepscan/io.hpp"

#include <fstream>
#include <sstream>

#include "sepscan/error.hpp"

namespace sepscan {

namespace {

// nlohmann reports type and range problems with its own exceptions.
template <typename F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
}

int positive_int(const Json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  const int v = j.at(key).get<int>();
  if (v < 1) throw InputError(std::string("field '") + key + "' must be positive");
  return v;
}

const Json& rows_of(const Json& j, int dim) {
  const Json& rows = j.at("matrix");
  if (!rows.is_array() || static_cast<int>(rows.size()) != dim) {
    throw InputError("matrix must have " + std::to_string(dim) + " rows");
  }
  for (const auto& row : rows) {
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      throw InputError("matrix must have " + std::to_string(dim) + " columns");
    }
  }
  return rows;
}

Json qcomplex_to_json(const QComplex& z) { return Json::array({rational_to_json(z.re), rational_to_json(z.im)}); }

QComplex qcomplex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw InputError("complex entry must be [re, im]");
  return {rational_from_json(j[0]), rational_from_json(j[1])};
}

Json qvector_to_json(const QVector& v) {
  Json out = Json::array();
  for (const auto& z : v) out.push_back(qcomplex_to_json(z));
  return out;
}

QVector qvector_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("vector must be an array");
  QVector v;
  for (const auto& z : j) v.push_back(qcomplex_from_json(z));
  return v;
}

Json complex_vector_to_json(const ComplexVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v[i].real(), v[i].imag()});
  return out;
}

}  // namespace

Json read_json_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw InputError("cannot open '" + file.string() + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("'" + file.string() + "' is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::filesystem::path& file, const Json& j) {
  std::ofstream out(file);
  if (!out) throw InputError("cannot write '" + file.string() + "'");
  out << j.dump(2) << '\n';
}

Json matrix_to_json(const ComplexMatrix& a) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < a.cols(); ++c) row.push_back({a(r, c).real(), a(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j, int dim) {
  return guarded("matrix", [&] {
    const Json& rows = rows_of(j, dim);
    ComplexMatrix a(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) {
        const Json& z = rows[static_cast<size_t>(r)][static_cast<size_t>(c)];
        if (!z.is_array() || z.size() != 2) throw InputError("matrix entry must be [re, im]");
        a(r, c) = Complex(z[0].get<double>(), z[1].get<double>());
      }
    return a;
  });
}

Json density_to_json(const DensityMatrix& rho) {
  return {{"m", rho.m()}, {"n", rho.n()}, {"matrix", matrix_to_json(rho.matrix())}};
}

DensityMatrix density_from_json(const Json& j) {
  return guarded("density matrix", [&] {
    const int m = positive_int(j, "m");
    const int n = positive_int(j, "n");
    return DensityMatrix(m, n, matrix_from_json(j, m * n));
  });
}

Json operator_to_json(const HermitianOp& a, int m, int n) {
  return {{"m", m}, {"n", n}, {"matrix", matrix_to_json(a.matrix())}};
}

OperatorFile operator_from_json(const Json& j) {
  return guarded("operator", [&] {
    OperatorFile f;
    f.m = positive_int(j, "m");
    f.n = positive_int(j, "n");
    f.a = HermitianOp(matrix_from_json(j, f.m * f.n));
    return f;
  });
}

Json rational_to_json(const Rational& q) {
  return {{"num", q.get_num().get_str(10)}, {"den", q.get_den().get_str(10)}};
}

Rational rational_from_json(const Json& j) {
  return guarded("rational", [&] {
    if (!j.is_object() || !j.contains("num") || !j.contains("den")) {
      throw InputError("rational must be {\"num\": ..., \"den\": ...}");
    }
    if (!j.at("num").is_string() || !j.at("den").is_string()) {
      throw InputError("rational num and den must be strings");
    }
    return parse_rational(j.at("num").get<std::string>() + "/" + j.at("den").get<std::string>());
  });
}

Json qmatrix_to_json(const QMatrix& a, int m, int n) {
  Json rows = Json::array();
  for (int r = 0; r < a.dim(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < a.dim(); ++c) row.push_back(qcomplex_to_json(a(r, c)));
    rows.push_back(std::move(row));
  }
  return {{"m", m}, {"n", n}, {"matrix", rows}};
}

QMatrix qmatrix_from_json(const Json& j, int& m, int& n) {
  return guarded("rational matrix", [&] {
    m = positive_int(j, "m");
    n = positive_int(j, "n");
    const int dim = m * n;
    const Json& rows = rows_of(j, dim);
    QMatrix a(dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) {
        a(r, c) = qcomplex_from_json(rows[static_cast<size_t>(r)][static_cast<size_t>(c)]);
      }
    if (!a.is_hermitian()) throw InputError("rational matrix is not exactly Hermitian");
    return a;
  });
}

Json verdict_to_json(const Verdict& v) {
  Json j = {{"outcome", std::string(to_string(v.outcome))}, {"reason", v.reason}, {"exact", v.exact}};
  j["detail"] = v.detail ? Json(*v.detail) : Json(nullptr);
  return j;
}

Verdict verdict_from_json(const Json& j) {
  return guarded("verdict", [&] {
    Verdict v;
    v.outcome = outcome_from_string(j.at("outcome").get<std::string>());
    v.reason = j.at("reason").get<std::string>();
    v.exact = j.at("exact").get<bool>();
    if (j.contains("detail") && !j.at("detail").is_null()) v.detail = j.at("detail").get<double>();
    return v;
  });
}

Json instance_to_json(const QsepInstance& inst) {
  return {{"rho", qmatrix_to_json(inst.rho, inst.m, inst.n)},
          {"delta_p", rational_to_json(inst.delta_p)},
          {"eps_prime", rational_to_json(inst.eps_prime)},
          {"delta_prime", rational_to_json(inst.delta_prime)}};
}

QsepInstance instance_from_json(const Json& j) {
  return guarded("QSEP instance", [&] {
    QsepInstance inst;
    inst.rho = qmatrix_from_json(j.at("rho"), inst.m, inst.n);
    inst.delta_p = rational_from_json(j.at("delta_p"));
    inst.eps_prime = rational_from_json(j.at("eps_prime"));
    inst.delta_prime = rational_from_json(j.at("delta_prime"));
    if (inst.delta_p <= 0 || inst.delta_p > 1) throw InputError("delta_p must lie in (0, 1]");
    if (inst.eps_prime <= 0 || inst.delta_prime <= 0) throw InputError("tolerances must be positive");
    return inst;
  });
}

Json certificate_to_json(const QsepCertificate& cert) {
  Json terms = Json::array();
  for (const auto& t : cert.terms) {
    terms.push_back({{"weight", rational_to_json(t.weight)},
                     {"alpha", qvector_to_json(t.alpha)},
                     {"beta", qvector_to_json(t.beta)}});
  }
  return {{"m", cert.m}, {"n", cert.n}, {"terms", terms}};
}

QsepCertificate certificate_from_json(const Json& j) {
  return guarded("QSEP certificate", [&] {
    QsepCertificate cert;
    cert.m = positive_int(j, "m");
    cert.n = positive_int(j, "n");
    for (const auto& t : j.at("terms")) {
      QsepTerm term;
      term.weight = rational_from_json(t.at("weight"));
      term.alpha = qvector_from_json(t.at("alpha"));
      term.beta = qvector_from_json(t.at("beta"));
      cert.terms.push_back(std::move(term));
    }
    return cert;
  });
}

Json graph_to_json(const Graph& g) {
  Json edges = Json::array();
  for (const auto& [i, j] : g.edges()) edges.push_back({i, j});
  return {{"n", g.n()}, {"edges", edges}};
}

Graph graph_from_json(const Json& j) {
  return guarded("graph", [&] {
    const int n = j.at("n").get<int>();
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw InputError("edge must be [i, j]");
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return Graph::from_edges(n, edges);
  });
}

Json witness_to_json(const WitnessCert& cert, int m, int n) {
  Json normal = Json::array();
  for (Eigen::Index i = 0; i < cert.wsep_normal.size(); ++i) normal.push_back(cert.wsep_normal[i]);
  return {{"operator", operator_to_json(cert.a, m, n)},
          {"margin", cert.margin},
          {"delta", cert.delta},
          {"rho_value", cert.rho_value},
          {"wopt_value", cert.wopt_value},
          {"maximizer",
           {{"alpha", complex_vector_to_json(cert.maximizer.alpha)},
            {"beta", complex_vector_to_json(cert.maximizer.beta)}}},
          {"wsep_normal", normal}};
}

}  // namespace sepscan
