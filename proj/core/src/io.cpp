#include "robustqp/io.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace robustqp {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr double kSymmetryTol = 1e-12;

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

json parse_json(const std::string& text, const char* what) {
  json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) fail(std::string(what) + ": not well-formed JSON");
  if (!doc.is_object() && !doc.is_array()) fail(std::string(what) + ": expected an object");
  return doc;
}

const json& field(const json& doc, const char* key, const char* what) {
  auto it = doc.find(key);
  if (it == doc.end()) fail(std::string(what) + ": missing field '" + key + "'");
  return *it;
}

double real_from(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  fail(where + " must be a number (or \"inf\"/\"-inf\")");
}

ordered_json real_to_json(double v) {
  if (std::isnan(v)) fail("cannot serialize NaN");
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double finite_from(const json& j, const std::string& where) {
  const double v = real_from(j, where);
  if (!std::isfinite(v)) fail(where + " must be finite");
  return v;
}

Vector vector_from(const json& j, const std::string& name, int n) {
  if (!j.is_array()) fail(name + " must be an array");
  if (static_cast<int>(j.size()) != n) {
    std::ostringstream msg;
    msg << name << " has length " << j.size() << ", expected " << n;
    fail(msg.str());
  }
  Vector out(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) fail(name + " entries must be numbers");
    out[i] = j[i].get<double>();
  }
  return out;
}

SymmetricMatrix matrix_from(const json& j, const std::string& name, int n) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    fail(name + " must be an " + std::to_string(n) + "-row array");
  std::vector<Vector> rows;
  rows.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    rows.push_back(vector_from(j[i], name + " row " + std::to_string(i), n));

  double worst = 0.0;
  int wi = 0, wj = 0;
  for (int i = 0; i < n; ++i) {
    for (int jj = 0; jj < i; ++jj) {
      const double gap = std::abs(rows[i][jj] - rows[jj][i]);
      if (gap > worst) {
        worst = gap;
        wi = i;
        wj = jj;
      }
    }
  }
  if (worst > kSymmetryTol) {
    std::ostringstream msg;
    msg << name << "[" << wj << "][" << wi << "] and " << name << "[" << wi << "][" << wj
        << "] differ by " << worst << "; matrices must be symmetric within " << kSymmetryTol;
    fail(msg.str());
  }

  SymmetricMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int jj = 0; jj <= i; ++jj) m.set(i, jj, 0.5 * (rows[i][jj] + rows[jj][i]));
  return m;
}

Interval interval_from(const json& j, const std::string& name) {
  if (!j.is_array() || j.size() != 2) fail(name + " must be a [lo, hi] pair");
  Interval iv{finite_from(j[0], name + " lower end"), finite_from(j[1], name + " upper end")};
  if (!(iv.lo <= iv.hi)) fail(name + " interval is reversed");
  return iv;
}

ordered_json matrix_rows(const SymmetricMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < m.size(); ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < m.size(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

void reject_unknown_keys(const json& doc, const std::set<std::string>& allowed,
                         const std::string& what) {
  for (const auto& item : doc.items()) {
    if (!allowed.count(item.key()))
      fail(what + ": unexpected field '" + item.key() + "'");
  }
}

void require_keys(const json& doc, const std::set<std::string>& required,
                  const std::string& what) {
  for (const auto& key : required) {
    if (!doc.contains(key)) fail(what + ": missing field '" + key + "'");
  }
}

OptimalityCertificate optimality_fields(const json& doc, const std::string& what) {
  OptimalityCertificate cert;
  cert.lambda1 = finite_from(field(doc, "lambda1", what.c_str()), what + ".lambda1");
  cert.lambda2 = finite_from(field(doc, "lambda2", what.c_str()), what + ".lambda2");
  cert.mu_alpha = finite_from(field(doc, "mu_alpha", what.c_str()), what + ".mu_alpha");
  cert.mu_beta = finite_from(field(doc, "mu_beta", what.c_str()), what + ".mu_beta");
  cert.delta_alpha = finite_from(field(doc, "delta_alpha", what.c_str()), what + ".delta_alpha");
  cert.delta_beta = finite_from(field(doc, "delta_beta", what.c_str()), what + ".delta_beta");
  return cert;
}

void emit_optimality_fields(ordered_json& out, const OptimalityCertificate& cert) {
  out["lambda1"] = cert.lambda1;
  out["lambda2"] = cert.lambda2;
  out["mu_alpha"] = cert.mu_alpha;
  out["mu_beta"] = cert.mu_beta;
  out["delta_alpha"] = cert.delta_alpha;
  out["delta_beta"] = cert.delta_beta;
}

VerificationReport report_from(const json& j) {
  if (!j.is_object()) fail("certificate document: report must be an object");
  const char* what = "certificate report";
  reject_unknown_keys(j,
                      {"stationarity_residual", "complementarity_beta", "complementarity_alpha",
                       "min_eigenvalue", "upper_margin", "lower_margin", "objective_margin",
                       "passed", "tolerance"},
                      what);
  VerificationReport r;
  r.stationarity_residual = real_from(field(j, "stationarity_residual", what), "stationarity_residual");
  r.complementarity_beta = real_from(field(j, "complementarity_beta", what), "complementarity_beta");
  r.complementarity_alpha = real_from(field(j, "complementarity_alpha", what), "complementarity_alpha");
  r.min_eigenvalue = real_from(field(j, "min_eigenvalue", what), "min_eigenvalue");
  r.upper_margin = real_from(field(j, "upper_margin", what), "upper_margin");
  r.lower_margin = real_from(field(j, "lower_margin", what), "lower_margin");
  r.objective_margin = real_from(field(j, "objective_margin", what), "objective_margin");
  const json& passed = field(j, "passed", what);
  if (!passed.is_boolean()) fail("certificate report: passed must be a boolean");
  r.passed = passed.get<bool>();
  r.tolerance = real_from(field(j, "tolerance", what), "tolerance");
  return r;
}

ordered_json report_to_json(const VerificationReport& r) {
  ordered_json out;
  out["stationarity_residual"] = real_to_json(r.stationarity_residual);
  out["complementarity_beta"] = real_to_json(r.complementarity_beta);
  out["complementarity_alpha"] = real_to_json(r.complementarity_alpha);
  out["min_eigenvalue"] = real_to_json(r.min_eigenvalue);
  out["upper_margin"] = real_to_json(r.upper_margin);
  out["lower_margin"] = real_to_json(r.lower_margin);
  out["objective_margin"] = real_to_json(r.objective_margin);
  out["passed"] = r.passed;
  out["tolerance"] = real_to_json(r.tolerance);
  return out;
}

}  // namespace

RobustInstance parse_instance(const std::string& text) {
  const char* what = "instance document";
  const json doc = parse_json(text, what);
  if (!doc.is_object()) fail(std::string(what) + ": expected an object");

  const json& nj = field(doc, "n", what);
  if (!nj.is_number_integer()) fail(std::string(what) + ": n must be an integer");
  const int n = nj.get<int>();
  if (n < 1) fail(std::string(what) + ": n must be positive");

  RobustInstance instance;
  instance.objective.Q = matrix_from(field(doc, "A", what), "A", n);
  instance.objective.c = vector_from(field(doc, "a", what), "a", n);
  instance.objective.r = 0.0;
  instance.constraint.B1 = matrix_from(field(doc, "B1", what), "B1", n);
  instance.constraint.B2 = matrix_from(field(doc, "B2", what), "B2", n);
  instance.constraint.b1 = vector_from(field(doc, "b1", what), "b1", n);
  instance.constraint.b2 = vector_from(field(doc, "b2", what), "b2", n);
  instance.constraint.mu = interval_from(field(doc, "mu", what), "mu");
  instance.constraint.delta = interval_from(field(doc, "delta", what), "delta");

  const json& alpha = field(doc, "alpha", what);
  if (alpha.is_string()) {
    if (alpha.get<std::string>() != "-inf")
      fail(std::string(what) + ": alpha must be a number or the literal \"-inf\"");
    instance.constraint.alpha = std::nullopt;
  } else if (alpha.is_number()) {
    instance.constraint.alpha = alpha.get<double>();
  } else {
    fail(std::string(what) + ": alpha must be a number or the literal \"-inf\"");
  }
  instance.constraint.beta = finite_from(field(doc, "beta", what), "beta");

  if (instance.constraint.alpha.has_value() &&
      !(*instance.constraint.alpha < instance.constraint.beta))
    fail(std::string(what) + ": alpha<beta required");

  instance.validate();
  return instance;
}

std::string emit_instance(const RobustInstance& instance) {
  if (instance.objective.r != 0.0)
    fail("instance document has no field for a nonzero objective constant");
  ordered_json doc;
  doc["n"] = instance.n();
  doc["A"] = matrix_rows(instance.objective.Q);
  doc["a"] = instance.objective.c;
  doc["B1"] = matrix_rows(instance.constraint.B1);
  doc["B2"] = matrix_rows(instance.constraint.B2);
  doc["b1"] = instance.constraint.b1;
  doc["b2"] = instance.constraint.b2;
  doc["mu"] = {instance.constraint.mu.lo, instance.constraint.mu.hi};
  doc["delta"] = {instance.constraint.delta.lo, instance.constraint.delta.hi};
  if (instance.constraint.alpha.has_value())
    doc["alpha"] = *instance.constraint.alpha;
  else
    doc["alpha"] = "-inf";
  doc["beta"] = instance.constraint.beta;
  return doc.dump(2) + "\n";
}

Vector parse_vector(const std::string& text, int expected_dim) {
  const char* what = "point document";
  json doc = parse_json(text, what);
  if (doc.is_object()) doc = field(doc, "x", what);
  if (!doc.is_array()) fail(std::string(what) + ": expected an array or {\"x\": [...]}");
  Vector x(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i) {
    if (!doc[i].is_number()) fail(std::string(what) + ": entries must be numbers");
    x[i] = doc[i].get<double>();
  }
  if (expected_dim >= 0 && static_cast<int>(x.size()) != expected_dim) {
    std::ostringstream msg;
    msg << what << ": has " << x.size() << " entries, instance expects " << expected_dim;
    fail(msg.str());
  }
  return x;
}

std::string emit_vector(const Vector& x) {
  ordered_json doc;
  doc["x"] = x;
  return doc.dump(2) + "\n";
}

CertificateDocument parse_certificate(const std::string& text) {
  const std::string what = "certificate document";
  const json doc = parse_json(text, what.c_str());
  if (!doc.is_object()) fail(what + ": expected an object");

  const json& kindj = field(doc, "kind", what.c_str());
  if (!kindj.is_string()) fail(what + ": kind must be a string");

  CertificateDocument out;
  out.kind = kindj.get<std::string>();

  if (out.kind == "optimality") {
    reject_unknown_keys(doc,
                        {"kind", "report", "lambda1", "lambda2", "mu_alpha", "mu_beta",
                         "delta_alpha", "delta_beta"},
                        what + " (kind optimality)");
    out.optimality = optimality_fields(doc, what);
  } else if (out.kind == "one_sided") {
    reject_unknown_keys(doc, {"kind", "report", "lambda", "mu", "delta"},
                        what + " (kind one_sided)");
    OneSidedCertificate cert;
    cert.lambda = finite_from(field(doc, "lambda", what.c_str()), "lambda");
    cert.mu = finite_from(field(doc, "mu", what.c_str()), "mu");
    cert.delta = finite_from(field(doc, "delta", what.c_str()), "delta");
    out.one_sided = cert;
  } else if (out.kind == "alternative") {
    const json& branch = field(doc, "branch", what.c_str());
    if (!branch.is_string()) fail(what + ": branch must be a string");
    const auto b = branch.get<std::string>();
    if (b == "witness") {
      reject_unknown_keys(doc, {"kind", "report", "branch", "x"}, what + " (witness branch)");
      WitnessPoint w;
      const json& xj = field(doc, "x", what.c_str());
      if (!xj.is_array()) fail(what + ": x must be an array");
      for (const auto& v : xj) {
        if (!v.is_number()) fail(what + ": x entries must be numbers");
        w.x.push_back(v.get<double>());
      }
      out.alternative = AlternativeCertificate{std::move(w)};
    } else if (b == "multipliers") {
      reject_unknown_keys(doc,
                          {"kind", "report", "branch", "lambda0", "lambda1", "lambda2",
                           "mu_alpha", "mu_beta", "delta_alpha", "delta_beta"},
                          what + " (multipliers branch)");
      AlternativeMultipliers m;
      m.lambda0 = finite_from(field(doc, "lambda0", what.c_str()), "lambda0");
      m.inner = optimality_fields(doc, what);
      out.alternative = AlternativeCertificate{m};
    } else {
      fail(what + ": branch must be \"witness\" or \"multipliers\"");
    }
  } else {
    fail(what + ": kind must be \"optimality\", \"one_sided\", or \"alternative\"");
  }

  if (doc.contains("report")) out.report = report_from(doc["report"]);
  return out;
}

std::string emit_certificate(const CertificateDocument& doc) {
  ordered_json out;
  out["kind"] = doc.kind;
  if (doc.kind == "optimality") {
    if (!doc.optimality.has_value()) fail("optimality document without multiplier fields");
    emit_optimality_fields(out, *doc.optimality);
  } else if (doc.kind == "one_sided") {
    if (!doc.one_sided.has_value()) fail("one_sided document without multiplier fields");
    out["lambda"] = doc.one_sided->lambda;
    out["mu"] = doc.one_sided->mu;
    out["delta"] = doc.one_sided->delta;
  } else if (doc.kind == "alternative") {
    if (!doc.alternative.has_value()) fail("alternative document without a branch payload");
    if (const auto* w = std::get_if<WitnessPoint>(&*doc.alternative)) {
      out["branch"] = "witness";
      out["x"] = w->x;
    } else {
      const auto& m = std::get<AlternativeMultipliers>(*doc.alternative);
      out["branch"] = "multipliers";
      out["lambda0"] = m.lambda0;
      emit_optimality_fields(out, m.inner);
    }
  } else {
    fail("unknown certificate kind '" + doc.kind + "'");
  }
  if (doc.report.has_value()) out["report"] = report_to_json(*doc.report);
  return out.dump(2) + "\n";
}

}  // namespace robustqp
