#pragma once

// JSON (de)serialization for instances, points, and certificates. Numbers are
// emitted as shortest round-trip decimals; infinities, which JSON has no
// literal for, travel as the strings "inf" and "-inf" (the unbounded lower
// band bound alpha uses the same convention).

#include <string>

#include "robustqp/certificates.hpp"
#include "robustqp/quadratic.hpp"

namespace robustqp {

// All parsers throw std::invalid_argument with a description of the offending
// field; emitters are total on validated inputs.

RobustInstance parse_instance(const std::string& text);
std::string emit_instance(const RobustInstance& instance);

// Accepts either a bare array or {"x": [...]}. expected_dim < 0 skips the
// length check.
Vector parse_vector(const std::string& text, int expected_dim = -1);
std::string emit_vector(const Vector& x);

struct CertificateDocument {
  std::string kind;  // "optimality" | "one_sided" | "alternative"
  std::optional<OptimalityCertificate> optimality;
  std::optional<OneSidedCertificate> one_sided;
  std::optional<AlternativeCertificate> alternative;
  std::optional<VerificationReport> report;
};

// Top-level keys must be exactly the ones the kind calls for (plus an
// optional "report"): a one_sided document smuggling a "lambda1" is rejected
// rather than silently ignored.
CertificateDocument parse_certificate(const std::string& text);
std::string emit_certificate(const CertificateDocument& doc);

}  // namespace robustqp
