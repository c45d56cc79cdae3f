#pragma once

// Vulnerability catalog: CVE records with applicability predicates over node
// attributes and CVSS/EPSS-derived exploitation success probabilities.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "autopt/netmodel.hpp"

namespace autopt {

enum class PredicateKind { service, software, system, weak_password };
std::string to_string(PredicateKind k);
PredicateKind predicate_kind_from_string(const std::string& s);

// Applicability predicate. name is the service/software name (case-insensitive
// match) or the system tag; version bounds are inclusive, empty = unbounded.
// weak_password matches any node with a weak-flagged account.
struct AppliesTo {
  PredicateKind kind = PredicateKind::service;
  std::string name;
  std::string version_min;
  std::string version_max;
  bool operator==(const AppliesTo&) const = default;
};

struct VulnRecord {
  std::string cve_id;  // "CVE-YYYY-NNNN+"
  AppliesTo applies_to;
  double cvss = 0.0;  // [0, 10]
  double epss = 0.0;  // [0, 1]
  std::optional<double> p_success_override;
  AccountLevel grants = AccountLevel::administrative;  // privilege on successful exploit
  bool operator==(const VulnRecord&) const = default;
};

struct BlendWeights {
  double w_cvss = 0.5;
  double w_epss = 0.5;
};

struct Catalog {
  std::vector<VulnRecord> records;  // sorted by cve_id, unique
  BlendWeights weights;
  std::string source_stamp;

  const VulnRecord* find(const std::string& cve_id) const;
};

// Dotted-numeric comparison: numeric segments compare numerically, others
// lexicographically; a missing segment sorts first. Returns <0, 0, >0.
int compare_versions(std::string_view a, std::string_view b);

// clamp(w_cvss * cvss/10 + w_epss * epss, 0.01, 0.99), quantized to 6
// decimals. Monotone nondecreasing in both scores.
double success_probability(double cvss, double epss, const BlendWeights& w = {});

// Parses the line-delimited record format (one JSON object per line).
// Throws parse-error (with line locus), range-violation, duplicate-cve.
Catalog parse_catalog(std::string_view text, std::string source_stamp,
                      const BlendWeights& w = {});
Catalog load_catalog(const std::filesystem::path& path, const BlendWeights& w = {});

// Bundled catalog, overridable through the AUTOPT_SIM_CATALOG environment
// variable (path to a catalog file).
Catalog default_catalog(const BlendWeights& w = {});
const char* bundled_catalog_text();

// One NodeVuln per matching catalog record, sorted by cve_id.
std::vector<NodeVuln> match_vulns(const AuthenticAttrs& attrs, const Catalog& cat);
bool predicate_matches(const AppliesTo& p, const AuthenticAttrs& attrs);

// Bundled weak-password list (AccountEntry.weak refers to membership here).
const std::vector<std::string>& weak_password_list();
bool is_weak_password(const std::string& password);
const char* bundled_weak_passwords_text();

}  // namespace autopt
