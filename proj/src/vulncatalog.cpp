#include "autopt/vulncatalog.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace autopt {

std::string to_string(PredicateKind k) {
  switch (k) {
    case PredicateKind::service: return "service";
    case PredicateKind::software: return "software";
    case PredicateKind::system: return "system";
    case PredicateKind::weak_password: return "weak_password";
  }
  return "service";
}

PredicateKind predicate_kind_from_string(const std::string& s) {
  if (s == "service") return PredicateKind::service;
  if (s == "software") return PredicateKind::software;
  if (s == "system") return PredicateKind::system;
  if (s == "weak_password") return PredicateKind::weak_password;
  throw SimError("parse-error", "unknown applies_to kind '" + s + "'");
}

const VulnRecord* Catalog::find(const std::string& cve_id) const {
  auto it = std::lower_bound(records.begin(), records.end(), cve_id,
                             [](const VulnRecord& r, const std::string& id) { return r.cve_id < id; });
  if (it != records.end() && it->cve_id == cve_id) return &*it;
  return nullptr;
}

int compare_versions(std::string_view a, std::string_view b) {
  auto next_segment = [](std::string_view& s) -> std::string_view {
    auto dot = s.find('.');
    std::string_view seg = s.substr(0, dot);
    s = dot == std::string_view::npos ? std::string_view() : s.substr(dot + 1);
    return seg;
  };
  auto all_digits = [](std::string_view s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
  };
  std::string_view ra = a, rb = b;
  bool more_a = !a.empty(), more_b = !b.empty();
  while (more_a || more_b) {
    if (!more_a) return -1;  // shorter sorts first on equal prefix
    if (!more_b) return 1;
    std::string_view sa = next_segment(ra), sb = next_segment(rb);
    more_a = !ra.empty();
    more_b = !rb.empty();
    if (all_digits(sa) && all_digits(sb)) {
      long long na = std::strtoll(std::string(sa).c_str(), nullptr, 10);
      long long nb = std::strtoll(std::string(sb).c_str(), nullptr, 10);
      if (na != nb) return na < nb ? -1 : 1;
    } else {
      int c = std::string(sa).compare(std::string(sb));
      if (c != 0) return c < 0 ? -1 : 1;
    }
  }
  return 0;
}

double success_probability(double cvss, double epss, const BlendWeights& w) {
  double p = w.w_cvss * (cvss / 10.0) + w.w_epss * epss;
  return quantize6(std::clamp(p, 0.01, 0.99));
}

namespace {

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::tolower(static_cast<unsigned char>(a[i])) != std::tolower(static_cast<unsigned char>(b[i])))
      return false;
  return true;
}

bool version_in_range(const std::string& v, const AppliesTo& p) {
  if (p.version_min.empty() && p.version_max.empty()) return true;
  if (v.empty()) return false;  // unknown version never satisfies a bound
  if (!p.version_min.empty() && compare_versions(v, p.version_min) < 0) return false;
  if (!p.version_max.empty() && compare_versions(v, p.version_max) > 0) return false;
  return true;
}

bool valid_cve_id(const std::string& s) {
  if (s.rfind("CVE-", 0) != 0 || s.size() < 13 - 4) return false;
  std::size_t i = 4, digits = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    ++i;
    ++digits;
  }
  if (digits != 4 || i >= s.size() || s[i] != '-') return false;
  ++i;
  digits = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    ++i;
    ++digits;
  }
  return i == s.size() && digits >= 4;
}

}  // namespace

bool predicate_matches(const AppliesTo& p, const AuthenticAttrs& attrs) {
  switch (p.kind) {
    case PredicateKind::system:
      return iequals(p.name, to_string(attrs.system));
    case PredicateKind::service:
      return std::any_of(attrs.services.begin(), attrs.services.end(), [&](const ServiceEntry& s) {
        return iequals(s.name, p.name) && version_in_range(s.version, p);
      });
    case PredicateKind::software:
      return std::any_of(attrs.software.begin(), attrs.software.end(), [&](const SoftwareEntry& s) {
        return iequals(s.name, p.name) && version_in_range(s.version, p);
      });
    case PredicateKind::weak_password:
      return std::any_of(attrs.accounts.begin(), attrs.accounts.end(),
                         [](const AccountEntry& a) { return a.weak; });
  }
  return false;
}

std::vector<NodeVuln> match_vulns(const AuthenticAttrs& attrs, const Catalog& cat) {
  std::vector<NodeVuln> out;
  for (const auto& rec : cat.records) {
    if (!predicate_matches(rec.applies_to, attrs)) continue;
    double p = rec.p_success_override ? quantize6(std::clamp(*rec.p_success_override, 0.01, 0.99))
                                      : success_probability(rec.cvss, rec.epss, cat.weights);
    out.push_back(NodeVuln{rec.cve_id, p});
  }
  // records are sorted by cve_id, so the output already is; keep it explicit
  std::sort(out.begin(), out.end());
  return out;
}

Catalog parse_catalog(std::string_view text, std::string source_stamp, const BlendWeights& w) {
  if (std::abs(w.w_cvss + w.w_epss - 1.0) > 1e-9 || w.w_cvss < 0 || w.w_epss < 0)
    throw SimError("range-violation", "blend weights must be non-negative and sum to 1");
  Catalog cat;
  cat.weights = w;
  cat.source_stamp = std::move(source_stamp);

  std::size_t line_no = 0, pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    // trim whitespace
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t' || line.front() == '\r'))
      line.remove_prefix(1);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
      line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::exception& e) {
      throw SimError("parse-error", "line " + std::to_string(line_no) + ": " + e.what());
    }
    auto where = [&] { return "line " + std::to_string(line_no); };
    try {
      VulnRecord rec;
      rec.cve_id = j.at("cve_id").get<std::string>();
      const Json& ja = j.at("applies_to");
      rec.applies_to.kind = predicate_kind_from_string(ja.at("kind").get<std::string>());
      rec.applies_to.name = ja.value("name", std::string());
      rec.applies_to.version_min = ja.value("version_min", std::string());
      rec.applies_to.version_max = ja.value("version_max", std::string());
      rec.cvss = j.at("cvss").get<double>();
      rec.epss = j.at("epss").get<double>();
      if (j.contains("p_success_override") && !j["p_success_override"].is_null())
        rec.p_success_override = j["p_success_override"].get<double>();
      if (j.contains("grants")) rec.grants = account_level_from_string(j["grants"].get<std::string>());

      if (!valid_cve_id(rec.cve_id))
        throw SimError("parse-error", where() + ": bad cve_id '" + rec.cve_id + "'");
      if (rec.cvss < 0.0 || rec.cvss > 10.0)
        throw SimError("range-violation", where() + ": cvss " + std::to_string(rec.cvss));
      if (rec.epss < 0.0 || rec.epss > 1.0)
        throw SimError("range-violation", where() + ": epss " + std::to_string(rec.epss));
      if (rec.p_success_override && (*rec.p_success_override < 0.0 || *rec.p_success_override > 1.0))
        throw SimError("range-violation", where() + ": p_success_override");
      if (rec.applies_to.kind != PredicateKind::weak_password && rec.applies_to.name.empty())
        throw SimError("parse-error", where() + ": applies_to.name required");
      cat.records.push_back(std::move(rec));
    } catch (const Json::exception& e) {
      throw SimError("parse-error", where() + ": " + e.what());
    }
  }
  if (cat.records.empty()) throw SimError("parse-error", "catalog has no records");

  std::sort(cat.records.begin(), cat.records.end(),
            [](const VulnRecord& a, const VulnRecord& b) { return a.cve_id < b.cve_id; });
  for (std::size_t i = 1; i < cat.records.size(); ++i)
    if (cat.records[i].cve_id == cat.records[i - 1].cve_id)
      throw SimError("duplicate-cve", cat.records[i].cve_id);
  return cat;
}

Catalog load_catalog(const std::filesystem::path& path, const BlendWeights& w) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SimError("parse-error", "cannot open catalog file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_catalog(ss.str(), path.filename().string(), w);
}

Catalog default_catalog(const BlendWeights& w) {
  if (const char* env = std::getenv("AUTOPT_SIM_CATALOG"); env && *env)
    return load_catalog(env, w);
  return parse_catalog(bundled_catalog_text(), "bundled", w);
}

const std::vector<std::string>& weak_password_list() {
  static const std::vector<std::string> list = [] {
    std::vector<std::string> out;
    std::istringstream in(bundled_weak_passwords_text());
    std::string line;
    while (std::getline(in, line)) {
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
      if (!line.empty()) out.push_back(line);
    }
    return out;
  }();
  return list;
}

bool is_weak_password(const std::string& password) {
  const auto& list = weak_password_list();
  return std::find(list.begin(), list.end(), password) != list.end();
}

}  // namespace autopt
