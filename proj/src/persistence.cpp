#include "autopt/persistence.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace autopt {

namespace {

void dump_string(const std::string& s, std::string& out) {
  out += '"';
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  out += '"';
}

void dump_rec(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::null:
      out += "null";
      break;
    case Json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      break;
    case Json::value_t::number_integer:
      out += std::to_string(j.get<std::int64_t>());
      break;
    case Json::value_t::number_unsigned:
      out += std::to_string(j.get<std::uint64_t>());
      break;
    case Json::value_t::number_float: {
      double v = j.get<double>();
      if (!std::isfinite(v)) throw SimError("io-error", "non-finite number in canonical output");
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.6f", v);
      out += buf;
      break;
    }
    case Json::value_t::string:
      dump_string(j.get_ref<const std::string&>(), out);
      break;
    case Json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& el : j) {
        if (!first) out += ',';
        first = false;
        dump_rec(el, out);
      }
      out += ']';
      break;
    }
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // nlohmann objects iterate key-sorted
        if (!first) out += ',';
        first = false;
        dump_string(it.key(), out);
        out += ':';
        dump_rec(it.value(), out);
      }
      out += '}';
      break;
    }
    default:
      throw SimError("io-error", "unsupported JSON value in canonical output");
  }
}

Json parse_or_throw(std::string_view bytes, const char* what) {
  try {
    return Json::parse(bytes);
  } catch (const Json::exception& e) {
    throw SimError("parse-error", std::string(what) + ": " + e.what());
  }
}

void check_envelope(const Json& j, const char* kind) {
  if (!j.is_object() || !j.contains("kind") || j["kind"] != kind)
    throw SimError("parse-error", std::string("not a ") + kind + " file");
  int v = j.value("format_version", -1);
  if (v != kFormatVersion)
    throw SimError("version-mismatch",
                   "format_version " + std::to_string(v) + ", expected " + std::to_string(kFormatVersion));
}

}  // namespace

std::string canonical_dump(const Json& j) {
  std::string out;
  dump_rec(j, out);
  return out;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr))
    throw SimError("io-error", "sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xf];
  }
  return out;
}

std::string snapshot_digest(const NetworkGraph& g) {
  Json jg;
  to_json(jg, g);
  return sha256_hex(canonical_dump(jg));
}

std::string write_snapshot(const NetworkGraph& g) {
  Json jg;
  to_json(jg, g);
  Json env{{"kind", "snapshot"},
           {"format_version", kFormatVersion},
           {"digest", sha256_hex(canonical_dump(jg))},
           {"graph", std::move(jg)}};
  return canonical_dump(env) + "\n";
}

NetworkGraph read_snapshot(std::string_view bytes) {
  Json j = parse_or_throw(bytes, "snapshot");
  check_envelope(j, "snapshot");
  if (!j.contains("graph")) throw SimError("parse-error", "snapshot lacks graph");
  NetworkGraph g;
  try {
    from_json(j["graph"], g);
  } catch (const Json::exception& e) {
    throw SimError("parse-error", std::string("snapshot graph: ") + e.what());
  }
  const std::string want = j.value("digest", std::string());
  if (want != snapshot_digest(g))
    throw SimError("parse-error", "snapshot digest mismatch");
  return g;
}

std::string write_delta(const GraphDelta& d) {
  Json jd;
  to_json(jd, d);
  Json env{{"kind", "delta"},
           {"format_version", kFormatVersion},
           {"digest", sha256_hex(canonical_dump(jd))},
           {"delta", std::move(jd)}};
  return canonical_dump(env) + "\n";
}

GraphDelta read_delta(std::string_view bytes) {
  Json j = parse_or_throw(bytes, "delta");
  check_envelope(j, "delta");
  GraphDelta d;
  try {
    from_json(j.at("delta"), d);
  } catch (const Json::exception& e) {
    throw SimError("parse-error", std::string("delta: ") + e.what());
  }
  Json jd;
  to_json(jd, d);
  if (j.value("digest", std::string()) != sha256_hex(canonical_dump(jd)))
    throw SimError("parse-error", "delta digest mismatch");
  return d;
}

std::string write_manifest(const Manifest& m) {
  Json files = Json::array();
  for (const auto& f : m.files) files.push_back(Json{{"path", f.path}, {"digest", f.digest}});
  Json env{{"kind", "manifest"},       {"format_version", kFormatVersion},
           {"generator_config", m.generator_config}, {"kinds", m.kinds},
           {"scales", m.scales},       {"seeds", m.seeds},
           {"files", std::move(files)}};
  return canonical_dump(env) + "\n";
}

Manifest read_manifest(std::string_view bytes) {
  Json j = parse_or_throw(bytes, "manifest");
  check_envelope(j, "manifest");
  Manifest m;
  try {
    m.generator_config = j.value("generator_config", Json());
    m.kinds = j.at("kinds").get<std::vector<std::string>>();
    m.scales = j.at("scales").get<std::vector<int>>();
    m.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    for (const auto& jf : j.at("files"))
      m.files.push_back({jf.at("path").get<std::string>(), jf.at("digest").get<std::string>()});
  } catch (const Json::exception& e) {
    throw SimError("parse-error", std::string("manifest: ") + e.what());
  }
  return m;
}

std::vector<std::string> verify_manifest(const Manifest& m, const std::filesystem::path& base_dir) {
  std::vector<std::string> problems;
  for (const auto& f : m.files) {
    const auto path = base_dir / f.path;
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) {
      problems.push_back("missing file: " + f.path);
      continue;
    }
    if (sha256_hex(read_file(path)) != f.digest) problems.push_back("digest mismatch: " + f.path);
  }
  return problems;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw SimError("io-error", "cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& p, std::string_view bytes) {
  std::filesystem::create_directories(p.parent_path());
  const auto tmp = p.parent_path() / (p.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw SimError("io-error", "cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw SimError("io-error", "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, p, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw SimError("io-error", "rename to " + p.string() + " failed: " + ec.message());
  }
}

}  // namespace autopt
