#include "mmspace/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

#include <json.hpp>

#include "mmspace/error.hpp"

namespace mmspace {

using nlohmann::json;

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) fail(ErrorKind::Io, "cannot read " + path.string());
  return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Io, "cannot open " + path.string() + " for writing");
  out << text;
  if (!out) fail(ErrorKind::Io, "cannot write " + path.string());
}

Space parse_space(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Parse, e.what());
  }
  if (!doc.is_object() || !doc.contains("distances")) {
    fail(ErrorKind::Parse, "space document needs a \"distances\" array");
  }
  Matrix dist;
  std::vector<double> weight;
  std::vector<std::string> labels;
  try {
    dist = doc.at("distances").get<Matrix>();
    if (doc.contains("weights")) {
      weight = doc.at("weights").get<std::vector<double>>();
    } else {
      weight.assign(dist.size(), dist.empty() ? 0.0 : 1.0 / static_cast<double>(dist.size()));
    }
    if (doc.contains("labels")) labels = doc.at("labels").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    fail(ErrorKind::Parse, e.what());
  }
  if (!labels.empty() && labels.size() != dist.size()) {
    fail(ErrorKind::ShapeMismatch, "labels do not match the number of points");
  }
  return Space::validate(dist, std::move(weight), std::move(labels));
}

Space load_space(const std::filesystem::path& path) { return parse_space(read_file(path)); }

std::string space_to_json(const Space& space) {
  json doc;
  doc["distances"] = space.distance_matrix();
  doc["weights"] = std::vector<double>(space.weights().begin(), space.weights().end());
  if (!space.labels().empty()) doc["labels"] = space.labels();
  return doc.dump() + "\n";
}

std::string function_to_json(std::span<const double> f, double lip) {
  json doc;
  doc["f"] = std::vector<double>(f.begin(), f.end());
  doc["lip"] = lip;
  return doc.dump() + "\n";
}

std::string profile_to_csv(const ConcentrationProfile& profile) {
  std::string out = "r,alpha,witness_mask_hex\n";
  for (std::size_t k = 0; k < profile.radii.size(); ++k) {
    out += format_double(profile.radii[k]) + "," + format_double(profile.values[k]) + ",";
    if (k < profile.witnesses.size()) out += profile.witnesses[k].to_hex();
    out += "\n";
  }
  return out;
}

namespace {

SubsetMask mask_from_hex(std::string_view hex, std::size_t n) {
  SubsetMask mask(n);
  for (std::size_t k = 0; k < hex.size(); ++k) {
    const char c = hex[hex.size() - 1 - k];
    int nibble = 0;
    if (c >= '0' && c <= '9') {
      nibble = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      nibble = c - 'a' + 10;
    } else if (c >= 'A' && c <= 'F') {
      nibble = c - 'A' + 10;
    } else {
      fail(ErrorKind::Parse, "bad hex digit in witness mask");
    }
    for (std::size_t b = 0; b < 4; ++b) {
      if (!(nibble >> b & 1)) continue;
      if (4 * k + b >= n) fail(ErrorKind::Parse, "witness mask exceeds the point count");
      mask.set(4 * k + b);
    }
  }
  return mask;
}

}  // namespace

ConcentrationProfile profile_from_csv(const std::string& text, double epsilon, std::size_t n) {
  ConcentrationProfile profile;
  profile.epsilon = epsilon;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("r,alpha", 0) != 0) {
    fail(ErrorKind::Parse, "profile CSV must start with the header r,alpha,witness_mask_hex");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) fail(ErrorKind::Parse, "bad CSV row: " + line);
    double r = 0.0;
    double a = 0.0;
    const auto p1 = std::from_chars(line.data(), line.data() + c1, r);
    const auto p2 = std::from_chars(line.data() + c1 + 1, line.data() + c2, a);
    if (p1.ec != std::errc{} || p2.ec != std::errc{}) fail(ErrorKind::Parse, "bad number in: " + line);
    profile.radii.push_back(r);
    profile.values.push_back(a);
    if (n > 0) profile.witnesses.push_back(mask_from_hex(std::string_view(line).substr(c2 + 1), n));
  }
  return profile;
}

namespace {

json number(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

json report_json(const BoundReport& r) {
  json j;
  j["name"] = r.name;
  j["lhs"] = number(r.lhs);
  j["rhs"] = number(r.rhs);
  j["relation"] = r.relation == Relation::LessEqual ? "<=" : ">=";
  j["hypotheses_met"] = r.hypotheses_met;
  if (r.pass) {
    j["pass"] = *r.pass;
    j["slack"] = number(r.slack());
  } else {
    j["pass"] = "skipped";
  }
  if (!r.reason.empty()) j["reason"] = r.reason;
  json inputs = json::object();
  for (const auto& [k, v] : r.inputs) inputs[k] = number(v);
  j["inputs"] = std::move(inputs);
  if (!r.witness.empty()) j["witness"] = r.witness;
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string reports_to_json(const std::vector<BoundReport>& reports) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(report_json(r));
  return arr.dump(2) + "\n";
}

std::string reports_to_csv(const std::vector<BoundReport>& reports) {
  std::string out = "name,lhs,relation,rhs,pass,reason\n";
  for (const auto& r : reports) {
    out += csv_field(r.name) + "," + format_double(r.lhs) + "," +
           (r.relation == Relation::LessEqual ? "<=" : ">=") + "," + format_double(r.rhs) + "," +
           (r.pass ? (*r.pass ? "true" : "false") : "skipped") + "," + csv_field(r.reason) + "\n";
  }
  return out;
}

}  // namespace mmspace
