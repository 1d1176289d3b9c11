#include "energylab/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "energylab/error.hpp"

namespace energylab {

using nlohmann::json;

std::string set_to_json(const GSet& a) {
  json j;
  j["group"] = std::vector<std::uint32_t>(a.group().factors().begin(), a.group().factors().end());
  j["elements"] = a.elements();
  return j.dump() + "\n";
}

GSet set_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(std::string("malformed set file: ") + e.what());
  }
  if (!j.is_object() || !j.contains("group") || !j.contains("elements") || !j["group"].is_array() ||
      !j["elements"].is_array()) {
    throw Error("set file needs array fields 'group' and 'elements'");
  }
  std::vector<std::uint32_t> factors;
  for (const json& f : j["group"]) {
    if (!f.is_number_unsigned()) throw Error("group factors must be positive integers");
    factors.push_back(f.get<std::uint32_t>());
  }
  const Group g = Group::make(std::move(factors));
  GSet out(g);
  for (const json& e : j["elements"]) {
    if (!e.is_number_integer()) throw Error("elements must be integer indices");
    const auto v = e.get<std::int64_t>();
    g.check(v);
    if (out.contains(static_cast<Element>(v))) throw Error("duplicate element " + std::to_string(v));
    out.insert(static_cast<Element>(v));
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path + "'");
  out << contents;
  if (!out) throw Error("write to '" + path + "' failed");
}

GSet load_set(const std::string& path) { return set_from_json(read_file(path)); }

void save_set(const GSet& a, const std::string& path) { write_file(path, set_to_json(a)); }

namespace {

json pass_field(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return true;
    case CheckStatus::Fail: return false;
    default: return to_string(s);
  }
}

std::string csv_cell(const std::string& v) {
  if (v.find_first_of(",\"\n") == std::string::npos) return v;
  std::string out = "\"";
  for (char c : v) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string report_to_json(const std::vector<CheckResult>& results) {
  json arr = json::array();
  for (const CheckResult& r : results) {
    json j;
    j["name"] = r.name;
    j["anchor"] = r.anchor;
    j["kind"] = to_string(r.kind);
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["pass"] = pass_field(r.status);
    j["ratio"] = std::isfinite(r.ratio) ? json(r.ratio) : json(nullptr);
    j["note"] = r.note;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::string report_to_csv(const std::vector<CheckResult>& results) {
  std::string out = "name,anchor,kind,lhs,rhs,pass,ratio,note\n";
  for (const CheckResult& r : results) {
    std::string pass = r.status == CheckStatus::Pass ? "true" : r.status == CheckStatus::Fail ? "false" : to_string(r.status);
    const std::string ratio = std::isfinite(r.ratio) ? json(r.ratio).dump() : "";
    out += csv_cell(r.name) + ',' + csv_cell(r.anchor) + ',' + to_string(r.kind) + ',' + csv_cell(r.lhs) + ',' +
           csv_cell(r.rhs) + ',' + pass + ',' + ratio + ',' + csv_cell(r.note) + '\n';
  }
  return out;
}

}  // namespace energylab
