#include "fblow/dossier.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

#include "fblow/errors.hpp"

namespace fblow {

namespace {

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw RingError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw RingError(std::string("field '") + key + "' has the wrong type");
  }
}

template <typename T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace

Json to_json(const RingSpec& spec) {
  return Json{{"name", spec.name}, {"char", spec.characteristic}, {"vars", spec.vars}, {"relations", spec.relations}};
}

RingSpec ring_spec_from_json(const Json& j) {
  RingSpec s;
  s.characteristic = field<uint32_t>(j, "char");
  s.vars = field<std::vector<std::string>>(j, "vars");
  s.relations = j.contains("relations") ? field<std::vector<std::string>>(j, "relations") : std::vector<std::string>{};
  if (j.contains("name")) s.name = field<std::string>(j, "name");
  return s;
}

NamedMatrix matrix_from_json(const Json& j) {
  NamedMatrix m;
  const Json* rows = &j;
  if (j.is_object()) {
    if (j.contains("name")) m.name = field<std::string>(j, "name");
    if (!j.contains("rows")) throw RingError("missing field 'rows'");
    rows = &j.at("rows");
  }
  try {
    m.rows = rows->get<std::vector<std::vector<std::string>>>();
  } catch (const nlohmann::json::exception&) {
    throw RingError("matrix must be a list of rows of polynomial strings");
  }
  return m;
}

Json to_json(const NamedMatrix& m) { return Json{{"name", m.name}, {"rows", m.rows}}; }

Json to_json(const BlockReport& b) {
  return Json{{"shape", {b.rows, b.cols}}, {"rank", b.rank}, {"signature", b.signature},
              {"fitting", b.fitting},      {"matrix", b.matrix}};
}

Json to_json(const ChartReport& c) {
  Json back = Json::array();
  for (const auto& [name, value] : c.back_substitution) back.push_back({name, value});
  return Json{{"index", c.index},
              {"vars", c.vars},
              {"relations", c.relations},
              {"exceptional", c.exceptional},
              {"back_substitution", back},
              {"smooth", optional_json(c.smooth)},
              {"r1", optional_json(c.r1)},
              {"dim", optional_json(c.dim)},
              {"singular_dim", optional_json(c.singular_dim)},
              {"status", c.status.empty() ? "complete" : c.status}};
}

Json dossier(const RingSpec& spec, const FBlowupReport& rep, bool timings) {
  Json blocks = Json::array();
  for (const auto& b : rep.blocks) blocks.push_back(to_json(b));
  Json charts = Json::array();
  for (const auto& c : rep.charts) charts.push_back(to_json(c));
  Json j{{"schema", kSchemaVersion},
         {"input", to_json(spec)},
         {"e", rep.e},
         {"seed", rep.seed},
         {"status", rep.status},
         {"pushforward", {{"rank", rep.rank}, {"pruned_shape", {rep.pruned_rows, rep.pruned_cols}}, {"blocks", blocks}}},
         {"villamayor", rep.villamayor},
         {"kunz_locus_agrees", optional_json(rep.kunz)},
         {"rees", {{"vars", rep.rees_vars}, {"J", rep.rees}}},
         {"charts", charts}};
  if (!rep.incomplete_stage.empty()) j["incomplete_stage"] = rep.incomplete_stage;
  if (timings) {
    Json t = Json::object();
    for (const auto& [name, secs] : rep.timings) t[name] = secs;
    j["timings"] = t;
  }
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const nlohmann::json::parse_error& ex) {
    throw ParseError(ParseError::Kind::Syntax, ex.byte, std::string("invalid JSON in ") + path);
  }
}

void write_file_atomic(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
    if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw std::runtime_error("cannot rename " + tmp.string() + ": " + ec.message());
}

}  // namespace fblow
