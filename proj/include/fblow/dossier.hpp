#pragma once

#include <string>

#include "fblow/blowup.hpp"
#include "fblow/catalog.hpp"
#include "json.hpp"

namespace fblow {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

Json to_json(const RingSpec& spec);
/// Throws RingError on missing or mistyped fields.
RingSpec ring_spec_from_json(const Json& j);

/// Accepts a bare list of rows or {"name": ..., "rows": [...]}.
NamedMatrix matrix_from_json(const Json& j);
Json to_json(const NamedMatrix& m);

Json to_json(const BlockReport& b);
Json to_json(const ChartReport& c);

/// Full fblowup dossier.  Timings are the only nondeterministic field and can
/// be left out.
Json dossier(const RingSpec& spec, const FBlowupReport& rep, bool timings = true);

/// Two-space indentation with a trailing newline; re-dumping a parsed dump
/// gives the same bytes.
std::string dump(const Json& j);

Json read_json_file(const std::string& path);
/// Writes to a temporary sibling and renames it over the target.
void write_file_atomic(const std::string& path, const std::string& text);

}  // namespace fblow
