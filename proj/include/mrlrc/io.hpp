#pragma once

// File formats: SRMAT v1 matrices, MRLRC v1 code bundles, erasure word files and
// JSON reports. All element values use the canonical integer encoding.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mrlrc/bounds.hpp"
#include "mrlrc/constructions.hpp"
#include "mrlrc/verify.hpp"

namespace mrlrc::io {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// `srmat p=<p> e=<e> rows=<r> cols=<c>` then one line per row.
void write_srmat(std::ostream& out, const Matrix& m);
std::string to_srmat(const Matrix& m);

/// Parses a matrix and builds its field from the header. Throws ParseError.
Matrix read_srmat(std::istream& in);
/// Same, but entries live in `field`; throws MixedFields when the header disagrees.
Matrix read_srmat(std::istream& in, const ff::FieldPtr& field);

void save_srmat(const std::filesystem::path& path, const Matrix& m);
Matrix load_srmat(const std::filesystem::path& path, const ff::FieldPtr& field);

/// Writes code.json plus G.srmat, H.srmat and (when present) P.srmat into dir.
/// Returns the path of code.json.
std::filesystem::path save_bundle(const MrLrcCode& code, const std::filesystem::path& dir);
Json bundle_json(const MrLrcCode& code);
/// Rebuilds the tower and topology from the JSON and reads the referenced matrices.
/// Throws ParseError on malformed input, IoError on unreadable files.
MrLrcCode load_bundle(const std::filesystem::path& json_path);

/// Whitespace-separated symbols; '?' marks an erasure.
std::vector<std::optional<Elem>> parse_word(const std::string& text);
std::string format_word(const std::vector<std::optional<Elem>>& word);
std::vector<Elem> parse_vector(const std::string& text);
std::string format_vector(const std::vector<Elem>& v);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

/// Coordinates are reported 1-based. wall_time is left out so reports stay byte-stable.
Json report_json(const MrReport& report);
Json plan_json(const FieldPlan& plan);
Json lower_bound_json(const LowerBound& lb);
Json decode_json(const DecodeResult& result);

/// Pretty-printed with a trailing newline.
std::string dump(const Json& j);

}  // namespace mrlrc::io
