#pragma once

// JSON envelopes for every file the tools read or write:
//   {"format_version": 1, "kind": "...", "payload": {...}}
// Integers only: field elements below 2^m, permutations as 1-based image
// arrays, braid words as arrays of signed letters in which a repeated
// sub-word appears as {"body": [...], "count": k}.

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "eraser/attack.hpp"
#include "eraser/instance.hpp"
#include "eraser/protocol.hpp"

namespace eraser::io {

using Json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

enum class Kind { InstancePublic, InstancePrivate, Transcript, Key, Stats };

std::string_view kind_name(Kind kind);
/// Throws Errc::Format for an unknown name.
Kind kind_from_name(std::string_view name);

Json field_to_json(const Field& f);
FieldPtr field_from_json(const Json& j);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const FieldPtr& field);

Json perm_to_json(const Permutation& p);
Permutation perm_from_json(const Json& j);

Json word_to_json(const BraidWord& w);
BraidWord word_from_json(const Json& j);

Json gen_word_to_json(const GenWord& w);
GenWord gen_word_from_json(const Json& j);

Json omega_to_json(const OmegaElement& w);
OmegaElement omega_from_json(const Json& j, const FieldPtr& field);

/// The private file repeats the field so it can be read on its own.
struct PrivateFile {
  InstancePrivate priv;
  TtpDebug debug;
};

/// A key together with the field it lives over.
struct KeyFile {
  FieldPtr field;
  OmegaElement key;
};

Json public_payload(const InstancePublic& pub);
InstancePublic public_from_payload(const Json& j);

Json private_payload(const TtpResult& ttp);
PrivateFile private_from_payload(const Json& j);

Json transcript_payload(const Transcript& t, const Field& field);
Transcript transcript_from_payload(const Json& j, FieldPtr* field_out = nullptr);

Json key_payload(const OmegaElement& key, const Field& field);
KeyFile key_from_payload(const Json& j);

/// Timings and memory sit under "timing"; everything else is a pure
/// function of the inputs and the seed in single-threaded runs.
Json stats_payload(const AttackStats& s);
AttackStats stats_from_payload(const Json& j);

Json envelope(Kind kind, Json payload);
/// Checks version and kind; returns the payload. Throws Errc::Format.
Json open_envelope(const Json& doc, Kind expected);
/// Kind of a parsed envelope. Throws Errc::Format.
Kind envelope_kind(const Json& doc);

/// Compact JSON plus a trailing newline; identical inputs give identical bytes.
std::string dump(const Json& doc);
void write_file(const std::filesystem::path& path, const Json& doc);
/// Throws Errc::Format on I/O or parse failure.
Json read_file(const std::filesystem::path& path);

}  // namespace eraser::io
