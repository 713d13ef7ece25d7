#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace wmlg {

/// SHA-1 of a byte string as lowercase hex. Used for the "config hash" field
/// in experiment provenance (same digest git would assign the blob content,
/// minus git's header -- it identifies the config, nothing more).
std::string sha1_hex(const std::string& data);

/// key=value configuration files: one pair per line, '#' starts a comment,
/// blank lines ignored, whitespace around key and value trimmed. Later keys
/// override earlier ones. Values keep internal spaces verbatim.
using KeyValues = std::map<std::string, std::string>;
KeyValues parse_keyvalues(const std::string& text);
KeyValues load_keyvalues(const std::string& path);

/// Canonical serialization (sorted "key=value\n") -- hashing input.
std::string canonical_keyvalues(const KeyValues& kv);

std::string trim(const std::string& s);
std::vector<std::string> split(const std::string& s, char delim);

/// printf-style formatting into a std::string.
std::string strfmt(const char* fmt, ...) __attribute__((format(printf, 1, 2)));

/// Read an entire file (throws wmlg::Error on failure, message names the path).
std::string read_file(const std::string& path);

/// Run body(i) for i in [0, count). Splits statically across hardware threads
/// when count is large enough; callers must write results into preallocated,
/// index-addressed slots so the outcome is independent of scheduling. The
/// first exception thrown by any worker is rethrown on the caller thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  std::size_t min_per_thread = 16);

} // namespace wmlg
