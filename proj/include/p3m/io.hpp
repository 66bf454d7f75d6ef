#ifndef P3M_IO_HPP
#define P3M_IO_HPP

#include <map>
#include <stdexcept>
#include <string>

#include "p3m/complex.hpp"

namespace p3m::io {

inline constexpr int kSchemaVersion = 1;

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& w) : std::runtime_error(w) {}
};

struct MonadFile {
  cx::Monad monad;
  std::map<std::string, std::string> meta;  // optional: name, family, seed, ...
};

/// Serialize to the canonical JSON document (schema_version, twist arrays,
/// polynomial strings for alpha and beta rows, optional meta).
std::string to_json(const MonadFile& mf);

/// Parse and degree-check a MonadFile document; throws ParseError on malformed
/// JSON, bad polynomials, or shape/degree violations.
MonadFile from_json(const std::string& text);

MonadFile read_file(const std::string& path);
void write_file(const std::string& path, const MonadFile& mf);

}  // namespace p3m::io

#endif
