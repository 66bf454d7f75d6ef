#include "p3m/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace p3m::io {

using bundle::GradedMatrix;
using bundle::LineBundleSum;
using nlohmann::json;

namespace {

json twists_json(const LineBundleSum& s) { return json(s.twists); }

json matrix_json(const GradedMatrix& m) {
  json rows = json::array();
  for (const auto& row : m.ent) {
    json r = json::array();
    for (const auto& p : row) r.push_back(ring::to_string(p));
    rows.push_back(std::move(r));
  }
  return rows;
}

LineBundleSum twists_from(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array())
    throw ParseError(std::string("missing or invalid twist array \"") + key +
                     "\"");
  std::vector<int> t;
  for (const auto& v : j[key]) {
    if (!v.is_number_integer())
      throw ParseError(std::string("non-integer twist in \"") + key + "\"");
    t.push_back(v.get<int>());
  }
  return LineBundleSum(std::move(t));
}

GradedMatrix matrix_from(const json& j, const char* key,
                         const LineBundleSum& src, const LineBundleSum& dst) {
  if (!j.contains(key) || !j[key].is_array())
    throw ParseError(std::string("missing or invalid matrix \"") + key + "\"");
  const json& rows = j[key];
  if (rows.size() != dst.rank())
    throw ParseError(std::string("\"") + key + "\" must have " +
                     std::to_string(dst.rank()) + " rows");
  GradedMatrix m(src, dst);
  for (std::size_t i = 0; i < dst.rank(); ++i) {
    const json& row = rows[i];
    if (!row.is_array() || row.size() != src.rank())
      throw ParseError(std::string("row ") + std::to_string(i) + " of \"" +
                       key + "\" must have " + std::to_string(src.rank()) +
                       " entries");
    for (std::size_t c = 0; c < src.rank(); ++c) {
      if (!row[c].is_string())
        throw ParseError("matrix entries must be polynomial strings");
      const int deg = dst.twists[i] - src.twists[c];
      ring::HomogPoly p;
      try {
        p = ring::parse_poly(row[c].get<std::string>(), std::max(deg, 0));
      } catch (const std::exception& e) {
        throw ParseError(std::string("entry (") + std::to_string(i) + "," +
                         std::to_string(c) + ") of \"" + key +
                         "\": " + e.what());
      }
      if (p.is_zero()) continue;
      if (deg < 0 || p.degree() != deg)
        throw ParseError(std::string("entry (") + std::to_string(i) + "," +
                         std::to_string(c) + ") of \"" + key +
                         "\" must be homogeneous of degree " +
                         std::to_string(deg));
      m.set(i, c, std::move(p));
    }
  }
  return m;
}

}  // namespace

std::string to_json(const MonadFile& mf) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["A"] = twists_json(mf.monad.A);
  j["B"] = twists_json(mf.monad.B);
  j["C"] = twists_json(mf.monad.C);
  j["alpha"] = matrix_json(mf.monad.alpha);
  j["beta"] = matrix_json(mf.monad.beta);
  if (!mf.meta.empty()) j["meta"] = mf.meta;
  return j.dump(2) + "\n";
}

MonadFile from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("document must be a JSON object");
  if (j.contains("schema_version") &&
      (!j["schema_version"].is_number_integer() ||
       j["schema_version"].get<int>() != kSchemaVersion))
    throw ParseError("unsupported schema_version");

  MonadFile mf;
  mf.monad.A = twists_from(j, "A");
  mf.monad.B = twists_from(j, "B");
  mf.monad.C = twists_from(j, "C");
  mf.monad.alpha = matrix_from(j, "alpha", mf.monad.A, mf.monad.B);
  mf.monad.beta = matrix_from(j, "beta", mf.monad.B, mf.monad.C);
  if (j.contains("meta")) {
    if (!j["meta"].is_object()) throw ParseError("\"meta\" must be an object");
    for (const auto& [k, v] : j["meta"].items()) {
      if (!v.is_string()) throw ParseError("meta values must be strings");
      mf.meta[k] = v.get<std::string>();
    }
  }
  return mf;
}

MonadFile read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

void write_file(const std::string& path, const MonadFile& mf) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << to_json(mf);
}

}  // namespace p3m::io
