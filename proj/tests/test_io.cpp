#include <doctest.h>

#include "p3m/families.hpp"
#include "p3m/io.hpp"

using namespace p3m;
using io::from_json;
using io::MonadFile;
using io::ParseError;
using io::to_json;

TEST_CASE("round trip through JSON preserves the monad") {
  for (const cx::Monad& m :
       {fam::make_null_correlation({1, 0, 0, 0, 0, 1}).monad, fam::make_ein(),
        fam::make_instanton(2)}) {
    MonadFile mf;
    mf.monad = m;
    mf.meta["name"] = "case";
    MonadFile back = from_json(to_json(mf));
    CHECK(back.monad.A == m.A);
    CHECK(back.monad.B == m.B);
    CHECK(back.monad.C == m.C);
    CHECK(back.monad.alpha == m.alpha);
    CHECK(back.monad.beta == m.beta);
    CHECK(back.meta.at("name") == "case");
    // byte-identical after a second cycle
    CHECK(to_json(back) == to_json(mf));
  }
}

TEST_CASE("malformed documents are rejected") {
  CHECK_THROWS_AS(from_json("not json"), ParseError);
  CHECK_THROWS_AS(from_json("[1,2]"), ParseError);
  CHECK_THROWS_AS(from_json(R"({"A":[-1],"B":[0],"C":[1]})"), ParseError);
  // bad polynomial string
  CHECK_THROWS_AS(
      from_json(
          R"({"A":[-1],"B":[0,0,0,0],"C":[1],
              "alpha":[["x"],["y"],["z"],["$"]],
              "beta":[["x","y","z","w"]]})"),
      ParseError);
  // wrong degree
  CHECK_THROWS_AS(
      from_json(
          R"({"A":[-1],"B":[0,0,0,0],"C":[1],
              "alpha":[["x^2"],["y"],["z"],["w"]],
              "beta":[["x","y","z","w"]]})"),
      ParseError);
  // wrong shape
  CHECK_THROWS_AS(
      from_json(
          R"({"A":[-1],"B":[0,0,0,0],"C":[1],
              "alpha":[["x"],["y"]],
              "beta":[["x","y","z","w"]]})"),
      ParseError);
  // wrong schema version
  CHECK_THROWS_AS(
      from_json(
          R"({"schema_version":99,"A":[],"B":[0],"C":[],
              "alpha":[["0"]],"beta":[]})"),
      ParseError);
}

TEST_CASE("file round trip") {
  MonadFile mf;
  mf.monad = fam::make_instanton(1);
  const std::string path = "io_roundtrip_test.json";
  io::write_file(path, mf);
  MonadFile back = io::read_file(path);
  CHECK(back.monad.alpha == mf.monad.alpha);
  std::remove(path.c_str());
  CHECK_THROWS_AS(io::read_file("does_not_exist.json"), ParseError);
}
