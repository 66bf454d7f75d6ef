#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "p3m/cohomology.hpp"
#include "p3m/families.hpp"
#include "p3m/invariants.hpp"
#include "p3m/io.hpp"

using nlohmann::json;
using namespace p3m;

namespace {

constexpr int kOk = 0;
constexpr int kDomainFailure = 1;
constexpr int kInputFailure = 2;

struct TwistRange {
  int lo = 0, hi = 0;
};

TwistRange parse_range(const std::string& s) {
  auto pos = s.find("..");
  if (pos == std::string::npos)
    throw CLI::ValidationError("--twists expects the form lo..hi");
  TwistRange r;
  try {
    r.lo = std::stoi(s.substr(0, pos));
    r.hi = std::stoi(s.substr(pos + 2));
  } catch (const std::exception&) {
    throw CLI::ValidationError("--twists expects integer bounds");
  }
  if (r.lo > r.hi) throw CLI::ValidationError("--twists range is empty");
  return r;
}

io::MonadFile load(const std::string& path) { return io::read_file(path); }

void print_report(const cx::ValidationReport& rep) {
  std::cout << rep.summary();
}

json report_json(const cx::ValidationReport& rep) {
  json checks = json::array();
  for (const auto& c : rep.checks)
    checks.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  return checks;
}

la::RationalMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw io::ParseError("q must be an array of rows");
  la::RationalMatrix m(j.size(), j[0].size());
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != j[0].size())
      throw io::ParseError("q rows must have equal length");
    for (std::size_t c = 0; c < j[r].size(); ++c) {
      const auto& v = j[r][c];
      la::Rat val;
      if (v.is_number_integer())
        val = la::Rat(v.get<int>());
      else if (v.is_string())
        val = la::Rat(v.get<std::string>());
      else
        throw io::ParseError("q entries must be integers or rational strings");
      val.canonicalize();
      if (val != 0) m.add_entry(r, c, val);
    }
  }
  return m;
}

json rat_to_json(const la::Rat& v) { return v.get_str(); }

json cert_to_json(const fam::SymplecticCert& cert) {
  json q = json::array();
  for (std::size_t r = 0; r < cert.q.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < cert.q.cols(); ++c)
      row.push_back(rat_to_json(cert.q.get(r, c)));
    q.push_back(std::move(row));
  }
  return {{"g", rat_to_json(cert.g)}, {"h", rat_to_json(cert.h)}, {"q", q}};
}

int cmd_validate(const std::string& path, bool fiberwise,
                 const std::string& mode, bool as_json) {
  io::MonadFile mf = load(path);
  cx::ValidationReport rep;
  if (!fiberwise || mode == "auto") {
    rep = cx::validate_monad(
        mf.monad, fiberwise ? cx::Level::fiberwise : cx::Level::algebraic);
  } else {
    rep = cx::validate_monad(mf.monad, cx::Level::algebraic);
    gb::Mode m = mode == "sample"       ? gb::Mode::sample
                 : mode == "groebner"   ? gb::Mode::groebner
                                        : gb::Mode::linear_exact;
    auto describe = [](const gb::FiberVerdict& v) {
      std::ostringstream os;
      if (v.kind == gb::VerdictKind::Everywhere)
        os << "full rank everywhere";
      else if (v.kind == gb::VerdictKind::ProbablyEverywhere)
        os << "full rank at " << v.samples << " sampled points";
      else {
        os << "rank drops";
        if (v.point) {
          os << " at [";
          for (int i = 0; i < 4; ++i)
            os << (i ? ":" : "") << (*v.point)[i].get_str();
          os << "]";
        }
      }
      return os.str();
    };
    auto alpha = gb::fiberwise_full_rank(mf.monad.alpha, m);
    rep.checks.push_back({"alpha fiberwise injective",
                          alpha.kind != gb::VerdictKind::Witness,
                          describe(alpha)});
    auto beta = gb::fiberwise_full_rank(mf.monad.beta, m);
    rep.checks.push_back({"beta fiberwise surjective",
                          beta.kind != gb::VerdictKind::Witness,
                          describe(beta)});
  }
  if (as_json)
    std::cout << json{{"checks", report_json(rep)}, {"ok", rep.all_ok()}}.dump(2)
              << "\n";
  else
    print_report(rep);
  return rep.all_ok() ? kOk : kDomainFailure;
}

int cmd_cohomology(const std::string& path, const std::string& twists,
                   const std::string& engine, bool as_json) {
  io::MonadFile mf = load(path);
  TwistRange r = parse_range(twists);
  std::map<int, std::array<long long, 4>> table;
  int bound_used = -1;
  for (int l = r.lo; l <= r.hi; ++l) {
    std::array<long long, 4> ladder{}, cech{};
    if (engine != "cech") ladder = coh::ladder_cohomology(mf.monad, l).h;
    if (engine != "ladder") {
      auto res = coh::cech_hypercohomology(cx::monad_complex(mf.monad), l);
      for (int i = 0; i < 4; ++i) cech[i] = res.h.at(i);
      bound_used = std::max(bound_used, res.bound_used);
    }
    if (engine == "both" && ladder != cech) {
      std::cerr << "engine disagreement at twist " << l << "\n";
      return kDomainFailure;
    }
    table[l] = engine == "cech" ? cech : ladder;
  }
  if (as_json) {
    json cols;
    for (const auto& [l, h] : table)
      cols[std::to_string(l)] = {h[0], h[1], h[2], h[3]};
    json out = {{"engine", engine}, {"cohomology", cols}};
    if (bound_used >= 0) out["cech_bound"] = bound_used;
    std::cout << out.dump(2) << "\n";
  } else {
    if (bound_used >= 0)
      std::cout << "cech truncation bound: " << bound_used
                << " (modular ranks)\n";
    std::cout << "l      ";
    for (const auto& [l, h] : table) std::cout << "\t" << l;
    std::cout << "\n";
    for (int i = 0; i < 4; ++i) {
      std::cout << "h^" << i << "   ";
      for (const auto& [l, h] : table) std::cout << "\t" << h[i];
      std::cout << "\n";
    }
  }
  return kOk;
}

int cmd_invariants(const std::string& path, bool as_json) {
  io::MonadFile mf = load(path);
  inv::ChernData cd = inv::chern(mf.monad);
  json out = {{"chern",
               {{"rank", cd.rank},
                {"c1", cd.c1},
                {"c2", cd.c2},
                {"c3", cd.c3}}}};
  std::optional<inv::Spectrum> spectrum;
  std::optional<int> alpha;
  std::optional<inv::StabilityProbe> probe;
  if (cd.rank == 2 && cd.c1 == 0) {
    std::map<int, long long> h1;
    int zeros = 0;
    for (int l = -2; l >= -12 && zeros < 2; --l) {
      h1[l] = coh::ladder_cohomology(mf.monad, l).h[1];
      zeros = h1[l] == 0 ? zeros + 1 : 0;
    }
    spectrum = inv::spectrum_from_h1(h1, static_cast<int>(cd.c2));
    alpha = inv::alpha_invariant(mf.monad);
    probe = inv::stability_probe(mf.monad);
  }
  if (as_json) {
    if (spectrum) {
      out["spectrum"] = json::array();
      for (int k : spectrum->values) out["spectrum"].push_back(k);
      out["alpha_invariant"] = *alpha;
      out["stability"] = probe->verdict == inv::StabilityVerdict::stable
                             ? "stable"
                         : probe->verdict == inv::StabilityVerdict::semistable
                             ? "semistable"
                             : "undetermined";
    }
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "rank " << cd.rank << ", c1 = " << cd.c1 << ", c2 = " << cd.c2
              << ", c3 = " << cd.c3 << "\n";
    if (spectrum) {
      std::cout << "spectrum (";
      bool first = true;
      for (int k : spectrum->values) {
        std::cout << (first ? "" : ",") << k;
        first = false;
      }
      std::cout << ")\nalpha invariant " << *alpha << "\n";
      std::cout << "h^0(E) = " << probe->h0_E
                << ", h^0(E(-1)) = " << probe->h0_E_minus1 << "\n";
    }
  }
  return kOk;
}

int cmd_classify(const std::string& path, bool as_json) {
  io::MonadFile mf = load(path);
  inv::ComponentReport rep = inv::classify_b5(mf.monad);
  if (as_json) {
    json spec = json::array();
    for (int k : rep.spectrum.values) spec.push_back(k);
    std::cout << json{{"component", rep.describe()},
                      {"dimension", rep.dimension},
                      {"alpha_invariant", rep.alpha},
                      {"spectrum", spec},
                      {"shape", rep.shape_id}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << rep.describe() << "\n";
  }
  return kOk;
}

int cmd_end(const std::string& path, int twist, bool exact, bool as_json) {
  io::MonadFile mf = load(path);
  cx::BoundedComplex t =
      cx::tensor_total(mf.monad, cx::dual_monad(mf.monad));
  la::RankConfig cfg = coh::cech_default_rank();
  if (exact) cfg.strategy = la::RankConfig::Strategy::exact;
  auto r = coh::cech_hypercohomology(t, twist, std::nullopt, cfg);
  if (as_json) {
    json h;
    for (int i = 0; i < 4; ++i) h.push_back(r.h.count(i) ? r.h.at(i) : 0);
    std::cout << json{{"twist", twist},
                      {"h_end", h},
                      {"cech_bound", r.bound_used},
                      {"strategy", exact ? "exact" : "modular"}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "cech truncation bound: " << r.bound_used << " ("
              << (exact ? "exact" : "modular") << " ranks)\n";
    for (int i = 0; i < 4; ++i)
      std::cout << "h^" << i << "(End E(" << twist
                << ")) = " << (r.h.count(i) ? r.h.at(i) : 0) << "\n";
  }
  return kOk;
}

int cmd_symplectic(const std::string& path, const std::string& verify_path,
                   uint64_t seed, bool as_json) {
  io::MonadFile mf = load(path);
  if (!verify_path.empty()) {
    std::ifstream in(verify_path);
    if (!in) throw io::ParseError("cannot open " + verify_path);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded())
      throw io::ParseError("invalid JSON in " + verify_path);
    fam::SymplecticCert cert;
    auto rat = [](const json& v) {
      la::Rat r = v.is_number_integer() ? la::Rat(v.get<int>())
                                        : la::Rat(v.get<std::string>());
      r.canonicalize();
      return r;
    };
    cert.g = rat(j.at("g"));
    cert.h = rat(j.at("h"));
    cert.q = matrix_from_json(j.at("q"));
    bool ok = fam::verify_symplectic(mf.monad, cert);
    if (as_json)
      std::cout << json{{"verified", ok}}.dump(2) << "\n";
    else
      std::cout << "certificate " << (ok ? "valid" : "invalid") << "\n";
    return ok ? kOk : kDomainFailure;
  }
  std::cout << "seed " << seed << "\n";
  auto cert = fam::solve_symplectic(mf.monad, seed);
  if (!cert) {
    std::cerr << "no symplectic certificate found\n";
    return kDomainFailure;
  }
  std::cout << cert_to_json(*cert).dump(2) << "\n";
  return kOk;
}

int cmd_construct(const std::string& family, const std::string& out_path,
                  int charge, int a, uint64_t seed,
                  const std::vector<std::string>& coeffs) {
  io::MonadFile mf;
  mf.meta["family"] = family;
  if (family == "instanton") {
    mf.monad = fam::make_instanton(charge);
    mf.meta["name"] = "instanton charge " + std::to_string(charge);
  } else if (family == "ein") {
    mf.monad = fam::make_ein();
    mf.meta["name"] = "ein default";
  } else if (family == "nullcorrelation") {
    std::array<la::Rat, 6> w{1, 0, 0, 0, 0, 1};
    if (!coeffs.empty()) {
      if (coeffs.size() != 6)
        throw io::ParseError("--coeffs expects six rational values");
      for (int i = 0; i < 6; ++i) {
        w[i] = la::Rat(coeffs[i]);
        w[i].canonicalize();
      }
    }
    mf.monad = fam::make_null_correlation(w).monad;
    mf.meta["name"] = "null correlation";
  } else if (family == "modified") {
    std::cout << "seed " << seed << "\n";
    mf.monad = fam::make_modified_instanton(a, charge, seed).monad;
    mf.meta["name"] =
        "G(" + std::to_string(a) + "," + std::to_string(charge) + ")";
    mf.meta["seed"] = std::to_string(seed);
  } else {
    throw CLI::ValidationError(
        "unknown family (instanton, ein, nullcorrelation, modified)");
  }
  io::write_file(out_path, mf);
  std::cout << "wrote " << out_path << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"monadtool: monads of line-bundle sums on projective 3-space"};
  app.require_subcommand(1);

  std::string path, twists = "-4..0", engine = "ladder", mode = "auto";
  std::string verify_path, family, out_path = "monad.json";
  std::vector<std::string> coeffs;
  bool fiberwise = false, as_json = false, exact = false;
  int twist = 0, charge = 1, a = 2;
  uint64_t seed = 2027;

  auto* validate = app.add_subcommand("validate", "check monad axioms");
  validate->add_option("path", path)->required();
  validate->add_flag("--fiberwise", fiberwise, "also check fiberwise ranks");
  validate->add_option("--mode", mode,
                       "degeneracy mode: auto, linear_exact, groebner, sample");
  validate->add_flag("--json", as_json);

  auto* cohomology =
      app.add_subcommand("cohomology", "twisted cohomology table");
  cohomology->add_option("path", path)->required();
  cohomology->add_option("--twists", twists, "range lo..hi");
  cohomology->add_option("--engine", engine, "ladder, cech, or both");
  cohomology->add_flag("--json", as_json);

  auto* invariants =
      app.add_subcommand("invariants", "Chern data, spectrum, stability");
  invariants->add_option("path", path)->required();
  invariants->add_flag("--json", as_json);

  auto* classify = app.add_subcommand("classify", "match against the B(5) components");
  classify->add_option("path", path)->required();
  classify->add_flag("--json", as_json);

  auto* endo = app.add_subcommand("end", "cohomology of End E via Cech");
  endo->add_option("path", path)->required();
  endo->add_option("--twist", twist);
  endo->add_flag("--exact", exact, "exact ranks instead of modular");
  endo->add_flag("--json", as_json);

  auto* symplectic =
      app.add_subcommand("symplectic", "solve for or verify a symplectic form");
  symplectic->add_option("path", path)->required();
  symplectic->add_option("--verify", verify_path,
                         "JSON file with g, h, q to verify instead of solving");
  symplectic->add_option("--seed", seed);
  symplectic->add_flag("--json", as_json);

  auto* construct = app.add_subcommand("construct", "write a family instance");
  construct->add_option("family", family)->required();
  construct->add_option("-o,--output", out_path);
  construct->add_option("--charge", charge);
  construct->add_option("--a", a);
  construct->add_option("--seed", seed);
  construct->add_option("--coeffs", coeffs,
                        "null correlation form coefficients (six values)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // help and version exit 0; any command-line mistake is an input failure
    return app.exit(e) == 0 ? kOk : kInputFailure;
  }

  try {
    if (validate->parsed())
      return cmd_validate(path, fiberwise, mode, as_json);
    if (cohomology->parsed())
      return cmd_cohomology(path, twists, engine, as_json);
    if (invariants->parsed()) return cmd_invariants(path, as_json);
    if (classify->parsed()) return cmd_classify(path, as_json);
    if (endo->parsed()) return cmd_end(path, twist, exact, as_json);
    if (symplectic->parsed())
      return cmd_symplectic(path, verify_path, seed, as_json);
    if (construct->parsed())
      return cmd_construct(family, out_path, charge, a, seed, coeffs);
  } catch (const io::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputFailure;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomainFailure;
  }
  return kOk;
}
