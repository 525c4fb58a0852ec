#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <utility>

#include <CLI11.hpp>
#include <json.hpp>

#include "cmvscat/cmv.hpp"
#include "cmvscat/diagnostics.hpp"
#include "cmvscat/error.hpp"
#include "cmvscat/generators.hpp"
#include "cmvscat/io.hpp"
#include "cmvscat/operators.hpp"
#include "cmvscat/scattering.hpp"
#include "cmvscat/schur.hpp"

namespace cmvscat::cli {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

std::string trim(std::string s) {
  const auto keep = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), keep));
  s.erase(std::find_if(s.rbegin(), s.rend(), keep).base(), s.end());
  return s;
}

double parse_real(const std::string& s, const std::string& whole) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size()) fail(ErrorKind::invalid_input, "not a complex number: '" + whole + "'");
  return x;
}

}  // namespace

std::complex<double> parse_complex(const std::string& text) {
  const std::string s = trim(text);
  if (s.empty()) fail(ErrorKind::invalid_input, "empty complex number");
  if (s.back() != 'i' && s.back() != 'j') return {parse_real(s, s), 0.0};
  const std::string body = s.substr(0, s.size() - 1);
  // The imaginary part starts at the last sign that is not an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, parse_real(body, s)};
  return {parse_real(body.substr(0, split), s), parse_real(body.substr(split), s)};
}

std::vector<std::complex<double>> parse_complex_list(const std::string& text) {
  std::vector<std::complex<double>> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    out.push_back(parse_complex(text.substr(start, end - start)));
    start = end + 1;
  }
  return out;
}

namespace {

struct RunConfig {
  std::string command;
  std::string alphas;
  std::string scattering;
  std::string weight;
  std::size_t grid = kDefaultGrid;
  std::size_t depth = 32;
  std::size_t block = 32;
  std::string out = ".";
  std::string family;
  std::vector<std::string> tol;
  std::string generator;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  std::size_t n = 32;
  std::string roots = "1";
  std::string alpha_minus_one = "-1";
  std::string a = "0.5";
  double ratio = 0.5;
};

Json complex_json(cplx z) { return Json::array({z.real(), z.imag()}); }

Json evidence_json(const CanonicalEvidence& ev) {
  Json j;
  j["verdict"] = to_string(ev.verdict);
  j["sizes"] = ev.sizes;
  j["sigma_min_evidence"] = {{"sigma_min_sbar", ev.sigma_min_s},
                             {"sigma0_tsbar", ev.sigma0_ts},
                             {"sigma1_tsbar", ev.sigma1_ts}};
  j["tol_lo"] = ev.tol_lo;
  j["tol_hi"] = ev.tol_hi;
  return j;
}

std::string coefficient_csv(const FourierSeries& c, int count) {
  std::string out = "n,re,im\n";
  for (int k = 0; k < count && c.contains(k); ++k)
    out += std::to_string(k) + "," + format_number(c[k].real()) + "," + format_number(c[k].imag()) + "\n";
  return out;
}

std::string poly_csv(const Poly& p) {
  std::string out = "n,re,im\n";
  for (std::size_t k = 0; k < p.size(); ++k)
    out += std::to_string(k) + "," + format_number(p[k].real()) + "," + format_number(p[k].imag()) + "\n";
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

/// Named files staged in memory; commit() writes them through temporaries
/// and renames, so a failed command leaves the output directory untouched.
class Artifacts {
 public:
  void add(std::string name, std::string content) { files_.emplace_back(std::move(name), std::move(content)); }

  void commit(const fs::path& dir) const {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) fail(ErrorKind::io, "cannot create " + dir.string() + ": " + ec.message());
    std::vector<fs::path> staged;
    auto cleanup = [&] {
      for (const fs::path& p : staged) fs::remove(p, ec);
    };
    for (const auto& [name, content] : files_) {
      const fs::path tmp = dir / (name + ".partial");
      std::ofstream os(tmp, std::ios::binary);
      os << content;
      os.close();
      if (!os) {
        cleanup();
        fail(ErrorKind::io, "cannot write " + tmp.string());
      }
      staged.push_back(tmp);
    }
    for (std::size_t k = 0; k < files_.size(); ++k) {
      fs::rename(staged[k], dir / files_[k].first, ec);
      if (ec) {
        cleanup();
        fail(ErrorKind::io, "cannot write " + (dir / files_[k].first).string() + ": " + ec.message());
      }
    }
  }

  const std::vector<std::pair<std::string, std::string>>& files() const { return files_; }

 private:
  std::vector<std::pair<std::string, std::string>> files_;
};

class Runner {
 public:
  Runner(RunConfig cfg, std::ostream& out) : cfg_(std::move(cfg)), out_(out) {}

  int dispatch() {
    check_config();
    if (cfg_.command == "forward") return forward();
    if (cfg_.command == "inverse") return inverse();
    if (cfg_.command == "verify") return verify();
    if (cfg_.command == "classify") return classify();
    return example();
  }

 private:
  RunConfig cfg_;
  std::ostream& out_;
  std::map<std::string, double> tol_{{"glm", 1e-6},    {"widom", 1e-6},          {"llinv", 1e-8},
                                     {"deter", 1e-10}, {"gram", 1e-6},           {"th1_asymptotics", 1e-3},
                                     {"roundtrip", 1e-8}};

  void check_config() {
    if (!is_power_of_two(cfg_.grid) || cfg_.grid < 512)
      fail(ErrorKind::invalid_input, "--grid must be a power of two >= 512");
    if (cfg_.block < 4) fail(ErrorKind::invalid_input, "--block must be at least 4");
    if (cfg_.depth < 1) fail(ErrorKind::invalid_input, "--depth must be positive");
    for (const std::string& t : cfg_.tol) {
      const std::size_t eq = t.find('=');
      const std::string name = t.substr(0, eq);
      if (eq == std::string::npos || !tol_.contains(name))
        fail(ErrorKind::invalid_input, "--tol expects NAME=VALUE with NAME one of the verify checks: " + t);
      const double x = parse_real(t.substr(eq + 1), t);
      if (!(x > 0.0)) fail(ErrorKind::invalid_input, "tolerances must be positive: " + t);
      tol_[name] = x;
    }
  }

  Json provenance() const {
    Json config;
    config["grid"] = cfg_.grid;
    config["depth"] = cfg_.depth;
    config["block"] = cfg_.block;
    if (!cfg_.alphas.empty()) config["alphas"] = cfg_.alphas;
    if (!cfg_.scattering.empty()) config["scattering"] = cfg_.scattering;
    if (!cfg_.weight.empty()) config["weight"] = cfg_.weight;
    if (!cfg_.family.empty()) config["family"] = cfg_.family;
    if (cfg_.command == "example") {
      config["generator"] = cfg_.generator;
      config["gamma1"] = cfg_.gamma1;
      config["gamma2"] = cfg_.gamma2;
      config["n"] = cfg_.n;
      config["roots"] = cfg_.roots;
      config["alpha_minus_one"] = cfg_.alpha_minus_one;
      config["a"] = cfg_.a;
      config["ratio"] = cfg_.ratio;
    }
    Json tolerances;
    for (const auto& [k, v] : tol_) tolerances[k] = v;
    return Json{{"tool", "cmvscat"}, {"command", cfg_.command}, {"config", config}, {"tolerances", tolerances}};
  }

  int finish(const Artifacts& files, int code = kExitOk) {
    files.commit(cfg_.out);
    for (const auto& [name, content] : files.files()) out_ << (fs::path(cfg_.out) / name).string() << "\n";
    return code;
  }

  // Shared by forward and the data-driven examples.
  void add_direct(Artifacts& files, const VerblunskyData& v, Json summary) {
    const std::size_t m = cfg_.grid;
    const GridFunction w = spectral_density(v, m);
    const SchurChain chain = chain_from_data(v, v.support(), m);
    const FourierSeries d = analyze(szego_from_chain(chain, v.alpha_minus_one));
    const ScatteringData sd = scattering_function(v, m);
    double prod = 1.0;
    for (std::size_t k = 0; k < v.support(); ++k) prod *= v.rho(k);

    summary["support"] = v.support();
    summary["index"] = sd.index;
    summary["shat_minus1"] = complex_json(sd.shat[-1]);
    summary["D0"] = complex_json(d[0]);
    summary["prod_rho"] = prod;
    summary["canonical"] = evidence_json(sd.evidence);
    files.add("verblunsky.json", verblunsky_json(v));
    files.add("weight.csv", grid_csv(w));
    files.add("scattering.csv", grid_csv(sd.s));
    files.add("szego_coefficients.csv", coefficient_csv(d, static_cast<int>(m / 2)));
    files.add("summary.json", dump(summary));
  }

  int forward() {
    if (cfg_.alphas.empty()) fail(ErrorKind::invalid_input, "forward needs --alphas");
    const VerblunskyData v = read_verblunsky(cfg_.alphas);
    Artifacts files;
    add_direct(files, v, Json{{"provenance", provenance()}});
    return finish(files);
  }

  int inverse() {
    if (cfg_.scattering.empty()) fail(ErrorKind::invalid_input, "inverse needs --scattering");
    const GridFunction s = read_grid_csv(cfg_.scattering);
    for (const cplx& z : s.samples())
      if (std::abs(std::abs(z) - 1.0) > 1e-8) fail(ErrorKind::invalid_input, "scattering samples must be unimodular");
    return cfg_.family.empty() ? inverse_canonical(s) : inverse_family(s);
  }

  int inverse_canonical(const GridFunction& s) {
    InverseResult r;
    try {
      r = inverse_scattering(s, cfg_.depth);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::non_canonical || winding_index(s).index == 0) throw;
      fail(ErrorKind::non_canonical,
           std::string(e.what()) + "; a symbol of the form s t^N with N >= 1 is non-canonical and "
                                   "its inverse problem has many solutions (use --family)");
    }
    Json report{{"provenance", provenance()}};
    report["match"] = r.match;
    report["alpha_minus_one"] = complex_json(r.data.alpha_minus_one);
    report["support"] = r.data.support();
    report["canonical"] = evidence_json(r.evidence);
    Artifacts files;
    files.add("verblunsky.json", verblunsky_json(r.data));
    files.add("weight.csv", grid_csv(r.spectral.w));
    files.add("szego_coefficients.csv", coefficient_csv(r.spectral.D, static_cast<int>(s.size() / 2)));
    files.add("match.json", dump(report));
    return finish(files);
  }

  int inverse_family(const GridFunction& s) {
    const std::vector<FamilyMember> family = noncanonical_family(s, parse_complex_list(cfg_.family), cfg_.depth);
    Json report{{"provenance", provenance()}};
    Json members = Json::array();
    Artifacts files;
    for (std::size_t k = 0; k < family.size(); ++k) {
      const FamilyMember& f = family[k];
      double separation = -1.0;
      for (std::size_t j = 0; j < family.size(); ++j)
        if (j != k) {
          const double d = max_abs_diff(f.w, family[j].w);
          separation = separation < 0.0 ? d : std::min(separation, d);
        }
      Json m;
      m["tau"] = complex_json(f.tau);
      m["alpha_minus_one"] = complex_json(f.alpha_minus_one);
      Json dcoef = Json::array();
      for (cplx c : f.D) dcoef.push_back(complex_json(c));
      m["D"] = dcoef;
      m["match"] = f.reproduction;
      m["excluded_points"] = f.excluded;
      m["min_weight_separation"] = separation;
      members.push_back(m);
      const std::string tag = "_" + std::to_string(k);
      files.add("verblunsky" + tag + ".json", verblunsky_json(f.data));
      files.add("weight" + tag + ".csv", grid_csv(f.w));
      files.add("szego_coefficients" + tag + ".csv", poly_csv(f.D));
    }
    report["family"] = members;
    files.add("match.json", dump(report));
    return finish(files);
  }

  Json check(const std::string& name, double value) const {
    const double t = tol_.at(name);
    return Json{{"value", value}, {"tolerance", t}, {"pass", std::isfinite(value) && value < t}};
  }

  int verify() {
    if (cfg_.alphas.empty()) fail(ErrorKind::invalid_input, "verify needs --alphas");
    const VerblunskyData v = read_verblunsky(cfg_.alphas);
    const std::size_t m = cfg_.block;
    const std::size_t grid = cfg_.grid;
    const std::size_t support = v.support();

    const double glm = glm_residual(v, m, grid).residual;
    const double widom = widom_check(v, m, grid).gap;

    const Eigen::MatrixXcd l = transformation_block(v, m, grid).matrix;
    const Eigen::MatrixXcd li = transformation_inverse_block(v, m, grid).matrix;
    const double llinv = (l * li - Eigen::MatrixXcd::Identity(l.rows(), l.cols())).cwiseAbs().maxCoeff();

    double deter = 0.0;
    for (std::size_t n = 0; n <= std::min<std::size_t>(support, 12); ++n)
      for (std::size_t j = 0; j <= n; ++j) deter = std::max(deter, determinant_identity_residual(v, j, n));

    const std::size_t gm = std::min<std::size_t>(m, 16);
    double gram = 0.0;
    for (ModelBasis b : {ModelBasis::f, ModelBasis::e}) {
      const Eigen::MatrixXcd g = model_gram(v, gm, b, grid);
      gram = std::max(gram, (g - Eigen::MatrixXcd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff());
    }

    const std::size_t n_th1 = std::max<std::size_t>(20, support);
    const EigenRow& row = generalized_eigenrows(v, n_th1, grid).back();
    const double th1 = std::max(row.r_even, row.r_odd);

    double roundtrip = 0.0;
    if (support > 0) {
      const SchurForward fw = schur_forward(schur_inverse(v, grid), support, v.alpha_minus_one);
      if (fw.degenerate_at) {
        roundtrip = std::numeric_limits<double>::infinity();
      } else {
        for (std::size_t k = 0; k < support; ++k)
          roundtrip = std::max(roundtrip, std::abs(fw.data.alpha(k) - v.alpha(k)));
      }
    }

    Json checks;
    checks["glm"] = check("glm", glm);
    checks["widom"] = check("widom", widom);
    checks["llinv"] = check("llinv", llinv);
    checks["deter"] = check("deter", deter);
    checks["gram"] = check("gram", gram);
    checks["th1_asymptotics"] = check("th1_asymptotics", th1);
    checks["roundtrip"] = check("roundtrip", roundtrip);
    bool all = true;
    for (const auto& [name, c] : checks.items()) all = all && c["pass"].get<bool>();

    Json report{{"provenance", provenance()}};
    report["checks"] = checks;
    report["all_pass"] = all;
    report["gi_partial_sums"] = gi_functional(v).partial_sums;
    Artifacts files;
    files.add("report.json", dump(report));
    return finish(files, all ? kExitOk : kExitInvalid);
  }

  int classify() {
    const int inputs = !cfg_.alphas.empty() + !cfg_.weight.empty() + !cfg_.scattering.empty();
    if (inputs != 1) fail(ErrorKind::invalid_input, "classify needs exactly one of --alphas, --weight, --scattering");
    ClassReport r;
    if (!cfg_.alphas.empty())
      r = classify_data(read_verblunsky(cfg_.alphas), cfg_.grid);
    else if (!cfg_.weight.empty())
      r = classify_weight(read_grid_csv(cfg_.weight), parse_complex(cfg_.alpha_minus_one));
    else
      r = classify_scattering(read_grid_csv(cfg_.scattering));

    Json j{{"provenance", provenance()}};
    j["input_kind"] = r.input_kind;
    Json a2 = Json::array();
    for (const A2Level& l : r.a2_trace) a2.push_back({{"depth", l.depth}, {"sup", l.sup}, {"running", l.running}});
    j["a2_trace"] = a2;
    j["besov_logw"] = r.besov_logw ? Json(*r.besov_logw) : Json(nullptr);
    j["besov_phase"] = r.besov_phase ? Json(*r.besov_phase) : Json(nullptr);
    j["gi_partial_sums"] = r.gi_partial_sums;
    j["widom_partial_products"] = r.widom_partial_products;
    auto pairs = [](const std::vector<std::pair<std::size_t, double>>& xs) {
      Json a = Json::array();
      for (const auto& [m, x] : xs) a.push_back({{"m", m}, {"value", x}});
      return a;
    };
    j["hankel_norms"] = pairs(r.hankel_norms);
    j["linv_norms"] = pairs(r.linv_norms);
    j["canonical_verdict"] = r.canonical ? evidence_json(*r.canonical) : Json(nullptr);
    j["hs_evidence"] = to_string(r.hs_evidence);
    j["gi_evidence"] = to_string(r.gi_evidence);
    j["note"] = "finite-size evidence, not a proof of class membership";
    Artifacts files;
    files.add("classify.json", dump(j));
    return finish(files);
  }

  int example() {
    const cplx am = parse_complex(cfg_.alpha_minus_one);
    Json summary{{"provenance", provenance()}, {"generator", cfg_.generator}};
    Artifacts files;
    const std::string& g = cfg_.generator;
    if (g == "jacobi") {
      if (cfg_.n < 1) fail(ErrorKind::invalid_input, "--n must be positive");
      add_direct(files, jacobi_data(cfg_.gamma1, cfg_.gamma2, cfg_.n, am), summary);
    } else if (g == "bernstein") {
      add_direct(files, bernstein_data(parse_complex(cfg_.a), am), summary);
    } else if (g == "geometric") {
      if (!(cfg_.ratio > 0.0 && cfg_.ratio < 1.0)) fail(ErrorKind::invalid_input, "--ratio must lie in (0, 1)");
      add_direct(files, geometric_data(cfg_.ratio, cfg_.n, am), summary);
    } else if (g == "polyweight") {
      const PolyWeight p = polyweight(parse_complex_list(cfg_.roots), am, cfg_.grid);
      summary["index"] = p.index;
      summary["c"] = p.c;
      summary["alpha_minus_one"] = complex_json(p.alpha_minus_one);
      Json pc = Json::array();
      for (cplx c : p.P) pc.push_back(complex_json(c));
      summary["P"] = pc;
      summary["canonical"] = evidence_json(canonical_test(p.s));
      files.add("weight.csv", grid_csv(p.w));
      files.add("scattering.csv", grid_csv(p.s));
      files.add("szego_coefficients.csv", poly_csv(p.D));
      files.add("summary.json", dump(summary));
    } else {
      fail(ErrorKind::invalid_input, "unknown generator '" + g + "' (jacobi, polyweight, bernstein, geometric)");
    }
    return finish(files);
  }
};

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::io: return kExitIo;
    case ErrorKind::non_canonical: return kExitNonCanonical;
    case ErrorKind::invalid_input:
    case ErrorKind::degenerate: break;
  }
  return kExitInvalid;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Direct and inverse scattering for CMV matrices"};
  app.require_subcommand(1);

  auto grid_flags = [&](CLI::App* c) {
    c->add_option("--grid", cfg.grid, "grid size M (power of two)");
    c->add_option("--depth", cfg.depth, "Schur depth / family Verblunsky count");
    c->add_option("--block", cfg.block, "operator block size m");
    c->add_option("--out", cfg.out, "output directory");
  };

  CLI::App* fwd = app.add_subcommand("forward", "Verblunsky data to weight and scattering function");
  fwd->add_option("--alphas", cfg.alphas, "VerblunskyData JSON")->required();
  grid_flags(fwd);

  CLI::App* inv = app.add_subcommand("inverse", "scattering function to Verblunsky data");
  inv->add_option("--scattering", cfg.scattering, "scattering CSV")->required();
  inv->add_option("--family", cfg.family, "unimodular taus for a monomial symbol, e.g. 1,i,-1");
  grid_flags(inv);

  CLI::App* ver = app.add_subcommand("verify", "run the operator identity checks");
  ver->add_option("--alphas", cfg.alphas, "VerblunskyData JSON")->required();
  ver->add_option("--tol", cfg.tol, "override a check tolerance, NAME=VALUE");
  grid_flags(ver);

  CLI::App* cls = app.add_subcommand("classify", "class evidence report");
  cls->add_option("--alphas", cfg.alphas, "VerblunskyData JSON");
  cls->add_option("--weight", cfg.weight, "weight CSV");
  cls->add_option("--scattering", cfg.scattering, "scattering CSV");
  cls->add_option("--alpha-minus-one", cfg.alpha_minus_one, "anchor for weight input");
  grid_flags(cls);

  CLI::App* ex = app.add_subcommand("example", "closed-form example families");
  ex->add_option("generator", cfg.generator, "jacobi, polyweight, bernstein or geometric")->required();
  ex->add_option("--gamma1", cfg.gamma1);
  ex->add_option("--gamma2", cfg.gamma2);
  ex->add_option("--n", cfg.n, "number of coefficients");
  ex->add_option("--roots", cfg.roots, "unimodular roots, comma separated");
  ex->add_option("--alpha-minus-one", cfg.alpha_minus_one);
  ex->add_option("--a", cfg.a, "Bernstein-Szego coefficient");
  ex->add_option("--ratio", cfg.ratio, "geometric ratio");
  grid_flags(ex);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    return Runner(cfg, out).dispatch();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}

}  // namespace cmvscat::cli
