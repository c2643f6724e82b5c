// Batch front end: spectrum, wavefunction, verify, qes, sweep, poly.

#include <CLI11.hpp>
#include <json.hpp>

#include <pdmse/error.hpp>
#include <pdmse/model_catalog.hpp>
#include <pdmse/numerics.hpp>
#include <pdmse/qes.hpp>
#include <pdmse/special_functions.hpp>
#include <pdmse/susy.hpp>
#include <pdmse/verify.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using json = nlohmann::ordered_json;
using namespace pdmse;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitConfig = 2;
constexpr int kExitVerify = 3;
constexpr int kExitConvergence = 4;

// ---------------------------------------------------------------- formatting

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

json jnum(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
json jcplx(cplx v) { return json::array({jnum(v.real()), jnum(v.imag())}); }

std::string iso_timestamp() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// "2", "-0.5i", "1+2i", "3e-2-4j", "i"
cplx parse_complex(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), ::isspace), s.end());
  if (s.empty()) throw CLI::ValidationError("complex value is empty");
  auto real_of = [&](const std::string& t) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != t.size() || t.empty()) throw CLI::ValidationError("cannot read '" + s + "' as a complex number");
    return v;
  };
  const char last = s.back();
  if (last != 'i' && last != 'j') return {real_of(s), 0.0};
  std::string body = s.substr(0, s.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  std::string re = split == std::string::npos ? "" : body.substr(0, split);
  std::string im = split == std::string::npos ? body : body.substr(split);
  double imv = (im.empty() || im == "+") ? 1.0 : im == "-" ? -1.0 : real_of(im);
  return {re.empty() ? 0.0 : real_of(re), imv};
}

int thread_cap() {
  int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("PDMSE_THREADS")) {
    int v = 0;
    auto r = std::from_chars(env, env + std::strlen(env), v);
    if (r.ec == std::errc() && v > 0) return std::min(hw, v);
  }
  return hw;
}

// Ordered parallel map over indices, at most `width` tasks in flight.
template <class T, class F>
std::vector<T> ordered_map(std::size_t count, int width, F&& f) {
  std::vector<T> out(count);
  const std::size_t w = static_cast<std::size_t>(std::max(1, width));
  for (std::size_t start = 0; start < count; start += w) {
    std::vector<std::future<T>> batch;
    for (std::size_t i = start; i < std::min(count, start + w); ++i)
      batch.push_back(std::async(w > 1 ? std::launch::async : std::launch::deferred, [&f, i] { return f(i); }));
    for (std::size_t i = 0; i < batch.size(); ++i) out[start + i] = batch[i].get();
  }
  return out;
}

// ---------------------------------------------------------------- output

struct Sink {
  std::string path;  // empty: stdout
  std::string format = "csv";

  void data(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DomainError("cannot open output file '" + path + "'");
    f << text;
  }

  // Timestamped header, kept apart from the data stream.
  void meta(const std::string& command, const json& config, const json& results) const {
    json m;
    m["command"] = command;
    m["timestamp"] = iso_timestamp();
    m["config"] = config;
    m["results"] = results;
    if (path.empty()) {
      std::cerr << m.dump() << "\n";
      return;
    }
    std::ofstream f(path + ".meta.json", std::ios::binary);
    if (!f) throw DomainError("cannot open metadata file '" + path + ".meta.json'");
    f << m.dump(2) << "\n";
  }
};

std::string json_text(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- model options

struct ModelArgs {
  std::string model;
  double A = 0.0;
  double B = 0.0;
  double lambda = 1.0;
  double alpha = 1.0;
  bool row4_compat = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--model", model, "nlo, t1r1..t1r6, t2r1..t2r6, bs-apbn, bs-anbp")->required();
    cmd->add_option("--A", A, "A");
    cmd->add_option("--B", B, "B (entering as iB in the complexified rows)");
    cmd->add_option("--lambda", lambda, "mass deformation lambda");
    cmd->add_option("--alpha", alpha, "oscillator frequency (nlo)");
    cmd->add_flag("--row4-compat,--row4_compat", row4_compat, "row-4 energy with the literal s3 reading");
  }

  ModelId id() const {
    auto id = parse_model_id(model);
    if (!id) throw ConstraintError("unknown model '" + model + "'");
    return *id;
  }
  ModelParams params() const { return ModelParams{A, B, lambda, alpha, row4_compat}; }

  json echo() const {
    return json{{"model", model}, {"A", A}, {"B", B}, {"lambda", lambda}, {"alpha", alpha}, {"row4_compat", row4_compat}};
  }
};

struct GridArgs {
  int npoints = 0;
  double sigma = 1.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--npoints", npoints, "finest grid size (0: 4001 real, 1201 complex)")->check(CLI::NonNegativeNumber);
    cmd->add_option("--sigma", sigma, "truncation length scale on infinite domains")->check(CLI::PositiveNumber);
  }
  GridOptions options() const {
    GridOptions g;
    g.npoints = npoints;
    g.sigma = sigma;
    return g;
  }
};

double rel_dev(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

int level_top(ModelId id, const ModelParams& p, int nmax) {
  auto bound = level_bound(id, p);
  return bound ? std::min(nmax, *bound) : nmax;
}

// ---------------------------------------------------------------- spectrum

struct SpectrumCmd {
  ModelArgs model;
  GridArgs grid;
  int nmax = 4;
  double tol = 1e-6;
  std::string layout = "wide";
  bool ladder = false;
  Sink sink;

  json echo() const {
    json c = model.echo();
    c["nmax"] = nmax;
    c["npoints"] = grid.npoints;
    c["sigma"] = grid.sigma;
    c["tol"] = tol;
    c["layout"] = layout;
    c["ladder"] = ladder;
    c["format"] = sink.format;
    return c;
  }

  int run() const {
    const ModelId id = model.id();
    const ModelParams p = model.params();
    check_constraints(id, p);
    const int top = level_top(id, p, nmax);

    Spectrum closed = closed_form_spectrum(id, p, top);
    Spectrum shape = is_broken_susy(id)
                         ? broken_susy_spectrum(p, id == ModelId::bs_apbn ? BrokenCase::ApBn : BrokenCase::AnBp, top)
                         : shape_invariance_spectrum(id, p, top);
    NumericalSpectrum numeric = numerical_spectrum(id, p, top + 1, grid.options());

    struct Row {
      int n;
      cplx closed, shape, numeric;
      double d_cs, d_cn, d_sn;
      std::optional<double> overlap, factorization;
    };
    std::vector<Row> rows;
    double worst = 0.0;
    for (int n = 0; n <= top; ++n) {
      Row r{n, closed.levels[n].E, shape.levels[n].E, numeric.values[n], 0, 0, 0, {}, {}};
      r.d_cs = rel_dev(r.shape, r.closed);
      r.d_cn = rel_dev(r.numeric, r.closed);
      r.d_sn = rel_dev(r.numeric, r.shape);
      worst = std::max({worst, r.d_cs, r.d_cn, r.d_sn});
      rows.push_back(r);
    }

    if (ladder) {
      if (id == ModelId::nlo || is_broken_susy(id)) throw ConstraintError("--ladder applies to the Table 1 and Table 2 rows");
      Grid g = default_grid(id, p, {susy_grid_points(id)});
      auto cells = ordered_map<std::pair<double, double>>(rows.size(), thread_cap(), [&](std::size_t n) {
        int k = static_cast<int>(n);
        LadderState ls = ladder_state(id, p, k, g);
        double ov = normalized_overlap(ls.psi, closed_form_on_grid(id, p, k, g));
        return std::pair{ov, factorization_residual(id, p, k, g)};
      });
      for (std::size_t n = 0; n < rows.size(); ++n) {
        rows[n].overlap = cells[n].first;
        rows[n].factorization = cells[n].second;
      }
    }

    std::ostringstream out;
    if (sink.format == "json") {
      json arr = json::array();
      for (const auto& r : rows) {
        json j{{"family", to_string(id)}, {"n", r.n},
               {"E_closed", jcplx(r.closed)}, {"E_shape", jcplx(r.shape)}, {"E_numeric", jcplx(r.numeric)},
               {"dev_closed_shape", jnum(r.d_cs)}, {"dev_closed_numeric", jnum(r.d_cn)}, {"dev_shape_numeric", jnum(r.d_sn)}};
        if (r.overlap) j["ladder_overlap"] = jnum(*r.overlap);
        if (r.factorization) j["factorization_residual"] = jnum(*r.factorization);
        arr.push_back(j);
      }
      out << json_text(json{{"model", model.echo()}, {"levels", arr}});
    } else if (layout == "long") {
      out << "n,E_re,E_im,provenance\n";
      for (const auto& r : rows) {
        out << r.n << ',' << num(r.closed.real()) << ',' << num(r.closed.imag()) << ",closed-form\n";
        out << r.n << ',' << num(r.shape.real()) << ',' << num(r.shape.imag()) << ",shape-invariance\n";
        out << r.n << ',' << num(r.numeric.real()) << ',' << num(r.numeric.imag()) << ",numerical\n";
      }
    } else {
      out << "n,E_closed_re,E_closed_im,E_shape_re,E_shape_im,E_numeric_re,E_numeric_im,"
             "dev_closed_shape,dev_closed_numeric,dev_shape_numeric";
      if (ladder) out << ",ladder_overlap,factorization_residual";
      out << '\n';
      for (const auto& r : rows) {
        out << r.n << ',' << num(r.closed.real()) << ',' << num(r.closed.imag()) << ',' << num(r.shape.real()) << ','
            << num(r.shape.imag()) << ',' << num(r.numeric.real()) << ',' << num(r.numeric.imag()) << ',' << num(r.d_cs)
            << ',' << num(r.d_cn) << ',' << num(r.d_sn);
        if (ladder) out << ',' << num(*r.overlap) << ',' << num(*r.factorization);
        out << '\n';
      }
    }
    sink.data(out.str());

    const bool ok = worst <= tol;
    json res{{"levels", rows.size()},
             {"level_bound", level_bound(id, p) ? json(*level_bound(id, p)) : json(nullptr)},
             {"max_deviation", jnum(worst)},
             {"grid_points", numeric.grid.npoints},
             {"passed", ok}};
    sink.meta("spectrum", echo(), res);
    return ok ? kExitPass : kExitVerify;
  }
};

// ---------------------------------------------------------------- wavefunction

struct WavefunctionCmd {
  ModelArgs model;
  GridArgs grid;
  int n = 0;
  int stride = 1;
  Sink sink;

  json echo() const {
    json c = model.echo();
    c["n"] = n;
    c["npoints"] = grid.npoints;
    c["sigma"] = grid.sigma;
    c["stride"] = stride;
    c["format"] = sink.format;
    return c;
  }

  // Physical x of a z-grid node (nlo grids are in zeta = sqrt(alpha) z).
  static double x_of(ModelId id, const ModelParams& p, double t) {
    double z = id == ModelId::nlo ? t / std::sqrt(p.alpha) : t;
    if (p.lambda < 0.0) {
      const double kz = std::clamp(p.k() * z, -std::numbers::pi / 2, std::numbers::pi / 2);
      return std::sin(kz) / p.k();
    }
    return coordinate_map_inverse(z, p.lambda);
  }

  int run() const {
    const ModelId id = model.id();
    const ModelParams p = model.params();
    check_constraints(id, p);
    check_level(id, p, n);

    Grid g = default_grid(id, p, grid.options());
    auto pairs = eigensolve(model_operator_z(id, p, g), n + 1);
    GridFunction cf = detail::normalized(closed_form_on_grid(id, p, n, g), 0.0);
    GridFunction nv = detail::phase_aligned(cf, detail::normalized(pairs[n].vector, 0.0), 0.0);
    const double overlap = normalized_overlap(cf, nv);

    std::ostringstream out;
    std::vector<int> nodes;
    for (int i = 0; i < g.npoints; i += stride) nodes.push_back(i);
    if (nodes.back() != g.npoints - 1) nodes.push_back(g.npoints - 1);
    if (sink.format == "json") {
      json rows = json::array();
      for (int i : nodes)
        rows.push_back(json{{"x", jnum(x_of(id, p, g.at(i)))}, {"psi", jcplx(cf.values[i])}, {"psi_numeric", jcplx(nv.values[i])}});
      out << json_text(json{{"model", model.echo()}, {"n", n}, {"samples", rows}});
    } else {
      out << "x,psi_re,psi_im,psi_numeric_re,psi_numeric_im\n";
      for (int i : nodes)
        out << num(x_of(id, p, g.at(i))) << ',' << num(cf.values[i].real()) << ',' << num(cf.values[i].imag()) << ','
            << num(nv.values[i].real()) << ',' << num(nv.values[i].imag()) << '\n';
    }
    sink.data(out.str());

    json res{{"overlap", jnum(overlap)}, {"E_closed", jcplx(energy_level(id, p, n))},
             {"E_numeric", jcplx(pairs[n].value)}, {"grid_points", g.npoints},
             {"normalization", "unit norm in z on the sampled grid"}};
    if (is_broken_susy(id))
      res["residual"] = jnum(broken_susy_residual(p, id == ModelId::bs_apbn ? BrokenCase::ApBn : BrokenCase::AnBp, n));
    sink.meta("wavefunction", echo(), res);
    return kExitPass;
  }
};

// ---------------------------------------------------------------- verify

struct VerifyCmd {
  std::vector<std::string> suites;
  int nmax = 12;
  double perturb = 0.0;
  Sink sink;

  json echo() const {
    return json{{"suites", suites}, {"nmax", nmax}, {"perturb", perturb}, {"threads", thread_cap()}};
  }

  int run() const {
    VerifyOptions opt;
    opt.suites = suites;
    opt.hermite_nmax = nmax;
    opt.bridge_nmax = nmax;
    opt.perturb = perturb;
    opt.threads = thread_cap();
    VerifyReport rep = run_verify(opt);

    json arr = json::array();
    json timing = json::object();
    for (const auto& s : rep.suites) {
      json checks = json::array();
      for (const auto& c : s.checks)
        checks.push_back(json{{"name", c.name}, {"value", jnum(c.value)}, {"tolerance", jnum(c.tolerance)},
                              {"passed", c.passed}, {"detail", c.detail}});
      json j{{"name", s.name}, {"passed", s.passed()}, {"checks", checks}};
      if (!s.error.empty()) j["error"] = s.error;
      arr.push_back(j);
      timing[s.name] = s.seconds;
    }
    sink.data(json_text(json{{"passed", rep.passed()}, {"suites", arr}}));
    sink.meta("verify", echo(), json{{"passed", rep.passed()}, {"seconds", rep.seconds}, {"suite_seconds", timing}});
    return rep.passed() ? kExitPass : kExitVerify;
  }
};

// ---------------------------------------------------------------- qes

struct QesCmd {
  std::string qcase = "1";
  std::string b1 = "0", b2 = "0", b3 = "0";
  double lambda = 1.0;
  int npoints = 4001;
  double half_width = 6.0;
  double tol = 1e-7;
  Sink sink;

  json echo() const {
    return json{{"case", qcase}, {"b1", b1}, {"b2", b2}, {"b3", b3}, {"lambda", lambda},
                {"npoints", npoints}, {"half_width", half_width}, {"tol", tol}};
  }

  int run() const {
    QesConfig cfg;
    cfg.qcase = parse_qes_case(qcase);
    cfg.b1 = parse_complex(b1);
    cfg.b2 = parse_complex(b2);
    cfg.b3 = parse_complex(b3);
    cfg.lambda = lambda;
    auto sols = qes_solve(cfg);
    Grid g = qes_default_grid(npoints, half_width);

    json branches = json::array();
    double worst = 0.0;
    for (const auto& s : sols) {
      double res = qes_residual(s, g, lambda);
      worst = std::max(worst, std::isfinite(res) ? res : std::numeric_limits<double>::infinity());
      QesPtReport pt = qes_pt_check(s, g);
      QesOracleReport orc = qes_symbolic_oracle(s);
      json b = json::array(), c = json::array(), recs = json::array();
      for (cplx v : s.b) b.push_back(jcplx(v));
      for (cplx v : s.c) c.push_back(jcplx(v));
      for (const auto& r : orc.records)
        recs.push_back(json{{"id", r.id}, {"printed", r.printed}, {"derived", r.derived}, {"status", r.status}, {"detail", r.detail}});
      branches.push_back(json{{"case", to_string(s.qcase)},
                              {"branch", to_string(s.branch)},
                              {"b", b},
                              {"c", c},
                              {"E", jcplx(s.E)},
                              {"a0", jcplx(s.a0)},
                              {"a1", jcplx(s.a1)},
                              {"residual", jnum(res)},
                              {"oracle_remainder", jnum(orc.remainder)},
                              {"oracle_coefficient_mismatch", jnum(orc.max_coefficient_mismatch)},
                              {"relations_confirmed", orc.relations_confirmed},
                              {"pt_symmetric", pt.pt_symmetric_potential},
                              {"pt_broken", s.pt_broken},
                              {"discrepancies", recs}});
    }
    // Top-level summary mirrors the first branch; energies list every branch.
    json report = branches.empty() ? json::object() : branches.front();
    json energies = json::array();
    for (const auto& s : sols) energies.push_back(jcplx(s.E));
    report["E"] = energies;
    report["residual"] = jnum(worst);
    report.erase("branch");
    report["branches"] = branches;
    sink.data(json_text(report));

    const bool ok = worst < tol;
    sink.meta("qes", echo(), json{{"branches", sols.size()}, {"max_residual", jnum(worst)}, {"passed", ok}});
    return ok ? kExitPass : kExitVerify;
  }
};

// ---------------------------------------------------------------- sweep

struct SweepCmd {
  double alpha = 1.0;
  std::vector<double> lambdas{1e-1, 1e-2, 1e-3, 1e-4};
  bool include_zero = false;
  int nmax = 3;
  Sink sink;

  json echo() const {
    return json{{"alpha", alpha}, {"lambdas", lambdas}, {"include_zero", include_zero}, {"nmax", nmax}, {"threads", thread_cap()}};
  }

  int run() const {
    std::vector<double> lams = lambdas;
    if (include_zero && std::find(lams.begin(), lams.end(), 0.0) == lams.end()) lams.push_back(0.0);
    if (alpha <= 0.0) throw ConstraintError("sweep needs alpha > 0");
    HarmonicLimitReport rep{alpha, nmax, {}};
    rep.rows = ordered_map<HarmonicLimitRow>(lams.size(), thread_cap(),
                                             [&](std::size_t i) { return harmonic_limit_row(alpha, lams[i], nmax); });
    assess_harmonic_limit(rep);

    std::ostringstream out;
    if (sink.format == "json") {
      json rows = json::array();
      for (const auto& r : rep.rows) {
        json e = json::array(), s = json::array(), o = json::array();
        for (double v : r.energy_deviation) e.push_back(jnum(v));
        for (double v : r.energy_shift) s.push_back(jnum(v));
        for (double v : r.overlap_deviation) o.push_back(jnum(v));
        rows.push_back(json{{"lambda", r.lambda}, {"potential_deviation", jnum(r.potential_deviation)},
                            {"energy_deviation", e}, {"energy_shift", s}, {"overlap_deviation", o},
                            {"norm0", jnum(r.norm0)}, {"norm0_deviation", jnum(r.norm0_deviation)}});
      }
      out << json_text(json{{"alpha", alpha}, {"rows", rows}});
    } else {
      out << "lambda,potential_deviation";
      for (int n = 0; n <= nmax; ++n) out << ",overlap_deviation_" << n;
      for (int n = 0; n <= nmax; ++n) out << ",energy_shift_" << n;
      for (int n = 0; n <= nmax; ++n) out << ",energy_deviation_" << n;
      out << ",norm0,norm0_deviation\n";
      for (const auto& r : rep.rows) {
        out << num(r.lambda) << ',' << num(r.potential_deviation);
        for (double v : r.overlap_deviation) out << ',' << num(v);
        for (double v : r.energy_shift) out << ',' << num(v);
        for (double v : r.energy_deviation) out << ',' << num(v);
        out << ',' << num(r.norm0) << ',' << num(r.norm0_deviation) << '\n';
      }
    }
    sink.data(out.str());
    json res{{"potential_monotone", rep.potential_monotone}, {"overlap_monotone", rep.overlap_monotone},
             {"energy_monotone", rep.energy_monotone}, {"norm_monotone", rep.norm_monotone}, {"passed", rep.monotone()}};
    sink.meta("sweep", echo(), res);
    return rep.monotone() ? kExitPass : kExitVerify;
  }
};

// ---------------------------------------------------------------- poly

struct PolyCmd {
  int n = 0;
  std::string route = "all";
  Sink sink;

  static json serialize(const BivariatePoly& p) {
    json terms = json::array();
    for (const auto& [key, coef] : p.terms())
      terms.push_back(json{{"dy", key.first}, {"dL", key.second},
                           {"num", boost::multiprecision::numerator(coef).str()},
                           {"den", boost::multiprecision::denominator(coef).str()}});
    return json{{"terms", terms}};
  }

  int run() const {
    std::vector<HermiteRoute> routes;
    if (route == "all")
      routes = {HermiteRoute::rodrigues, HermiteRoute::generating, HermiteRoute::recursion};
    else if (route == "rodrigues")
      routes = {HermiteRoute::rodrigues};
    else if (route == "generating")
      routes = {HermiteRoute::generating};
    else if (route == "recursion")
      routes = {HermiteRoute::recursion};
    else
      throw ConstraintError("unknown route '" + route + "'");

    std::vector<BivariatePoly> polys;
    json by_route = json::object();
    for (auto r : routes) {
      polys.push_back(deformed_hermite(n, r));
      by_route[to_string(r)] = serialize(polys.back());
    }
    bool agree = std::all_of(polys.begin(), polys.end(), [&](const BivariatePoly& q) { return q == polys.front(); });
    // Lambda = 0 must give the classical Hermite coefficients.
    bool classical = polys.front().at_lambda_zero() == classical_hermite(n);
    sink.data(json_text(json{{"n", n}, {"routes", by_route}, {"routes_agree", agree}, {"classical_limit", classical}}));
    sink.meta("poly", json{{"n", n}, {"route", route}}, json{{"routes_agree", agree}, {"classical_limit", classical}});
    return agree && classical ? kExitPass : kExitVerify;
  }
};

// ---------------------------------------------------------------- config file

// Flattened key/value pairs of a JSON config, nested objects merged in.
void flatten(const nlohmann::json& j, std::vector<std::pair<std::string, nlohmann::json>>& out) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.value().is_object())
      flatten(it.value(), out);
    else
      out.emplace_back(it.key(), it.value());
  }
}

std::string scalar_token(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return num(v.get<double>());
  throw ConfigError("config values must be strings, numbers, booleans or arrays of those");
}

bool flag_given(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
}

// argv with config-file options spliced in after the subcommand; flags already on
// the command line win.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  auto pos = std::find_if(args.begin(), args.end(), [](const std::string& a) { return a == "--config" || a.rfind("--config=", 0) == 0; });
  if (pos == args.end()) return args;
  std::string path;
  if (*pos == "--config") {
    if (pos + 1 == args.end()) throw ConfigError("--config needs a path");
    path = *(pos + 1);
    args.erase(pos, pos + 2);
  } else {
    path = pos->substr(9);
    args.erase(pos);
  }
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file '" + path + "'");
  nlohmann::json cfg;
  try {
    cfg = nlohmann::json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
  }
  if (!cfg.is_object()) throw ConfigError("config file must hold a JSON object");

  std::vector<std::pair<std::string, nlohmann::json>> kv;
  flatten(cfg, kv);
  std::string command;
  std::vector<std::string> extra;
  for (const auto& [key, value] : kv) {
    if (key == "command") {
      command = scalar_token(value);
      continue;
    }
    std::string flag = "--" + key;
    std::replace(flag.begin() + 2, flag.end(), '_', '-');
    if (flag_given(args, flag) || flag_given(args, "--" + key)) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) extra.push_back(flag);
    } else if (value.is_array()) {
      for (const auto& v : value) {
        extra.push_back(flag);
        extra.push_back(scalar_token(v));
      }
    } else if (!value.is_null()) {
      extra.push_back(flag);
      extra.push_back(scalar_token(value));
    }
  }
  static const std::vector<std::string> commands{"spectrum", "wavefunction", "verify", "qes", "sweep", "poly"};
  auto sub = std::find_if(args.begin() + 1, args.end(), [](const std::string& a) {
    return std::find(commands.begin(), commands.end(), a) != commands.end();
  });
  if (sub == args.end()) {
    if (command.empty()) throw ConfigError("no command given on the command line or in the config file");
    args.insert(args.begin() + 1, command);
    sub = args.begin() + 1;
  } else if (!command.empty() && command != *sub) {
    throw ConfigError("config command '" + command + "' differs from '" + *sub + "'");
  }
  args.insert(sub + 1, extra.begin(), extra.end());
  return args;
}

void attach_sink(CLI::App* cmd, Sink& sink, const char* default_format) {
  sink.format = default_format;
  cmd->add_option("--output,-o", sink.path, "data file (metadata goes to <output>.meta.json; stdout/stderr otherwise)");
  cmd->add_option("--format", sink.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  try {
    args = expand_config(args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  CLI::App app{"Position-dependent-mass oscillator toolkit", "pdmse"};
  app.require_subcommand(1);
  app.add_option("--config", "JSON config file; command-line flags override its entries");

  SpectrumCmd spectrum;
  auto* c_spec = app.add_subcommand("spectrum", "closed-form, shape-invariance and numerical energies");
  spectrum.model.attach(c_spec);
  spectrum.grid.attach(c_spec);
  c_spec->add_option("--nmax", spectrum.nmax, "highest level")->check(CLI::NonNegativeNumber);
  c_spec->add_option("--tol", spectrum.tol, "pairwise relative tolerance");
  c_spec->add_option("--layout", spectrum.layout, "wide or long CSV")->check(CLI::IsMember({"wide", "long"}));
  c_spec->add_flag("--ladder", spectrum.ladder, "add ladder overlap and factorization residual per level");
  attach_sink(c_spec, spectrum.sink, "csv");

  WavefunctionCmd wave;
  auto* c_wave = app.add_subcommand("wavefunction", "closed-form and numerical psi_n on the grid");
  wave.model.attach(c_wave);
  wave.grid.attach(c_wave);
  c_wave->add_option("--n", wave.n, "level")->check(CLI::NonNegativeNumber);
  c_wave->add_option("--stride", wave.stride, "emit every k-th node")->check(CLI::PositiveNumber);
  attach_sink(c_wave, wave.sink, "csv");

  VerifyCmd verify;
  auto* c_ver = app.add_subcommand("verify", "invariant suites");
  c_ver->add_option("--suite", verify.suites, "suite name (repeatable): " + [] {
    std::string s;
    for (const auto& n : verify_suite_names()) s += (s.empty() ? "" : ", ") + n;
    return s;
  }());
  c_ver->add_option("--nmax", verify.nmax, "highest Hermite degree")->check(CLI::Range(0, kHermiteMaxDegree));
  c_ver->add_option("--perturb", verify.perturb, "test hook: shift every reference by this relative amount");
  attach_sink(c_ver, verify.sink, "json");

  QesCmd qes;
  auto* c_qes = app.add_subcommand("qes", "quasi-exactly solvable sextic cases");
  c_qes->add_option("--case", qes.qcase, "1, 2a, 2b or 3");
  c_qes->add_option("--b1", qes.b1, "b1 (complex: 0.5, 2i, 1-0.5i)");
  c_qes->add_option("--b2", qes.b2, "b2");
  c_qes->add_option("--b3", qes.b3, "b3");
  c_qes->add_option("--lambda", qes.lambda, "lambda")->check(CLI::PositiveNumber);
  c_qes->add_option("--npoints", qes.npoints, "residual grid size")->check(CLI::Range(9, 10000001));
  c_qes->add_option("--half-width", qes.half_width, "residual grid covers |z| <= half-width")->check(CLI::PositiveNumber);
  c_qes->add_option("--tol", qes.tol, "residual tolerance");
  attach_sink(c_qes, qes.sink, "json");

  SweepCmd sweep;
  auto* c_sw = app.add_subcommand("sweep", "lambda -> 0 study of the row-1 oscillator");
  c_sw->add_option("--alpha", sweep.alpha, "alpha");
  c_sw->add_option("--lambdas", sweep.lambdas, "lambda values in sweep order")->delimiter(',');
  c_sw->add_flag("--include-zero", sweep.include_zero, "append the exact lambda = 0 row");
  c_sw->add_option("--nmax", sweep.nmax, "highest level")->check(CLI::NonNegativeNumber);
  attach_sink(c_sw, sweep.sink, "csv");

  PolyCmd poly;
  auto* c_poly = app.add_subcommand("poly", "deformed Hermite polynomials per construction route");
  c_poly->add_option("--n", poly.n, "degree")->required()->check(CLI::Range(0, kHermiteMaxDegree));
  c_poly->add_option("--route", poly.route, "rodrigues, generating, recursion or all")
      ->check(CLI::IsMember({"rodrigues", "generating", "recursion", "all"}));
  attach_sink(c_poly, poly.sink, "json");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfig;
  }

  try {
    if (*c_spec) return spectrum.run();
    if (*c_wave) return wave.run();
    if (*c_ver) return verify.run();
    if (*c_qes) return qes.run();
    if (*c_sw) return sweep.run();
    if (*c_poly) return poly.run();
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
