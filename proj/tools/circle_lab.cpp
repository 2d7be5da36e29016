// circle-lab: command-line front end for every scan and check in circlelab.
//
// Each subcommand produces a summary object and, optionally, a table. JSON
// output carries both plus the schema tag and the fully resolved option set.
// CSV output writes the table; the summary then goes to <out>.json, or to
// stderr when writing to stdout.

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <functional>
#include <iostream>
#include <map>
#include <random>

#include "circlelab/circlelab.hpp"

using json = nlohmann::ordered_json;
using namespace circlelab;

namespace {

constexpr const char* kSchema = "circle-lab/1";

struct Report {
  json summary = json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
  bool ok = true;  // false makes the process exit with status 1
};

struct Globals {
  std::string format = "json";
  std::string out;
  unsigned threads = 0;
  bool timestamp = false;
};

json scalar(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  std::int64_t i = 0;
  auto [pi, ei] = std::from_chars(s.data(), s.data() + s.size(), i);
  if (ei == std::errc() && pi == s.data() + s.size()) return i;
  double d = 0.0;
  auto [pd, ed] = std::from_chars(s.data(), s.data() + s.size(), d);
  if (ed == std::errc() && pd == s.data() + s.size()) return d;
  return s;
}

// Every option of a subcommand with the value it resolved to.
json resolved_options(const CLI::App* app) {
  json cfg = json::object();
  for (const CLI::Option* opt : app->get_options()) {
    if (opt->get_lnames().empty() || opt->get_lnames()[0] == "help") continue;
    const std::string& key = opt->get_lnames()[0];
    if (opt->get_expected_max() == 0) {
      cfg[key] = opt->count() > 0;
      continue;
    }
    std::vector<std::string> values = opt->results();
    if (values.empty() && !opt->get_default_str().empty()) values = {opt->get_default_str()};
    if (opt->get_expected_max() > 1) {
      json arr = json::array();
      for (const auto& v : values) {
        // Comma-delimited lists arrive either split or whole.
        std::stringstream ss(v);
        std::string item;
        while (std::getline(ss, item, ',')) arr.push_back(scalar(item));
      }
      cfg[key] = arr;
    } else {
      cfg[key] = values.empty() ? json(nullptr) : scalar(values.front());
    }
  }
  return cfg;
}

std::string csv_cell(const json& v) {
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    return s.find(',') == std::string::npos ? s : "\"" + s + "\"";
  }
  return v.dump();
}

json table_json(const Report& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < r.columns.size(); ++i) obj[r.columns[i]] = row[i];
    rows.push_back(obj);
  }
  return rows;
}

void emit(const Globals& g, const std::string& command, const json& config, const Report& r) {
  json doc = json::object();
  doc["schema"] = kSchema;
  doc["command"] = command;
  doc["config"] = config;
  if (g.timestamp) {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    doc["timestamp"] = buf;
  }
  doc["summary"] = r.summary;
  const bool csv = g.format == "csv" && !r.columns.empty();
  if (!csv) {
    if (!r.columns.empty()) doc["table"] = table_json(r);
    const std::string text = doc.dump(2) + "\n";
    if (g.out.empty()) std::cout << text;
    else write_file(g.out, text);
    return;
  }
  std::string text;
  for (std::size_t i = 0; i < r.columns.size(); ++i) text += (i ? "," : "") + r.columns[i];
  text += "\n";
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) text += (i ? "," : "") + csv_cell(row[i]);
    text += "\n";
  }
  const std::string meta = doc.dump(2) + "\n";
  if (g.out.empty()) {
    std::cout << text;
    std::cerr << meta;
  } else {
    write_file(g.out, text);
    write_file(g.out + ".json", meta);
  }
}

std::vector<std::int64_t> doubling_range(std::int64_t lo, std::int64_t hi) {
  require(lo >= 1 && lo <= hi, "N range: need 1 <= nmin <= nmax");
  std::vector<std::int64_t> Ns;
  for (std::int64_t N = lo; N <= hi; N *= 2) Ns.push_back(N);
  return Ns;
}

Signal load_signal(const std::string& path) {
  const auto text = read_file(path);
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") return signal_from_csv(text);
  return signal_from_json(text);
}

Signal input_or_gaussian(const std::string& path, std::int64_t Q, std::uint64_t seed) {
  if (!path.empty()) return load_signal(path);
  require(Q >= 1, "signal: modulus q must be >= 1");
  return Signal::gaussian(Q, seed);
}

RealSequence load_sequence(const std::string& path, const std::vector<double>& values) {
  require(path.empty() != values.empty(), "sequence: give exactly one of --input or --values");
  if (!path.empty()) return sequence_from_csv(read_file(path));
  return RealSequence::from_real(values);
}

json seminorm_json(const SeminormReport& r) {
  json j = json::object();
  j["kind"] = to_string(r.kind);
  j["value"] = r.value;
  j["witness"] = r.witness;
  if (r.kind == SeminormKind::variation || r.kind == SeminormKind::oscillation) {
    j["r"] = std::isinf(r.r) ? json("inf") : json(r.r);
  }
  if (r.kind == SeminormKind::jump) j["lambda"] = r.lambda;
  if (r.kind == SeminormKind::oscillation) {
    j["blocks"] = r.blocks;
    j["doubling"] = r.doubling;
  }
  return j;
}

double parse_r(const std::string& s) {
  if (s == "inf" || s == "infinity") return kInfinity;
  const json v = scalar(s);
  require(v.is_number(), "r must be a number or 'inf'");
  return v.get<double>();
}

// Command registry: each entry adds its options and returns a runner.
using Runner = std::function<Report()>;
struct Command {
  CLI::App* app;
  Runner run;
};

Report selftest() {
  Report rep;
  rep.columns = {"check", "pass", "detail"};
  auto add = [&](const std::string& name, bool pass, const std::string& detail) {
    rep.rows.push_back({name, pass, detail});
    rep.ok = rep.ok && pass;
  };
  {
    std::int64_t expected = 1, bad = 0;
    for (std::int64_t N = 1; N <= 60; ++N) {
      if (N >= 2) {
        std::int64_t phi = 0;
        for (std::int64_t a = 1; a <= N; ++a) phi += gcd(a, N) == 1;
        expected += phi;
      }
      bad += static_cast<std::int64_t>(canonical_fractions(static_cast<double>(N)).size()) != expected;
    }
    add("farey-count", bad == 0, std::to_string(bad) + " mismatches for N <= 60");
  }
  {
    double worst = 0.0;
    for (std::int64_t p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31}) {
      for (std::int64_t a = 1; a < p; ++a) {
        const double g = std::abs(complete_sum(IntPolynomial::monomial(2), ReducedFraction(a, p)));
        worst = std::max(worst, std::abs(g - 1.0 / std::sqrt(static_cast<double>(p))));
      }
    }
    add("gauss-sums", worst <= 1e-9, "max error " + format_double(worst));
  }
  {
    std::mt19937_64 rng(1);
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
      const auto f = Signal::gaussian(257, rng());
      const IndexRange N(static_cast<std::int64_t>(rng() % 500) + 1);
      const auto P = IntPolynomial::monomial(static_cast<unsigned>(t % 3) + 1);
      const auto a = average_linear(P, N, f, AveragePath::direct);
      const auto b = average_linear(P, N, f, AveragePath::fft);
      worst = std::max(worst, max_abs_diff(a, b) / a.norm_linf());
    }
    add("fft-vs-direct", worst <= 1e-9, "max relative error " + format_double(worst));
  }
  {
    const auto v = variation(RealSequence::from_real({0.0, 0.5, 1.0}), 2.0);
    const auto j = jump_count(RealSequence::from_real({0.5, 0.0, 1.0}), 1.0);
    const bool ok = std::abs(v.value - 1.0) <= 1e-15 && j.value == 1.0 && j.witness == std::vector<std::int64_t>{1, 2};
    add("seminorm-examples", ok, "V^2 = " + format_double(v.value) + ", N_1 = " + format_double(j.value));
  }
  {
    const auto f = Signal::gaussian(512, 2);
    const auto g = Signal::gaussian(512, 3);
    const auto pf = project_dyadic(f, {2, -6});
    const auto pg = project_dyadic(g, {2, -6});
    const double adj = std::abs(inner(pf, g) - inner(f, pg)) / (f.norm_l2() * g.norm_l2());
    add("projection-adjoint", adj <= 1e-10, "relative asymmetry " + format_double(adj));
  }
  {
    std::vector<Complex> v(30);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>((i * 7) % 11);
    const Signal f(v);
    const auto s = average_series(FiniteSystem(30, 7), IntPolynomial::monomial(1), f, {30, 90});
    bool exact = true;
    for (const auto& A : s.averages) {
      for (const auto& y : A.values()) exact = exact && y == f.mean();
    }
    add("ergodic-exact", exact, "A_kQ f equals the mean bitwise");
  }
  {
    const auto d = discrepancy(IntPolynomial::monomial(1), std::sqrt(2.0), {100, 10000});
    const bool ok = d.entries[1].second <= 0.01 && d.entries[1].second <= d.entries[0].second / 5;
    add("discrepancy", ok, "D_10000 = " + format_double(d.entries[1].second));
  }
  std::size_t passed = 0;
  for (const auto& row : rep.rows) passed += row[1].get<bool>();
  rep.summary["passed"] = passed;
  rep.summary["total"] = rep.rows.size();
  return rep;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"circle-lab: circle-method, multiplier, seminorm and ergodic-average experiments"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);
  app.option_defaults()->always_capture_default();
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", g.out, "Output path (default stdout)");
  app.add_option("--threads", g.threads, "Worker threads, 0 = all cores (CIRCLE_LAB_THREADS overrides)");
  app.add_flag("--timestamp", g.timestamp, "Embed a UTC timestamp in the JSON report");

  std::map<std::string, Command> commands;
  auto sub = [&](const std::string& name, const std::string& help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->option_defaults()->always_capture_default();
    return s;
  };

  // Shared option storage. Each subcommand reads only its own fields.
  std::string poly = "0,0,1";
  double n1 = 4, n2 = 0.01, eps = 0.125, bigc = 1.0, theta = 0.0, tol = 1e-9;
  std::int64_t nmin = 64, nmax = 4096, q = 1024, seed = 1, samples = 2000, n = 64, a = -1, maxpanels = std::int64_t{1} << 22;
  std::int64_t fixed_n1 = 0;
  double fixed_h = 0.0;
  std::vector<double> xis, values, ps;
  std::vector<std::int64_t> Ns, ls, anchors;
  unsigned lmax = 4, K = 10;
  int m = -10, iterations = 25, depth = 3;
  std::size_t trials = 8;
  std::string r_text = "2", input;
  double p = 4.0, lambda = 1.0, tau = 2.0, alpha = 0.0;
  std::int64_t c0 = 0, p0 = 4, s = 1, start = 0, tail_start = 1;
  bool desk = false;

  {
    auto* c = sub("fractions", "Canonical fractions a/q with q <= n1");
    c->add_option("--n1", n1, "Denominator bound")->required();
    commands["fractions"] = {c, [&] {
      Report r;
      const auto fr = canonical_fractions(n1);
      r.summary["count"] = fr.size();
      json list = json::array();
      for (const auto& f : fr) list.push_back(f.to_string());
      r.summary["fractions"] = list;
      r.columns = {"a", "q", "value"};
      for (const auto& f : fr) r.rows.push_back({f.numerator(), f.denominator(), f.value()});
      return r;
    }};
  }
  {
    auto* c = sub("arcs", "Major arc system around canonical fractions; optional classification of points");
    c->add_option("--n1", n1, "Denominator bound");
    c->add_option("--n2", n2, "Arc halfwidth");
    c->add_option("--xi", xis, "Points to classify")->delimiter(',');
    commands["arcs"] = {c, [&] {
      Report r;
      const ArcSystem arcs(n1, n2);
      r.summary["centers"] = arcs.centers().size();
      r.summary["disjoint"] = arcs.disjoint();
      r.summary["coverage"] = arcs.coverage();
      if (xis.empty()) {
        r.columns = {"center", "lo", "hi"};
        for (const auto& f : arcs.centers()) r.rows.push_back({f.to_string(), f.value() - n2, f.value() + n2});
      } else {
        r.columns = {"xi", "major", "nearest", "distance"};
        for (double x : xis) {
          const auto cl = classify(TorusPoint(x), arcs);
          r.rows.push_back({x, cl.is_major, cl.nearest.to_string(), cl.distance});
        }
      }
      return r;
    }};
  }
  {
    auto* c = sub("weyl-scan", "Sampled sup of |m_N| over minor arcs for doubling N, with a log-log fit");
    c->add_option("--poly", poly, "Coefficients, constant term first");
    c->add_option("--nmin", nmin);
    c->add_option("--nmax", nmax);
    c->add_option("--eps", eps, "Arc exponent: q <= C N^eps, halfwidth C N^(eps - d)");
    c->add_option("--bigc", bigc, "Arc constant C");
    c->add_option("--samples", samples, "Minor samples per N");
    c->add_option("--seed", seed);
    c->add_option("--fixed-n1", fixed_n1, "Hold arcs fixed: denominator bound (0 = scale with N)");
    c->add_option("--fixed-halfwidth", fixed_h, "Hold arcs fixed: halfwidth");
    commands["weyl-scan"] = {c, [&] {
      Report r;
      const auto P = IntPolynomial::parse(poly);
      require(samples >= 1, "weyl-scan: samples must be >= 1");
      const auto Ns2 = doubling_range(nmin, nmax);
      DecayScanReport scan;
      if (fixed_n1 > 0) {
        require(fixed_h > 0.0, "weyl-scan: --fixed-halfwidth must be > 0 with --fixed-n1");
        scan = weyl_decay_scan(P, Ns2, ArcSystem(static_cast<double>(fixed_n1), fixed_h),
                               static_cast<std::size_t>(samples), static_cast<std::uint64_t>(seed));
      } else {
        scan = weyl_decay_scan(P, Ns2, eps, bigc, static_cast<std::size_t>(samples), static_cast<std::uint64_t>(seed));
      }
      r.summary["c_fit"] = scan.c_fit;
      r.summary["fit_residual"] = scan.residual;
      r.summary["fit_valid"] = scan.fit_valid;
      r.columns = {"N", "sup_minor_abs", "argmax"};
      for (std::size_t i = 0; i < scan.Ns.size(); ++i) r.rows.push_back({scan.Ns[i], scan.sup_minor_abs[i], scan.argmax[i]});
      return r;
    }};
  }
  {
    auto* c = sub("gauss", "Complete sums G(a/q) = E_{n in [q]} e(a P(n) / q)");
    c->add_option("--poly", poly);
    c->add_option("--q", q, "Denominator")->required();
    c->add_option("--a", a, "Numerator (-1 = every a coprime to q)");
    commands["gauss"] = {c, [&] {
      Report r;
      const auto P = IntPolynomial::parse(poly);
      require(q >= 1, "gauss: q must be >= 1");
      r.columns = {"a", "q", "re", "im", "abs"};
      double lo = kInfinity, hi = 0.0;
      for (std::int64_t k = 0; k < q; ++k) {
        if ((a >= 0 && k != a) || gcd(k, q) != 1) continue;
        const auto G = complete_sum(P, ReducedFraction(k, q));
        lo = std::min(lo, std::abs(G));
        hi = std::max(hi, std::abs(G));
        r.rows.push_back({k, q, G.real(), G.imag(), std::abs(G)});
      }
      require(!r.rows.empty(), "gauss: a must lie in [0, q) and be coprime to q");
      r.summary["count"] = r.rows.size();
      r.summary["min_abs"] = lo;
      r.summary["max_abs"] = hi;
      return r;
    }};
  }
  {
    auto* c = sub("mfrak", "Continuous multiplier integral_0^1 e(xi P(N t)) dt beside the discrete m_N");
    c->add_option("--poly", poly);
    c->add_option("--n", n, "N");
    c->add_option("--xi", xis, "Frequencies")->delimiter(',')->required();
    c->add_option("--tolerance", tol, "Panel-doubling tolerance");
    c->add_option("--max-panels", maxpanels);
    commands["mfrak"] = {c, [&] {
      Report r;
      const auto P = IntPolynomial::parse(poly);
      const IndexRange N(n);
      QuadratureSpec quad;
      quad.tolerance = tol;
      quad.max_panels = maxpanels;
      r.columns = {"xi", "re", "im", "abs", "error_estimate", "panels", "m_N_re", "m_N_im"};
      for (double x : xis) {
        const auto res = continuous_multiplier_detail(P, N, x, quad);
        const auto w = weyl_sum(P, N, x);
        r.rows.push_back({x, res.value.real(), res.value.imag(), std::abs(res.value), res.error_estimate, res.panels,
                          w.real(), w.imag()});
      }
      r.summary["count"] = r.rows.size();
      return r;
    }};
  }
  {
    auto* c = sub("lemma1", "Residual |m_N(xi) - G(theta) mfrak_N(xi - theta)| against its bound");
    c->add_option("--poly", poly);
    c->add_option("--nmin", nmin);
    c->add_option("--nmax", nmax);
    c->add_option("--lmax", lmax, "Largest shell index l");
    c->add_option("--samples", samples, "Pairs per (N, l) cell");
    c->add_option("--seed", seed);
    commands["lemma1"] = {c, [&] {
      Report r;
      require(samples >= 1, "lemma1: samples must be >= 1");
      const auto scan = lemma1_scan(IntPolynomial::parse(poly), doubling_range(nmin, nmax), lmax,
                                    static_cast<std::size_t>(samples), static_cast<std::uint64_t>(seed));
      json per = json::array();
      for (std::size_t i = 0; i < scan.Ns.size(); ++i) per.push_back({{"N", scan.Ns[i]}, {"max_ratio", scan.max_ratio_per_N[i]}});
      r.summary["max_ratio_per_N"] = per;
      r.summary["max_doubling_change"] = scan.max_doubling_change;
      r.columns = {"N", "l", "M", "max_ratio", "max_residual"};
      for (const auto& cell : scan.cells) r.rows.push_back({cell.N, cell.l, cell.M, cell.max_ratio, cell.max_residual});
      return r;
    }};
  }
  {
    auto* c = sub("project", "Apply the smooth major-arc projection Pi[<= n1, <= n2]");
    c->add_option("--n1", n1, "Denominator bound");
    c->add_option("--n2", n2, "Arc scale");
    c->add_option("--q", q, "Modulus of the random input");
    c->add_option("--seed", seed);
    c->add_option("--input", input, "Signal file (.json or .csv); default a seeded Gaussian");
    commands["project"] = {c, [&] {
      Report r;
      const auto f = input_or_gaussian(input, q, static_cast<std::uint64_t>(seed));
      const auto pf = project(f, n1, n2);
      r.summary["modulus"] = f.modulus();
      r.summary["input_l2"] = f.norm_l2();
      r.summary["output_l2"] = pf.norm_l2();
      r.columns = {"index", "re", "im"};
      for (std::int64_t x = 0; x < pf.modulus(); ++x) r.rows.push_back({x, pf[x].real(), pf[x].imag()});
      return r;
    }};
  }
  {
    auto* c = sub("remark2", "Projection properties per dyadic scale: adjointness, support, reproduction, contraction");
    c->add_option("--q", q, "Modulus");
    c->add_option("--lmax", lmax);
    c->add_option("--depth", depth, "Scales m = -2l-2 down to -2l-1-depth");
    c->add_option("--seed", seed);
    commands["remark2"] = {c, [&] {
      Report r;
      require(q >= 1, "remark2: q must be >= 1");
      require(depth >= 1, "remark2: depth must be >= 1");
      std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
      std::normal_distribution<double> gauss;
      r.columns = {"l", "m", "adjoint", "support", "reproduction", "contraction"};
      double worst = 0.0;
      for (unsigned l = 0; l <= lmax; ++l) {
        for (int k = 0; k < depth; ++k) {
          const int mm = -2 * static_cast<int>(l) - 2 - k;
          const auto arcs = dyadic_arcs({l, mm});
          const auto deep = dyadic_arcs({l, mm - 2});
          const auto f = Signal::gaussian(q, rng());
          const auto h = Signal::gaussian(q, rng());
          const auto pf = project_dyadic(f, {l, mm});
          const auto ph = project_dyadic(h, {l, mm});
          const double adj = std::abs(inner(pf, h) - inner(f, ph)) / (f.norm_l2() * h.norm_l2());
          const auto coeffs = fourier_forward(pf);
          std::vector<Complex> inside(static_cast<std::size_t>(q));
          double supp = 0.0;
          for (std::int64_t j = 0; j < q; ++j) {
            const double x = grid_frequency(j, q);
            if (!arcs.cumulative.contains(x)) supp = std::max(supp, std::abs(coeffs[static_cast<std::size_t>(j)]));
            if (deep.cumulative.contains(x)) inside[static_cast<std::size_t>(j)] = Complex(gauss(rng), gauss(rng));
          }
          const auto u = fourier_inverse(inside);
          const double repro = max_abs_diff(project_dyadic(u, {l, mm}), u);
          const double contr = std::max(0.0, pf.norm_l2() / f.norm_l2() - 1.0);
          worst = std::max({worst, adj, supp, repro, contr});
          r.rows.push_back({l, mm, adj, supp, repro, contr});
        }
      }
      r.summary["max_violation"] = worst;
      r.summary["tolerance"] = 1e-10;
      r.summary["pass"] = worst <= 1e-10;
      r.ok = worst <= 1e-10;
      return r;
    }};
  }
  {
    auto* c = sub("split", "Major/minor decomposition A_N = A_N Pi + A_N (1 - Pi) at the pipeline scales");
    c->add_option("--poly", poly);
    c->add_option("--q", q, "Modulus of the random input");
    c->add_option("--n", Ns, "Values of N")->delimiter(',')->required();
    c->add_option("--seed", seed);
    c->add_option("--input", input, "Signal file (.json or .csv)");
    c->add_option("--alpha", alpha, "l_N = floor(alpha log2 N); 0 = default");
    c->add_option("--c0", c0, "Smallest admissible N; 0 = default");
    c->add_option("--p0", p0, "Even exponent p0");
    c->add_option("--tau", tau, "Lacunarity");
    c->add_flag("--desk-scale", desk, "Allow alpha in (0, 1)");
    c->add_option("--p", ps, "Exponents for minor l^p ratios")->delimiter(',');
    commands["split"] = {c, [&] {
      Report r;
      const auto P = IntPolynomial::parse(poly);
      const auto f = input_or_gaussian(input, q, static_cast<std::uint64_t>(seed));
      auto cfg = PipelineConfig::defaults(P.degree());
      if (alpha > 0.0) cfg.alpha = alpha;
      if (c0 > 0) cfg.C0 = c0;
      cfg.p0 = static_cast<int>(p0);
      cfg.tau = tau;
      cfg.desk_scale = desk;
      cfg.validate();
      r.summary["pipeline"] = {{"alpha", cfg.alpha}, {"C0", cfg.C0}, {"p0", cfg.p0}, {"d", cfg.d}, {"tau", cfg.tau},
                               {"desk_scale", cfg.desk_scale}};
      const auto plist = ps.empty() ? std::vector<double>{4.0} : ps;
      r.columns = {"N", "l_N", "L_N", "m", "minor_l2_ratio"};
      for (double pp : plist) r.columns.push_back("minor_l" + format_double(pp) + "_ratio");
      r.columns.push_back("additivity_error");
      for (auto N : Ns) {
        const auto sp = arc_split(f, P, IndexRange(N), cfg, plist);
        std::vector<json> row{N, sp.report.l_N, sp.report.L_N, sp.report.m, sp.report.minor_l2_ratio};
        for (const auto& pr : sp.report.minor_lp_ratios) row.push_back(pr.second);
        row.push_back(sp.report.additivity_error);
        r.rows.push_back(row);
      }
      return r;
    }};
  }
  {
    auto* c = sub("probe-lp", "Randomized lower bound for the l^p norm of Pi_{<=l,<=m}, with upper bounds");
    c->add_option("--q", q, "Modulus");
    c->add_option("--l", ls, "Shell indices l")->delimiter(',')->required();
    c->add_option("--m", m, "Arc exponent m (halfwidth 2^m)");
    c->add_option("--p", p, "Exponent");
    c->add_option("--trials", trials, "Random starts");
    c->add_option("--iterations", iterations, "Dual ascent steps per start");
    c->add_option("--seed", seed);
    commands["probe-lp"] = {c, [&] {
      Report r;
      r.columns = {"l", "m", "lower_bound", "kernel_l1_upper_bound", "crude_bound"};
      for (std::size_t i = 0; i < ls.size(); ++i) {
        require(ls[i] >= 0, "probe-lp: l must be >= 0");
        const DyadicScale scale{static_cast<unsigned>(ls[i]), m};
        const auto res = lp_norm_probe(dyadic_projection_op(scale), p, q, trials, substream_seed(static_cast<std::uint64_t>(seed), i),
                                       iterations);
        r.rows.push_back({ls[i], m, res.lower_bound, res.kernel_l1_upper_bound, crude_projection_bound(scale, q)});
      }
      return r;
    }};
  }
  auto sequence_options = [&](CLI::App* c) {
    c->add_option("--input", input, "CSV with rows label,re[,im]");
    c->add_option("--values", values, "Inline real values, labels 0..n-1")->delimiter(',');
  };
  {
    auto* c = sub("variation", "r-variation V^r with a maximizing chain");
    sequence_options(c);
    c->add_option("--r", r_text, "Exponent r >= 1 or 'inf'");
    commands["variation"] = {c, [&] {
      Report r;
      r.summary = seminorm_json(variation(load_sequence(input, values), parse_r(r_text)));
      return r;
    }};
  }
  {
    auto* c = sub("jumps", "lambda-jump count with a maximizing chain");
    sequence_options(c);
    c->add_option("--lambda", lambda, "Jump size");
    commands["jumps"] = {c, [&] {
      Report r;
      r.summary = seminorm_json(jump_count(load_sequence(input, values), lambda));
      return r;
    }};
  }
  {
    auto* c = sub("oscillation", "Oscillation seminorm over anchor labels");
    sequence_options(c);
    c->add_option("--anchors", anchors, "Increasing anchor labels I_0 < ... < I_J")->delimiter(',')->required();
    c->add_option("--r", r_text, "Exponent r >= 1 or 'inf'");
    commands["oscillation"] = {c, [&] {
      Report r;
      r.summary = seminorm_json(oscillation(load_sequence(input, values), anchors, parse_r(r_text)));
      return r;
    }};
  }
  {
    auto* c = sub("lepingle", "Dyadic martingale r-variation ratio over Gaussian trials");
    c->add_option("--p", p, "Exponent p");
    c->add_option("--r", r_text, "Variation exponent r");
    c->add_option("--k", K, "Depth: modulus 2^K");
    c->add_option("--trials", trials);
    c->add_option("--seed", seed);
    commands["lepingle"] = {c, [&] {
      Report r;
      const auto st = lepingle_stat(p, parse_r(r_text), K, trials, static_cast<std::uint64_t>(seed));
      r.summary["max_ratio"] = st.max_ratio;
      r.summary["mean_ratio"] = st.mean_ratio;
      json qs = json::object();
      for (const auto& [qq, v] : st.quantiles) qs[format_double(qq)] = v;
      r.summary["quantiles"] = qs;
      r.summary["bound_asserted"] = st.bound_asserted;
      r.summary["label"] = st.label;
      return r;
    }};
  }
  {
    auto* c = sub("ergodic", "Polynomial ergodic averages on Z/qZ along a lacunary set, with convergence diagnostics");
    c->add_option("--q", q, "Modulus");
    c->add_option("--s", s, "Shift: T x = x - s");
    c->add_option("--poly", poly);
    c->add_option("--tau", tau, "Lacunarity of the N set");
    c->add_option("--nmax", nmax, "Largest N");
    c->add_option("--start", start, "Averages run over n in (start, N]");
    c->add_option("--r", r_text, "Variation exponent");
    c->add_option("--tail-start", tail_start, "Tail window start");
    c->add_option("--seed", seed);
    c->add_option("--input", input, "Signal file (.json or .csv)");
    commands["ergodic"] = {c, [&] {
      Report r;
      const auto P = IntPolynomial::parse(poly);
      const auto f = input_or_gaussian(input, q, static_cast<std::uint64_t>(seed));
      const FiniteSystem sys(f.modulus(), s);
      std::vector<std::int64_t> Ds;
      for (auto N : lacunary(tau, nmax)) {
        if (N > start) Ds.push_back(N);
      }
      require(!Ds.empty(), "ergodic: no N in the lacunary set exceeds --start");
      const auto series = average_series(sys, P, f, Ds, start);
      const auto diag = convergence_diagnostic(series, parse_r(r_text), tail_start);
      const auto me = mean_ergodic_check(sys, f, Ds, P);
      r.summary["ergodic"] = sys.ergodic();
      r.summary["oscillation_blocks"] = diag.oscillation_blocks;
      r.summary["variation"] = {{"sup", diag.variation_sup}, {"l2", diag.variation_l2}};
      r.summary["oscillation"] = {{"sup", diag.oscillation_sup}, {"l2", diag.oscillation_l2}};
      r.summary["tail_width"] = {{"sup", diag.tail_width_sup}, {"l2", diag.tail_width_l2}};
      r.columns = {"N", "mean_ergodic_deviation"};
      for (std::size_t i = 0; i < me.Ns.size(); ++i) r.rows.push_back({me.Ns[i], me.deviation[i]});
      return r;
    }};
  }
  {
    auto* c = sub("discrepancy", "Star discrepancy of theta P(n) mod 1");
    c->add_option("--poly", poly);
    c->add_option("--theta", theta)->required();
    c->add_option("--n", Ns, "Values of N")->delimiter(',')->required();
    commands["discrepancy"] = {c, [&] {
      Report r;
      const auto rep = discrepancy(IntPolynomial::parse(poly), theta, Ns);
      r.columns = {"N", "star_discrepancy"};
      for (const auto& [N, D] : rep.entries) r.rows.push_back({N, D});
      return r;
    }};
  }
  {
    auto* c = sub("selftest", "Fast built-in consistency checks");
    commands["selftest"] = {c, selftest};
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  unsigned threads = g.threads;
  if (const char* env = std::getenv("CIRCLE_LAB_THREADS")) {
    const json v = scalar(env);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
      std::cerr << "error: CIRCLE_LAB_THREADS must be a nonnegative integer\n";
      return 2;
    }
    threads = static_cast<unsigned>(v.get<std::int64_t>());
  }
  set_thread_count(threads);

  for (auto& [name, cmd] : commands) {
    if (!cmd.app->parsed()) continue;
    try {
      json config = resolved_options(&app);
      config.erase("threads");
      config["threads"] = thread_count();
      config["options"] = resolved_options(cmd.app);
      const Report rep = cmd.run();
      emit(g, name, config, rep);
      return rep.ok ? 0 : 1;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 3;
    }
  }
  return 2;
}
