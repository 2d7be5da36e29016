#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "circlelab/circlelab.hpp"

namespace py = pybind11;
using namespace circlelab;

namespace {

using CArray = py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;

Signal to_signal(const CArray& a) {
  if (a.ndim() != 1) throw std::invalid_argument("signal must be one-dimensional");
  const auto* p = a.data();
  return Signal(std::vector<Complex>(p, p + a.shape(0)));
}

py::array_t<std::complex<double>> to_array(const Signal& f) {
  const std::vector<py::ssize_t> shape{static_cast<py::ssize_t>(f.modulus())};
  const std::vector<py::ssize_t> strides{static_cast<py::ssize_t>(sizeof(Complex))};
  return py::array_t<std::complex<double>>(shape, strides, f.values().data());
}

IntPolynomial poly(const std::vector<std::int64_t>& coeffs) { return IntPolynomial(coeffs); }

RealSequence to_sequence(const std::vector<Complex>& values, const std::optional<std::vector<std::int64_t>>& labels) {
  return labels ? RealSequence(values, *labels) : RealSequence(values);
}

py::dict seminorm_dict(const SeminormReport& r) {
  py::dict d;
  d["kind"] = to_string(r.kind);
  d["value"] = r.value;
  d["witness"] = r.witness;
  if (r.kind == SeminormKind::oscillation) {
    d["blocks"] = r.blocks;
    d["doubling"] = r.doubling;
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Circle-method and ergodic-average experiments on Z/QZ";

  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<OverflowError>(m, "OverflowError", PyExc_OverflowError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

  m.def("set_threads", &set_thread_count, py::arg("threads"), "Worker threads; 0 uses every core.");

  // Averages.
  m.def("kernel", [](const std::vector<std::int64_t>& c, std::int64_t N, std::int64_t Q) {
    return to_array(kernel(poly(c), IndexRange(N), Q));
  }, py::arg("coeffs"), py::arg("N"), py::arg("Q"));
  m.def("average_linear", [](const std::vector<std::int64_t>& c, std::int64_t N, const CArray& f, const std::string& path) {
    const auto mode = path == "direct" ? AveragePath::direct : path == "fft" ? AveragePath::fft : AveragePath::automatic;
    return to_array(average_linear(poly(c), IndexRange(N), to_signal(f), mode));
  }, py::arg("coeffs"), py::arg("N"), py::arg("f"), py::arg("path") = "auto");
  m.def("average_bilinear", [](const std::vector<std::int64_t>& c, std::int64_t N, const CArray& f1, const CArray& f2) {
    return to_array(average_bilinear(poly(c), IndexRange(N), to_signal(f1), to_signal(f2)));
  }, py::arg("coeffs"), py::arg("N"), py::arg("f1"), py::arg("f2"));
  m.def("maximal_function", [](const std::vector<std::int64_t>& c, const CArray& f, const std::vector<std::int64_t>& Ns) {
    std::vector<IndexRange> ranges;
    for (auto N : Ns) ranges.emplace_back(N);
    return to_array(maximal_function(poly(c), to_signal(f), ranges));
  }, py::arg("coeffs"), py::arg("f"), py::arg("Ns"));

  // Arcs and exponential sums.
  m.def("canonical_fractions", [](double n1) {
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    for (const auto& f : canonical_fractions(n1)) out.emplace_back(f.numerator(), f.denominator());
    return out;
  }, py::arg("n1"));
  m.def("weyl_sum", [](const std::vector<std::int64_t>& c, std::int64_t N, double xi) {
    return weyl_sum(poly(c), IndexRange(N), xi);
  }, py::arg("coeffs"), py::arg("N"), py::arg("xi"));
  m.def("complete_sum", [](const std::vector<std::int64_t>& c, std::int64_t a, std::int64_t q) {
    return complete_sum(poly(c), ReducedFraction(a, q));
  }, py::arg("coeffs"), py::arg("a"), py::arg("q"));
  m.def("continuous_multiplier", [](const std::vector<std::int64_t>& c, std::int64_t N, double xi, double tolerance) {
    QuadratureSpec quad;
    quad.tolerance = tolerance;
    return continuous_multiplier(poly(c), IndexRange(N), xi, quad);
  }, py::arg("coeffs"), py::arg("N"), py::arg("xi"), py::arg("tolerance") = 1e-9);
  m.def("weyl_decay_scan", [](const std::vector<std::int64_t>& c, const std::vector<std::int64_t>& Ns, double eps,
                              double bigC, std::size_t samples, std::uint64_t seed) {
    const auto r = weyl_decay_scan(poly(c), Ns, eps, bigC, samples, seed);
    py::dict d;
    d["Ns"] = r.Ns;
    d["sup_minor_abs"] = r.sup_minor_abs;
    d["argmax"] = r.argmax;
    d["c_fit"] = r.c_fit;
    d["residual"] = r.residual;
    d["fit_valid"] = r.fit_valid;
    return d;
  }, py::arg("coeffs"), py::arg("Ns"), py::arg("eps"), py::arg("bigC"), py::arg("samples"), py::arg("seed"));

  // Multipliers.
  m.def("eta", &eta, py::arg("x"));
  m.def("project", [](const CArray& f, double n1, double n2) { return to_array(project(to_signal(f), n1, n2)); },
        py::arg("f"), py::arg("n1"), py::arg("n2"));
  m.def("project_dyadic", [](const CArray& f, unsigned l, int mm) {
    return to_array(project_dyadic(to_signal(f), {l, mm}));
  }, py::arg("f"), py::arg("l"), py::arg("m"));
  m.def("lp_norm_probe", [](unsigned l, int mm, double p, std::int64_t Q, std::size_t trials, std::uint64_t seed) {
    const auto r = lp_norm_probe(dyadic_projection_op({l, mm}), p, Q, trials, seed);
    return py::make_tuple(r.lower_bound, r.kernel_l1_upper_bound);
  }, py::arg("l"), py::arg("m"), py::arg("p"), py::arg("Q"), py::arg("trials"), py::arg("seed"));
  m.def("arc_split", [](const CArray& f, const std::vector<std::int64_t>& c, std::int64_t N, std::int64_t C0,
                        double alpha, bool desk_scale) {
    const auto P = poly(c);
    auto cfg = PipelineConfig::defaults(P.degree());
    cfg.C0 = C0;
    if (alpha > 0.0) cfg.alpha = alpha;
    cfg.desk_scale = desk_scale;
    const auto s = arc_split(to_signal(f), P, IndexRange(N), cfg);
    py::dict d;
    d["major"] = to_array(s.major_out);
    d["minor"] = to_array(s.minor_out);
    d["l_N"] = s.report.l_N;
    d["L_N"] = s.report.L_N;
    d["minor_l2_ratio"] = s.report.minor_l2_ratio;
    d["additivity_error"] = s.report.additivity_error;
    return d;
  }, py::arg("f"), py::arg("coeffs"), py::arg("N"), py::arg("C0") = std::int64_t{1} << 20, py::arg("alpha") = 0.0,
     py::arg("desk_scale") = false);

  // Seminorms.
  m.def("variation", [](const std::vector<Complex>& v, double r, std::optional<std::vector<std::int64_t>> labels) {
    return seminorm_dict(variation(to_sequence(v, labels), r));
  }, py::arg("values"), py::arg("r"), py::arg("labels") = py::none());
  m.def("jump_count", [](const std::vector<Complex>& v, double lambda, std::optional<std::vector<std::int64_t>> labels) {
    return seminorm_dict(jump_count(to_sequence(v, labels), lambda));
  }, py::arg("values"), py::arg("lam"), py::arg("labels") = py::none());
  m.def("oscillation", [](const std::vector<Complex>& v, const std::vector<std::int64_t>& I, double r,
                          std::optional<std::vector<std::int64_t>> labels) {
    return seminorm_dict(oscillation(to_sequence(v, labels), I, r));
  }, py::arg("values"), py::arg("anchors"), py::arg("r"), py::arg("labels") = py::none());
  m.def("lacunary", &lacunary, py::arg("tau"), py::arg("bound"));
  m.def("lepingle_stat", [](double p, double r, unsigned K, std::size_t trials, std::uint64_t seed) {
    const auto s = lepingle_stat(p, r, K, trials, seed);
    py::dict d;
    d["max_ratio"] = s.max_ratio;
    d["mean_ratio"] = s.mean_ratio;
    d["quantiles"] = s.quantiles;
    d["bound_asserted"] = s.bound_asserted;
    d["label"] = s.label;
    return d;
  }, py::arg("p"), py::arg("r"), py::arg("K"), py::arg("trials"), py::arg("seed"));

  // Ergodic averages.
  m.def("average_series", [](std::int64_t Q, std::int64_t s, const std::vector<std::int64_t>& c, const CArray& f,
                             const std::vector<std::int64_t>& Ns, std::int64_t start) {
    const auto series = average_series(FiniteSystem(Q, s), poly(c), to_signal(f), Ns, start);
    py::array_t<std::complex<double>> out({static_cast<py::ssize_t>(Ns.size()), static_cast<py::ssize_t>(Q)});
    auto* dst = out.mutable_data();
    for (const auto& A : series.averages) dst = std::copy(A.values().begin(), A.values().end(), dst);
    return out;
  }, py::arg("Q"), py::arg("s"), py::arg("coeffs"), py::arg("f"), py::arg("Ns"), py::arg("start") = 0);
  m.def("discrepancy", [](const std::vector<std::int64_t>& c, double theta, const std::vector<std::int64_t>& Ns) {
    return discrepancy(poly(c), theta, Ns).entries;
  }, py::arg("coeffs"), py::arg("theta"), py::arg("Ns"));
  m.def("mean_ergodic_check", [](std::int64_t Q, std::int64_t s, const CArray& f, const std::vector<std::int64_t>& Ns) {
    return mean_ergodic_check(FiniteSystem(Q, s), to_signal(f), Ns).deviation;
  }, py::arg("Q"), py::arg("s"), py::arg("f"), py::arg("Ns"));
}
