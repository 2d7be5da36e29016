#include "circlelab/polyavg.hpp"

#include <algorithm>
#include <cmath>

#include "circlelab/fourier.hpp"

namespace circlelab {

namespace {

std::vector<std::int64_t> residues(const IntPolynomial& P, std::int64_t N, std::int64_t Q) {
  std::vector<std::int64_t> r(static_cast<std::size_t>(N));
  for (std::int64_t n = 1; n <= N; ++n) r[static_cast<std::size_t>(n - 1)] = P.eval_mod(n, Q);
  return r;
}

Signal average_direct(const IntPolynomial& P, std::int64_t N, const Signal& f) {
  const std::int64_t Q = f.modulus();
  const auto shifts = residues(P, N, Q);
  std::vector<Complex> out(static_cast<std::size_t>(Q));
  for (std::int64_t x = 0; x < Q; ++x) {
    Complex acc{};
    for (std::int64_t s : shifts) {
      std::int64_t y = x - s;
      if (y < 0) y += Q;
      acc += f[y];
    }
    out[static_cast<std::size_t>(x)] = acc / static_cast<double>(N);
  }
  return Signal(std::move(out));
}

}  // namespace

Signal kernel(const IntPolynomial& P, IndexRange N, std::int64_t Q) {
  require(Q >= 1, "kernel: Q must be >= 1");
  std::vector<std::int64_t> counts(static_cast<std::size_t>(Q), 0);
  for (std::int64_t n = 1; n <= N.size(); ++n) ++counts[static_cast<std::size_t>(P.eval_mod(n, Q))];
  std::vector<Complex> k(counts.size());
  const double inv = 1.0 / static_cast<double>(N.size());
  for (std::size_t x = 0; x < counts.size(); ++x) k[x] = static_cast<double>(counts[x]) * inv;
  return Signal(std::move(k));
}

Signal average_linear(const IntPolynomial& P, IndexRange N, const Signal& f, AveragePath path,
                      std::int64_t fft_threshold) {
  if (path == AveragePath::automatic) {
    const double work = static_cast<double>(N.size()) * static_cast<double>(f.modulus());
    path = work > static_cast<double>(fft_threshold) ? AveragePath::fft : AveragePath::direct;
  }
  if (path == AveragePath::direct) return average_direct(P, N.size(), f);
  return cyclic_convolve(kernel(P, N, f.modulus()), f);
}

Signal average_bilinear(const IntPolynomial& P, IndexRange N, const Signal& f1, const Signal& f2) {
  require(f1.modulus() == f2.modulus(), "average_bilinear: f1 and f2 must share the same modulus");
  const std::int64_t Q = f1.modulus();
  const auto quad = residues(P, N.size(), Q);
  std::vector<Complex> out(static_cast<std::size_t>(Q));
  for (std::int64_t x = 0; x < Q; ++x) {
    Complex acc{};
    for (std::int64_t n = 1; n <= N.size(); ++n) {
      acc += f1.at(x - n) * f2.at(x - quad[static_cast<std::size_t>(n - 1)]);
    }
    out[static_cast<std::size_t>(x)] = acc / static_cast<double>(N.size());
  }
  return Signal(std::move(out));
}

Signal maximal_function(const IntPolynomial& P, const Signal& f, const std::vector<IndexRange>& Ns) {
  require(!Ns.empty(), "maximal_function: Ns must be nonempty");
  const std::int64_t Q = f.modulus();
  std::vector<std::int64_t> wanted;
  wanted.reserve(Ns.size());
  for (const auto& n : Ns) wanted.push_back(n.size());
  std::sort(wanted.begin(), wanted.end());
  wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());

  std::vector<Complex> running(static_cast<std::size_t>(Q));
  std::vector<double> best(static_cast<std::size_t>(Q), 0.0);
  std::size_t next = 0;
  for (std::int64_t n = 1; n <= wanted.back(); ++n) {
    const std::int64_t s = P.eval_mod(n, Q);
    for (std::int64_t x = 0; x < Q; ++x) {
      std::int64_t y = x - s;
      if (y < 0) y += Q;
      running[static_cast<std::size_t>(x)] += f[y];
    }
    if (n == wanted[next]) {
      const double inv = 1.0 / static_cast<double>(n);
      for (std::size_t x = 0; x < best.size(); ++x) best[x] = std::max(best[x], std::abs(running[x]) * inv);
      ++next;
    }
  }
  return Signal(std::vector<Complex>(best.begin(), best.end()));
}

RieszSplit riesz_split(const Signal& f, std::int64_t shift) {
  const std::int64_t Q = f.modulus();
  // Cosets of <s> in Z/QZ are the residue classes modulo gcd(s, Q).
  const std::int64_t g = gcd(mod_floor(shift, Q), Q);
  std::vector<Complex> class_sum(static_cast<std::size_t>(g));
  for (std::int64_t x = 0; x < Q; ++x) class_sum[static_cast<std::size_t>(x % g)] += f[x];
  const double class_size = static_cast<double>(Q / g);
  std::vector<Complex> inv(static_cast<std::size_t>(Q));
  for (std::int64_t x = 0; x < Q; ++x) inv[static_cast<std::size_t>(x)] = class_sum[static_cast<std::size_t>(x % g)] / class_size;
  Signal invariant(std::move(inv));
  Signal complement = f - invariant;
  return {std::move(invariant), std::move(complement)};
}

std::int64_t aliasing_safe_modulus(const IntPolynomial& P, IndexRange N, std::int64_t support_diameter) {
  require(support_diameter >= 0, "aliasing_safe_modulus: diameter must be nonnegative");
  Int128 reach = 0;
  for (std::int64_t n = 1; n <= N.size(); ++n) {
    Int128 v = P.eval(n);
    if (v < 0) v = -v;
    reach = std::max(reach, v);
  }
  const Int128 q = 2 * static_cast<Int128>(support_diameter) + reach + 1;
  if (q > static_cast<Int128>(INT64_MAX)) throw OverflowError("aliasing_safe_modulus exceeds 64-bit range");
  return static_cast<std::int64_t>(q);
}

}  // namespace circlelab
