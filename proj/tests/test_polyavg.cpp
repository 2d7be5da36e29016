#include <doctest.h>

#include <random>

#include "oracles.hpp"

using namespace circlelab;

namespace {

Signal real_signal(std::vector<double> v) { return Signal::from_real(v); }

void check_close(const Signal& a, const Signal& b, double tol) {
  REQUIRE(a.modulus() == b.modulus());
  CHECK(max_abs_diff(a, b) <= tol);
}

IntPolynomial random_poly(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> deg(1, 3);
  std::uniform_int_distribution<std::int64_t> coef(-5, 5);
  std::vector<std::int64_t> c(static_cast<std::size_t>(deg(rng)) + 1);
  for (auto& v : c) v = coef(rng);
  if (c.back() == 0) c.back() = 1;
  return IntPolynomial(c);
}

}  // namespace

TEST_CASE("polynomial parsing and structure") {
  const auto P = IntPolynomial::parse("0,0,1");
  CHECK(P.degree() == 2);
  CHECK(P.coefficient(2) == 1);
  CHECK(P.coefficient(7) == 0);
  CHECK(IntPolynomial::parse("1, 2, 0, 0").degree() == 1);
  CHECK(IntPolynomial::parse("0").is_zero());
  CHECK(IntPolynomial::parse("0").degree() == 0);
  CHECK(IntPolynomial::parse("-3,4").eval(2) == 5);
  CHECK_THROWS_AS(IntPolynomial::parse("1,x"), PreconditionError);
  CHECK_THROWS_AS(IntPolynomial::parse(""), PreconditionError);
  CHECK(IntPolynomial::parse(P.to_string()) == P);
}

TEST_CASE("eval_poly examples") {
  const auto sq = IntPolynomial::monomial(2);
  CHECK(sq.eval(0) == 0);
  CHECK(sq.eval(7) == 49);
  CHECK(IntPolynomial({0, 2, 0, 1}).eval(5) == 135);
}

TEST_CASE("eval widens past 64 bits and reports 128-bit overflow") {
  const auto cube = IntPolynomial::monomial(3);
  const std::int64_t n = 3'000'000'007;
  const Int128 expected = static_cast<Int128>(n) * n * n;
  CHECK(cube.eval(n) == expected);
  CHECK(cube.eval(-n) == -expected);
  CHECK_THROWS_AS(IntPolynomial::monomial(5).eval(100'000'000), OverflowError);
}

TEST_CASE("eval_mod agrees with exact evaluation") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    const auto P = random_poly(rng);
    const std::int64_t n = static_cast<std::int64_t>(rng() % 20001) - 10000;
    const std::int64_t Q = static_cast<std::int64_t>(rng() % 1000) + 1;
    CHECK(P.eval_mod(n, Q) == mod_floor(P.eval(n), Q));
    CHECK(P.eval_mod(n, Q) == oracle::poly_mod(P.coefficients(), n, Q));
  }
}

TEST_CASE("kernel examples") {
  const auto K1 = kernel(IntPolynomial::monomial(1), IndexRange(4), 4);
  check_close(K1, real_signal({0.25, 0.25, 0.25, 0.25}), 1e-15);
  const auto K2 = kernel(IntPolynomial::monomial(2), IndexRange(5), 5);
  check_close(K2, real_signal({0.2, 0.4, 0.0, 0.0, 0.4}), 1e-15);
  const IntPolynomial P({3, -1, 2});
  const auto K3 = kernel(P, IndexRange(1), 7);
  check_close(K3, Signal::delta(7, mod_floor(P.eval(1), 7)), 0.0);
}

TEST_CASE("kernel is a probability vector") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 40; ++t) {
    const auto K = kernel(random_poly(rng), IndexRange(static_cast<std::int64_t>(rng() % 300) + 1),
                          static_cast<std::int64_t>(rng() % 200) + 1);
    for (const auto& v : K.values()) CHECK(v.real() >= 0.0);
    CHECK(std::abs(K.sum() - Complex(1.0, 0.0)) <= 1e-12);
  }
}

TEST_CASE("average_linear examples") {
  const auto sq = IntPolynomial::monomial(2);
  check_close(average_linear(sq, IndexRange(37), Signal(11, Complex(2.5, -1.0))), Signal(11, Complex(2.5, -1.0)),
              1e-14);
  check_close(average_linear(sq, IndexRange(5), Signal::delta(5, 0)), real_signal({0.2, 0.4, 0.0, 0.0, 0.4}), 1e-15);
  const auto f = Signal::gaussian(13, 4);
  for (std::int64_t k = 1; k <= 4; ++k) {
    const auto A = average_linear(IntPolynomial::monomial(1), IndexRange(13 * k), f);
    check_close(A, Signal(13, f.mean()), 1e-14);
  }
}

TEST_CASE("average_linear direct, FFT and definitional sums agree") {
  std::mt19937_64 rng(21);
  for (std::int64_t Q : {64, 257, 1024}) {
    for (int t = 0; t < 6; ++t) {
      const auto P = random_poly(rng);
      const IndexRange N(static_cast<std::int64_t>(rng() % 100) + 1);
      const auto f = Signal::gaussian(Q, rng());
      const auto direct = average_linear(P, N, f, AveragePath::direct);
      const auto fft = average_linear(P, N, f, AveragePath::fft);
      const auto ref = oracle::average(P.coefficients(), N.size(), f);
      const double scale = std::max(1.0, ref.norm_linf());
      CHECK(max_abs_diff(direct, ref) <= 1e-12 * scale);
      CHECK(max_abs_diff(fft, ref) <= 1e-9 * scale);
    }
  }
}

TEST_CASE("average_linear properties: mass, positivity, contraction") {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 30; ++t) {
    const auto P = random_poly(rng);
    const IndexRange N(static_cast<std::int64_t>(rng() % 500) + 1);
    const std::int64_t Q = static_cast<std::int64_t>(rng() % 300) + 1;
    const auto f = Signal::gaussian(Q, rng());
    const auto A = average_linear(P, N, f);
    CHECK(std::abs(A.sum() - f.sum()) <= 1e-10 * std::max(1.0, std::abs(f.sum()) + f.norm_lp(1.0)));
    CHECK(A.norm_linf() <= f.norm_linf() * (1 + 1e-12));

    std::vector<Complex> pos(static_cast<std::size_t>(Q));
    for (auto& v : pos) v = static_cast<double>(rng() % 100);
    const Signal g(pos);
    for (const auto& v : average_linear(P, N, g).values()) CHECK(v.real() >= -1e-12);
    for (const auto& v : maximal_function(P, g, {IndexRange(1), N}).values()) CHECK(v.real() >= 0.0);
  }
}

TEST_CASE("automatic path switches at the threshold and stays consistent") {
  const auto f = Signal::gaussian(128, 2);
  const auto P = IntPolynomial::monomial(2);
  const auto a = average_linear(P, IndexRange(50), f, AveragePath::automatic, 1);
  const auto b = average_linear(P, IndexRange(50), f, AveragePath::automatic, std::int64_t{1} << 40);
  CHECK(max_abs_diff(a, b) <= 1e-12);
}

TEST_CASE("average_bilinear examples") {
  const auto sq = IntPolynomial::monomial(2);
  check_close(average_bilinear(sq, IndexRange(9), Signal(7, 1.0), Signal(7, 1.0)), Signal(7, 1.0), 1e-15);
  const auto f1 = Signal::gaussian(17, 8);
  check_close(average_bilinear(sq, IndexRange(23), f1, Signal(17, 1.0)),
              average_linear(IntPolynomial::monomial(1), IndexRange(23), f1), 1e-14);
  check_close(average_bilinear(sq, IndexRange(5), Signal::delta(5, 0), Signal::delta(5, 0)),
              real_signal({0.2, 0.2, 0.0, 0.0, 0.0}), 1e-15);
  CHECK_THROWS_AS(average_bilinear(sq, IndexRange(3), Signal(4, 1.0), Signal(5, 1.0)), PreconditionError);
}

TEST_CASE("maximal_function examples") {
  const auto sq = IntPolynomial::monomial(2);
  check_close(maximal_function(sq, Signal(9, 1.0), {IndexRange(1), IndexRange(4), IndexRange(30)}), Signal(9, 1.0),
              1e-14);
  std::vector<IndexRange> Ns;
  for (std::int64_t N = 1; N <= 512; ++N) Ns.emplace_back(N);
  const auto M = maximal_function(IntPolynomial::monomial(1), Signal::delta(1024, 0), Ns);
  for (std::int64_t x = 1; x <= 512; ++x) CHECK(M[x].real() == doctest::Approx(1.0 / static_cast<double>(x)).epsilon(1e-14));
  const auto f = Signal::gaussian(31, 3);
  const auto single = maximal_function(sq, f, {IndexRange(12)});
  const auto A = average_linear(sq, IndexRange(12), f);
  for (std::int64_t x = 0; x < 31; ++x) CHECK(single[x].real() == doctest::Approx(std::abs(A[x])).epsilon(1e-13));
  CHECK_THROWS_AS(maximal_function(sq, f, {}), PreconditionError);
}

TEST_CASE("riesz_split examples and properties") {
  const auto f = Signal::gaussian(12, 6);
  const auto id = riesz_split(f, 0);
  check_close(id.invariant_part, f, 0.0);
  CHECK(id.complement.norm_linf() == 0.0);
  const auto single = riesz_split(f, 5);
  check_close(single.invariant_part, Signal(12, f.mean()), 1e-14);
  const auto ex = riesz_split(real_signal({1, 2, 3, 4}), 2);
  check_close(ex.invariant_part, real_signal({2, 3, 2, 3}), 1e-15);

  std::mt19937_64 rng(12);
  for (int t = 0; t < 50; ++t) {
    const std::int64_t Q = static_cast<std::int64_t>(rng() % 60) + 1;
    const std::int64_t s = static_cast<std::int64_t>(rng() % 200) - 100;
    const auto g = Signal::gaussian(Q, rng());
    const auto split = riesz_split(g, s);
    for (std::int64_t x = 0; x < Q; ++x) CHECK(split.invariant_part.at(x - s) == split.invariant_part[x]);
    CHECK(std::abs(inner(split.invariant_part, split.complement)) <= 1e-10 * g.norm_l2() * g.norm_l2());
    check_close(split.invariant_part + split.complement, g, 1e-14);
  }
}

TEST_CASE("aliasing-safe modulus reproduces averages on Z") {
  const IntPolynomial P({0, -2, 1});
  const IndexRange N(9);
  const std::vector<double> values{1.0, -2.0, 0.5, 3.0};
  const std::int64_t Q = aliasing_safe_modulus(P, N, static_cast<std::int64_t>(values.size()));
  std::vector<Complex> padded(static_cast<std::size_t>(Q));
  for (std::size_t i = 0; i < values.size(); ++i) padded[i] = values[i];
  const auto A = average_linear(P, N, Signal(padded));
  // On Z: A f(x) = (1/N) sum_n f(x - P(n)), supported in [min P, max P + 3] = [-1, 66].
  REQUIRE(Q > 68);
  for (std::int64_t x = -1; x <= 66; ++x) {
    double expected = 0.0;
    for (std::int64_t n = 1; n <= N.size(); ++n) {
      const auto y = static_cast<std::int64_t>(x - P.eval(n));
      if (y >= 0 && y < static_cast<std::int64_t>(values.size())) expected += values[static_cast<std::size_t>(y)];
    }
    expected /= static_cast<double>(N.size());
    CHECK(std::abs(A.at(x) - Complex(expected, 0.0)) <= 1e-15);
  }
}
