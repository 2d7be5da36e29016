#include <doctest.h>

#include <charconv>
#include <filesystem>
#include <random>

#include "oracles.hpp"

using namespace circlelab;

TEST_CASE("format_double round-trips bit-exactly") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int t = 0; t < 1000; ++t) {
    const double v = g(rng) * std::pow(10.0, static_cast<double>(static_cast<int>(rng() % 40) - 20));
    const auto s = format_double(v);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(back == v);
  }
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("signal JSON and CSV round-trips") {
  const auto f = Signal::gaussian(33, 11);
  CHECK(max_abs_diff(signal_from_json(signal_to_json(f)), f) == 0.0);
  CHECK(max_abs_diff(signal_from_csv(signal_to_csv(f)), f) == 0.0);
  CHECK(signal_to_csv(Signal(2, 1.0)).rfind("index,re,im", 0) == 0);
  CHECK_THROWS(signal_from_json(R"({"modulus": 3, "re": [1, 2], "im": [0, 0]})"));
  CHECK_THROWS(signal_from_csv("index,re,im\n0,1,x\n"));
}

TEST_CASE("sequence CSV") {
  const auto s = sequence_from_csv("label,re\n1,0.5\n4,-2\n9,3\n");
  CHECK(s.size() == 3);
  CHECK(s.labels() == std::vector<std::int64_t>{1, 4, 9});
  CHECK(s.values()[1] == Complex(-2.0, 0.0));
  const auto c = sequence_from_csv("2,1,1\n3,0,-1\n");
  CHECK(c.values()[1] == Complex(0.0, -1.0));
  const auto back = sequence_from_csv(sequence_to_csv(c));
  CHECK(back.labels() == c.labels());
  CHECK(back.values() == c.values());
  CHECK_THROWS(sequence_from_csv("1,0\n1,2\n"));
}

TEST_CASE("file helpers") {
  const auto dir = std::filesystem::temp_directory_path() / "circlelab_io_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "x.txt").string();
  write_file(path, "abc\n");
  CHECK(read_file(path) == "abc\n");
  CHECK_THROWS(read_file((dir / "missing.txt").string()));
  std::filesystem::remove_all(dir);
}
