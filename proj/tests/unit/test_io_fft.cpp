#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>
#include <sstream>

#include "cinf/fft.hpp"
#include "cinf/io.hpp"

using namespace cinf;

namespace {

std::vector<double> randn(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  for (auto& x : v) x = g(rng);
  return v;
}

}  // namespace

TEST_CASE("rfft matches a direct DFT") {
  const auto x = randn(30, 1);
  const auto X = rfft(x);
  REQUIRE(X.size() == 16);
  for (std::size_t k = 0; k < X.size(); ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t n = 0; n < x.size(); ++n)
      acc += x[n] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k * n) / 30.0);
    CHECK(std::abs(X[k] - acc) < 1e-10);
  }
  const auto back = irfft(X, x.size());
  for (std::size_t n = 0; n < x.size(); ++n) CHECK(back[n] == doctest::Approx(x[n]).epsilon(1e-12));
}

TEST_CASE("CSV round trip is exact") {
  const Signal s(randn(100, 2), 12345.5);
  std::stringstream io;
  write_csv(s, io);
  CHECK(read_csv(io) == s);
  std::istringstream bad("1.0\n2.0\n");
  CHECK_THROWS_AS(read_csv(bad), FormatError);
}

TEST_CASE("binary round trip and header checks") {
  const Signal s(randn(257, 3), 1e6);
  std::stringstream io;
  write_binary(s, io);
  CHECK(io.str().size() == 16 + 257 * 8);
  CHECK(io.str().substr(0, 4) == "CINF");
  CHECK(read_binary(io) == s);
  std::istringstream bad(std::string("XXXX") + std::string(12, '\0'));
  CHECK_THROWS_AS(read_binary(bad), FormatError);

  const auto path = std::filesystem::temp_directory_path() / "cinf_io_test.bin";
  write_binary(s, path);
  CHECK(read_binary(path) == s);
  std::filesystem::remove(path);
}

TEST_CASE("kernel JSON round trip") {
  const FilterKernel fir = design_windowed_sinc_lowpass(0.1, 1.0, 31);
  CHECK(kernel_from_json(to_json(fir)) == fir);
  const FilterKernel iir = design_bessel_like_lowpass(100.0, 4, 1000.0);
  CHECK(kernel_from_json(nlohmann::json::parse(to_json(iir).dump())) == iir);
  CHECK_THROWS(kernel_from_json(nlohmann::json{{"form", "fir"}}));
}
