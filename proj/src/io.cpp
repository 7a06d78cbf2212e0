#include "cinf/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

namespace cinf {
namespace {

template <typename T>
T to_little(T v) {
  if constexpr (std::endian::native == std::endian::big) {
    auto bytes = std::bit_cast<std::array<std::byte, sizeof(T)>>(v);
    std::reverse(bytes.begin(), bytes.end());
    return std::bit_cast<T>(bytes);
  }
  return v;
}

template <typename T>
void put(std::ostream& out, T v) {
  v = to_little(v);
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
bool get(std::istream& in, T& v) {
  if (!in.read(reinterpret_cast<char*>(&v), sizeof(T))) return false;
  v = to_little(v);
  return true;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& text, std::size_t line) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw FormatError("csv line " + std::to_string(line) + ": bad number '" + text + "'");
  return v;
}

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode) {
  std::ofstream f(path, mode);
  if (!f) throw FormatError("cannot open " + path.string() + " for writing");
  return f;
}

std::ifstream open_in(const std::filesystem::path& path, std::ios::openmode mode) {
  std::ifstream f(path, mode);
  if (!f) throw FormatError("cannot open " + path.string());
  return f;
}

}  // namespace

void write_csv(const Signal& s, std::ostream& out) {
  char buf[64];
  auto emit = [&](double v) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.write(buf, ptr - buf);
    out.put('\n');
  };
  out << "# sample_rate=";
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, s.sample_rate());
  out.write(buf, ptr - buf);
  out.put('\n');
  for (double v : s.samples()) emit(v);
}

Signal read_csv(std::istream& in) {
  std::string line;
  std::optional<double> rate;
  std::vector<double> samples;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      const std::string body = trim(std::string_view(t).substr(1));
      constexpr std::string_view key = "sample_rate=";
      if (body.rfind(key, 0) == 0) rate = parse_double(trim(body.substr(key.size())), lineno);
      continue;
    }
    samples.push_back(parse_double(t, lineno));
  }
  if (!rate) throw FormatError("csv signal is missing the '# sample_rate=<hz>' line");
  return Signal(std::move(samples), *rate);
}

void write_csv(const Signal& s, const std::filesystem::path& path) {
  auto f = open_out(path, std::ios::out);
  write_csv(s, f);
}

Signal read_csv(const std::filesystem::path& path) {
  auto f = open_in(path, std::ios::in);
  return read_csv(f);
}

void write_binary(const Signal& s, std::ostream& out) {
  out.write("CINF", 4);
  put<std::uint32_t>(out, kBinaryFormatVersion);
  put<double>(out, s.sample_rate());
  for (double v : s.samples()) put<double>(out, v);
}

Signal read_binary(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, "CINF", 4) != 0) throw FormatError("binary signal: bad magic");
  std::uint32_t version = 0;
  double rate = 0.0;
  if (!get(in, version) || !get(in, rate)) throw FormatError("binary signal: truncated header");
  if (version != kBinaryFormatVersion) throw FormatError("binary signal: unsupported version " + std::to_string(version));
  std::vector<double> samples;
  double v;
  while (get(in, v)) samples.push_back(v);
  if (in.gcount() != 0) throw FormatError("binary signal: trailing partial sample");
  return Signal(std::move(samples), rate);
}

void write_binary(const Signal& s, const std::filesystem::path& path) {
  auto f = open_out(path, std::ios::out | std::ios::binary);
  write_binary(s, f);
}

Signal read_binary(const std::filesystem::path& path) {
  auto f = open_in(path, std::ios::in | std::ios::binary);
  return read_binary(f);
}

nlohmann::json to_json(const FilterKernel& kernel) {
  nlohmann::json j;
  j["nominal_group_delay"] = kernel.nominal_group_delay();
  j["design"] = {{"method", kernel.design().method}, {"parameters", kernel.design().parameters}};
  if (kernel.form() == KernelForm::fir_taps) {
    j["form"] = "fir_taps";
    j["coefficients"] = std::vector<double>(kernel.taps().begin(), kernel.taps().end());
  } else {
    j["form"] = "recursive_sections";
    nlohmann::json sections = nlohmann::json::array();
    for (const Biquad& s : kernel.sections()) sections.push_back({s.b0, s.b1, s.b2, s.a1, s.a2});
    j["coefficients"] = std::move(sections);
  }
  return j;
}

FilterKernel kernel_from_json(const nlohmann::json& j) {
  try {
    DesignInfo info;
    if (j.contains("design")) {
      info.method = j["design"].value("method", "custom");
      if (j["design"].contains("parameters"))
        info.parameters = j["design"]["parameters"].get<std::map<std::string, double>>();
    }
    const std::string form = j.at("form").get<std::string>();
    if (form == "fir_taps") return FilterKernel::fir(j.at("coefficients").get<std::vector<double>>(), std::move(info));
    if (form == "recursive_sections") {
      std::vector<Biquad> sections;
      for (const auto& row : j.at("coefficients")) {
        const auto c = row.get<std::vector<double>>();
        if (c.size() != 5) throw FormatError("kernel json: each section needs 5 coefficients");
        sections.push_back({c[0], c[1], c[2], c[3], c[4]});
      }
      return FilterKernel::recursive(std::move(sections), j.at("nominal_group_delay").get<double>(), std::move(info));
    }
    throw FormatError("kernel json: unknown form '" + form + "'");
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("kernel json: ") + e.what());
  }
}

}  // namespace cinf
