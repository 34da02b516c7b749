#include "hcmc/coeff_io.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hcmc {

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

TrigPoly parse_coeff_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  if (!j.contains("d") || !j.contains("coeffs"))
    throw std::runtime_error("coefficient file must contain \"d\" and \"coeffs\"");
  TrigPoly f(j.at("d").get<int>());
  for (const auto& entry : j.at("coeffs")) {
    const auto k = entry.at("k").get<FreqIndex>();
    if (static_cast<int>(k.size()) != f.dim())
      throw std::runtime_error("frequency dimension mismatch in coefficient file");
    if (f.coeffs().contains(k)) throw std::runtime_error("duplicate frequency in coefficient file");
    f.set(k, Complex(entry.at("re").get<double>(), entry.at("im").get<double>()));
  }
  return f;
}

TrigPoly read_coeff_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_coeff_json(ss.str());
}

std::string to_coeff_json(const TrigPoly& f) {
  std::ostringstream out;
  out << "{\"d\": " << f.dim() << ", \"coeffs\": [";
  bool first = true;
  for (const auto& [k, c] : f.coeffs()) {  // std::map iterates keys lexicographically
    if (!first) out << ", ";
    first = false;
    out << "{\"k\": [";
    for (std::size_t l = 0; l < k.size(); ++l) out << (l ? "," : "") << k[l];
    out << "], \"re\": " << fmt17(c.real()) << ", \"im\": " << fmt17(c.imag()) << "}";
  }
  out << "]}\n";
  return out.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
    out << content;
    if (!out.flush()) throw std::runtime_error("write failed for " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace hcmc
