#include "zirho/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace zirho {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  return out;
}

std::string trimmed(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& s, double& out) {
  const std::string t = trimmed(s);
  if (t.empty()) return false;
  std::size_t pos = 0;
  try {
    out = std::stod(t, &pos);
  } catch (const std::exception&) {
    return false;
  }
  return pos == t.size();
}

bool parse_int(const std::string& s, std::int64_t& out) {
  const std::string t = trimmed(s);
  if (t.empty()) return false;
  std::size_t pos = 0;
  try {
    out = std::stoll(t, &pos);
  } catch (const std::exception&) {
    return false;
  }
  return pos == t.size();
}

// key=value,key=value arguments of a mini-language spec
std::map<std::string, double> parse_kv(const std::string& text,
                                       const std::string& what) {
  std::map<std::string, double> out;
  for (const std::string& part : split(text, ',')) {
    const auto eq = part.find('=');
    double v = 0.0;
    if (eq == std::string::npos || !parse_double(part.substr(eq + 1), v)) {
      throw std::invalid_argument(what + ": malformed argument '" + part + "'");
    }
    out[trimmed(part.substr(0, eq))] = v;
  }
  return out;
}

}  // namespace

ZeroInflatedMarginSpec parse_margin_spec(const std::string& text) {
  const auto colon = text.find(':');
  const std::string head = trimmed(text.substr(0, colon));
  if (head == "zip") {
    if (colon == std::string::npos) {
      throw std::invalid_argument("margin spec: zip requires lambda and p");
    }
    const auto kv = parse_kv(text.substr(colon + 1), "margin spec");
    const auto lambda = kv.find("lambda");
    const auto p = kv.find("p");
    if (lambda == kv.end() || p == kv.end() || kv.size() != 2) {
      throw std::invalid_argument(
          "margin spec: zip takes exactly lambda=<float>,p=<float>");
    }
    return {p->second, PoissonSpec{lambda->second}};
  }
  if (head == "pmf") {
    if (colon == std::string::npos || trimmed(text.substr(colon + 1)).empty()) {
      throw std::invalid_argument("margin spec: pmf requires a file path");
    }
    return {0.0, read_pmf_csv_file(trimmed(text.substr(colon + 1)))};
  }
  throw std::invalid_argument("margin spec: unknown form '" + text +
                              "' (expected zip:... or pmf:...)");
}

CopulaSpec parse_copula_spec(const std::string& text) {
  const std::string t = trimmed(text);
  if (t == "m") return CopulaSpec::m();
  if (t == "w") return CopulaSpec::w();
  if (t == "indep") return CopulaSpec::independence();
  const auto colon = t.find(':');
  if (trimmed(t.substr(0, colon)) == "frechet") {
    if (colon == std::string::npos) {
      throw std::invalid_argument("copula spec: frechet requires alpha");
    }
    const auto kv = parse_kv(t.substr(colon + 1), "copula spec");
    const auto alpha = kv.find("alpha");
    if (alpha == kv.end() || kv.size() != 1) {
      throw std::invalid_argument("copula spec: frechet takes alpha=<float>");
    }
    return CopulaSpec::frechet(alpha->second);
  }
  throw std::invalid_argument("copula spec: unknown form '" + text +
                              "' (expected frechet:alpha=..., m, w, indep)");
}

PairedSample read_pairs_csv(std::istream& in) {
  PairedSample s;
  std::string line;
  bool first = true;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trimmed(line).empty()) continue;
    const auto fields = split(line, ',');
    std::int64_t x = 0, y = 0;
    const bool ok = fields.size() == 2 && parse_int(fields[0], x) &&
                    parse_int(fields[1], y);
    if (!ok) {
      if (first) {
        first = false;  // header row
        continue;
      }
      throw std::invalid_argument("pairs csv: malformed line " +
                                  std::to_string(lineno) + ": '" + line + "'");
    }
    first = false;
    if (x < 0 || y < 0) {
      throw std::invalid_argument("pairs csv: negative value at line " +
                                  std::to_string(lineno));
    }
    s.x.push_back(x);
    s.y.push_back(y);
  }
  if (s.x.empty()) {
    throw std::invalid_argument("pairs csv: no data rows");
  }
  return s;
}

PairedSample read_pairs_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open '" + path + "'");
  }
  return read_pairs_csv(in);
}

DiscretePmf read_pmf_csv(std::istream& in) {
  std::map<std::int64_t, double> rows;
  std::string line;
  bool first = true;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trimmed(line).empty()) continue;
    const auto fields = split(line, ',');
    std::int64_t v = 0;
    double p = 0.0;
    const bool ok = fields.size() == 2 && parse_int(fields[0], v) &&
                    parse_double(fields[1], p);
    if (!ok) {
      if (first) {
        first = false;
        continue;
      }
      throw std::invalid_argument("pmf csv: malformed line " +
                                  std::to_string(lineno) + ": '" + line + "'");
    }
    first = false;
    if (v < 0 || p < 0.0) {
      throw std::invalid_argument("pmf csv: negative entry at line " +
                                  std::to_string(lineno));
    }
    if (!rows.emplace(v, p).second) {
      throw std::invalid_argument("pmf csv: duplicate value at line " +
                                  std::to_string(lineno));
    }
  }
  if (rows.empty()) {
    throw std::invalid_argument("pmf csv: no data rows");
  }
  double total = 0.0;
  for (const auto& [v, p] : rows) total += p;
  if (std::abs(total - 1.0) > 1e-6) {
    throw std::invalid_argument("pmf csv: probabilities sum to " +
                                std::to_string(total));
  }
  std::vector<std::int64_t> values;
  std::vector<double> probs;
  for (const auto& [v, p] : rows) {
    if (p > 0.0) {
      values.push_back(v);
      probs.push_back(p / total);
    }
  }
  return DiscretePmf(std::move(values), std::move(probs));
}

DiscretePmf read_pmf_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open '" + path + "'");
  }
  return read_pmf_csv(in);
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace zirho
