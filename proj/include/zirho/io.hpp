#pragma once

#include <iosfwd>
#include <string>

#include "zirho/copulas.hpp"

namespace zirho {

/// Margin mini-language: "zip:lambda=<float>,p=<float>" for a zero-inflated
/// Poisson, or "pmf:<path>" for an explicit pmf file (CSV with columns
/// value,prob and an optional header).
ZeroInflatedMarginSpec parse_margin_spec(const std::string& text);

/// Copula mini-language: "frechet:alpha=<float>", "m", "w", "indep".
CopulaSpec parse_copula_spec(const std::string& text);

/// Integer pairs from CSV (columns x,y; a non-numeric first row is treated
/// as a header). Throws std::invalid_argument on malformed content.
PairedSample read_pairs_csv(std::istream& in);
PairedSample read_pairs_csv_file(const std::string& path);

/// Explicit pmf from CSV with columns value,prob; rows may be unordered,
/// probabilities must be nonnegative and sum to 1 within 1e-6 (the result
/// is normalized exactly).
DiscretePmf read_pmf_csv(std::istream& in);
DiscretePmf read_pmf_csv_file(const std::string& path);

/// Numeric formatting used by every CLI and CSV emitter: shortest form at
/// 12 significant digits.
std::string format_number(double v);

}  // namespace zirho
