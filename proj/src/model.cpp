#include "spider/model.hpp"

#include <cmath>
#include <numbers>

namespace spider {

double max_chord(int n) {
  if (n < 2) throw Error(ErrorKind::InvalidParameter, "max_chord: need n >= 2");
  if (n % 2 == 0) return 2.0;
  // Longest diagonal of the regular (2m+1)-gon inscribed in the unit circle.
  const int m = (n - 1) / 2;
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n);
  return std::sqrt(2.0 - 2.0 * std::cos(angle));
}

double critical_radius(int n) { return 2.0 / max_chord(n); }

double SpiderParams::d_min() const { return max_chord(n); }

double SpiderParams::critical_R() const { return critical_radius(n); }

SpiderParams SpiderParams::make(int n, double R) {
  if (n < 2 || n > 16)
    throw Error(ErrorKind::InvalidParameter, "SpiderParams: n must be in [2, 16]");
  if (!std::isfinite(R) || R < 0.0)
    throw Error(ErrorKind::InvalidParameter, "SpiderParams: R must be finite and >= 0");
  return SpiderParams{n, R};
}

Regime classify_regime(const SpiderParams& params) {
  Regime regime;
  regime.n_even = (params.n % 2 == 0);
  const double Rn = critical_radius(params.n);
  if (params.R <= kEpsRegime)
    regime.tag = RegimeTag::Coincident;
  else if (std::abs(params.R - Rn) <= kEpsRegime)
    regime.tag = RegimeTag::CriticalRn;
  else if (std::abs(params.R - 2.0) <= kEpsRegime)
    regime.tag = RegimeTag::Point;
  else if (params.R > 2.0)
    regime.tag = RegimeTag::Empty;
  else if (params.R < Rn)
    regime.tag = RegimeTag::GenericSmall;
  else
    regime.tag = RegimeTag::GenericLarge;
  return regime;
}

const char* regime_name(RegimeTag tag) {
  switch (tag) {
    case RegimeTag::Coincident: return "Coincident";
    case RegimeTag::GenericSmall: return "GenericSmall";
    case RegimeTag::CriticalRn: return "CriticalRn";
    case RegimeTag::GenericLarge: return "GenericLarge";
    case RegimeTag::Point: return "Point";
    case RegimeTag::Empty: return "Empty";
  }
  return "?";
}

char arm_index_char(ArmIndexValue v) {
  switch (v) {
    case ArmIndexValue::Plus: return '+';
    case ArmIndexValue::Minus: return '-';
    case ArmIndexValue::Zero: return '0';
    case ArmIndexValue::Infinity: return 'x';
  }
  return '?';
}

std::uint32_t MultiIndex::code() const {
  std::uint32_t c = 0;
  for (int k = 0; k < n(); ++k)
    c |= static_cast<std::uint32_t>(entries[static_cast<std::size_t>(k)]) << (2 * k);
  return c;
}

MultiIndex MultiIndex::from_code(std::uint32_t code, int n) {
  MultiIndex mi(n);
  for (int k = 0; k < n; ++k)
    mi[k] = static_cast<ArmIndexValue>((code >> (2 * k)) & 0x3u);
  return mi;
}

int MultiIndex::count(ArmIndexValue v) const {
  int c = 0;
  for (ArmIndexValue e : entries)
    if (e == v) ++c;
  return c;
}

std::vector<int> MultiIndex::where(ArmIndexValue v) const {
  std::vector<int> out;
  for (int k = 0; k < n(); ++k)
    if (entries[static_cast<std::size_t>(k)] == v) out.push_back(k);
  return out;
}

int MultiIndex::orientation_sign() const {
  return (count(ArmIndexValue::Minus) % 2 == 0) ? +1 : -1;
}

IndexClass MultiIndex::classify() const {
  const int N = n();
  if (N < 2) return IndexClass::Invalid;
  const std::vector<int> zeros = where(ArmIndexValue::Zero);
  const std::vector<int> folded = where(ArmIndexValue::Infinity);

  if (folded.empty()) {
    if (zeros.empty()) return IndexClass::I2;
    if (zeros.size() == 1) return IndexClass::I1;
    if (zeros.size() == 2) {
      const int a = zeros[0], b = zeros[1];
      const bool adjacent = (b == a + 1) || (a == 0 && b == N - 1);
      return adjacent ? IndexClass::I0 : IndexClass::Invalid;
    }
    return IndexClass::Invalid;
  }
  if (folded.size() != 1) return IndexClass::Invalid;
  const int k = folded[0];
  if (zeros.empty()) return IndexClass::IS1;
  if (N % 2 == 0) {
    // The folded arm reaches exactly one anchor at distance 2R: the antipode.
    if (zeros.size() == 1 && zeros[0] == (k + N / 2) % N) return IndexClass::ISE;
    return IndexClass::Invalid;
  }
  // Odd n: two anchors tie at the maximal distance from anchor k.
  const int m = (N - 1) / 2;
  if (zeros.size() == 2) {
    const int a = (k + m) % N;
    const int b = (k + m + 1) % N;
    const bool match = (zeros[0] == std::min(a, b) && zeros[1] == std::max(a, b));
    if (match) return IndexClass::ISO;
  }
  return IndexClass::Invalid;
}

std::string MultiIndex::str() const {
  std::string s;
  s.reserve(static_cast<std::size_t>(n()));
  for (ArmIndexValue e : entries) s.push_back(arm_index_char(e));
  return s;
}

MultiIndex MultiIndex::parse(const std::string& text) {
  MultiIndex mi(static_cast<int>(text.size()));
  for (int k = 0; k < mi.n(); ++k) {
    switch (text[static_cast<std::size_t>(k)]) {
      case '+': mi[k] = ArmIndexValue::Plus; break;
      case '-': mi[k] = ArmIndexValue::Minus; break;
      case '0': mi[k] = ArmIndexValue::Zero; break;
      case 'x': mi[k] = ArmIndexValue::Infinity; break;
      default:
        throw Error(ErrorKind::InvalidParameter,
                    "MultiIndex::parse: bad character in \"" + text + "\"");
    }
  }
  return mi;
}

} // namespace spider
