#include "spider/model.hpp"

#include <doctest.h>

using namespace spider;

namespace {

// Independently computed critical radii 2 / d_n (regular n-gon longest chord).
constexpr double kR3 = 1.1547005383792517;
constexpr double kR5 = 1.0514622242382672;
constexpr double kR7 = 1.025716863272554;
constexpr double kR9 = 1.0154266118857451;
constexpr double kR11 = 1.0102832265380361;
constexpr double kR13 = 1.0073446768656829;
constexpr double kR15 = 1.0055082795635164;

} // namespace

TEST_CASE("critical radius matches the frozen chord values") {
  CHECK(critical_radius(2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(critical_radius(4) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(critical_radius(16) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(critical_radius(3) == doctest::Approx(kR3).epsilon(1e-15));
  CHECK(critical_radius(5) == doctest::Approx(kR5).epsilon(1e-15));
  CHECK(critical_radius(7) == doctest::Approx(kR7).epsilon(1e-15));
  CHECK(critical_radius(9) == doctest::Approx(kR9).epsilon(1e-15));
  CHECK(critical_radius(11) == doctest::Approx(kR11).epsilon(1e-15));
  CHECK(critical_radius(13) == doctest::Approx(kR13).epsilon(1e-15));
  CHECK(critical_radius(15) == doctest::Approx(kR15).epsilon(1e-15));
  CHECK(max_chord(3) == doctest::Approx(1.7320508075688772).epsilon(1e-15));
  CHECK(max_chord(6) == 2.0);
}

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(SpiderParams::make(2, 0.0));
  CHECK_NOTHROW(SpiderParams::make(16, 1.0));
  CHECK_THROWS_AS(SpiderParams::make(1, 1.0), Error);
  CHECK_THROWS_AS(SpiderParams::make(17, 1.0), Error);
  CHECK_THROWS_AS(SpiderParams::make(4, -0.1), Error);
  try {
    SpiderParams::make(1, 1.0);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidParameter);
  }
}

TEST_CASE("regime classification honours the window around special radii") {
  auto tag = [](int n, double R) { return classify_regime(SpiderParams::make(n, R)).tag; };
  CHECK(tag(4, 0.0) == RegimeTag::Coincident);
  CHECK(tag(4, 5e-13) == RegimeTag::Coincident);
  CHECK(tag(4, 1e-9) == RegimeTag::GenericSmall);
  CHECK(tag(4, 0.5) == RegimeTag::GenericSmall);
  CHECK(tag(4, 1.0) == RegimeTag::CriticalRn);
  CHECK(tag(4, 1.0 + 5e-13) == RegimeTag::CriticalRn);
  CHECK(tag(4, 1.0 + 1e-9) == RegimeTag::GenericLarge);
  CHECK(tag(4, 1.5) == RegimeTag::GenericLarge);
  CHECK(tag(4, 2.0) == RegimeTag::Point);
  CHECK(tag(4, 2.5) == RegimeTag::Empty);
  CHECK(tag(3, critical_radius(3)) == RegimeTag::CriticalRn);
  CHECK(tag(3, 1.1) == RegimeTag::GenericSmall);
  CHECK(tag(3, 1.2) == RegimeTag::GenericLarge);
  CHECK(classify_regime(SpiderParams::make(6, 0.5)).n_even);
  CHECK_FALSE(classify_regime(SpiderParams::make(5, 0.5)).n_even);
}

TEST_CASE("multi-index packing round-trips") {
  MultiIndex mi = MultiIndex::parse("+-0x+-");
  CHECK(mi.n() == 6);
  CHECK(MultiIndex::from_code(mi.code(), 6) == mi);
  CHECK(mi.str() == "+-0x+-");
  CHECK(mi.count(ArmIndexValue::Plus) == 2);
  CHECK(mi.count(ArmIndexValue::Minus) == 2);
  CHECK(mi.where(ArmIndexValue::Zero) == std::vector<int>{2});
  CHECK(mi.where(ArmIndexValue::Infinity) == std::vector<int>{3});
  CHECK_THROWS_AS(MultiIndex::parse("+?"), Error);
}

TEST_CASE("multi-index classification") {
  CHECK(MultiIndex::parse("++--").classify() == IndexClass::I2);
  CHECK(MultiIndex::parse("+0-+").classify() == IndexClass::I1);
  CHECK(MultiIndex::parse("00-+").classify() == IndexClass::I0);
  CHECK(MultiIndex::parse("0--0").classify() == IndexClass::I0); // wrap-around pair
  CHECK(MultiIndex::parse("0-0+").classify() == IndexClass::Invalid);
  CHECK(MultiIndex::parse("00").classify() == IndexClass::I0);
  CHECK(MultiIndex::parse("x+-+").classify() == IndexClass::IS1);
  // Even n: the stretched arm must sit opposite the folded one.
  CHECK(MultiIndex::parse("x+0+").classify() == IndexClass::ISE);
  CHECK(MultiIndex::parse("x0++").classify() == IndexClass::Invalid);
  // Odd n = 2m+1: the two stretched arms sit at offsets m and m+1.
  CHECK(MultiIndex::parse("x00").classify() == IndexClass::ISO);
  CHECK(MultiIndex::parse("0x0").classify() == IndexClass::ISO);
  // For n = 5 the two stretched arms sit at offsets 2 and 3 from the fold.
  CHECK(MultiIndex::parse("x+00+").classify() == IndexClass::ISO);
  CHECK(MultiIndex::parse("x+0+0").classify() == IndexClass::Invalid);
  CHECK(MultiIndex::parse("x0+0+").classify() == IndexClass::Invalid);
  CHECK(MultiIndex::parse("x++00").classify() == IndexClass::Invalid);
  CHECK(MultiIndex::parse("xx++").classify() == IndexClass::Invalid);
  CHECK(MultiIndex::parse("000+").classify() == IndexClass::Invalid);
}

TEST_CASE("orientation sign is the parity of Minus entries") {
  CHECK(MultiIndex::parse("++++").orientation_sign() == +1);
  CHECK(MultiIndex::parse("+-++").orientation_sign() == -1);
  CHECK(MultiIndex::parse("--++").orientation_sign() == +1);
  CHECK(MultiIndex::parse("---+").orientation_sign() == -1);
}
