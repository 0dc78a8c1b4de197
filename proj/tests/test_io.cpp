#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "zirho/io.hpp"

using zirho::CopulaFamily;
using zirho::CopulaSpec;
using zirho::DiscretePmf;
using zirho::PairedSample;
using zirho::PoissonSpec;
using zirho::ZeroInflatedMarginSpec;

TEST_CASE("margin spec parsing") {
  const ZeroInflatedMarginSpec s = zirho::parse_margin_spec("zip:lambda=2,p=0.2");
  CHECK(s.inflation == 0.2);
  REQUIRE(std::holds_alternative<PoissonSpec>(s.base));
  CHECK(std::get<PoissonSpec>(s.base).lambda == 2.0);

  CHECK_THROWS_AS(zirho::parse_margin_spec("zip:lambda=2"),
                  std::invalid_argument);
  CHECK_THROWS_AS(zirho::parse_margin_spec("zip:lambda=x,p=0.2"),
                  std::invalid_argument);
  CHECK_THROWS_AS(zirho::parse_margin_spec("gauss:mu=0"), std::invalid_argument);
  CHECK_THROWS_AS(zirho::parse_margin_spec("pmf:"), std::invalid_argument);
  CHECK_THROWS_AS(zirho::parse_margin_spec("pmf:/no/such/file.csv"),
                  std::invalid_argument);
}

TEST_CASE("copula spec parsing") {
  CHECK(zirho::parse_copula_spec("m").family == CopulaFamily::comonotone);
  CHECK(zirho::parse_copula_spec("w").family == CopulaFamily::countermonotone);
  CHECK(zirho::parse_copula_spec("indep").family == CopulaFamily::independence);
  const CopulaSpec f = zirho::parse_copula_spec("frechet:alpha=0.25");
  CHECK(f.family == CopulaFamily::frechet);
  CHECK(f.alpha == 0.25);
  CHECK_THROWS_AS(zirho::parse_copula_spec("frechet"), std::invalid_argument);
  CHECK_THROWS_AS(zirho::parse_copula_spec("frechet:alpha=2"),
                  std::invalid_argument);
  CHECK_THROWS_AS(zirho::parse_copula_spec("gumbel:theta=2"),
                  std::invalid_argument);
}

TEST_CASE("pairs csv with and without header") {
  std::istringstream with_header("x,y\n1,2\n0,0\n3,1\n");
  const PairedSample a = zirho::read_pairs_csv(with_header);
  REQUIRE(a.size() == 3);
  CHECK(a.x[0] == 1);
  CHECK(a.y[2] == 1);

  std::istringstream without("4,5\n6,7\n");
  const PairedSample b = zirho::read_pairs_csv(without);
  REQUIRE(b.size() == 2);
  CHECK(b.x[0] == 4);

  std::istringstream bad("x,y\n1,2\noops,3\n");
  CHECK_THROWS_AS(zirho::read_pairs_csv(bad), std::invalid_argument);
  std::istringstream neg("1,-2\n");
  CHECK_THROWS_AS(zirho::read_pairs_csv(neg), std::invalid_argument);
  std::istringstream empty("x,y\n");
  CHECK_THROWS_AS(zirho::read_pairs_csv(empty), std::invalid_argument);
}

TEST_CASE("pmf csv") {
  std::istringstream in("value,prob\n0,0.25\n2,0.5\n5,0.25\n");
  const DiscretePmf m = zirho::read_pmf_csv(in);
  REQUIRE(m.size() == 3);
  CHECK(m.mass_at(2) == doctest::Approx(0.5));
  CHECK(m.cdf(4) == doctest::Approx(0.75));

  std::istringstream dup("0,0.5\n0,0.5\n");
  CHECK_THROWS_AS(zirho::read_pmf_csv(dup), std::invalid_argument);
  std::istringstream off("0,0.5\n1,0.6\n");
  CHECK_THROWS_AS(zirho::read_pmf_csv(off), std::invalid_argument);
}

TEST_CASE("number formatting uses 12 significant digits") {
  CHECK(zirho::format_number(0.5) == "0.5");
  CHECK(zirho::format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(zirho::format_number(-0.891004179222) == "-0.891004179222");
  CHECK(zirho::format_number(150) == "150");
}
