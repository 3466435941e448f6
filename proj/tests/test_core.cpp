#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "trapped_pair/core.hpp"

using namespace tpair;

TEST_CASE("trap geometry basics") {
  trap_geometry g;
  g.eta = 5.0;
  CHECK(g.valid());
  CHECK(g.zero_point() == doctest::Approx(5.5).epsilon(1e-15));
  CHECK(g.shift_energy(7.0) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(g.unshift_energy(g.shift_energy(7.0)) == doctest::Approx(7.0));
  CHECK(g.d_perp_over_d() == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-15));

  CHECK_FALSE(g.has_physical_scale());
  CHECK(g.osc_length().code() == errc::unit_error);
  CHECK(g.energy_quantum().code() == errc::unit_error);

  trap_geometry bad;
  bad.eta = -1.0;
  CHECK_FALSE(bad.valid());
}

TEST_CASE("physical scales") {
  trap_geometry g;
  g.eta = 10.0;
  g.omega_z = 2.0 * pi * 1.0e3;
  g.reduced_mass = 0.5 * 86.909 * amu_si;

  auto d = g.osc_length();
  REQUIRE(d.ok());
  double expect = std::sqrt(hbar_si / (*g.reduced_mass * *g.omega_z));
  CHECK(d.value() == doctest::Approx(expect).epsilon(1e-15));

  auto dp = g.osc_length_perp();
  REQUIRE(dp.ok());
  CHECK(dp.value() == doctest::Approx(expect / std::sqrt(10.0)).epsilon(1e-15));

  auto eq = g.energy_quantum();
  REQUIRE(eq.ok());
  CHECK(eq.value() == doctest::Approx(hbar_si * 2.0 * pi * 1.0e3).epsilon(1e-15));

  shifted_energy e{-2.5};
  CHECK(e.bound());
  CHECK(e.total(g) == doctest::Approx(8.0));
  auto j = to_physical(e, g);
  REQUIRE(j.ok());
  CHECK(j.value() == doctest::Approx(8.0 * eq.value()).epsilon(1e-15));

  trap_geometry unscaled;
  CHECK(to_physical(e, unscaled).code() == errc::unit_error);
}

TEST_CASE("commensurate detection") {
  CHECK(commensurate_integer(1.0) == 1);
  CHECK(commensurate_integer(5.0) == 5);
  CHECK(commensurate_integer(0.5) == 2);
  CHECK(commensurate_integer(0.2) == 5);
  CHECK(commensurate_integer(1.0 / 3.0) == 3);
  CHECK(commensurate_integer(2.0 + 1e-10) == 2);
  CHECK(commensurate_integer(2.5) == 0);
  CHECK(commensurate_integer(0.3) == 0);
  CHECK(commensurate_integer(1.1) == 0);
  CHECK(commensurate_integer(0.0) == 0);
  CHECK(commensurate_integer(-4.0) == 0);
}

TEST_CASE("enum names") {
  CHECK(std::string(errc_name(errc::ok)) == "ok");
  CHECK(std::string(errc_name(errc::pole_error)) == "pole_error");
  CHECK(std::string(errc_name(errc::no_root)) == "no_root");
  CHECK(std::string(f_strategy_name(f_strategy::series)) == "series");
  CHECK(std::string(f_strategy_name(f_strategy::closed_pancake)) == "closed_pancake");
  CHECK(std::string(f_strategy_name(f_strategy::quasi_2d)) == "quasi_2d");
}

TEST_CASE("expected carrier") {
  expected<double> v(3.0);
  CHECK(v.ok());
  CHECK(v.value() == 3.0);
  CHECK(v.value_or(-1.0) == 3.0);

  expected<double> e(errc::no_root, 2.5);
  CHECK_FALSE(e.ok());
  CHECK(e.code() == errc::no_root);
  CHECK(e.err().where == doctest::Approx(2.5));
  CHECK(e.value_or(-1.0) == -1.0);
}
