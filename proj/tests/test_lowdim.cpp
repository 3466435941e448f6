#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "trapped_pair/constants.hpp"
#include "trapped_pair/fcal.hpp"
#include "trapped_pair/lowdim.hpp"
#include "trapped_pair/specfun.hpp"
#include "trapped_pair/spectrum.hpp"

using namespace tpair;
using doctest::Approx;

namespace {

trap_geometry trap_of(double eta) { return trap_geometry(eta); }

double exact_e(double a_inv, double eta, int branch) {
  auto r = spectrum::solve_branch(scattering_length{a_inv}, branch,
                                  trap_of(eta));
  REQUIRE(r.ok());
  return r.value().value;
}

}  // namespace

TEST_CASE("static 1d scattering length values") {
  CHECK(lowdim::a1d_static(0.0, trap_of(100.0)).value ==
        Approx(0.073017725440479340644).epsilon(1e-13));
  double eta = 4.0;
  CHECK(lowdim::a1d_static(2.0, trap_of(eta)).value ==
        Approx(-2.0 / 8.0 - zeta_half / 4.0).epsilon(1e-14));
  CHECK_FALSE(lowdim::a1d_static(1.0, trap_of(5.0)).energy_dependent);
}

TEST_CASE("confinement induced resonance location") {
  // a1d vanishes at a/d_perp = -1/zeta(1/2)
  double eta = 7.0;
  double a_inv_star = -zeta_half * std::sqrt(eta);
  CHECK(std::abs(lowdim::a1d_static(a_inv_star, trap_of(eta)).value) < 1e-14);
  double a_over_dperp = std::sqrt(eta) / a_inv_star;
  CHECK(a_over_dperp == Approx(0.68476523608993652310).epsilon(1e-12));
  CHECK(-1.0 / zeta_half == Approx(0.68476523608993652310).epsilon(1e-12));
}

TEST_CASE("energy dependent a1d against direct evaluation") {
  auto r = lowdim::a1d_energy_dependent(0.7, shifted_energy{-6.0},
                                        trap_of(10.0));
  REQUIRE(r.ok());
  CHECK(r.value().value == Approx(0.25191172519366371704).epsilon(1e-12));
  CHECK(r.value().energy_dependent);
  REQUIRE(r.value().source_energy.has_value());
  CHECK(r.value().source_energy->value == -6.0);
}

TEST_CASE("energy dependent a1d limits and monotonicity") {
  trap_geometry trap = trap_of(10.0);
  auto near0 = lowdim::a1d_energy_dependent(1.3, shifted_energy{-1e-9}, trap);
  REQUIRE(near0.ok());
  CHECK(std::abs(near0.value().value - lowdim::a1d_static(1.3, trap).value) <
        1e-8);

  double prev = lowdim::a1d_energy_dependent(0.0, shifted_energy{-9.9}, trap)
                    .value()
                    .value;
  for (double e = -9.0; e < 0.0; e += 0.9) {
    auto cur = lowdim::a1d_energy_dependent(0.0, shifted_energy{e}, trap);
    REQUIRE(cur.ok());
    CHECK(cur.value().value < prev);
    prev = cur.value().value;
  }
}

TEST_CASE("energy dependent a1d domain errors") {
  trap_geometry trap = trap_of(10.0);
  auto pole = lowdim::a1d_energy_dependent(0.0, shifted_energy{20.0}, trap);
  REQUIRE_FALSE(pole.ok());
  CHECK(pole.err().code == errc::pole_error);
  auto pole2 = lowdim::a1d_energy_dependent(0.0, shifted_energy{40.0}, trap);
  REQUIRE_FALSE(pole2.ok());
  CHECK(pole2.err().code == errc::pole_error);
  auto dom = lowdim::a1d_energy_dependent(0.0, shifted_energy{30.0}, trap);
  REQUIRE_FALSE(dom.ok());
  CHECK(dom.err().code == errc::domain_error);
}

TEST_CASE("1d model limits: free, fermionized, and no bound state") {
  // |a1d| -> inf pins roots to the free even spectrum, a1d = 0 to the odd one
  for (int j = 1; j <= 3; ++j) {
    auto up = lowdim::solve_1d_branch(lowdim::a1d{1e9, false, {}}, j);
    REQUIRE(up.ok());
    CHECK(up.value().value == Approx(2.0 * j).epsilon(1e-6));
    auto dn = lowdim::solve_1d_branch(lowdim::a1d{-1e9, false, {}}, j);
    REQUIRE(dn.ok());
    CHECK(dn.value().value == Approx(2.0 * (j - 1)).epsilon(1e-6));
    auto z = lowdim::solve_1d_branch(lowdim::a1d{0.0, false, {}}, j);
    REQUIRE(z.ok());
    CHECK(z.value().value == Approx(2.0 * j - 1.0).epsilon(1e-10));
  }
  auto none = lowdim::solve_1d_branch(lowdim::a1d{-1.0, false, {}}, 0);
  REQUIRE_FALSE(none.ok());
  CHECK(none.err().code == errc::no_root);
}

TEST_CASE("1d model roots are ordered and satisfy the gamma-ratio condition") {
  lowdim::a1d a{1.0, false, {}};
  auto roots = lowdim::solve_1d(a, 4);
  REQUIRE(roots.ok());
  REQUIRE(roots.value().size() == 4);
  CHECK(roots.value()[0].value < 0.0);
  for (std::size_t i = 0; i + 1 < roots.value().size(); ++i)
    CHECK(roots.value()[i].value < roots.value()[i + 1].value);
  for (const auto& e : roots.value()) {
    double u = -0.5 * e.value;
    auto g = specfun::gamma_ratio(u, u + 0.5);
    REQUIRE(g.ok());
    CHECK(std::abs(g.value().value - 2.0 * a.value) < 1e-8);
  }
}

TEST_CASE("quasi-1d composition identity") {
  // with the energy-dependent a1d the 1d condition collapses to
  // 2 a1d(E) = Gamma(x)/Gamma(x+1/2) at the quasi-1d root
  std::mt19937 rng(411203);
  std::uniform_real_distribution<double> pick(0.0, 1.0);
  for (double eta : {10.0, 3.7}) {
    trap_geometry trap = trap_of(eta);
    fcal::f_context ctx(trap);
    for (int i = 0; i < 50; ++i) {
      double x;
      do {
        x = -eta + 0.05 + pick(rng) * (eta + 15.0);
      } while (x <= -eta + 0.05 ||
               (x <= 0.05 && std::abs(x - std::round(x)) < 0.05));
      auto fv = fcal::f_quasi1d(x, ctx);
      REQUIRE(fv.ok());
      double a_inv = -fv.value().value / sqrt_pi;
      auto ae = lowdim::a1d_energy_dependent(a_inv, shifted_energy{-2.0 * x},
                                             trap);
      REQUIRE(ae.ok());
      auto ratio = specfun::gamma_ratio(x, x + 0.5);
      REQUIRE(ratio.ok());
      CHECK(std::abs(2.0 * ae.value().value - ratio.value().value) <=
            1e-9 * std::max(1.0, std::abs(ratio.value().value)));
    }
  }
}

TEST_CASE("waveguide bound state") {
  trap_geometry trap = trap_of(10.0);
  auto r = lowdim::bound_state_q1d(0.0, trap);
  REQUIRE(r.ok());
  CHECK(r.value().value ==
        Approx(-20.0 * 0.30272182859836637474).epsilon(1e-9));

  // deep limit: binding approaches a_inv^2/2 in trap units
  auto deep = lowdim::bound_state_q1d(50.0, trap);
  REQUIRE(deep.ok());
  CHECK(deep.value().value == Approx(-1250.0).epsilon(0.015));
}

TEST_CASE("quasi-1d energy-dependent model vs exact spectrum") {
  // worst-case gaps measured on this grid; the residual model error is
  // physical (transverse channels truncated), largest on the bound branch
  struct bound_row {
    double eta;
    int branch;
    double cap;
  };
  const bound_row rows[] = {
      {10.0, 0, 0.4},    {10.0, 1, 0.02},   {10.0, 2, 0.02},
      {100.0, 0, 0.25},  {100.0, 1, 5e-4},  {100.0, 2, 5e-4},
  };
  for (const auto& row : rows) {
    trap_geometry trap = trap_of(row.eta);
    double worst = 0.0;
    for (double ai = -5.0; ai <= 5.001; ai += 1.0) {
      auto q = lowdim::solve_q1d_energy_dependent(ai, row.branch, trap);
      REQUIRE(q.ok());
      double d = std::abs(q.value().value - exact_e(ai, row.eta, row.branch));
      worst = std::max(worst, d);
    }
    CHECK(worst < row.cap);
  }
}

TEST_CASE("static a1d tracks excited branches but not the bound branch") {
  trap_geometry trap = trap_of(10.0);
  double worst1 = 0.0;
  for (double ai = -5.0; ai <= 5.001; ai += 0.5) {
    auto st = lowdim::solve_1d_branch(lowdim::a1d_static(ai, trap), 1);
    REQUIRE(st.ok());
    worst1 = std::max(worst1,
                      std::abs(st.value().value - exact_e(ai, 10.0, 1)));
  }
  CHECK(worst1 < 0.05);

  // at unitarity the static bound branch is off by order one
  auto st0 = lowdim::solve_1d_branch(lowdim::a1d_static(0.0, trap), 0);
  REQUIRE(st0.ok());
  CHECK(std::abs(st0.value().value - exact_e(0.0, 10.0, 0)) > 1.0);
}

TEST_CASE("static 2d scattering length values") {
  CHECK(lowdim::a2d_static(0.0).value ==
        Approx(1.8632481867059474069).epsilon(1e-12));
  CHECK(lowdim::a2d_static(50.0).value ==
        Approx(1.0619340231963078753e-19).epsilon(1e-11));
  CHECK(lowdim::a2d_static(50.0).value > 0.0);
}

TEST_CASE("energy dependent a2d limits and domain") {
  trap_geometry trap = trap_of(0.1);
  auto at0 = lowdim::a2d_energy_dependent(0.3, shifted_energy{0.0}, trap);
  REQUIRE(at0.ok());
  CHECK(at0.value().value ==
        Approx(lowdim::a2d_static(0.3).value).epsilon(1e-13));
  auto dom = lowdim::a2d_energy_dependent(0.3, shifted_energy{2.5}, trap);
  REQUIRE_FALSE(dom.ok());
  CHECK(dom.err().code == errc::domain_error);
}

TEST_CASE("2d model root at unit coupling") {
  // with 2 a2d^2 eta = 1 the condition reads psi(u) = 0, whose positive
  // root is u = 1.4616321449683623413
  trap_geometry trap = trap_of(1.0);
  lowdim::a2d a{1.0 / sqrt_2, false, {}};
  auto r = lowdim::solve_2d_branch(a, trap, 0);
  REQUIRE(r.ok());
  CHECK(r.value().value == Approx(-2.0 * 1.4616321449683623413).epsilon(1e-9));

  auto bad = lowdim::solve_2d_branch(lowdim::a2d{-1.0, false, {}}, trap, 0);
  REQUIRE_FALSE(bad.ok());
  CHECK(bad.err().code == errc::invalid_argument);
}

TEST_CASE("2d model roots ordered across branches") {
  trap_geometry trap = trap_of(0.1);
  auto roots = lowdim::solve_2d(lowdim::a2d_static(0.4), trap, 4);
  REQUIRE(roots.ok());
  REQUIRE(roots.value().size() == 4);
  CHECK(roots.value()[0].value < 0.0);
  for (std::size_t i = 0; i + 1 < roots.value().size(); ++i)
    CHECK(roots.value()[i].value < roots.value()[i + 1].value);
}

TEST_CASE("2d coupling constant and its pole") {
  auto g = lowdim::g2d_coupling(0.0, 1.0);
  REQUIRE(g.ok());
  CHECK(g.value() == Approx(-5.0481843471551673644).epsilon(1e-12));

  double pole_ai = 0.70221439195434978003;
  auto at_pole = lowdim::g2d_coupling(pole_ai, 1.0);
  REQUIRE_FALSE(at_pole.ok());
  CHECK(at_pole.err().code == errc::pole_error);

  auto below = lowdim::g2d_coupling(pole_ai - 0.01, 1.0);
  auto above = lowdim::g2d_coupling(pole_ai + 0.01, 1.0);
  REQUIRE(below.ok());
  REQUIRE(above.ok());
  CHECK(below.value() < 0.0);
  CHECK(above.value() > 0.0);

  auto bad = lowdim::g2d_coupling(0.0, -1.0);
  REQUIRE_FALSE(bad.ok());
  CHECK(bad.err().code == errc::invalid_argument);
}

TEST_CASE("quasi-2d excited solver agrees with the branch solver") {
  trap_geometry trap = trap_of(0.1);
  auto ex = lowdim::solve_quasi2d_excited(0.5, trap, 3);
  REQUIRE(ex.ok());
  REQUIRE(ex.value().size() == 3);
  for (int j = 1; j <= 3; ++j) {
    auto b = lowdim::solve_q2d_energy_dependent(0.5, j, trap);
    REQUIRE(b.ok());
    CHECK(ex.value()[j - 1].value == Approx(b.value().value).epsilon(1e-9));
  }
}

TEST_CASE("quasi-2d excited solver respects its domain edge") {
  // brackets stop where the analytic continuation of Phi ends (x = -1)
  auto few = lowdim::solve_quasi2d_excited(0.5, trap_of(0.6), 5);
  REQUIRE(few.ok());
  CHECK(few.value().size() == 1);

  auto none = lowdim::solve_quasi2d_excited(0.5, trap_of(2.0), 5);
  REQUIRE_FALSE(none.ok());
  CHECK(none.err().code == errc::domain_error);

  auto deep_branch = lowdim::solve_q2d_energy_dependent(0.5, 4, trap_of(0.3));
  REQUIRE_FALSE(deep_branch.ok());
  CHECK(deep_branch.err().code == errc::domain_error);
}

TEST_CASE("quasi-2d energy-dependent model vs exact spectrum") {
  struct bound_row {
    double eta;
    int branch;
    double cap;
  };
  const bound_row rows[] = {
      {0.1, 0, 0.1},    {0.1, 1, 5e-3},   {0.1, 2, 5e-3},
      {0.01, 0, 0.02},  {0.01, 1, 5e-5},  {0.01, 2, 5e-5},
  };
  for (const auto& row : rows) {
    trap_geometry trap = trap_of(row.eta);
    double worst = 0.0;
    for (double ai = -5.0; ai <= 5.001; ai += 1.0) {
      auto q = lowdim::solve_q2d_energy_dependent(ai, row.branch, trap);
      REQUIRE(q.ok());
      double d = std::abs(q.value().value - exact_e(ai, row.eta, row.branch));
      worst = std::max(worst, d);
    }
    CHECK(worst < row.cap);
  }
}

TEST_CASE("energy dependence improves on the static 2d model") {
  trap_geometry trap = trap_of(0.1);
  for (int b = 0; b <= 3; ++b) {
    double exact = exact_e(0.0, 0.1, b);
    auto ed = lowdim::solve_q2d_energy_dependent(0.0, b, trap);
    auto st = lowdim::solve_2d_branch(lowdim::a2d_static(0.0), trap, b);
    REQUIRE(ed.ok());
    REQUIRE(st.ok());
    CHECK(std::abs(ed.value().value - exact) <
          std::abs(st.value().value - exact));
  }
}

TEST_CASE("shallow 2d binding formula") {
  CHECK(lowdim::shallow_2d_binding(0.0) ==
        Approx(2.0 * std::exp(-1.9377897837407079878)).epsilon(1e-12));
  // against the quasi-2d solver in the pancake limit
  trap_geometry trap = trap_of(1e-7);
  for (double s : {-8.0, -6.0, -4.0}) {
    double ai = s / sqrt_pi;
    auto q = lowdim::solve_q2d_energy_dependent(ai, 0, trap);
    REQUIRE(q.ok());
    double binding = -q.value().value;
    CHECK(lowdim::shallow_2d_binding(ai) == Approx(binding).epsilon(0.01));
  }
}
