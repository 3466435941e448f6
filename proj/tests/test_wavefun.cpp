#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "trapped_pair/spectrum.hpp"
#include "trapped_pair/specfun.hpp"
#include "trapped_pair/wavefun.hpp"

using namespace tpair;
using namespace tpair::wavefun;

namespace {

constexpr double two_pi = 6.283185307179586476925;

// reference energies and point values, mpmath Green-function quadrature
struct psi_ref {
  double eta, e_shift, rho, z, psi;
};
const psi_ref refs[] = {
    {5.0, -4.862236589721577662146, 0.2, 0.5, 0.1292056911942755468505},
    {5.0, -4.862236589721577662146, 0.4, 0.1, 0.1965319032017090617079},
    {5.0, -4.862236589721577662146, 0.1, 0.8, 0.05154146909978892345257},
    {1.0, -1.0, 0.3, 0.4, 0.2809074886192503663981},
    {1.0, -1.0, 0.6, 0.2, 0.2060303686406407518962},
    {0.1, -0.600122770494515160828, 0.5, 0.6, 0.1232799460449564143418},
    {0.1, -0.600122770494515160828, 1.5, 0.2, 0.0393674360763827750575},
};

double rel(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

shifted_energy solve(double inv_a, double eta, int branch) {
  trap_geometry g{eta};
  auto s = spectrum::solve_branch(scattering_length{inv_a}, branch, g);
  REQUIRE(s.ok());
  return s.value();
}

}  // namespace

TEST_CASE("bound integral representation matches references") {
  for (const auto& r : refs) {
    trap_geometry g{r.eta};
    auto v = psi_bound_integral(shifted_energy{r.e_shift}, r.rho, r.z, g,
                                1e-12);
    REQUIRE(v.ok());
    CHECK(v.value().representation == psi_rep::integral);
    CHECK(rel(v.value().value, r.psi) < 1e-12);
  }
}

TEST_CASE("series representations match references") {
  for (const auto& r : refs) {
    trap_geometry g{r.eta};
    shifted_energy e{r.e_shift};
    auto a = psi_axial_series(e, r.rho, r.z, g, 1e-12);
    auto d = psi_radial_series(e, r.rho, r.z, g, 1e-12);
    // the two hard corners exceed the term cap in exactly one series
    bool rad_hard = r.eta == 5.0 && r.rho == 0.1;
    bool axi_hard = r.eta == 0.1 && r.rho == 1.5;
    if (axi_hard) {
      CHECK(a.code() == errc::convergence_error);
    } else {
      REQUIRE(a.ok());
      CHECK(rel(a.value().value, r.psi) < 5e-8);
    }
    if (rad_hard) {
      CHECK(d.code() == errc::convergence_error);
    } else {
      REQUIRE(d.ok());
      CHECK(rel(d.value().value, r.psi) < 5e-8);
    }
    // the auto-selector must route around the hard corners
    auto any = psi_eval(e, r.rho, r.z, g, 1e-12);
    REQUIRE(any.ok());
    CHECK(rel(any.value().value, r.psi) < 5e-8);
  }
}

TEST_CASE("dual representation agreement on a grid") {
  for (double eta : {0.1, 1.0, 5.0}) {
    trap_geometry g{eta};
    for (int branch : {0, 1}) {
      shifted_energy e = solve(0.7, eta, branch);
      for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
          double rho = 0.2 + 0.2 * i, z = 0.4 + 0.2 * j;
          auto a = psi_axial_series(e, rho, z, g, 1e-10);
          auto d = psi_radial_series(e, rho, z, g, 1e-10);
          REQUIRE(a.ok());
          REQUIRE(d.ok());
          double scale =
              std::max(std::abs(a.value().value), 1e-12);
          CHECK(std::abs(a.value().value - d.value().value) / scale < 1e-6);
        }
    }
  }
}

TEST_CASE("evaluations are even in z") {
  trap_geometry g{5.0};
  shifted_energy e{-4.862236589721577662146};
  auto ap = psi_axial_series(e, 0.3, 0.7, g);
  auto am = psi_axial_series(e, 0.3, -0.7, g);
  CHECK(ap.value().value == am.value().value);
  auto rp = psi_radial_series(e, 0.3, 0.7, g);
  auto rm = psi_radial_series(e, 0.3, -0.7, g);
  CHECK(rp.value().value == rm.value().value);
  auto ip = psi_bound_integral(e, 0.3, 0.7, g);
  auto im = psi_bound_integral(e, 0.3, -0.7, g);
  CHECK(ip.value().value == im.value().value);
  auto qp = psi_q1d_bound(e, 0.3, 0.7, g);
  auto qm = psi_q1d_bound(e, 0.3, -0.7, g);
  CHECK(qp.value().value == qm.value().value);
}

TEST_CASE("short-range law r*Psi -> 1/(2 pi)") {
  // eta = 5, 1/a = 1 bound state: 2 pi r Psi = 1 - r/a + O(r^2)
  trap_geometry g{5.0};
  shifted_energy e{-4.862236589721577662146};
  double r = 0.01;
  double want = 1.0 - r * 1.0;
  double c = 0.70710678118654752440;
  double vals[3];
  const double dirs[3][2] = {{r, 0.0}, {0.0, r}, {c * r, c * r}};
  for (int i = 0; i < 3; ++i) {
    auto v = psi_bound_integral(e, dirs[i][0], dirs[i][1], g, 1e-13);
    REQUIRE(v.ok());
    vals[i] = two_pi * r * v.value().value;
    CHECK(rel(vals[i], want) < 1e-4);
  }
  // near-isotropy at small r
  CHECK(rel(vals[0], vals[1]) < 1e-2);
  // far field elongates along z when eta > 1
  auto vz = psi_bound_integral(e, 0.0, 2.0, g, 1e-12);
  auto vr = psi_bound_integral(e, 2.0, 0.0, g, 1e-12);
  CHECK(vz.value().value > vr.value().value);
}

TEST_CASE("bound integral argument guards") {
  trap_geometry g{1.0};
  CHECK(psi_bound_integral(shifted_energy{0.5}, 0.3, 0.4, g).code() ==
        errc::domain_error);
  CHECK(psi_bound_integral(shifted_energy{-1.0}, 0.0, 0.0, g).code() ==
        errc::domain_error);
  CHECK(psi_bound_integral(shifted_energy{-1.0}, -0.1, 0.4, g).code() ==
        errc::invalid_argument);
  trap_geometry bad{-2.0};
  CHECK(psi_bound_integral(shifted_energy{-1.0}, 0.3, 0.4, bad).code() ==
        errc::invalid_argument);
}

TEST_CASE("quasi-1d bound state in an elongated trap") {
  trap_geometry g{100.0};
  shifted_energy e = solve(12.0, 100.0, 0);
  auto full = psi_axial_series(e, 0.05, 0.3, g, 1e-12);
  auto q1 = psi_q1d_bound(e, 0.05, 0.3, g, 1e-12);
  REQUIRE(full.ok());
  REQUIRE(q1.ok());
  CHECK(rel(q1.value().value, full.value().value) < 1e-2);
  CHECK(q1.value().representation == psi_rep::q1d_bound);

  // large-|z| decay is governed by the open channel alone
  shifted_energy e2 = solve(1.0, 100.0, 0);
  double kappa0 = std::sqrt(-0.5 * e2.value);
  auto p3 = psi_q1d_bound(e2, 0.3, 3.0, g, 1e-13);
  auto p4 = psi_q1d_bound(e2, 0.3, 4.0, g, 1e-13);
  double fitted = -std::log(p4.value().value / p3.value().value);
  CHECK(rel(fitted, 2.0 * kappa0) < 1e-12);

  CHECK(psi_q1d_bound(shifted_energy{0.5}, 0.3, 0.4, g).code() ==
        errc::domain_error);
}

TEST_CASE("quasi-2d bound state in a flat trap") {
  trap_geometry g{0.01};
  shifted_energy e = solve(4.0, 0.01, 0);
  auto full = psi_radial_series(e, 3.0, 0.5, g, 1e-12);
  auto q2 = psi_q2d_bound(e, 3.0, 0.5, g, 1e-12);
  REQUIRE(full.ok());
  REQUIRE(q2.ok());
  CHECK(rel(q2.value().value, full.value().value) < 1e-2);

  CHECK(psi_q2d_bound(e, 0.0, 0.5, g).code() == errc::domain_error);
  CHECK(psi_q2d_bound(shifted_energy{0.5}, 1.0, 0.5, g).code() ==
        errc::domain_error);
}

TEST_CASE("quasi-1d excited state reduces to the open channel") {
  trap_geometry g{100.0};
  shifted_energy e = solve(0.0, 100.0, 1);
  auto f4 = psi_axial_series(e, 0.05, 0.4, g, 1e-13);
  auto q4 = psi_q1d_excited(e, 0.05, 0.4, g);
  CHECK(rel(q4.value().value, f4.value().value) < 1e-4);
  auto f8 = psi_axial_series(e, 0.05, 0.8, g, 1e-13);
  auto q8 = psi_q1d_excited(e, 0.05, 0.8, g);
  CHECK(rel(q8.value().value, f8.value().value) < 1e-6);

  // construction identity: the m = 0 term of the axial expansion
  double x = 100.0 * 0.05 * 0.05, zz = 0.4 * 0.4;
  auto gu = specfun::gamma_u_half(-0.5 * e.value, zz);
  double want = 100.0 / (2.0 * std::pow(pi, 1.5)) *
                std::exp(-0.5 * (x + zz)) * gu.value().value;
  CHECK(rel(q4.value().value, want) < 1e-14);

  // channel threshold produces a gamma pole
  trap_geometry g1{1.0};
  CHECK(psi_q1d_excited(shifted_energy{2.0}, 0.1, 0.4, g1).code() ==
        errc::pole_error);
}

TEST_CASE("quasi-2d excited state reduces to the open channel") {
  trap_geometry g{0.01};
  shifted_energy e = solve(0.0, 0.01, 1);
  auto f2 = psi_radial_series(e, 2.0, 0.5, g, 1e-13);
  auto q2 = psi_q2d_excited(e, 2.0, 0.5, g);
  CHECK(rel(q2.value().value, f2.value().value) < 2e-2);
  auto f3 = psi_radial_series(e, 3.0, 0.5, g, 1e-13);
  auto q3 = psi_q2d_excited(e, 3.0, 0.5, g);
  CHECK(rel(q3.value().value, f3.value().value) < 1e-3);

  CHECK(psi_q2d_excited(e, 0.0, 0.5, g).code() == errc::domain_error);
}

TEST_CASE("normalization sums agree and match the brute-force norm") {
  trap_geometry g{2.0};
  shifted_energy e{-2.396273418735072};
  auto n1 = norm_axial(e, g);
  auto n2 = norm_radial(e, g);
  REQUIRE(n1.ok());
  REQUIRE(n2.ok());
  // frozen mpmath values for this state
  CHECK(rel(n1.value().n_inv_sq, 0.1355343868705857) < 1e-9);
  CHECK(rel(n2.value().n_inv_sq, 0.1355343868711006) < 1e-9);
  // direct quadrature of |Psi|^2 over the box [0,7]^2
  CHECK(rel(n1.value().n_inv_sq, 0.1355343868757357) < 1e-8);
  CHECK(n1.value().tail_bound < 1e-8 * n1.value().n_inv_sq);
  CHECK(n2.value().tail_bound < 1e-8 * n2.value().n_inv_sq);

  for (double eta : {0.1, 1.0, 5.0, 100.0}) {
    trap_geometry gg{eta};
    for (int branch : {0, 2}) {
      shifted_energy ee = solve(0.8, eta, branch);
      auto a = norm_axial(ee, gg);
      auto d = norm_radial(ee, gg);
      REQUIRE(a.ok());
      REQUIRE(d.ok());
      CHECK(a.value().n_inv_sq > 0.0);
      double diff = std::abs(a.value().n_inv_sq - d.value().n_inv_sq);
      double budget = a.value().tail_bound + d.value().tail_bound +
                      1e-10 * a.value().n_inv_sq;
      CHECK(diff <= budget);
      CHECK(rel(a.value().n_inv_sq, d.value().n_inv_sq) < 1e-8);
    }
  }
}

TEST_CASE("leading channel dominates the norm in extreme traps") {
  trap_geometry cigar{100.0};
  for (int b : {1, 10}) {
    shifted_energy e = solve(0.0, 100.0, b);
    auto n = norm_axial(e, cigar);
    auto t0 = norm_axial_term(e, cigar, 0);
    REQUIRE(n.ok());
    REQUIRE(t0.ok());
    CHECK(t0.value() / n.value().n_inv_sq > 0.9986);
  }
  trap_geometry pancake{0.01};
  for (int b : {1, 10}) {
    shifted_energy e = solve(0.0, 0.01, b);
    auto n = norm_radial(e, pancake);
    auto t0 = norm_radial_term(e, pancake, 0);
    REQUIRE(n.ok());
    REQUIRE(t0.ok());
    CHECK(t0.value() / n.value().n_inv_sq > 0.9985);
  }
  // term accessors sum consistently with the full evaluation
  shifted_energy e = solve(0.0, 100.0, 1);
  auto n = norm_axial(e, cigar);
  double partial = 0.0;
  for (int m = 0; m < 40; ++m) partial += norm_axial_term(e, cigar, m).value();
  CHECK(partial < n.value().n_inv_sq);
  CHECK(partial > 0.999 * n.value().n_inv_sq);
}

TEST_CASE("finite-difference Hamiltonian recovers the eigenvalue") {
  auto fd_res = [](double eta, double inv_a, double rho, double z, double h) {
    trap_geometry g{eta};
    shifted_energy e = solve(inv_a, eta, 0);
    double e_tot = e.value + g.zero_point();
    auto P = [&](double r, double zz) {
      auto v = psi_bound_integral(e, r, zz, g, 1e-13);
      REQUIRE(v.ok());
      return v.value().value;
    };
    double p0 = P(rho, z);
    double lap = (P(rho + h, z) - 2 * p0 + P(rho - h, z)) / (h * h) +
                 (P(rho + h, z) - P(rho - h, z)) / (2 * h) / rho +
                 (P(rho, z + h) - 2 * p0 + P(rho, z - h)) / (h * h);
    double hpsi = -0.5 * lap + 0.5 * (eta * eta * rho * rho + z * z) * p0;
    return hpsi / p0 - e_tot;
  };
  struct pt { double eta, inv_a, rho, z; };
  for (pt p : {pt{2.0, 0.8, 0.3, 0.4}, pt{1.0, 1.0, 0.4, 0.3},
               pt{5.0, 0.5, 0.2, 0.6}, pt{0.5, 1.0, 0.6, 0.5}}) {
    double r1 = fd_res(p.eta, p.inv_a, p.rho, p.z, 1e-3);
    double r2 = fd_res(p.eta, p.inv_a, p.rho, p.z, 5e-4);
    // the raw residual is pure O(h^2) stencil truncation ...
    CHECK(std::abs(r1) < 5e-5);
    if (std::abs(r1) > 1e-6) CHECK(r2 / r1 == doctest::Approx(0.25).epsilon(0.05));
    // ... and extrapolating it away leaves the series/quadrature floor
    CHECK(std::abs((4.0 * r2 - r1) / 3.0) < 1e-7);
  }
}

TEST_CASE("normalized evaluation scales by the norm factor") {
  trap_geometry g{2.0};
  shifted_energy e{-2.396273418735072};
  auto raw = psi_eval(e, 0.4, 0.5, g);
  auto n = norm_axial(e, g);
  auto nv = psi_normalized(e, 0.4, 0.5, g);
  REQUIRE(nv.ok());
  CHECK(rel(nv.value().value,
            raw.value().value / std::sqrt(n.value().n_inv_sq)) < 1e-14);
}

TEST_CASE("pole energies are reported, not evaluated") {
  trap_geometry g{1.0};
  // E_shift = 2 puts the m = 1 transverse channel exactly on a gamma pole
  CHECK(psi_axial_series(shifted_energy{2.0}, 0.3, 0.4, g).code() ==
        errc::pole_error);
  CHECK(psi_radial_series(shifted_energy{2.0}, 0.3, 0.4, g).code() ==
        errc::pole_error);
  CHECK(!norm_axial(shifted_energy{2.0}, g).ok());
  CHECK(!norm_radial(shifted_energy{2.0}, g).ok());
  CHECK(psi_radial_series(shifted_energy{-1.0}, 0.0, 0.4, g).code() ==
        errc::domain_error);
}

TEST_CASE("representation names") {
  CHECK(std::string(psi_rep_name(psi_rep::axial_series)) == "axial_series");
  CHECK(std::string(psi_rep_name(psi_rep::integral)) == "integral");
  CHECK(std::string(psi_rep_name(psi_rep::q2d_excited)) == "q2d_excited");
}
