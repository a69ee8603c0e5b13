#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tetsym/cuspgeom.hpp"

using namespace tetsym::cuspgeom;

TEST(CoverageProperty, RandomLattices) {
  std::mt19937_64 rng(20261015);
  std::uniform_real_distribution<double> re(-1.5, 1.5), im(0.4, 2.5), len(0.6, 2.5), unit(0, 1);
  std::uniform_int_distribution<int> count(1, 4);
  int total = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    CuspDiagram d;
    d.meridian = {re(rng), im(rng)};
    d.longitude = {len(rng), 0};
    d.cusp_volume = std::abs((std::conj(d.meridian) * d.longitude).imag()) / 2;
    d.export_cutoff = 0.05;
    for (int k = count(rng); k > 0; --k)
      d.horoballs.push_back({unit(rng) * d.meridian + unit(rng) * d.longitude, 1.0, 0});
    for (double x : {1.0 / 3, 4.0 / 7}) total += oracle::coverage_violations(d, x);
  }
  EXPECT_EQ(total, 0);
}
