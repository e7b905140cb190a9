#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <complex>

#include "mproots/basins.hpp"

using namespace mproots;
using Cplx = std::complex<double>;

namespace {

BasinConfig square_config(MethodKind method, std::vector<Cplx> poly, int size) {
  BasinConfig cfg;
  cfg.method = method;
  cfg.polynomial = std::move(poly);
  cfg.width = size;
  cfg.height = size;
  return cfg;
}

Cplx seed_of(const BasinConfig& cfg, int i, int j) {
  double dx = (cfg.re_max - cfg.re_min) / cfg.width;
  double dy = (cfg.im_max - cfg.im_min) / cfg.height;
  return {cfg.re_min + (i + 0.5) * dx, cfg.im_max - (j + 0.5) * dy};
}

}  // namespace

TEST_CASE("aberth iteration finds all roots") {
  auto roots = polynomial_roots({{-1, 0}, {0, 0}, {1, 0}});  // z^2 - 1
  REQUIRE(roots.size() == 2);
  CHECK(std::abs(roots[0] - Cplx(-1, 0)) < 1e-12);
  CHECK(std::abs(roots[1] - Cplx(1, 0)) < 1e-12);

  auto cubic = polynomial_roots({{-1, 0}, {0, 0}, {0, 0}, {1, 0}});  // z^3 - 1
  REQUIRE(cubic.size() == 3);
  for (const auto& r : cubic) CHECK(std::abs(r * r * r - Cplx(1, 0)) < 1e-10);
  // Sorted by real part: the two conjugates first, then 1.
  CHECK(cubic[2].real() == doctest::Approx(1.0));
  CHECK(cubic[0].imag() < cubic[1].imag());
}

TEST_CASE("degree below two is rejected") {
  BasinConfig cfg = square_config(MethodKind::Newton, {{-1, 0}, {1, 0}}, 8);
  CHECK_THROWS_AS(render_basin(cfg), std::invalid_argument);
  CHECK_THROWS_AS(polynomial_roots({{-1, 0}, {1, 0}}), std::invalid_argument);
}

TEST_CASE("root preprocessing failure surfaces as NoRootsFound") {
  // (z-1)^8: the simultaneous iteration stalls on the multiplicity-8
  // cluster and never meets its step tolerance.
  std::vector<Cplx> coeffs;
  for (double c : {1., -8., 28., -56., 70., -56., 28., -8., 1.}) coeffs.emplace_back(c, 0);
  CHECK_THROWS_AS(polynomial_roots(coeffs), NoRootsFound);
}

TEST_CASE("config validation") {
  BasinConfig cfg = square_config(MethodKind::Newton, {{-1, 0}, {0, 0}, {1, 0}}, 8);
  cfg.re_min = 3;  // empty window
  CHECK_THROWS_AS(render_basin(cfg), std::invalid_argument);
  cfg = square_config(MethodKind::Newton, {{-1, 0}, {0, 0}, {1, 0}}, 1);
  CHECK_THROWS_AS(render_basin(cfg), std::invalid_argument);
}

TEST_CASE("newton on z^2-1: rotation by 180 degrees swaps the two basins") {
  BasinConfig cfg = square_config(MethodKind::Newton, {{-1, 0}, {0, 0}, {1, 0}}, 24);
  auto roots = polynomial_roots(cfg.polynomial);
  for (int j = 0; j < cfg.height; ++j) {
    for (int i = 0; i < cfg.width; ++i) {
      PixelOutcome a = classify_point(cfg, roots, seed_of(cfg, i, j));
      PixelOutcome b =
          classify_point(cfg, roots, seed_of(cfg, cfg.width - 1 - i, cfg.height - 1 - j));
      if (a.root_index < 0) {
        CHECK(b.root_index < 0);
        continue;
      }
      CHECK(b.root_index == 1 - a.root_index);
      CHECK(b.iterations == a.iterations);
    }
  }
}

TEST_CASE("om8 on z^3-1: three equal basins over a rotation-symmetric region") {
  // The square window is not invariant under the 120-degree basin symmetry
  // (its corners feed the three basins unevenly), so the count comparison
  // uses the inscribed disk.
  BasinConfig cfg =
      square_config(MethodKind::Om8, {{-1, 0}, {0, 0}, {0, 0}, {1, 0}}, 192);
  auto roots = polynomial_roots(cfg.polynomial);
  std::array<int, 3> counts{0, 0, 0};
  int disk_total = 0;
  for (int j = 0; j < cfg.height; ++j) {
    for (int i = 0; i < cfg.width; ++i) {
      Cplx seed = seed_of(cfg, i, j);
      if (std::abs(seed) > 2.0) continue;
      ++disk_total;
      PixelOutcome o = classify_point(cfg, roots, seed_of(cfg, i, j));
      if (o.root_index >= 0) counts[static_cast<size_t>(o.root_index)]++;
    }
  }
  CHECK(counts[0] > 0);
  CHECK(counts[1] > 0);
  CHECK(counts[2] > 0);
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) {
      CHECK(std::abs(counts[a] - counts[b]) <= disk_total / 100);
    }
  }
}

TEST_CASE("every classified pixel is within tolerance of its root") {
  BasinConfig cfg =
      square_config(MethodKind::Om8, {{-1, 0}, {0, 0}, {0, 0}, {1, 0}}, 64);
  auto roots = polynomial_roots(cfg.polynomial);
  for (int j = 0; j < cfg.height; j += 3) {
    for (int i = 0; i < cfg.width; i += 3) {
      PixelOutcome o = classify_point(cfg, roots, seed_of(cfg, i, j));
      if (o.root_index >= 0) {
        CHECK(std::abs(o.z_final - roots[static_cast<size_t>(o.root_index)]) < cfg.tol);
      }
    }
  }
}

TEST_CASE("rendering is deterministic and the parallel path matches the serial one") {
  BasinConfig cfg =
      square_config(MethodKind::Om8, {{-1, 0}, {0, 0}, {0, 0}, {1, 0}}, 96);
  BasinImage a = render_basin(cfg);
  BasinImage b = render_basin(cfg);
  BasinImage serial = render_basin_serial(cfg);
  CHECK(a.rgb == b.rgb);
  CHECK(a.rgb == serial.rgb);
}

TEST_CASE("ppm encoding") {
  BasinConfig cfg = square_config(MethodKind::Newton, {{-1, 0}, {0, 0}, {1, 0}}, 16);
  BasinImage img = render_basin(cfg);
  std::string ppm = img.to_ppm();
  const std::string header = "P6\n16 16\n255\n";
  CHECK(ppm.substr(0, header.size()) == header);
  CHECK(ppm.size() == header.size() + 16 * 16 * 3);
}

TEST_CASE("derivative-free methods also render") {
  BasinConfig cfg =
      square_config(MethodKind::Steffensen, {{-1, 0}, {0, 0}, {1, 0}}, 32);
  BasinImage img = render_basin(cfg);
  CHECK(img.rgb.size() == 32u * 32u * 3u);
  cfg.method = MethodKind::Om8Df;
  cfg.shift_exponent = 3;
  CHECK_NOTHROW(render_basin(cfg));
}
