#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "mproots/solvers.hpp"

namespace mproots {

struct NoRootsFound : std::runtime_error {
  NoRootsFound() : std::runtime_error("polynomial root preprocessing failed") {}
};

/// Attraction-basin rendering runs at machine precision: it is a
/// qualitative picture, and the iteration kernels are field-generic so the
/// same formulas apply over the complex plane.
struct BasinConfig {
  double re_min = -2, re_max = 2, im_min = -2, im_max = 2;
  int width = 512, height = 512;
  int max_iters = 25;
  double tol = 1e-8;
  MethodKind method = MethodKind::Om8;
  // Weight parameters for Om8/Om8Df.
  double alpha = 0, beta = 3, gamma = 0, delta = 1;
  int shift_exponent = 3;
  double shift_scale = 1;
  // Ascending coefficients c0 + c1 z + ... (degree >= 2).
  std::vector<std::complex<double>> polynomial;
};

struct BasinImage {
  int width = 0, height = 0;
  std::vector<std::uint8_t> rgb;  // 3 bytes per pixel, rows top to bottom

  /// PPM P6: "P6\n<width> <height>\n255\n" followed by the RGB bytes.
  std::string to_ppm() const;
};

void write_ppm(const BasinImage& image, const std::string& path);

/// Roots of the polynomial by simultaneous (Aberth) iteration, sorted by
/// real part then imaginary part so colors are deterministic.
std::vector<std::complex<double>> polynomial_roots(
    const std::vector<std::complex<double>>& coeffs);

struct PixelOutcome {
  int root_index = -1;  // -1: not converged
  int iterations = 0;
  std::complex<double> z_final{};
};

/// Iterates one seed; exposed for tests of the root-classification
/// invariant and the basin symmetries.
PixelOutcome classify_point(const BasinConfig& cfg,
                            const std::vector<std::complex<double>>& roots,
                            std::complex<double> z0);

/// OpenMP row-parallel renderer.
BasinImage render_basin(const BasinConfig& cfg);

/// Serial reference renderer; produces byte-identical output.
BasinImage render_basin_serial(const BasinConfig& cfg);

}  // namespace mproots
