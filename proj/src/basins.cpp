#include "mproots/basins.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "mproots/step_kernels.hpp"

namespace mproots {

namespace {

using Cplx = std::complex<double>;

bool finite(const Cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

std::vector<Cplx> derivative_coeffs(const std::vector<Cplx>& c) {
  std::vector<Cplx> d;
  for (size_t k = 1; k < c.size(); ++k) d.push_back(c[k] * static_cast<double>(k));
  return d;
}

std::vector<Cplx> normalized(const std::vector<Cplx>& coeffs) {
  std::vector<Cplx> c = coeffs;
  while (!c.empty() && c.back() == Cplx{}) c.pop_back();
  if (c.size() < 3) throw std::invalid_argument("polynomial degree must be >= 2");
  return c;
}

struct MethodTable {
  kernels::WeightSet<Cplx> weights;
  std::vector<Cplx> g, h;  // sm7
};

MethodTable method_table(const BasinConfig& cfg) {
  MethodTable t;
  t.weights = kernels::make_weight_set<Cplx>(cfg.alpha, cfg.beta, cfg.gamma, cfg.delta);
  t.g = {Cplx(1), Cplx(1)};
  t.h = {Cplx(1), Cplx(0), Cplx(1)};
  return t;
}

const std::array<std::array<std::uint8_t, 3>, 8> kRootColors = {{
    {230, 80, 60},
    {70, 190, 90},
    {80, 120, 235},
    {235, 190, 60},
    {180, 90, 210},
    {60, 200, 200},
    {240, 130, 180},
    {150, 150, 150},
}};

void shade_pixel(std::uint8_t* px, const PixelOutcome& o, int max_iters) {
  if (o.root_index < 0) {
    px[0] = px[1] = px[2] = 0;
    return;
  }
  const auto& base = kRootColors[static_cast<size_t>(o.root_index) % kRootColors.size()];
  double fade = 1.0 - 0.7 * std::min(o.iterations, max_iters) / static_cast<double>(max_iters);
  for (int c = 0; c < 3; ++c) {
    px[c] = static_cast<std::uint8_t>(std::lround(base[static_cast<size_t>(c)] * fade));
  }
}

template <class Render>
BasinImage render_common(const BasinConfig& cfg, Render&& loop) {
  if (cfg.re_min >= cfg.re_max || cfg.im_min >= cfg.im_max) {
    throw std::invalid_argument("window must have positive extent");
  }
  if (cfg.width < 2 || cfg.height < 2) {
    throw std::invalid_argument("resolution must be at least 2x2");
  }
  std::vector<Cplx> roots = polynomial_roots(cfg.polynomial);

  BasinImage img;
  img.width = cfg.width;
  img.height = cfg.height;
  img.rgb.assign(static_cast<size_t>(cfg.width) * cfg.height * 3, 0);
  loop(roots, img);
  return img;
}

}  // namespace

std::string BasinImage::to_ppm() const {
  std::string out = "P6\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(rgb.data()), rgb.size());
  return out;
}

void write_ppm(const BasinImage& image, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  std::string ppm = image.to_ppm();
  out.write(ppm.data(), static_cast<std::streamsize>(ppm.size()));
}

std::vector<Cplx> polynomial_roots(const std::vector<Cplx>& coeffs) {
  std::vector<Cplx> c = normalized(coeffs);
  std::vector<Cplx> dc = derivative_coeffs(c);
  const size_t degree = c.size() - 1;

  double radius = 0;
  for (size_t k = 0; k + 1 < c.size(); ++k) {
    radius = std::max(radius, std::abs(c[k] / c.back()));
  }
  radius = 1 + radius;

  std::vector<Cplx> z(degree);
  for (size_t k = 0; k < degree; ++k) {
    double angle = 2 * M_PI * static_cast<double>(k) / static_cast<double>(degree) + 0.4;
    z[k] = radius * Cplx(std::cos(angle), std::sin(angle));
  }

  bool converged = false;
  for (int pass = 0; pass < 500 && !converged; ++pass) {
    converged = true;
    for (size_t k = 0; k < degree; ++k) {
      Cplx p = kernels::eval_poly(c, z[k]);
      Cplx dp = kernels::eval_poly(dc, z[k]);
      if (dp == Cplx{}) {
        z[k] += Cplx(1e-8, 1e-8);
        converged = false;
        continue;
      }
      Cplx newton = p / dp;
      Cplx sum = 0;
      for (size_t j = 0; j < degree; ++j) {
        if (j != k) sum += 1.0 / (z[k] - z[j]);
      }
      Cplx w = newton / (1.0 - newton * sum);
      if (!finite(w)) w = newton;
      z[k] -= w;
      if (!finite(z[k])) throw NoRootsFound();
      if (std::abs(w) > 1e-13 * (1 + std::abs(z[k]))) converged = false;
    }
  }
  if (!converged) throw NoRootsFound();

  std::sort(z.begin(), z.end(), [](const Cplx& a, const Cplx& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return z;
}

namespace {

PixelOutcome classify_core(const BasinConfig& cfg, const std::vector<Cplx>& c,
                           const std::vector<Cplx>& dc, const MethodTable& table,
                           const std::vector<Cplx>& roots, Cplx z0) {
  auto f = [&c](const Cplx& v) { return kernels::eval_poly(c, v); };
  auto df = [&dc](const Cplx& v) { return kernels::eval_poly(dc, v); };

  Cplx z = z0;
  Cplx fz = f(z);
  for (int it = 0; it <= cfg.max_iters; ++it) {
    if (!finite(z)) break;
    for (size_t r = 0; r < roots.size(); ++r) {
      if (std::abs(z - roots[r]) < cfg.tol) {
        return {static_cast<int>(r), it, z};
      }
    }
    if (it == cfg.max_iters) break;

    kernels::StepResult<Cplx> step;
    switch (cfg.method) {
      case MethodKind::Newton:
        step = kernels::newton_step(f, df, z, fz);
        break;
      case MethodKind::Steffensen:
        step = kernels::steffensen_step(f, z, fz);
        break;
      case MethodKind::Sm7:
        step = kernels::sm7_step(f, df, z, fz, table.g, table.h);
        break;
      case MethodKind::Om8:
        step = kernels::om8_step(f, df, z, fz, table.weights);
        break;
      case MethodKind::Om8Df:
        step = kernels::om8df_step(f, z, fz, table.weights, cfg.shift_exponent,
                                   Cplx(cfg.shift_scale));
        break;
    }
    if (step.flag == kernels::StepFlag::Ok || step.flag == kernels::StepFlag::EarlyRoot) {
      z = step.x_next;
      fz = f(z);
    } else {
      break;
    }
  }
  return {-1, cfg.max_iters, z};
}

void render_row(const BasinConfig& cfg, const std::vector<Cplx>& c,
                const std::vector<Cplx>& dc, const MethodTable& table,
                const std::vector<Cplx>& roots, BasinImage& img, int j) {
  const double dx = (cfg.re_max - cfg.re_min) / cfg.width;
  const double dy = (cfg.im_max - cfg.im_min) / cfg.height;
  for (int i = 0; i < cfg.width; ++i) {
    Cplx seed(cfg.re_min + (i + 0.5) * dx, cfg.im_max - (j + 0.5) * dy);
    PixelOutcome o = classify_core(cfg, c, dc, table, roots, seed);
    shade_pixel(&img.rgb[(static_cast<size_t>(j) * cfg.width + i) * 3], o, cfg.max_iters);
  }
}

}  // namespace

PixelOutcome classify_point(const BasinConfig& cfg, const std::vector<Cplx>& roots,
                            Cplx z0) {
  const std::vector<Cplx> c = normalized(cfg.polynomial);
  const std::vector<Cplx> dc = derivative_coeffs(c);
  return classify_core(cfg, c, dc, method_table(cfg), roots, z0);
}

BasinImage render_basin(const BasinConfig& cfg) {
  return render_common(cfg, [&cfg](const std::vector<Cplx>& roots, BasinImage& img) {
    const std::vector<Cplx> c = normalized(cfg.polynomial);
    const std::vector<Cplx> dc = derivative_coeffs(c);
    const MethodTable table = method_table(cfg);
#pragma omp parallel for schedule(dynamic)
    for (int j = 0; j < cfg.height; ++j) {
      render_row(cfg, c, dc, table, roots, img, j);
    }
  });
}

BasinImage render_basin_serial(const BasinConfig& cfg) {
  return render_common(cfg, [&cfg](const std::vector<Cplx>& roots, BasinImage& img) {
    const std::vector<Cplx> c = normalized(cfg.polynomial);
    const std::vector<Cplx> dc = derivative_coeffs(c);
    const MethodTable table = method_table(cfg);
    for (int j = 0; j < cfg.height; ++j) {
      render_row(cfg, c, dc, table, roots, img, j);
    }
  });
}

}  // namespace mproots
