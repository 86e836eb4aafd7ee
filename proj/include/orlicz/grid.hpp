#pragma once

#include <array>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace orlicz {

using Point = std::array<double, 3>;
using FieldFn = std::function<double(const Point&)>;
using GradFn = std::function<Point(const Point&)>;

namespace detail {

// 8-point Gauss-Legendre rule on [-1, 1]
inline constexpr std::array<double, 8> kGlNodes = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
inline constexpr std::array<double, 8> kGlWeights = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

inline Point numeric_gradient(const FieldFn& f, const Point& x, int dim) {
  Point g{0.0, 0.0, 0.0};
  for (int i = 0; i < dim; ++i) {
    const double h = 1e-6 * (1.0 + std::abs(x[i]));
    Point xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    g[i] = (f(xp) - f(xm)) / (2.0 * h);
  }
  return g;
}

}  // namespace detail

// A scalar field sampled with measure weights, on a shell-resolved ball or
// a cell-centered Cartesian box.
struct SampledFunction {
  enum class Grid { radial, cartesian };

  Grid grid = Grid::cartesian;
  int dim = 2;

  // radial metadata
  double radius = 0.0;
  int shell_count = 0;
  int azimuth_count = 0;            // n=2: angles per circle; n=3: azimuths per polar node
  std::vector<int> shell_of;        // node -> shell index
  std::vector<double> shell_r;      // shell center radius
  std::vector<double> shell_width;
  std::vector<double> angular_weight;  // node weight on the unit sphere

  // cartesian metadata
  Point box_lo{0, 0, 0}, box_hi{0, 0, 0};
  int cells = 0;  // per axis

  std::vector<Point> coords;
  std::vector<double> weights;
  std::vector<double> values;
  std::vector<Point> gradients;

  std::size_t size() const { return values.size(); }

  double domain_measure() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
  }

  double mean() const {
    double s = 0.0, m = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
      s += weights[i] * values[i];
      m += weights[i];
    }
    return s / m;
  }

  double grad_norm(std::size_t i) const {
    const auto& g = gradients[i];
    return std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]);
  }

  // Ball of radius R in dimension n (2 or 3); shell weights are exact shell
  // volumes so the weights sum to |B_R| to machine precision.
  static SampledFunction radial(int n, double big_r, int shells, int azimuths,
                                const FieldFn& f, const GradFn* grad = nullptr) {
    if (n != 2 && n != 3) throw std::domain_error("radial grids support n in {2, 3}");
    if (shells < 2 || azimuths < 4) throw std::domain_error("radial grid too coarse");
    SampledFunction u;
    u.grid = Grid::radial;
    u.dim = n;
    u.radius = big_r;
    u.shell_count = shells;
    u.azimuth_count = azimuths;
    const double dr = big_r / shells;

    // unit-sphere quadrature nodes
    std::vector<Point> dirs;
    std::vector<double> aw;
    if (n == 2) {
      for (int k = 0; k < azimuths; ++k) {
        const double phi = 2.0 * M_PI * (k + 0.5) / azimuths;
        dirs.push_back({std::cos(phi), std::sin(phi), 0.0});
        aw.push_back(2.0 * M_PI / azimuths);
      }
    } else {
      for (int g = 0; g < 8; ++g) {
        const double mu = detail::kGlNodes[g];
        const double sin_t = std::sqrt(std::max(0.0, 1.0 - mu * mu));
        for (int k = 0; k < azimuths; ++k) {
          const double phi = 2.0 * M_PI * (k + 0.5) / azimuths;
          dirs.push_back({sin_t * std::cos(phi), sin_t * std::sin(phi), mu});
          aw.push_back(detail::kGlWeights[g] * 2.0 * M_PI / azimuths);
        }
      }
    }

    for (int j = 0; j < shells; ++j) {
      const double ra = j * dr, rb = (j + 1) * dr;
      const double rc = 0.5 * (ra + rb);
      const double radial_part = (std::pow(rb, n) - std::pow(ra, n)) / n;
      for (std::size_t d = 0; d < dirs.size(); ++d) {
        const Point x{rc * dirs[d][0], rc * dirs[d][1], rc * dirs[d][2]};
        u.coords.push_back(x);
        u.weights.push_back(radial_part * aw[d]);
        u.values.push_back(f(x));
        u.gradients.push_back(grad ? (*grad)(x) : detail::numeric_gradient(f, x, n));
        u.shell_of.push_back(j);
        u.angular_weight.push_back(aw[d]);
      }
      u.shell_r.push_back(rc);
      u.shell_width.push_back(dr);
    }
    return u;
  }

  // Cell-centered Cartesian box grid, dimension 1-3.
  static SampledFunction cartesian(int n, const Point& lo, const Point& hi, int m,
                                   const FieldFn& f, const GradFn* grad = nullptr) {
    if (n < 1 || n > 3) throw std::domain_error("cartesian grids support n in {1, 2, 3}");
    if (m < 2) throw std::domain_error("cartesian grid too coarse");
    SampledFunction u;
    u.grid = Grid::cartesian;
    u.dim = n;
    u.box_lo = lo;
    u.box_hi = hi;
    u.cells = m;
    double w = 1.0;
    Point h{0, 0, 0};
    for (int i = 0; i < n; ++i) {
      h[i] = (hi[i] - lo[i]) / m;
      w *= h[i];
    }
    const int nx = m, ny = n >= 2 ? m : 1, nz = n >= 3 ? m : 1;
    for (int k = 0; k < nz; ++k) {
      for (int jj = 0; jj < ny; ++jj) {
        for (int i = 0; i < nx; ++i) {
          const Point x{lo[0] + (i + 0.5) * h[0], n >= 2 ? lo[1] + (jj + 0.5) * h[1] : 0.0,
                        n >= 3 ? lo[2] + (k + 0.5) * h[2] : 0.0};
          u.coords.push_back(x);
          u.weights.push_back(w);
          u.values.push_back(f(x));
          u.gradients.push_back(grad ? (*grad)(x) : detail::numeric_gradient(f, x, n));
        }
      }
    }
    return u;
  }

  // Rebuild gradients from the stored values by centered second-order
  // differences (one-sided at the boundary). Cartesian grids only.
  void fill_gradients_fd() {
    if (grid != Grid::cartesian)
      throw std::runtime_error("fill_gradients_fd: only cartesian grids supported");
    const int m = cells;
    const int nx = m, ny = dim >= 2 ? m : 1, nz = dim >= 3 ? m : 1;
    const auto idx = [&](int i, int j, int k) {
      return static_cast<std::size_t>((k * ny + j) * nx + i);
    };
    Point h{0, 0, 0};
    for (int a = 0; a < dim; ++a) h[a] = (box_hi[a] - box_lo[a]) / m;
    for (int k = 0; k < nz; ++k) {
      for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
          Point g{0, 0, 0};
          const int ijk[3] = {i, j, k};
          const int lim[3] = {nx, ny, nz};
          for (int a = 0; a < dim; ++a) {
            int ip[3] = {i, j, k}, im[3] = {i, j, k};
            ip[a] = std::min(ijk[a] + 1, lim[a] - 1);
            im[a] = std::max(ijk[a] - 1, 0);
            const double dv = values[idx(ip[0], ip[1], ip[2])] - values[idx(im[0], im[1], im[2])];
            g[a] = dv / ((ip[a] - im[a]) * h[a]);
          }
          gradients[idx(i, j, k)] = g;
        }
      }
    }
  }

  bool same_grid(const SampledFunction& o) const {
    return grid == o.grid && dim == o.dim && size() == o.size();
  }

  nlohmann::json metadata() const {
    nlohmann::json m;
    m["dim"] = dim;
    if (grid == Grid::radial) {
      m["grid"] = "radial";
      m["radius"] = radius;
      m["shells"] = shell_count;
      m["azimuths"] = azimuth_count;
    } else {
      m["grid"] = "cartesian";
      m["lo"] = {box_lo[0], box_lo[1], box_lo[2]};
      m["hi"] = {box_hi[0], box_hi[1], box_hi[2]};
      m["cells"] = cells;
    }
    return m;
  }
};

// Flat CSV with a structured header describing the grid; row layout:
// x, y, z, weight, value, gx, gy, gz
inline void export_csv(const SampledFunction& u, std::ostream& out) {
  out << "# grid: " << u.metadata().dump() << "\n";
  out << "x,y,z,weight,value,gx,gy,gz\n";
  out.precision(17);
  for (std::size_t i = 0; i < u.size(); ++i) {
    out << u.coords[i][0] << ',' << u.coords[i][1] << ',' << u.coords[i][2] << ','
        << u.weights[i] << ',' << u.values[i] << ',' << u.gradients[i][0] << ','
        << u.gradients[i][1] << ',' << u.gradients[i][2] << "\n";
  }
}

inline SampledFunction import_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# grid: ", 0) != 0)
    throw std::runtime_error("import_csv: missing grid header");
  const auto meta = nlohmann::json::parse(line.substr(8));
  std::vector<std::array<double, 8>> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'x') continue;
    std::array<double, 8> row{};
    std::stringstream ss(line);
    std::string cell;
    for (int c = 0; c < 8; ++c) {
      if (!std::getline(ss, cell, ','))
        throw std::runtime_error("import_csv: short row '" + line + "'");
      row[c] = std::stod(cell);
    }
    rows.push_back(row);
  }
  // Rebuild the canonical layout from metadata, then overwrite samples.
  std::size_t next = 0;
  const FieldFn zero = [](const Point&) { return 0.0; };
  SampledFunction u =
      meta.at("grid") == "radial"
          ? SampledFunction::radial(meta.at("dim"), meta.at("radius"), meta.at("shells"),
                                    meta.at("azimuths"), zero)
          : SampledFunction::cartesian(
                meta.at("dim"),
                {meta.at("lo")[0], meta.at("lo")[1], meta.at("lo")[2]},
                {meta.at("hi")[0], meta.at("hi")[1], meta.at("hi")[2]}, meta.at("cells"), zero);
  if (rows.size() != u.size())
    throw std::runtime_error("import_csv: row count does not match the declared grid");
  for (std::size_t i = 0; i < u.size(); ++i) {
    u.values[i] = rows[i][4];
    u.gradients[i] = {rows[i][5], rows[i][6], rows[i][7]};
    (void)next;
  }
  return u;
}

}  // namespace orlicz
