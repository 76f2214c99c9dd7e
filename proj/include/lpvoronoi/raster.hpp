#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "lpvoronoi/bisector.hpp"
#include "lpvoronoi/errors.hpp"
#include "lpvoronoi/norms.hpp"

namespace lpv {

// Pixel raster over a world rectangle. Pixel (i, j) is sampled at the centre
// of its world cell; row j = 0 is the top of the rectangle.
struct Grid {
  int width = 0;
  int height = 0;
  double xmin = 0.0, ymin = 0.0, xmax = 0.0, ymax = 0.0;

  double pixel_width() const { return (xmax - xmin) / width; }
  double pixel_height() const { return (ymax - ymin) / height; }
  double world_x(int i) const { return xmin + (i + 0.5) * (xmax - xmin) / width; }
  double world_y(int j) const { return ymax - (j + 0.5) * (ymax - ymin) / height; }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * width + i;
  }
  std::size_t size() const {
    return static_cast<std::size_t>(width) * height;
  }
};

inline Grid make_grid(int width, int height, double xmin, double ymin,
                      double xmax, double ymax) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("make_grid: pixel dimensions must be positive");
  }
  if (!std::isfinite(xmin) || !std::isfinite(ymin) || !std::isfinite(xmax) ||
      !std::isfinite(ymax) || !(xmax > xmin) || !(ymax > ymin)) {
    throw std::invalid_argument("make_grid: window must satisfy xmax > xmin, ymax > ymin");
  }
  return Grid{width, height, xmin, ymin, xmax, ymax};
}

inline constexpr std::int32_t kTie = -1;

// Per-pixel nearest-site assignment. owners holds a site index or kTie for
// an exact distance tie; bisector_mask is set where a 4-neighbour has a
// different owner or the pixel itself is a tie.
struct OwnerMap {
  Grid grid;
  int site_count = 0;
  std::vector<std::int32_t> owners;
  std::vector<std::uint8_t> bisector_mask;

  std::int32_t owner(int i, int j) const { return owners[grid.index(i, j)]; }
  bool masked(int i, int j) const { return bisector_mask[grid.index(i, j)] != 0; }
};

inline OwnerMap render_owners(std::span<const Vec2> sites, const Exponent& e,
                              const Grid& grid) {
  if (sites.empty()) throw NoSites();
  for (std::size_t i = 0; i < sites.size(); ++i) {
    detail::require_finite(sites[i], "render_owners");
    for (std::size_t j = i + 1; j < sites.size(); ++j) {
      if (sites[i] == sites[j]) throw DuplicateSites();
    }
  }

  OwnerMap map;
  map.grid = grid;
  map.site_count = static_cast<int>(sites.size());
  map.owners.resize(grid.size());
  map.bisector_mask.assign(grid.size(), 0);

  for (int j = 0; j < grid.height; ++j) {
    for (int i = 0; i < grid.width; ++i) {
      const Vec2 q{grid.world_x(i), grid.world_y(j)};
      std::int32_t best = 0;
      bool tied = false;
      for (std::size_t k = 1; k < sites.size(); ++k) {
        switch (compare_distance(q, sites[best], sites[k], e)) {
          case Ordering::CloserToA:
            break;
          case Ordering::CloserToB:
            best = static_cast<std::int32_t>(k);
            tied = false;
            break;
          case Ordering::Equidistant:
            tied = true;
            break;
        }
      }
      map.owners[grid.index(i, j)] = tied ? kTie : best;
    }
  }

  for (int j = 0; j < grid.height; ++j) {
    for (int i = 0; i < grid.width; ++i) {
      const std::int32_t own = map.owner(i, j);
      bool edge = own == kTie;
      if (!edge && i > 0) edge = map.owner(i - 1, j) != own;
      if (!edge && i + 1 < grid.width) edge = map.owner(i + 1, j) != own;
      if (!edge && j > 0) edge = map.owner(i, j - 1) != own;
      if (!edge && j + 1 < grid.height) edge = map.owner(i, j + 1) != own;
      map.bisector_mask[grid.index(i, j)] = edge ? 1 : 0;
    }
  }
  return map;
}

// Number of 4-connected components of the site's pixels, tie and
// bisector-mask pixels excluded.
inline int count_faces(const OwnerMap& map, int site) {
  if (site < 0 || site >= map.site_count) {
    throw std::invalid_argument("count_faces: site index out of range");
  }
  const Grid& g = map.grid;
  const auto keep = [&](int i, int j) {
    return map.owner(i, j) == site && !map.masked(i, j);
  };

  std::vector<std::uint8_t> seen(g.size(), 0);
  std::vector<std::pair<int, int>> stack;
  int faces = 0;
  for (int j = 0; j < g.height; ++j) {
    for (int i = 0; i < g.width; ++i) {
      if (seen[g.index(i, j)] || !keep(i, j)) continue;
      ++faces;
      seen[g.index(i, j)] = 1;
      stack.push_back({i, j});
      while (!stack.empty()) {
        const auto [ci, cj] = stack.back();
        stack.pop_back();
        const int ni[4] = {ci - 1, ci + 1, ci, ci};
        const int nj[4] = {cj, cj, cj - 1, cj + 1};
        for (int t = 0; t < 4; ++t) {
          if (ni[t] < 0 || ni[t] >= g.width || nj[t] < 0 || nj[t] >= g.height)
            continue;
          if (seen[g.index(ni[t], nj[t])] || !keep(ni[t], nj[t])) continue;
          seen[g.index(ni[t], nj[t])] = 1;
          stack.push_back({ni[t], nj[t]});
        }
      }
    }
  }
  return faces;
}

inline std::string face_counts_csv(const OwnerMap& map) {
  std::string csv = "site,faces\n";
  for (int k = 0; k < map.site_count; ++k) {
    csv += std::to_string(k) + "," + std::to_string(count_faces(map, k)) + "\n";
  }
  return csv;
}

struct BitMask {
  Grid grid;
  std::vector<std::uint8_t> bits;

  bool get(int i, int j) const { return bits[grid.index(i, j)] != 0; }
};

// Marks every pixel whose field sign differs from a 4-neighbour's, i.e. the
// zero set of f crosses between the two pixel centres.
template <class F>
BitMask mark_sign_crossings(F&& f, const Grid& grid) {
  std::vector<std::int8_t> sign(grid.size());
  for (int j = 0; j < grid.height; ++j) {
    for (int i = 0; i < grid.width; ++i) {
      const double v = f(Vec2{grid.world_x(i), grid.world_y(j)});
      sign[grid.index(i, j)] = static_cast<std::int8_t>(detail::sign_of(v));
    }
  }
  BitMask mask{grid, std::vector<std::uint8_t>(grid.size(), 0)};
  for (int j = 0; j < grid.height; ++j) {
    for (int i = 0; i < grid.width; ++i) {
      const std::int8_t s = sign[grid.index(i, j)];
      bool hit = false;
      if (i > 0) hit |= sign[grid.index(i - 1, j)] != s;
      if (!hit && i + 1 < grid.width) hit |= sign[grid.index(i + 1, j)] != s;
      if (!hit && j > 0) hit |= sign[grid.index(i, j - 1)] != s;
      if (!hit && j + 1 < grid.height) hit |= sign[grid.index(i, j + 1)] != s;
      mask.bits[grid.index(i, j)] = hit ? 1 : 0;
    }
  }
  return mask;
}

// Implicit-curve rendering of the circle lp_norm(q - center) = r by sign
// crossings. A fixed |distance - r| < eps band would miss the branches for
// p < 0, where the distance field has poles along the axes through the
// centre.
inline BitMask render_circle(Vec2 center, double r, const Exponent& e,
                             const Grid& grid) {
  detail::require_finite(center, "render_circle");
  if (!(r > 0.0)) throw std::invalid_argument("render_circle: r must be positive");
  return mark_sign_crossings(
      [&](Vec2 q) { return lp_norm(q - center, e) - r; }, grid);
}

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;

  friend bool operator==(Rgb a, Rgb b) {
    return a.r == b.r && a.g == b.g && a.b == b.b;
  }
};

// Hue wheel: site i gets hue i/n at full saturation and value.
inline std::vector<Rgb> default_palette(int n) {
  if (n < 1) throw std::invalid_argument("default_palette: n must be >= 1");
  std::vector<Rgb> palette;
  palette.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double h6 = 6.0 * i / n;
    const int sector = static_cast<int>(h6) % 6;
    const double frac = h6 - static_cast<int>(h6);
    double rgb[3] = {0.0, 0.0, 0.0};
    switch (sector) {
      case 0: rgb[0] = 1.0; rgb[1] = frac; break;
      case 1: rgb[0] = 1.0 - frac; rgb[1] = 1.0; break;
      case 2: rgb[1] = 1.0; rgb[2] = frac; break;
      case 3: rgb[1] = 1.0 - frac; rgb[2] = 1.0; break;
      case 4: rgb[0] = frac; rgb[2] = 1.0; break;
      default: rgb[0] = 1.0; rgb[2] = 1.0 - frac; break;
    }
    palette.push_back(Rgb{static_cast<std::uint8_t>(std::lround(255.0 * rgb[0])),
                          static_cast<std::uint8_t>(std::lround(255.0 * rgb[1])),
                          static_cast<std::uint8_t>(std::lround(255.0 * rgb[2]))});
  }
  return palette;
}

namespace detail {

inline std::ofstream open_binary(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  return out;
}

inline void finish_write(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("write to " + path + " failed");
}

}  // namespace detail

// Binary PGM, maxval 255: set pixels white (255) on black.
inline void write_pgm(const BitMask& mask, const std::string& path) {
  std::ofstream out = detail::open_binary(path);
  out << "P5\n" << mask.grid.width << " " << mask.grid.height << "\n255\n";
  std::vector<char> payload(mask.grid.size());
  for (std::size_t t = 0; t < payload.size(); ++t) {
    payload[t] = mask.bits[t] ? static_cast<char>(255) : 0;
  }
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  detail::finish_write(out, path);
}

// Grayscale owner map: site i gets level round(255 (i+1) / n); tie and
// bisector pixels are black.
inline void write_pgm(const OwnerMap& map, const std::string& path) {
  std::ofstream out = detail::open_binary(path);
  out << "P5\n" << map.grid.width << " " << map.grid.height << "\n255\n";
  std::vector<char> payload(map.grid.size());
  for (std::size_t t = 0; t < payload.size(); ++t) {
    const std::int32_t own = map.owners[t];
    if (own == kTie || map.bisector_mask[t]) {
      payload[t] = 0;
    } else {
      payload[t] = static_cast<char>(
          std::lround(255.0 * (own + 1) / map.site_count));
    }
  }
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  detail::finish_write(out, path);
}

// Binary PPM, maxval 255: tie and bisector pixels black, everything else in
// palette colour by owner.
inline void write_ppm(const OwnerMap& map, std::span<const Rgb> palette,
                      const std::string& path) {
  if (static_cast<int>(palette.size()) < map.site_count) {
    throw std::invalid_argument("write_ppm: palette smaller than site count");
  }
  std::ofstream out = detail::open_binary(path);
  out << "P6\n" << map.grid.width << " " << map.grid.height << "\n255\n";
  std::vector<char> payload(map.grid.size() * 3);
  for (std::size_t t = 0; t < map.grid.size(); ++t) {
    const std::int32_t own = map.owners[t];
    Rgb c{0, 0, 0};
    if (own != kTie && !map.bisector_mask[t]) c = palette[own];
    payload[3 * t] = static_cast<char>(c.r);
    payload[3 * t + 1] = static_cast<char>(c.g);
    payload[3 * t + 2] = static_cast<char>(c.b);
  }
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  detail::finish_write(out, path);
}

}  // namespace lpv
