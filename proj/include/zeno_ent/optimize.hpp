#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>

#include "zeno_ent/error.hpp"

namespace zeno_ent::opt {

struct Maximum1D {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section search for the maximum of a unimodal f on [lo, hi]; stops when the
/// bracket is narrower than tol.
template <class F>
Maximum1D golden_section_maximize(F&& f, double lo, double hi, double tol = 1e-4) {
  detail::require(std::isfinite(lo) && std::isfinite(hi) && lo <= hi, "invalid bracket");
  detail::require(tol > 0.0, "tolerance must be > 0");
  const double invPhi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - invPhi * (b - a);
  double d = a + invPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invPhi * (b - a);
      fd = f(d);
    }
  }
  // the endpoints are candidates too: the optimum may sit on the boundary
  Maximum1D best{0.5 * (a + b), f(0.5 * (a + b))};
  for (double x : {lo, hi, c, d}) {
    const double v = f(x);
    if (v > best.value) best = {x, v};
  }
  return best;
}

/// Best point of f on an evenly spaced grid of `points` nodes over [lo, hi].
template <class F>
Maximum1D grid_maximize(F&& f, double lo, double hi, std::size_t points) {
  detail::require(points >= 2, "grid needs at least two points");
  Maximum1D best{lo, f(lo)};
  for (std::size_t i = 1; i < points; ++i) {
    const double x = lo + (hi - lo) * double(i) / double(points - 1);
    const double v = f(x);
    if (v > best.value) best = {x, v};
  }
  return best;
}

/// Coarse grid scan followed by golden-section refinement within one grid cell.
template <class F>
Maximum1D maximize_1d(F&& f, double lo, double hi, std::size_t points = 201, double tol = 1e-4) {
  const Maximum1D coarse = grid_maximize(f, lo, hi, points);
  const double cell = (hi - lo) / double(points - 1);
  const Maximum1D fine = golden_section_maximize(f, std::max(lo, coarse.x - cell),
                                                 std::min(hi, coarse.x + cell), tol);
  return fine.value >= coarse.value ? fine : coarse;
}

struct Maximum2D {
  std::array<double, 2> x{};
  double value = 0.0;
};

struct Box2D {
  std::array<double, 2> lo{};
  std::array<double, 2> hi{};
};

/// Grid scan over a 2-D box, then alternating golden-section sweeps along each axis,
/// each restricted to one coarse cell around the incumbent, until a sweep moves
/// both coordinates by less than tol.
template <class F>
Maximum2D maximize_2d(F&& f, const Box2D& box, std::size_t points = 201, double tol = 1e-4) {
  detail::require(points >= 2, "grid needs at least two points");
  std::array<double, 2> cell{};
  for (int a = 0; a < 2; ++a) {
    detail::require(box.lo[a] <= box.hi[a], "invalid search box");
    cell[a] = (box.hi[a] - box.lo[a]) / double(points - 1);
  }

  Maximum2D best{{box.lo[0], box.lo[1]}, f(box.lo[0], box.lo[1])};
  for (std::size_t i = 0; i < points; ++i) {
    const double x = box.lo[0] + cell[0] * double(i);
    for (std::size_t j = 0; j < points; ++j) {
      const double y = box.lo[1] + cell[1] * double(j);
      const double v = f(x, y);
      if (v > best.value) best = {{x, y}, v};
    }
  }

  const std::array<double, 2> anchor = best.x;
  for (int sweep = 0; sweep < 50; ++sweep) {
    const std::array<double, 2> before = best.x;
    for (int a = 0; a < 2; ++a) {
      auto along = [&](double t) {
        std::array<double, 2> p = best.x;
        p[a] = t;
        return f(p[0], p[1]);
      };
      const double lo = std::max(box.lo[a], anchor[a] - cell[a]);
      const double hi = std::min(box.hi[a], anchor[a] + cell[a]);
      const Maximum1D line = golden_section_maximize(along, lo, hi, 0.1 * tol);
      if (line.value >= best.value) {
        best.x[a] = line.x;
        best.value = line.value;
      }
    }
    if (std::abs(best.x[0] - before[0]) < tol && std::abs(best.x[1] - before[1]) < tol) break;
  }
  return best;
}

}  // namespace zeno_ent::opt
