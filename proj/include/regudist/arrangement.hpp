#pragma once

#include "regudist/geometry.hpp"

#include <algorithm>
#include <vector>

namespace regudist {

/// Vertical-slab decomposition of a closed box cut by a set of lines.
///
/// Slab boundaries are the box sides, vertical lines, and every pairwise
/// crossing of non-vertical lines (box top and bottom included). Inside a slab
/// no two lines cross, so the lines that pass through it split it into
/// trapezoidal cells y in (lower(x), upper(x)) with linear bounds.
template <Scalar T>
class Arrangement {
 public:
  struct Bound {
    T slope, intercept;  // y = slope * x + intercept
    T at(const T& x) const { return slope * x + intercept; }
    friend bool operator==(const Bound& l, const Bound& r) {
      return l.slope == r.slope && l.intercept == r.intercept;
    }
  };
  struct Cell {
    Bound lower, upper;
    Point<T> rep;  // interior representative point
    bool touches_bottom = false;
    bool touches_top = false;
  };
  struct Slab {
    T x_lo, x_hi;
    std::vector<Cell> cells;
  };

  Arrangement(std::vector<Line<T>> lines, const Rect<T>& box) : box_(box) {
    for (auto& l : lines) l = l.normalized();
    std::sort(lines.begin(), lines.end());
    lines.erase(std::unique(lines.begin(), lines.end()), lines.end());

    std::vector<T> xs{box.x_lo, box.x_hi};
    std::vector<Bound> bounds{{T(0), box.y_lo}, {T(0), box.y_hi}};
    for (const auto& l : lines) {
      if (l.b == T(0)) {
        const T x = l.c / l.a;
        if (box.x_lo < x && x < box.x_hi) xs.push_back(x);
      } else {
        Bound b{-l.a / l.b, l.c / l.b};
        if (!(b == bounds[0]) && !(b == bounds[1])) bounds.push_back(b);
      }
    }
    for (std::size_t i = 0; i < bounds.size(); ++i)
      for (std::size_t j = i + 1; j < bounds.size(); ++j) {
        if (bounds[i].slope == bounds[j].slope) continue;
        const T x = (bounds[j].intercept - bounds[i].intercept) / (bounds[i].slope - bounds[j].slope);
        if (box.x_lo < x && x < box.x_hi) xs.push_back(x);
      }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    for (std::size_t s = 0; s + 1 < xs.size(); ++s) {
      Slab slab{xs[s], xs[s + 1], {}};
      const T xm = (slab.x_lo + slab.x_hi) / T(2);
      std::vector<std::pair<T, std::size_t>> active;
      for (std::size_t k = 0; k < bounds.size(); ++k) {
        const T y = bounds[k].at(xm);
        if (!(y < box.y_lo) && !(box.y_hi < y)) active.emplace_back(y, k);
      }
      std::sort(active.begin(), active.end(),
                [](const auto& l, const auto& r) { return l.first < r.first; });
      for (std::size_t k = 0; k + 1 < active.size(); ++k) {
        if (!(active[k].first < active[k + 1].first)) continue;
        Cell cell{bounds[active[k].second], bounds[active[k + 1].second],
                  {xm, (active[k].first + active[k + 1].first) / T(2)}};
        cell.touches_bottom = active[k].first == box.y_lo;
        cell.touches_top = active[k + 1].first == box.y_hi;
        slab.cells.push_back(std::move(cell));
      }
      slabs_.push_back(std::move(slab));
    }
  }

  const Rect<T>& box() const { return box_; }
  const std::vector<Slab>& slabs() const { return slabs_; }

  /// Whether a cell of `slab` lies against the box boundary.
  bool on_boundary(const Slab& slab, const Cell& cell) const {
    return slab.x_lo == box_.x_lo || slab.x_hi == box_.x_hi || cell.touches_bottom || cell.touches_top;
  }

  static Polygon<T> cell_polygon(const Slab& slab, const Cell& cell) {
    Polygon<T> poly{{slab.x_lo, cell.lower.at(slab.x_lo)},
                    {slab.x_hi, cell.lower.at(slab.x_hi)},
                    {slab.x_hi, cell.upper.at(slab.x_hi)},
                    {slab.x_lo, cell.upper.at(slab.x_lo)}};
    // Drop repeated vertices of triangular cells.
    Polygon<T> out;
    for (const auto& p : poly)
      if (out.empty() || !(out.back() == p)) out.push_back(p);
    if (out.size() > 1 && out.front() == out.back()) out.pop_back();
    return out;
  }

 private:
  Rect<T> box_;
  std::vector<Slab> slabs_;
};

}  // namespace regudist
