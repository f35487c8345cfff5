#pragma once

// Periodic arithmetic on the unit 3-torus: wrapping, free-flight advection,
// the cubic cell partition and minimum-image distances. Coordinates are kept
// wrapped to [0, 1) at all times so cell lookup is a plain floor.

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "vec3.hpp"

namespace kinetic {

struct TorusPoint {
    Vec3 r;
    friend bool operator==(const TorusPoint&, const TorusPoint&) = default;
};

struct CellIndex {
    int i = 0;
    int j = 0;
    int k = 0;
    friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

// Partition of the torus into m^3 equal cubic cells of volume m^-3.
struct CellGrid {
    int m = 1;

    explicit CellGrid(int cells_per_side = 1) : m(cells_per_side) {
        if (m < 1) throw std::invalid_argument("CellGrid: cells per side must be positive");
    }

    double cell_volume() const { return 1.0 / (static_cast<double>(m) * m * m); }
    std::size_t cell_count() const { return static_cast<std::size_t>(m) * m * m; }

    std::size_t linear(const CellIndex& c) const {
        return (static_cast<std::size_t>(c.i) * m + c.j) * m + c.k;
    }
    CellIndex unlinear(std::size_t lin) const {
        const int k = static_cast<int>(lin % m);
        const int j = static_cast<int>((lin / m) % m);
        const int i = static_cast<int>(lin / (static_cast<std::size_t>(m) * m));
        return {i, j, k};
    }

    friend bool operator==(const CellGrid&, const CellGrid&) = default;
};

namespace detail {

inline double wrap1(double x) {
    double r = x - std::floor(x);
    if (r >= 1.0) r = 0.0; // x just below an integer can round up
    return r;
}

} // namespace detail

inline TorusPoint wrap(const Vec3& x) {
    if (!is_finite(x)) throw std::invalid_argument("wrap: non-finite coordinate");
    return {{detail::wrap1(x.x), detail::wrap1(x.y), detail::wrap1(x.z)}};
}

// Free flight for time t (t may be negative for back-tracing).
inline TorusPoint advect(const TorusPoint& x, const Vec3& v, double t) {
    if (!is_finite(v) || !std::isfinite(t)) throw std::invalid_argument("advect: non-finite input");
    return wrap(x.r + v * t);
}

inline CellIndex cell_of(const TorusPoint& x, const CellGrid& grid) {
    const int m = grid.m;
    auto idx = [m](double c) {
        int i = static_cast<int>(std::floor(c * m));
        if (i >= m) i = m - 1; // guard c*m rounding up to m for c just below 1
        if (i < 0) i = 0;
        return i;
    };
    return {idx(x.r.x), idx(x.r.y), idx(x.r.z)};
}

// Euclidean distance under the minimum-image convention; at most sqrt(3)/2.
inline double min_image_distance(const TorusPoint& x, const TorusPoint& y) {
    auto d1 = [](double a, double b) {
        const double d = a - b;
        return d - std::round(d);
    };
    const double dx = d1(x.r.x, y.r.x);
    const double dy = d1(x.r.y, y.r.y);
    const double dz = d1(x.r.z, y.r.z);
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

// Signed minimum-image displacement x - y, each component in [-1/2, 1/2).
inline Vec3 min_image_delta(const TorusPoint& x, const TorusPoint& y) {
    auto d1 = [](double a, double b) {
        double d = a - b;
        d -= std::round(d);
        if (d >= 0.5) d = -0.5;
        return d;
    };
    return {d1(x.r.x, y.r.x), d1(x.r.y, y.r.y), d1(x.r.z, y.r.z)};
}

} // namespace kinetic
