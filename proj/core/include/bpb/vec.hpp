#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "bpb/errors.hpp"

namespace bpb {

/// Coordinate tuple in R^n. Vectors and functionals share this
/// representation; the pairing is the standard inner product.
using Vec = std::vector<double>;
using Vector = Vec;
using Functional = Vec;

inline double pairing(const Vec& f, const Vec& x) {
    if (f.size() != x.size()) throw DimensionMismatch("pairing: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * x[i];
    return s;
}

inline Vec add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("add: size mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("sub: size mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec scale(const Vec& a, double t) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = t * a[i];
    return r;
}

inline Vec negate(const Vec& a) { return scale(a, -1.0); }

inline double norm2(const Vec& a) {
    double s = 0.0;
    for (double v : a) s += v * v;
    return std::sqrt(s);
}

inline double dist_inf_coords(const Vec& a, const Vec& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline bool all_finite(const Vec& a) {
    for (double v : a)
        if (!std::isfinite(v)) return false;
    return true;
}

/// Lexicographic order with tolerance, used for canonical sorting of
/// vertex and normal lists.
inline bool lex_less(const Vec& a, const Vec& b, double tol = 0.0) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i] - tol) return true;
        if (a[i] > b[i] + tol) return false;
    }
    return false;
}

}  // namespace bpb
