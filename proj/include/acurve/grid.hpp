#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace acurve {

using cplx = std::complex<double>;

/// Samples of a 1-periodic function on [0,1)^2: value (i1, i2) sits at
/// x = (i1 / M, i2 / M). Stored row-major, always as complex; `real` records
/// whether the imaginary part is meaningful.
struct Grid {
    int size = 0;
    bool real = true;
    std::vector<cplx> values;

    static Grid zeros(int m, bool is_real = true) {
        if (m <= 0) throw std::invalid_argument("Grid: size must be positive");
        Grid g;
        g.size = m;
        g.real = is_real;
        g.values.assign(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), cplx{});
        return g;
    }

    cplx& operator()(int i1, int i2) { return values[index(i1, i2)]; }
    const cplx& operator()(int i1, int i2) const { return values[index(i1, i2)]; }

    std::size_t index(int i1, int i2) const {
        return static_cast<std::size_t>(i1) * static_cast<std::size_t>(size) + static_cast<std::size_t>(i2);
    }

    /// Plain sum of squared moduli (discrete l2 energy).
    double energy() const {
        double e = 0.0;
        for (const auto& v : values) e += std::norm(v);
        return e;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : values) m = std::max(m, std::abs(v));
        return m;
    }

    bool finite() const {
        for (const auto& v : values)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        return true;
    }
};

/// Relative l2 distance ||a - b|| / ||b||.
inline double relative_l2_error(const Grid& a, const Grid& b) {
    if (a.size != b.size) throw std::invalid_argument("relative_l2_error: size mismatch");
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        num += std::norm(a.values[i] - b.values[i]);
        den += std::norm(b.values[i]);
    }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

/// Sum a[i] * conj(b[i]).
inline cplx inner(const Grid& a, const Grid& b) {
    if (a.size != b.size) throw std::invalid_argument("inner: size mismatch");
    cplx s{};
    for (std::size_t i = 0; i < a.values.size(); ++i) s += a.values[i] * std::conj(b.values[i]);
    return s;
}

/// Cyclic translation: out(i1, i2) = g(i1 - s1, i2 - s2).
inline Grid shifted(const Grid& g, int s1, int s2) {
    Grid out = Grid::zeros(g.size, g.real);
    const int m = g.size;
    for (int i1 = 0; i1 < m; ++i1)
        for (int i2 = 0; i2 < m; ++i2)
            out(((i1 + s1) % m + m) % m, ((i2 + s2) % m + m) % m) = g(i1, i2);
    return out;
}

/// Quarter turn on the torus: out(i1, i2) = g(-i2 mod M, i1).
inline Grid rotated90(const Grid& g) {
    Grid out = Grid::zeros(g.size, g.real);
    const int m = g.size;
    for (int i1 = 0; i1 < m; ++i1)
        for (int i2 = 0; i2 < m; ++i2) out(i1, i2) = g((m - i2) % m, i1);
    return out;
}

}  // namespace acurve
