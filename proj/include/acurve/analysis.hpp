#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "cartoon.hpp"
#include "frame.hpp"
#include "grid.hpp"
#include "transform.hpp"

namespace acurve {

// ---------------------------------------------------------------------------
// Angular decay of wedge energies

struct WedgeEnergyRow {
    int ell = 0;
    double omega = 0.0;
    double ell_j = 1.0;  // 1 + 2^{(1-alpha)j} |sin omega|
    double energy = 0.0;
    double smoothed = 0.0;  // mean over ell - 1, ell, ell + 1 (cyclic)
};

struct WedgeEnergyTable {
    int j = 0;
    double alpha = 0.0;
    double band_energy = 0.0;  // sum of |f^|^2 over the support of W_j
    std::vector<WedgeEnergyRow> rows;

    double total() const {
        double s = 0.0;
        for (const auto& r : rows) s += r.energy;
        return s;
    }
};

inline WedgeEnergyTable wedge_energy_table(const Spectrum& s, const Frame& frame, int j) {
    const auto& p = frame.params;
    if (j < p.j_min || j > p.j_max) throw std::invalid_argument("wedge_energy_table: scale out of range");
    if (s.size != frame.size()) throw std::invalid_argument("wedge_energy_table: size mismatch");
    WedgeEnergyTable t;
    t.j = j;
    t.alpha = p.alpha;
    const int m = s.size;
    for (int a = -m / 2; a < m / 2; ++a)
        for (int b = -m / 2; b < m / 2; ++b)
            if (radial_window(p, j, std::hypot(a, b)) > 0.0) t.band_energy += std::norm(s.at(a, b));

    const int count = orientation_count(p.alpha, j);
    const double stretch = std::exp2((1.0 - p.alpha) * j);
    for (int ell = 0; ell < count; ++ell) {
        const auto bi = frame.geometry.wedge_block(j, ell);
        double e = 0.0;
        for (const auto& v : wedge_extract(s, frame, bi)) e += std::norm(v);
        const double omega = frame.geometry.blocks[bi].omega;
        t.rows.push_back({ell, omega, 1.0 + stretch * std::abs(std::sin(omega)), e, 0.0});
    }
    for (int ell = 0; ell < count; ++ell) {
        double acc = 0.0;
        for (int d = -1; d <= 1; ++d) acc += t.rows[static_cast<std::size_t>((ell + d + count) % count)].energy;
        t.rows[static_cast<std::size_t>(ell)].smoothed = acc / 3.0;
    }
    return t;
}

inline WedgeEnergyTable wedge_energy_table(const Grid& f, const Frame& frame, int j) {
    return wedge_energy_table(forward_spectrum(f), frame, j);
}

/// Rows ordered by ell_J, ties by ell.
inline std::vector<WedgeEnergyRow> by_ell_j(const WedgeEnergyTable& t) {
    auto rows = t.rows;
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.ell_j < b.ell_j; });
    return rows;
}

/// Smoothed energies never increase with ell_J (relative slack `tol` for ties).
inline bool smoothed_nonincreasing(const WedgeEnergyTable& t, double tol = 1e-9) {
    const auto rows = by_ell_j(t);
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].smoothed > rows[i - 1].smoothed * (1.0 + tol)) return false;
    return true;
}

struct DecayFit {
    double exponent = 0.0;
    std::size_t points = 0;
};

/// Least-squares exponent of log energy against log ell_J. The wedge pair
/// straddling the edge normal (the antipodal halves attaining the smallest
/// ell_J) is left out; there the bound saturates.
inline DecayFit wedge_decay_fit(const WedgeEnergyTable& t) {
    const auto rows = by_ell_j(t);
    if (rows.empty()) throw std::invalid_argument("wedge_decay_fit: empty table");
    const double floor_ell = rows.front().ell_j;
    std::vector<double> x;
    std::vector<double> y;
    for (const auto& r : rows) {
        if (r.ell_j <= floor_ell || !(r.energy > 0.0)) continue;
        x.push_back(std::log2(r.ell_j));
        y.push_back(std::log2(r.energy));
    }
    if (x.size() < 2) throw std::invalid_argument("wedge_decay_fit: too few wedges left to fit");
    const double n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i] / n;
        my += y[i] / n;
    }
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("wedge_decay_fit: all remaining wedges share one ell_J");
    return {sxy / sxx, x.size()};
}

/// [x1 >= 1/2] times a smooth bump that is 1 on [0.25, 0.75]^2 and vanishes
/// outside [0.1, 0.9]^2.
inline Grid straight_edge_image(int m) {
    auto bump = [](double t) { return smooth_step((t - 0.1) / 0.15) * smooth_step((0.9 - t) / 0.15); };
    Grid g = Grid::zeros(m);
    for (int i1 = 0; i1 < m; ++i1) {
        const double x1 = static_cast<double>(i1) / m;
        if (x1 < 0.5) continue;
        for (int i2 = 0; i2 < m; ++i2) g(i1, i2) = bump(x1) * bump(static_cast<double>(i2) / m);
    }
    return g;
}

// ---------------------------------------------------------------------------
// Radial Fourier slices

/// f^(xi) = M^{-1} sum_x f(x) exp(-2 pi i xi.x / M) at an arbitrary real xi.
/// Agrees with Spectrum::at on integer frequencies.
inline cplx ndft(const Grid& f, double xi1, double xi2) {
    const int m = f.size;
    std::vector<cplx> e2(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) e2[static_cast<std::size_t>(i)] = std::polar(1.0, -2.0 * pi * xi2 * i / m);
    cplx total{};
    for (int i1 = 0; i1 < m; ++i1) {
        cplx row{};
        for (int i2 = 0; i2 < m; ++i2) row += f(i1, i2) * e2[static_cast<std::size_t>(i2)];
        total += row * std::polar(1.0, -2.0 * pi * xi1 * i1 / m);
    }
    return total / static_cast<double>(m);
}

/// Trapezoid-rule integral of |f^(lambda cos eta, lambda sin eta)|^2 over
/// lambda in [2^{j-1}, 2^{j+1}] at spacing `step`.
inline double radial_slice_energy(const Grid& f, double eta, int j, double step = 0.5) {
    if (j < 1) throw std::invalid_argument("radial_slice_energy: scale must be >= 1");
    if (!(step > 0.0)) throw std::invalid_argument("radial_slice_energy: step must be positive");
    const double lo = std::ldexp(1.0, j - 1);
    const double hi = std::ldexp(1.0, j + 1);
    const auto samples = static_cast<int>(std::llround((hi - lo) / step));
    const double h = (hi - lo) / samples;
    const double c = std::cos(eta);
    const double s = std::sin(eta);
    double acc = 0.0;
    for (int k = 0; k <= samples; ++k) {
        const double lambda = lo + k * h;
        const double w = (k == 0 || k == samples) ? 0.5 : 1.0;
        acc += w * std::norm(ndft(f, lambda * c, lambda * s));
    }
    return acc * h;
}

// ---------------------------------------------------------------------------
// A-priori l1 bound

/// B_j = max_k ||psi_{j,0,k}||_1 2^{(1+alpha)j/2}, with atoms taken in the
/// continuum normalization (||psi||_1 = M^{-1} sum |psi_disc|). The max runs
/// over the first `probe` x `probe` translates.
inline double apriori_bound_check(const Frame& frame, int j, int probe = 3) {
    const auto bi = frame.geometry.wedge_block(j, 0);
    const auto& cell = frame.geometry.blocks[bi].cell;
    double best = 0.0;
    for (int k1 = 0; k1 < std::min(probe, cell.rows); ++k1)
        for (int k2 = 0; k2 < std::min(probe, cell.cols); ++k2) {
            const Grid a = atom(frame, {bi, k1, k2});
            double l1 = 0.0;
            for (const auto& v : a.values) l1 += std::abs(v);
            best = std::max(best, l1 / frame.size());
        }
    return best * std::exp2((1.0 + frame.params.alpha) * j / 2.0);
}

// ---------------------------------------------------------------------------
// Hypercube embedding

/// exp(-1 / (t (1 - t))) on (0, 1), zero elsewhere.
inline double bump(double t) { return (t > 0.0 && t < 1.0) ? std::exp(-1.0 / (t * (1.0 - t))) : 0.0; }

inline double bump_d1(double t) {
    if (!(t > 0.0 && t < 1.0)) return 0.0;
    const double u = t * (1.0 - t);
    return bump(t) * (1.0 - 2.0 * t) / (u * u);
}

inline double bump_d2(double t) {
    if (!(t > 0.0 && t < 1.0)) return 0.0;
    const double u = t * (1.0 - t);
    const double du = 1.0 - 2.0 * t;
    const double g1 = -du / (u * u);
    const double g2 = 2.0 / (u * u) + 2.0 * du * du / (u * u * u);
    return (g1 * g1 - g2) * bump(t);
}

/// psi_{i,k}(t) = k^{-beta} psi(k t1 - i1, k t2 - i2), psi = scale * bump (x) bump.
struct HypercubeFamily {
    double beta = 2.0;
    int k = 1;
    double nu = 1.0;
    double scale = 1.0;     // amplitude making ||psi||_{C^beta} <= nu
    double psi_norm = 0.0;  // ||psi||_2
    std::size_t m_k = 1;
    double delta_k = 0.0;   // k^{-beta-1} ||psi||_2

    double element(int i1, int i2, double t1, double t2) const {
        return std::pow(static_cast<double>(k), -beta) * scale * bump(k * t1 - i1) * bump(k * t2 - i2);
    }
};

/// Upper bound on ||bump (x) bump||_{C^beta}: sup norm, gradient sup norm and
/// the (beta-1)-Hoelder seminorm of the gradient via interpolation between
/// its sup norm and Lipschitz constant.
inline double bump_tensor_cbeta_bound(double beta, int samples = 4096) {
    double s0 = 0.0;
    double s1 = 0.0;
    double s2 = 0.0;
    for (int i = 0; i <= samples; ++i) {
        const double t = static_cast<double>(i) / samples;
        s0 = std::max(s0, bump(t));
        s1 = std::max(s1, std::abs(bump_d1(t)));
        s2 = std::max(s2, std::abs(bump_d2(t)));
    }
    const double grad_sup = std::sqrt(2.0) * s1 * s0;
    const double grad_lip = std::sqrt(s2 * s2 * s0 * s0 + s1 * s1 * s1 * s1);
    return s0 * s0 + grad_sup + holder_interpolation_bound(s1 * s0, grad_lip, beta - 1.0);
}

/// Midpoint rule for int_0^1 bump^2 on n points.
inline double bump_l2_squared(int n) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double b = bump((i + 0.5) / n);
        acc += b * b;
    }
    return acc / n;
}

inline HypercubeFamily hypercube_family(double beta, int k, double nu) {
    if (k < 1) throw std::invalid_argument("hypercube_family: k must be >= 1");
    if (!(beta >= 1.0 && beta <= 2.0)) throw std::invalid_argument("hypercube_family: beta must lie in [1, 2]");
    if (!(nu > 0.0)) throw std::invalid_argument("hypercube_family: nu must be positive");
    HypercubeFamily h;
    h.beta = beta;
    h.k = k;
    h.nu = nu;
    h.scale = nu / bump_tensor_cbeta_bound(beta);
    h.psi_norm = h.scale * bump_l2_squared(1 << 14);
    h.m_k = static_cast<std::size_t>(k) * static_cast<std::size_t>(k);
    h.delta_k = std::pow(static_cast<double>(k), -beta - 1.0) * h.psi_norm;
    return h;
}

struct HypercubeQuadrature {
    double max_offdiag = 0.0;         // max |<psi_i, psi_i'>|, i != i'
    double max_norm_deviation = 0.0;  // max | ||psi_i||_2 - delta_k | / delta_k
};

/// Gram matrix of the family by the midpoint rule on k * points_per_cell
/// nodes per axis. The family is separable, so the 2D Gram matrix is the
/// tensor square of the 1D one.
inline HypercubeQuadrature hypercube_quadrature(const HypercubeFamily& h, int points_per_cell) {
    const int n = h.k * points_per_cell;
    const auto k = static_cast<std::size_t>(h.k);
    std::vector<double> g1(k * k, 0.0);
    std::vector<double> row(k);
    for (int q = 0; q < n; ++q) {
        const double t = (q + 0.5) / n;
        for (std::size_t i = 0; i < k; ++i) row[i] = bump(h.k * t - static_cast<double>(i));
        for (std::size_t a = 0; a < k; ++a)
            if (row[a] != 0.0)
                for (std::size_t b = 0; b < k; ++b) g1[a * k + b] += row[a] * row[b];
    }
    for (auto& v : g1) v /= n;

    const double amp2 = std::pow(std::pow(static_cast<double>(h.k), -h.beta) * h.scale, 2.0);
    HypercubeQuadrature r;
    for (std::size_t a1 = 0; a1 < k; ++a1)
        for (std::size_t a2 = 0; a2 < k; ++a2)
            for (std::size_t b1 = 0; b1 < k; ++b1)
                for (std::size_t b2 = 0; b2 < k; ++b2) {
                    const double v = amp2 * g1[a1 * k + b1] * g1[a2 * k + b2];
                    if (a1 == b1 && a2 == b2)
                        r.max_norm_deviation = std::max(r.max_norm_deviation, std::abs(std::sqrt(v) - h.delta_k) / h.delta_k);
                    else
                        r.max_offdiag = std::max(r.max_offdiag, std::abs(v));
                }
    return r;
}

struct CopyOfLpVerdict {
    bool ok = false;  // delta_k strictly decreasing
    double p = 0.0;   // fitted from log m_k against log(1 / delta_k)
    double expected = 0.0;
};

inline CopyOfLpVerdict copy_of_lp_check(std::span<const double> m, std::span<const double> delta, double beta) {
    if (m.size() != delta.size()) throw std::invalid_argument("copy_of_lp_check: length mismatch");
    if (m.size() < 3) throw std::invalid_argument("copy_of_lp_check: need at least 3 family sizes");
    CopyOfLpVerdict v;
    v.expected = 2.0 / (beta + 1.0);
    v.ok = true;
    for (std::size_t i = 1; i < delta.size(); ++i)
        if (!(delta[i] < delta[i - 1])) v.ok = false;
    if (!v.ok) return v;
    const double n = static_cast<double>(m.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        mx += -std::log(delta[i]) / n;
        my += std::log(m[i]) / n;
    }
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        const double x = -std::log(delta[i]) - mx;
        sxx += x * x;
        sxy += x * (std::log(m[i]) - my);
    }
    v.p = sxy / sxx;
    return v;
}

inline CopyOfLpVerdict copy_of_lp_check(std::span<const HypercubeFamily> families) {
    if (families.empty()) throw std::invalid_argument("copy_of_lp_check: need at least 3 family sizes");
    std::vector<double> m;
    std::vector<double> d;
    for (const auto& f : families) {
        m.push_back(static_cast<double>(f.m_k));
        d.push_back(f.delta_k);
    }
    return copy_of_lp_check(m, d, families.front().beta);
}

}  // namespace acurve
