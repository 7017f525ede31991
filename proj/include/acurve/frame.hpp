#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace acurve {

inline constexpr double pi = std::numbers::pi;

inline bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

inline int floor_log2(int n) {
    int k = -1;
    while (n > 0) {
        n >>= 1;
        ++k;
    }
    return k;
}

// ---------------------------------------------------------------------------
// Parameters

/// Everything that determines the discrete frame.
struct FrameParams {
    double alpha = 0.5;
    int size = 64;  // M
    int j_min = 1;
    int j_max = 4;
    double sharpness = 1.0;

    /// Finest admissible top scale for the grid: 2^{j_max+1} = M/2.
    static FrameParams standard(double alpha, int size, int j_min = 1) {
        FrameParams p;
        p.alpha = alpha;
        p.size = size;
        p.j_min = j_min;
        p.j_max = is_power_of_two(size) ? floor_log2(size) - 2 : 0;
        return p;
    }

    void validate() const {
        if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("FrameParams: alpha must lie in [0,1]");
        if (!is_power_of_two(size) || size < 16)
            throw std::invalid_argument("FrameParams: size must be a power of two >= 16");
        if (j_min < 1 || j_min > j_max) throw std::invalid_argument("FrameParams: need 1 <= j_min <= j_max");
        if ((2LL << j_max) > size / 2) throw std::invalid_argument("FrameParams: top band exceeds the Nyquist square");
        if (!(sharpness > 0.0) || !std::isfinite(sharpness))
            throw std::invalid_argument("FrameParams: sharpness must be positive");
    }
};

struct WedgeIndex {
    int j = 1;
    int ell = 0;
    friend auto operator<=>(const WedgeIndex&, const WedgeIndex&) = default;
};

/// floor(j (1 - alpha)); the guard absorbs representation error in 1 - alpha.
inline int orientation_exponent(double alpha, int j) {
    return static_cast<int>(std::floor(static_cast<double>(j) * (1.0 - alpha) + 1e-9));
}

/// L_j = 2^{floor(j (1 - alpha))}
inline int orientation_count(double alpha, int j) { return 1 << orientation_exponent(alpha, j); }

/// omega_j = pi 2^{-floor(j (1 - alpha))}
inline double characteristic_angle(double alpha, int j) { return pi / orientation_count(alpha, j); }

/// ceil(alpha j) with the same guard.
inline int transverse_exponent(double alpha, int j) {
    return static_cast<int>(std::ceil(static_cast<double>(j) * alpha - 1e-9));
}

// ---------------------------------------------------------------------------
// Windows

/// C-infinity transition: 0 for t <= 0, 1 for t >= 1, s(t) + s(1 - t) = 1.
/// Evaluated as e(t) / (e(t) + e(1 - t)) with e(t) = exp(-sharpness / t),
/// rewritten in logistic form so it never divides 0 by 0.
inline double smooth_step(double t, double sharpness = 1.0) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double x = sharpness * (1.0 / t - 1.0 / (1.0 - t));
    return 1.0 / (1.0 + std::exp(x));
}

/// Radial windows on integer frequency radius r.
/// j = 0: coarse window, 1 on [0, 3/4 2^{j_min}], 0 from 2^{j_min} on.
/// j >= 1: supported in [2^{j-1}, 2^{j+1}], 1 on [3/4 2^j, 3/2 2^j].
inline double radial_window(const FrameParams& p, int j, double r) {
    if (j == 0) {
        const double base = std::ldexp(1.0, p.j_min);
        return 1.0 - smooth_step((r - 0.75 * base) / (0.25 * base), p.sharpness);
    }
    const double t = std::ldexp(r, -j);
    if (t <= 0.5 || t >= 2.0) return 0.0;
    if (t < 0.75) return smooth_step((t - 0.5) * 4.0, p.sharpness);
    if (t <= 1.5) return 1.0;
    return 1.0 - smooth_step((t - 1.5) * 2.0, p.sharpness);
}

/// Isotropic closure above the top band: the rising edge of band j_max + 1,
/// continued as 1 out to the corners of the Nyquist square.
inline double residual_window(const FrameParams& p, double r) {
    const double t = std::ldexp(r, -(p.j_max + 1));
    if (t <= 0.5) return 0.0;
    if (t < 0.75) return smooth_step((t - 0.5) * 4.0, p.sharpness);
    return 1.0;
}

/// V: 1 on [-pi/2, pi/2], 0 outside [-3pi/4, 3pi/4].
inline double angular_profile(double t, double sharpness = 1.0) {
    const double a = std::abs(t);
    if (a <= 0.5 * pi) return 1.0;
    if (a >= 0.75 * pi) return 0.0;
    return 1.0 - smooth_step((a - 0.5 * pi) / (0.25 * pi), sharpness);
}

/// Wraps an angle into [-pi, pi).
inline double wrap_angle(double t) {
    t = std::fmod(t + pi, 2.0 * pi);
    if (t < 0.0) t += 2.0 * pi;
    return t - pi;
}

/// V^{(j,ell)} at direction theta: V(L_j .) read at the angle of
/// R_{j,ell}(cos theta, sin theta), symmetrized over antipodes.
/// For L_j = 1 the two halves overlap and the sum is clipped to 1.
inline double angular_window(const FrameParams& p, int j, int ell, double theta) {
    const int count = orientation_count(p.alpha, j);
    const double rotated = wrap_angle(theta + ell * (pi / count));
    const double v = angular_profile(count * rotated, p.sharpness) +
                     angular_profile(count * wrap_angle(rotated + pi), p.sharpness);
    return std::min(v, 1.0);
}

/// Unnormalized wedge product W^{(j)}(|xi|) V^{(j,ell)}(xi / |xi|).
inline double wedge_product(const FrameParams& p, int j, int ell, double xi1, double xi2) {
    const double r = std::hypot(xi1, xi2);
    const double w = radial_window(p, j, r);
    if (w == 0.0) return 0.0;
    return w * angular_window(p, j, ell, std::atan2(xi2, xi1));
}

/// Psi at an arbitrary frequency, summing every window of the frame.
inline double normalization(const FrameParams& p, double xi1, double xi2) {
    const double r = std::hypot(xi1, xi2);
    const double w0 = radial_window(p, 0, r);
    const double wr = residual_window(p, r);
    double s = w0 * w0 + wr * wr;
    for (int j = p.j_min; j <= p.j_max; ++j) {
        const int count = orientation_count(p.alpha, j);
        for (int ell = 0; ell < count; ++ell) {
            const double v = wedge_product(p, j, ell, xi1, xi2);
            s += v * v;
        }
    }
    return s;
}

/// chi_{j,ell}(xi) evaluated analytically.
inline double wedge_window(const FrameParams& p, int j, int ell, double xi1, double xi2) {
    const double v = wedge_product(p, j, ell, xi1, xi2);
    return v == 0.0 ? 0.0 : v / std::sqrt(normalization(p, xi1, xi2));
}

// ---------------------------------------------------------------------------
// Geometry

enum class BlockKind { coarse, wedge, residual };

inline const char* to_string(BlockKind k) {
    switch (k) {
        case BlockKind::coarse: return "coarse";
        case BlockKind::wedge: return "wedge";
        case BlockKind::residual: return "residual";
    }
    return "?";
}

/// Where each support sample of a block lands in its rows x cols cell.
/// Rows run along frequency axis `axis`; a support point (xi_axis, xi_other)
/// goes to (xi_axis mod rows, xi_other mod cols).
struct CellLayout {
    int axis = 0;
    int rows = 1;
    int cols = 1;
    std::vector<std::int32_t> position;

    std::size_t area() const { return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols); }
};

struct BlockGeometry {
    BlockKind kind = BlockKind::wedge;
    int j = 0;
    int ell = 0;
    int orientations = 1;                   // L_j
    double omega_j = pi;                    // characteristic angle
    double omega = 0.0;                     // ell * omega_j
    std::array<double, 4> rotation{1, 0, 0, 1};  // R_{j,ell}, row-major
    std::array<double, 2> half_lengths{0, 0};    // Xi_{j,0} in rotated coordinates
    std::vector<std::int32_t> support;           // centered linear frequency indices
    CellLayout cell;
};

struct FrameGeometry {
    FrameParams params;
    std::vector<BlockGeometry> blocks;  // coarse, wedges by (j, ell), residual
    std::string digest;

    std::size_t coefficient_count() const {
        std::size_t n = 0;
        for (const auto& b : blocks) n += b.cell.area();
        return n;
    }

    std::size_t wedge_block(int j, int ell) const {
        for (std::size_t i = 0; i < blocks.size(); ++i)
            if (blocks[i].kind == BlockKind::wedge && blocks[i].j == j && blocks[i].ell == ell) return i;
        throw std::out_of_range("FrameGeometry: no wedge (" + std::to_string(j) + "," + std::to_string(ell) + ")");
    }

    std::size_t residual_block() const { return blocks.size() - 1; }
};

/// Centered linear index of frequency (xi1, xi2), both in [-M/2, M/2).
inline std::int32_t frequency_index(int m, int xi1, int xi2) { return (xi1 + m / 2) * m + (xi2 + m / 2); }

inline std::array<int, 2> frequency_of(int m, std::int32_t idx) { return {idx / m - m / 2, idx % m - m / 2}; }

namespace detail {

inline int positive_mod(int a, int n) { return ((a % n) + n) % n; }

inline void assert_injective(const CellLayout& cell) {
    std::vector<char> seen(cell.area(), 0);
    for (auto p : cell.position) {
        if (p < 0 || static_cast<std::size_t>(p) >= seen.size() || seen[static_cast<std::size_t>(p)])
            throw std::logic_error("cell layout: wedge support does not inject into its cell");
        seen[static_cast<std::size_t>(p)] = 1;
    }
}

inline CellLayout fixed_layout(std::span<const std::int32_t> support, int m, int rows, int cols) {
    CellLayout cell;
    cell.rows = rows;
    cell.cols = cols;
    cell.position.reserve(support.size());
    for (auto idx : support) {
        const auto xi = frequency_of(m, idx);
        cell.position.push_back(positive_mod(xi[0], rows) * cols + positive_mod(xi[1], cols));
    }
    assert_injective(cell);
    return cell;
}

/// Smallest wrap cell for a wedge. For each candidate axis the row count is
/// the least modulus that keeps occupied frequency lines distinct and the
/// column count is the longest occupied run within one line, so the wrap is
/// injective by construction (a sheared parallelogram tiles the cell).
inline CellLayout wrap_layout(std::span<const std::int32_t> support, int m) {
    if (support.empty()) return CellLayout{};
    CellLayout best;
    std::size_t best_area = std::numeric_limits<std::size_t>::max();
    for (int axis = 0; axis < 2; ++axis) {
        std::vector<int> lo(static_cast<std::size_t>(m), std::numeric_limits<int>::max());
        std::vector<int> hi(static_cast<std::size_t>(m), std::numeric_limits<int>::min());
        for (auto idx : support) {
            const auto xi = frequency_of(m, idx);
            const auto line = static_cast<std::size_t>(xi[axis] + m / 2);
            lo[line] = std::min(lo[line], xi[1 - axis]);
            hi[line] = std::max(hi[line], xi[1 - axis]);
        }
        std::vector<int> lines;
        int cols = 1;
        for (int l = 0; l < m; ++l) {
            if (lo[static_cast<std::size_t>(l)] > hi[static_cast<std::size_t>(l)]) continue;
            lines.push_back(l - m / 2);
            cols = std::max(cols, hi[static_cast<std::size_t>(l)] - lo[static_cast<std::size_t>(l)] + 1);
        }
        const int span = lines.back() - lines.front() + 1;
        int rows = static_cast<int>(lines.size());
        std::vector<char> seen;
        for (; rows < span; ++rows) {
            seen.assign(static_cast<std::size_t>(rows), 0);
            bool ok = true;
            for (int l : lines) {
                auto& s = seen[static_cast<std::size_t>(positive_mod(l, rows))];
                if (s) {
                    ok = false;
                    break;
                }
                s = 1;
            }
            if (ok) break;
        }
        const auto area = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
        if (area < best_area) {
            best_area = area;
            best.axis = axis;
            best.rows = rows;
            best.cols = cols;
        }
    }
    best.position.reserve(support.size());
    for (auto idx : support) {
        const auto xi = frequency_of(m, idx);
        best.position.push_back(positive_mod(xi[best.axis], best.rows) * best.cols +
                                positive_mod(xi[1 - best.axis], best.cols));
    }
    assert_injective(best);
    return best;
}

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string compute_digest(const FrameGeometry& g) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "acurve-frame-v1;alpha=%.17g;size=%d;jmin=%d;jmax=%d;sharp=%.17g;", g.params.alpha,
                  g.params.size, g.params.j_min, g.params.j_max, g.params.sharpness);
    std::string canon = buf;
    for (const auto& b : g.blocks) {
        std::snprintf(buf, sizeof buf, "%s,%d,%d,%d,%d,%d,%zu;", to_string(b.kind), b.j, b.ell, b.cell.axis, b.cell.rows,
                      b.cell.cols, b.support.size());
        canon += buf;
    }
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(canon)));
    return buf;
}

}  // namespace detail

/// Scales, orientations, rotations, wedge supports and cell shapes.
inline FrameGeometry build_geometry(const FrameParams& params) {
    params.validate();
    const int m = params.size;
    FrameGeometry g;
    g.params = params;

    BlockGeometry coarse;
    coarse.kind = BlockKind::coarse;
    coarse.half_lengths = {0.5, 0.5};
    for (int a = -m / 2; a < m / 2; ++a)
        for (int b = -m / 2; b < m / 2; ++b)
            if (radial_window(params, 0, std::hypot(a, b)) > 0.0) coarse.support.push_back(frequency_index(m, a, b));
    const int coarse_side = 2 << params.j_min;
    coarse.cell = detail::fixed_layout(coarse.support, m, coarse_side, coarse_side);
    g.blocks.push_back(std::move(coarse));

    for (int j = params.j_min; j <= params.j_max; ++j) {
        const int count = orientation_count(params.alpha, j);
        const double omega_j = pi / count;
        std::vector<BlockGeometry> scale(static_cast<std::size_t>(count));
        for (int ell = 0; ell < count; ++ell) {
            auto& b = scale[static_cast<std::size_t>(ell)];
            b.kind = BlockKind::wedge;
            b.j = j;
            b.ell = ell;
            b.orientations = count;
            b.omega_j = omega_j;
            b.omega = ell * omega_j;
            const double c = std::cos(b.omega);
            const double s = std::sin(b.omega);
            b.rotation = {c, -s, s, c};
            b.half_lengths = {std::ldexp(1.0, j - 1), std::exp2(j * params.alpha - 1.0)};
        }
        for (int a = -m / 2; a < m / 2; ++a) {
            for (int b = -m / 2; b < m / 2; ++b) {
                if (radial_window(params, j, std::hypot(a, b)) <= 0.0) continue;
                const double theta = std::atan2(static_cast<double>(b), static_cast<double>(a));
                for (int ell = 0; ell < count; ++ell)
                    if (angular_window(params, j, ell, theta) > 0.0)
                        scale[static_cast<std::size_t>(ell)].support.push_back(frequency_index(m, a, b));
            }
        }
        for (auto& b : scale) {
            b.cell = detail::wrap_layout(b.support, m);
            g.blocks.push_back(std::move(b));
        }
    }

    BlockGeometry residual;
    residual.kind = BlockKind::residual;
    residual.j = params.j_max + 1;
    residual.half_lengths = {0.5 * m, 0.5 * m};
    for (int a = -m / 2; a < m / 2; ++a)
        for (int b = -m / 2; b < m / 2; ++b)
            if (residual_window(params, std::hypot(a, b)) > 0.0) residual.support.push_back(frequency_index(m, a, b));
    residual.cell = detail::fixed_layout(residual.support, m, m, m);
    g.blocks.push_back(std::move(residual));

    g.digest = detail::compute_digest(g);
    return g;
}

// ---------------------------------------------------------------------------
// Window tables

/// Normalized windows tabulated on the centered M x M frequency grid.
struct WindowTables {
    std::vector<double> psi;       // dense
    std::vector<double> coarse;    // dense chi_0
    std::vector<double> residual;  // dense chi_res
    std::vector<std::vector<double>> chi;  // per block, over that block's support
    double calderon_deviation = 0.0;
    double psi_min = 0.0;
    double psi_max = 0.0;
};

inline constexpr double calderon_tolerance = 1e-12;

inline WindowTables build_windows(const FrameParams& params, const FrameGeometry& geometry) {
    const int m = params.size;
    const auto n = static_cast<std::size_t>(m) * static_cast<std::size_t>(m);
    WindowTables t;
    t.psi.assign(n, 0.0);
    t.chi.resize(geometry.blocks.size());

    for (std::size_t bi = 0; bi < geometry.blocks.size(); ++bi) {
        const auto& b = geometry.blocks[bi];
        auto& vals = t.chi[bi];
        vals.reserve(b.support.size());
        for (auto idx : b.support) {
            const auto xi = frequency_of(m, idx);
            const double r = std::hypot(xi[0], xi[1]);
            double w = 0.0;
            switch (b.kind) {
                case BlockKind::coarse: w = radial_window(params, 0, r); break;
                case BlockKind::residual: w = residual_window(params, r); break;
                case BlockKind::wedge: w = wedge_product(params, b.j, b.ell, xi[0], xi[1]); break;
            }
            vals.push_back(w);
            t.psi[static_cast<std::size_t>(idx)] += w * w;
        }
    }

    t.psi_min = *std::min_element(t.psi.begin(), t.psi.end());
    t.psi_max = *std::max_element(t.psi.begin(), t.psi.end());
    if (!(t.psi_min > 0.0)) throw std::logic_error("build_windows: frequency grid not covered");

    std::vector<double> sum(n, 0.0);
    for (std::size_t bi = 0; bi < geometry.blocks.size(); ++bi) {
        const auto& b = geometry.blocks[bi];
        auto& vals = t.chi[bi];
        for (std::size_t i = 0; i < vals.size(); ++i) {
            const auto idx = static_cast<std::size_t>(b.support[i]);
            vals[i] /= std::sqrt(t.psi[idx]);
            sum[idx] += vals[i] * vals[i];
        }
    }
    for (double s : sum) t.calderon_deviation = std::max(t.calderon_deviation, std::abs(s - 1.0));
    if (t.calderon_deviation > calderon_tolerance)
        throw std::logic_error("build_windows: discrete Calderon identity violated");

    auto densify = [&](std::size_t bi) {
        std::vector<double> d(n, 0.0);
        const auto& b = geometry.blocks[bi];
        for (std::size_t i = 0; i < b.support.size(); ++i) d[static_cast<std::size_t>(b.support[i])] = t.chi[bi][i];
        return d;
    };
    t.coarse = densify(0);
    t.residual = densify(geometry.residual_block());
    return t;
}

/// Immutable bundle of parameters, geometry and window tables.
struct Frame {
    FrameParams params;
    FrameGeometry geometry;
    WindowTables windows;

    static Frame build(const FrameParams& params) {
        Frame f;
        f.params = params;
        f.geometry = build_geometry(params);
        f.windows = build_windows(params, f.geometry);
        return f;
    }

    int size() const { return params.size; }
    const std::string& digest() const { return geometry.digest; }
};

/// Debug dump of the geometry.
inline nlohmann::json geometry_json(const FrameGeometry& g) {
    nlohmann::json j;
    j["alpha"] = g.params.alpha;
    j["size"] = g.params.size;
    j["j_min"] = g.params.j_min;
    j["j_max"] = g.params.j_max;
    j["sharpness"] = g.params.sharpness;
    j["digest"] = g.digest;
    j["coefficients"] = g.coefficient_count();
    nlohmann::json scales = nlohmann::json::array();
    for (int s = g.params.j_min; s <= g.params.j_max; ++s)
        scales.push_back({{"j", s},
                          {"L", orientation_count(g.params.alpha, s)},
                          {"omega", characteristic_angle(g.params.alpha, s)}});
    j["scales"] = scales;
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& b : g.blocks)
        blocks.push_back({{"kind", to_string(b.kind)},
                          {"j", b.j},
                          {"ell", b.ell},
                          {"omega", b.omega},
                          {"axis", b.cell.axis},
                          {"rows", b.cell.rows},
                          {"cols", b.cell.cols},
                          {"support", b.support.size()}});
    j["blocks"] = blocks;
    return j;
}

}  // namespace acurve
