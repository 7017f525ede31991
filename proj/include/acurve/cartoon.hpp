#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "frame.hpp"
#include "grid.hpp"
#include "json.hpp"
#include "rng.hpp"

namespace acurve {

// ---------------------------------------------------------------------------
// Hoelder seminorm estimator

/// Lower bound for Hol(g, order) from samples at uniform spacing: the
/// supremum of |g(x + d) - g(x)| / d^order over the dyadic separations
/// d = 2^m * spacing.
inline double holder_seminorm(std::span<const double> samples, double spacing, double order) {
    if (samples.size() < 64) throw std::invalid_argument("holder_seminorm: need at least 64 samples");
    if (!(order > 0.0 && order <= 1.0)) throw std::invalid_argument("holder_seminorm: order must lie in (0,1]");
    const std::size_t n = samples.size();
    double best = 0.0;
    for (std::size_t step = 1; step < n; step *= 2) {
        const double denom = std::pow(static_cast<double>(step) * spacing, order);
        for (std::size_t i = 0; i + step < n; ++i)
            best = std::max(best, std::abs(samples[i + step] - samples[i]) / denom);
    }
    return best;
}

/// 2D version over an n x n row-major sample array: axis-aligned pairs only.
inline double holder_seminorm_2d(std::span<const double> samples, int n, double spacing, double order) {
    if (n < 64 || samples.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
        throw std::invalid_argument("holder_seminorm_2d: need an n x n array with n >= 64");
    double best = 0.0;
    std::vector<double> line(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) line[static_cast<std::size_t>(c)] = samples[static_cast<std::size_t>(r * n + c)];
        best = std::max(best, holder_seminorm(line, spacing, order));
        for (int c = 0; c < n; ++c) line[static_cast<std::size_t>(c)] = samples[static_cast<std::size_t>(c * n + r)];
        best = std::max(best, holder_seminorm(line, spacing, order));
    }
    return best;
}

/// sup_d min(2A, L d) / d^g = (2A)^{1-g} L^g for a function with sup norm A
/// and Lipschitz constant L.
inline double holder_interpolation_bound(double sup, double lipschitz, double order) {
    if (sup == 0.0 || lipschitz == 0.0) return 0.0;
    return std::pow(2.0 * sup, 1.0 - order) * std::pow(lipschitz, order);
}

// ---------------------------------------------------------------------------
// Star-shaped domains

/// Translate of {x : |x| <= rho(eta)} with a trigonometric radius
/// rho(eta) = rho_base + sum_n a_n cos(n eta) + b_n sin(n eta), n = 1, 2, ...
struct StarDomain {
    std::array<double, 2> center{0.5, 0.5};
    double rho_base = 0.25;
    double rho0 = 0.45;
    std::vector<double> cos_coeffs;
    std::vector<double> sin_coeffs;
    double gamma = 2.0;
    double nu = 1.0;

    static StarDomain disk(double radius, std::array<double, 2> c = {0.5, 0.5}) {
        StarDomain d;
        d.center = c;
        d.rho_base = radius;
        d.rho0 = std::max(radius, 0.45);
        return d;
    }

    double radius(double eta) const {
        double r = rho_base;
        for (std::size_t k = 0; k < cos_coeffs.size(); ++k) r += cos_coeffs[k] * std::cos((k + 1.0) * eta);
        for (std::size_t k = 0; k < sin_coeffs.size(); ++k) r += sin_coeffs[k] * std::sin((k + 1.0) * eta);
        return r;
    }

    double radius_derivative(double eta) const {
        double r = 0.0;
        for (std::size_t k = 0; k < cos_coeffs.size(); ++k) r -= (k + 1.0) * cos_coeffs[k] * std::sin((k + 1.0) * eta);
        for (std::size_t k = 0; k < sin_coeffs.size(); ++k) r += (k + 1.0) * sin_coeffs[k] * std::cos((k + 1.0) * eta);
        return r;
    }

    /// Analytic upper bound for Hol(rho', gamma - 1), summed term by term.
    double holder_bound() const {
        const double g = gamma - 1.0;
        const std::size_t n = std::max(cos_coeffs.size(), sin_coeffs.size());
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double a = k < cos_coeffs.size() ? cos_coeffs[k] : 0.0;
            const double b = k < sin_coeffs.size() ? sin_coeffs[k] : 0.0;
            const double amp = std::hypot(a, b);
            const double freq = k + 1.0;
            s += holder_interpolation_bound(freq * amp, freq * freq * amp, g);
        }
        return s;
    }

    /// Estimator value of Hol(rho', gamma - 1) on `samples` points of [0, 2pi].
    double holder_estimate(int samples = 4096) const {
        std::vector<double> d(static_cast<std::size_t>(samples) + 1);
        const double h = 2.0 * pi / samples;
        for (int i = 0; i <= samples; ++i) d[static_cast<std::size_t>(i)] = radius_derivative(i * h);
        return holder_seminorm(d, h, gamma - 1.0);
    }

    bool contains(double x1, double x2) const {
        const double d1 = x1 - center[0];
        const double d2 = x2 - center[1];
        return std::hypot(d1, d2) <= radius(std::atan2(d2, d1));
    }

    /// The class invariants, checked on a 4096-point eta grid.
    bool valid() const {
        constexpr int n = 4096;
        if (!(rho0 > 0.0 && rho0 < 1.0)) return false;
        for (int i = 0; i < n; ++i) {
            const double eta = 2.0 * pi * i / n;
            const double r = radius(eta);
            if (!(r > 0.0) || r > rho0) return false;
            const double x1 = center[0] + r * std::cos(eta);
            const double x2 = center[1] + r * std::sin(eta);
            if (x1 < 0.0 || x1 > 1.0 || x2 < 0.0 || x2 > 1.0) return false;
        }
        return holder_estimate() <= nu;
    }
};

/// n boundary samples b(eta) + center, equispaced in eta from 0.
inline std::vector<std::array<double, 2>> boundary_points(const StarDomain& d, int n) {
    if (n < 3) throw std::invalid_argument("boundary_points: need n >= 3");
    std::vector<std::array<double, 2>> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double eta = 2.0 * pi * i / n;
        const double r = d.radius(eta);
        pts.push_back({d.center[0] + r * std::cos(eta), d.center[1] + r * std::sin(eta)});
    }
    return pts;
}

/// Seeded random domain in STAR^gamma(nu). Coefficients decay like
/// n^{-gamma-1-1/4}; the whole perturbation is scaled so the analytic
/// Hoelder bound sits at nu/2 and the radius stays in [rho_base/2, rho0].
/// Falls back to the disk when no admissible scaling is found.
inline StarDomain random_star_domain(double gamma, double nu, std::uint64_t seed, int terms = 12) {
    if (!(gamma > 1.0 && gamma <= 2.0)) throw std::invalid_argument("random_star_domain: gamma must lie in (1,2]");
    if (!(nu > 0.0)) throw std::invalid_argument("random_star_domain: nu must be positive");
    SplitMix64 rng(seed);
    StarDomain d;
    d.gamma = gamma;
    d.nu = nu;
    d.rho0 = 0.45;
    d.rho_base = rng.uniform(0.2, 0.3);
    d.center = {0.5, 0.5};
    std::vector<double> a(static_cast<std::size_t>(terms));
    std::vector<double> b(static_cast<std::size_t>(terms));
    for (int k = 0; k < terms; ++k) {
        const double decay = std::pow(k + 1.0, -gamma - 1.25);
        a[static_cast<std::size_t>(k)] = rng.uniform(-1.0, 1.0) * decay;
        b[static_cast<std::size_t>(k)] = rng.uniform(-1.0, 1.0) * decay;
    }

    double amplitude = 0.0;
    for (int k = 0; k < terms; ++k) amplitude += std::hypot(a[static_cast<std::size_t>(k)], b[static_cast<std::size_t>(k)]);
    StarDomain unit = d;
    unit.cos_coeffs = a;
    unit.sin_coeffs = b;
    const double hb = unit.holder_bound();
    double scale = 1.0;
    if (amplitude > 0.0) scale = std::min(scale, 0.5 * d.rho_base / amplitude);
    if (hb > 0.0) scale = std::min(scale, 0.5 * nu / hb);

    for (int attempt = 0; attempt < 32; ++attempt, scale *= 0.5) {
        StarDomain cand = d;
        cand.cos_coeffs.resize(a.size());
        cand.sin_coeffs.resize(b.size());
        for (std::size_t k = 0; k < a.size(); ++k) {
            cand.cos_coeffs[k] = scale * a[k];
            cand.sin_coeffs[k] = scale * b[k];
        }
        if (cand.valid()) return cand;
    }
    return d;  // the disk rho_base
}

// ---------------------------------------------------------------------------
// Smooth parts

/// f(x) = sum a cos(2 pi n.x) + b sin(2 pi n.x), 1-periodic.
struct SmoothField {
    struct Term {
        int n1 = 0;
        int n2 = 0;
        double a = 0.0;
        double b = 0.0;
    };
    std::vector<Term> terms;
    double beta = 2.0;

    static SmoothField constant(double v) {
        SmoothField f;
        f.terms.push_back({0, 0, v, 0.0});
        return f;
    }

    double operator()(double x1, double x2) const {
        double s = 0.0;
        for (const auto& t : terms) {
            const double ph = 2.0 * pi * (t.n1 * x1 + t.n2 * x2);
            s += t.a * std::cos(ph) + t.b * std::sin(ph);
        }
        return s;
    }

    std::array<double, 2> gradient(double x1, double x2) const {
        std::array<double, 2> g{0.0, 0.0};
        for (const auto& t : terms) {
            const double ph = 2.0 * pi * (t.n1 * x1 + t.n2 * x2);
            const double d = -t.a * std::sin(ph) + t.b * std::cos(ph);
            g[0] += 2.0 * pi * t.n1 * d;
            g[1] += 2.0 * pi * t.n2 * d;
        }
        return g;
    }

    /// Upper bound for ||f||_inf + sum_i ||d_i f||_inf + max_i Hol(d_i f, beta - 1).
    double cbeta_norm_bound() const {
        const double g = beta - 1.0;
        double sup = 0.0;
        std::array<double, 2> grad{0.0, 0.0};
        std::array<double, 2> hol{0.0, 0.0};
        for (const auto& t : terms) {
            const double amp = std::hypot(t.a, t.b);
            const double nn = std::hypot(static_cast<double>(t.n1), static_cast<double>(t.n2));
            sup += amp;
            const std::array<int, 2> n{t.n1, t.n2};
            for (int i = 0; i < 2; ++i) {
                const double di = 2.0 * pi * std::abs(n[static_cast<std::size_t>(i)]) * amp;
                grad[static_cast<std::size_t>(i)] += di;
                hol[static_cast<std::size_t>(i)] += holder_interpolation_bound(di, 2.0 * pi * nn * di, g);
            }
        }
        return sup + grad[0] + grad[1] + std::max(hol[0], hol[1]);
    }
};

/// Seeded random smooth part with ||f||_{C^beta} <= nu / 2.
inline SmoothField random_smooth_field(double beta, double nu, std::uint64_t seed, int max_freq = 3) {
    SplitMix64 rng(seed);
    SmoothField f;
    f.beta = beta;
    for (int n1 = 0; n1 <= max_freq; ++n1)
        for (int n2 = -max_freq; n2 <= max_freq; ++n2) {
            if (n1 == 0 && n2 < 0) continue;
            const double decay = std::pow(1.0 + std::hypot(n1, n2), -beta - 2.0);
            f.terms.push_back({n1, n2, rng.uniform(-1.0, 1.0) * decay, rng.uniform(-1.0, 1.0) * decay});
        }
    const double bound = f.cbeta_norm_bound();
    if (bound > 0.0) {
        const double s = 0.5 * nu / bound;
        for (auto& t : f.terms) {
            t.a *= s;
            t.b *= s;
        }
    }
    return f;
}

// ---------------------------------------------------------------------------
// Cartoons

/// f = f0 + f1 chi_B, or the binary cartoon chi_B.
struct CartoonSpec {
    StarDomain domain;
    SmoothField f0;
    SmoothField f1;
    bool binary = true;
    double beta = 2.0;
    double nu = 1.0;
    std::uint64_t seed = 0;

    double operator()(double x1, double x2) const {
        const bool in = domain.contains(x1, x2);
        if (binary) return in ? 1.0 : 0.0;
        return f0(x1, x2) + (in ? f1(x1, x2) : 0.0);
    }

    bool valid() const {
        if (!domain.valid()) return false;
        if (binary) return true;
        return f0.cbeta_norm_bound() <= nu && f1.cbeta_norm_bound() <= nu;
    }
};

/// Seeded cartoon of class E^beta_gamma(nu); each component draws from its own stream.
inline CartoonSpec random_cartoon(double beta, double gamma, double nu, std::uint64_t seed, bool binary) {
    CartoonSpec c;
    c.beta = beta;
    c.nu = nu;
    c.seed = seed;
    c.binary = binary;
    c.domain = random_star_domain(gamma, nu, SplitMix64::mix(seed ^ 0x5354415244ULL));
    if (binary) {
        c.f0 = SmoothField::constant(0.0);
        c.f1 = SmoothField::constant(1.0);
    } else {
        c.f0 = random_smooth_field(beta, nu, SplitMix64::mix(seed ^ 0x4630ULL));
        c.f1 = random_smooth_field(beta, nu, SplitMix64::mix(seed ^ 0x4631ULL));
    }
    c.f0.beta = c.f1.beta = beta;
    return c;
}

inline CartoonSpec binary_disk(double radius, std::array<double, 2> center = {0.5, 0.5}) {
    CartoonSpec c;
    c.domain = StarDomain::disk(radius, center);
    c.binary = true;
    c.f0 = SmoothField::constant(0.0);
    c.f1 = SmoothField::constant(1.0);
    return c;
}

/// Point samples at x = (s i1 + q1, s i2 + q2) / (s M), averaged over the
/// s x s sub-samples q of each pixel.
inline Grid rasterize(const CartoonSpec& spec, int m, int supersample = 1) {
    if (!is_power_of_two(m)) throw std::invalid_argument("rasterize: size must be a power of two");
    if (supersample < 1) throw std::invalid_argument("rasterize: supersample must be >= 1");
    Grid g = Grid::zeros(m, true);
    const int s = supersample;
    const double denom = static_cast<double>(s) * static_cast<double>(m);
    for (int i1 = 0; i1 < m; ++i1)
        for (int i2 = 0; i2 < m; ++i2) {
            double acc = 0.0;
            for (int q1 = 0; q1 < s; ++q1)
                for (int q2 = 0; q2 < s; ++q2)
                    acc += spec(static_cast<double>(s * i1 + q1) / denom, static_cast<double>(s * i2 + q2) / denom);
            g(i1, i2) = acc / (s * s);
        }
    return g;
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::json to_json(const SmoothField& f) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : f.terms) terms.push_back({t.n1, t.n2, t.a, t.b});
    return {{"beta", f.beta}, {"terms", terms}};
}

inline SmoothField smooth_field_from_json(const nlohmann::json& j) {
    SmoothField f;
    f.beta = j.at("beta").get<double>();
    for (const auto& t : j.at("terms"))
        f.terms.push_back({t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<double>(), t.at(3).get<double>()});
    return f;
}

inline nlohmann::json to_json(const CartoonSpec& c) {
    return {{"format", "acurve-cartoon-1"},
            {"seed", c.seed},
            {"binary", c.binary},
            {"beta", c.beta},
            {"nu", c.nu},
            {"domain",
             {{"center", c.domain.center},
              {"rho_base", c.domain.rho_base},
              {"rho0", c.domain.rho0},
              {"cos", c.domain.cos_coeffs},
              {"sin", c.domain.sin_coeffs},
              {"gamma", c.domain.gamma},
              {"nu", c.domain.nu}}},
            {"f0", to_json(c.f0)},
            {"f1", to_json(c.f1)}};
}

inline CartoonSpec cartoon_from_json(const nlohmann::json& j) {
    CartoonSpec c;
    c.seed = j.at("seed").get<std::uint64_t>();
    c.binary = j.at("binary").get<bool>();
    c.beta = j.at("beta").get<double>();
    c.nu = j.at("nu").get<double>();
    const auto& d = j.at("domain");
    c.domain.center = d.at("center").get<std::array<double, 2>>();
    c.domain.rho_base = d.at("rho_base").get<double>();
    c.domain.rho0 = d.at("rho0").get<double>();
    c.domain.cos_coeffs = d.at("cos").get<std::vector<double>>();
    c.domain.sin_coeffs = d.at("sin").get<std::vector<double>>();
    c.domain.gamma = d.at("gamma").get<double>();
    c.domain.nu = d.at("nu").get<double>();
    c.f0 = smooth_field_from_json(j.at("f0"));
    c.f1 = smooth_field_from_json(j.at("f1"));
    return c;
}

}  // namespace acurve
