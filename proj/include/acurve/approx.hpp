#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "frame.hpp"
#include "grid.hpp"
#include "json.hpp"
#include "transform.hpp"

namespace acurve {

/// Scale label of a coefficient block: 0 coarse, j for wedges, j_max + 1 residual.
inline int block_scale(const CoefficientBlock& b) { return b.kind == BlockKind::coarse ? 0 : b.j; }

/// Moduli in canonical flat order (block order, then row-major k).
inline std::vector<double> flat_moduli(const CoefficientSet& c) {
    std::vector<double> m;
    m.reserve(c.size());
    for (const auto& b : c.blocks)
        for (const auto& v : b.values) m.push_back(std::abs(v));
    return m;
}

/// Flat indices of the n largest moduli; ties go to the lower flat index.
inline std::vector<std::size_t> top_n_indices(std::span<const double> moduli, std::size_t n) {
    std::vector<std::size_t> idx;
    idx.reserve(moduli.size());
    for (std::size_t i = 0; i < moduli.size(); ++i)
        if (moduli[i] > 0.0) idx.push_back(i);
    n = std::min(n, idx.size());
    auto before = [&](std::size_t a, std::size_t b) { return moduli[a] > moduli[b] || (moduli[a] == moduli[b] && a < b); };
    std::nth_element(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n), idx.end(), before);
    idx.resize(n);
    std::sort(idx.begin(), idx.end(), before);
    return idx;
}

/// Keeps the n largest coefficients in modulus, zeroes the rest.
inline CoefficientSet threshold_top_n(const CoefficientSet& c, std::size_t n) {
    const auto moduli = flat_moduli(c);
    auto keep = top_n_indices(moduli, n);
    std::sort(keep.begin(), keep.end());
    CoefficientSet out = c;
    std::size_t flat = 0;
    std::size_t next = 0;
    for (auto& b : out.blocks)
        for (auto& v : b.values) {
            if (next < keep.size() && keep[next] == flat)
                ++next;
            else
                v = cplx{};
            ++flat;
        }
    return out;
}

/// Moduli sorted nonincreasing (theta*_1 >= theta*_2 >= ...).
inline std::vector<double> rearrangement(std::span<const double> values) {
    std::vector<double> s(values.size());
    std::transform(values.begin(), values.end(), s.begin(), [](double v) { return std::abs(v); });
    std::sort(s.begin(), s.end(), std::greater<>());
    return s;
}

/// tail[n] = sum_{m > n} |c*_m|^2 for n = 0..len, summed from the small end.
inline std::vector<double> tail_energies(std::span<const double> sorted_desc) {
    std::vector<double> tail(sorted_desc.size() + 1, 0.0);
    for (std::size_t i = sorted_desc.size(); i-- > 0;) tail[i] = tail[i + 1] + sorted_desc[i] * sorted_desc[i];
    return tail;
}

/// sup_n n^{1/p} |c*_n|
inline double weak_lp_norm(std::span<const double> seq, double p) {
    if (!(p > 0.0)) throw std::invalid_argument("weak_lp_norm: p must be positive");
    const auto s = rearrangement(seq);
    double best = 0.0;
    for (std::size_t n = 0; n < s.size(); ++n) best = std::max(best, std::pow(static_cast<double>(n + 1), 1.0 / p) * s[n]);
    return best;
}

// ---------------------------------------------------------------------------
// Error curves and fits

struct ErrorPoint {
    std::size_t n = 0;
    double err2 = 0.0;   // ||f - f_N||^2 / M^2
    double tail2 = 0.0;  // sum_{m > N} |theta*_m|^2 / M^2
};

struct ErrorCurve {
    std::vector<ErrorPoint> points;
    double alpha = 0.0;
    double beta = 0.0;
    int size = 0;
    std::string spec_id;
    std::string norm = "l2/M";
};

/// Relative slack allowed when checking err2 <= tail2.
inline constexpr double tail_check_tolerance = 1e-9;

/// For each N: err2 from synthesis of the top-N coefficients, with the
/// Parseval-frame bound err2 <= tail2 checked on every point.
inline ErrorCurve nterm_error_curve(const Grid& f, const Frame& frame, std::span<const std::size_t> ns) {
    if (!std::is_sorted(ns.begin(), ns.end())) throw std::invalid_argument("nterm_error_curve: Ns must be ascending");
    const auto c = analyze(f, frame);
    const auto sorted = rearrangement(flat_moduli(c));
    const auto tail = tail_energies(sorted);
    const double scale = 1.0 / (static_cast<double>(f.size) * static_cast<double>(f.size));
    const double total = f.energy();

    ErrorCurve curve;
    curve.alpha = frame.params.alpha;
    curve.size = f.size;
    for (auto n : ns) {
        ErrorPoint p;
        p.n = n;
        p.tail2 = tail[std::min(n, sorted.size())] * scale;
        if (n == 0) {
            p.err2 = total * scale;
        } else {
            const auto approx = synthesize(threshold_top_n(c, n), frame);
            double e = 0.0;
            for (std::size_t i = 0; i < f.values.size(); ++i) e += std::norm(f.values[i] - approx.values[i]);
            p.err2 = e * scale;
        }
        if (p.err2 > p.tail2 * (1.0 + tail_check_tolerance) + 1e-14 * total * scale)
            throw std::logic_error("nterm_error_curve: error exceeds coefficient tail energy");
        curve.points.push_back(p);
    }
    return curve;
}

inline std::vector<std::size_t> powers_of_two(int lo_exp, int hi_exp) {
    std::vector<std::size_t> ns;
    for (int e = lo_exp; e <= hi_exp; ++e) ns.push_back(std::size_t{1} << e);
    return ns;
}

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;
};

/// Ordinary least squares y = slope x + intercept.
inline LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_line: need two or more points");
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    for (std::size_t i = 0; i < x.size(); ++i)
        f.max_residual = std::max(f.max_residual, std::abs(y[i] - (f.slope * x[i] + f.intercept)));
    return f;
}

struct RateReport {
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;
    std::size_t n_lo = 0;
    std::size_t n_hi = 0;
    std::size_t points = 0;
    double achievable_exponent = 0.0;  // -beta
    double benchmark_exponent = 0.0;   // -min(beta, gamma)
};

/// Least squares of log2 err2 against log2 N over n_lo <= N <= n_hi.
inline RateReport rate_fit(const ErrorCurve& curve, std::size_t n_lo, std::size_t n_hi, double gamma = 0.0) {
    std::vector<double> x;
    std::vector<double> y;
    for (const auto& p : curve.points) {
        if (p.n < n_lo || p.n > n_hi || p.n == 0) continue;
        if (!(p.err2 > 0.0)) throw std::invalid_argument("rate_fit: err2 must be positive in the fit range");
        x.push_back(std::log2(static_cast<double>(p.n)));
        y.push_back(std::log2(p.err2));
    }
    if (x.size() < 3) throw std::invalid_argument("rate_fit: need at least 3 points in range");
    const auto f = fit_line(x, y);
    RateReport r;
    r.slope = f.slope;
    r.intercept = f.intercept;
    r.max_residual = f.max_residual;
    r.n_lo = n_lo;
    r.n_hi = n_hi;
    r.points = x.size();
    r.achievable_exponent = -curve.beta;
    r.benchmark_exponent = -std::min(curve.beta, gamma > 0.0 ? gamma : curve.beta);
    return r;
}

inline nlohmann::json to_json(const RateReport& r) {
    return {{"slope", r.slope},
            {"intercept", r.intercept},
            {"max_residual", r.max_residual},
            {"n_lo", r.n_lo},
            {"n_hi", r.n_hi},
            {"points", r.points},
            {"achievable_exponent", r.achievable_exponent},
            {"benchmark_exponent", r.benchmark_exponent}};
}

// ---------------------------------------------------------------------------
// Per-scale sparsity

/// Moduli of every coefficient at `scale`.
inline std::vector<double> scale_moduli(const CoefficientSet& c, int scale) {
    std::vector<double> m;
    for (const auto& b : c.blocks)
        if (block_scale(b) == scale)
            for (const auto& v : b.values) m.push_back(std::abs(v));
    return m;
}

/// ||theta_j||_{w l_{2/(1+beta)}} for every scale present.
inline std::map<int, double> per_scale_weak_norms(const CoefficientSet& c, double beta) {
    const double p = 2.0 / (1.0 + beta);
    std::map<int, double> table;
    for (const auto& b : c.blocks) table.emplace(block_scale(b), 0.0);
    for (auto& [scale, norm] : table) norm = weak_lp_norm(scale_moduli(c, scale), p);
    return table;
}

/// #{mu at scale j : |theta_mu| > eps}
inline std::size_t count_above(const CoefficientSet& c, double eps, int scale) {
    if (!(eps > 0.0)) throw std::invalid_argument("count_above: eps must be positive");
    std::size_t n = 0;
    for (const auto& b : c.blocks)
        if (block_scale(b) == scale)
            for (const auto& v : b.values)
                if (std::abs(v) > eps) ++n;
    return n;
}

}  // namespace acurve
