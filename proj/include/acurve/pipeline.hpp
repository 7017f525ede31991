#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "approx.hpp"
#include "cartoon.hpp"
#include "frame.hpp"
#include "grid.hpp"
#include "json.hpp"
#include "rng.hpp"
#include "transform.hpp"

namespace acurve {

/// i.i.d. uniform [-1, 1) samples (real and imaginary parts for complex grids).
inline Grid random_grid(int m, std::uint64_t seed, bool complex_values = false) {
    SplitMix64 rng(seed);
    Grid g = Grid::zeros(m, !complex_values);
    for (auto& v : g.values) {
        const double re = rng.uniform(-1.0, 1.0);
        v = complex_values ? cplx(re, rng.uniform(-1.0, 1.0)) : cplx(re, 0.0);
    }
    return g;
}

struct VerifyReport {
    double calderon = 0.0;         // max |sum chi^2 - 1|
    double psi_min = 0.0;
    double psi_max = 0.0;
    double parseval = 0.0;         // max relative | sum |theta|^2 - ||f||^2 |
    double roundtrip = 0.0;        // max relative l2 reconstruction error
    double calderon_tol = 1e-12;
    double parseval_tol = 1e-10;
    double roundtrip_tol = 1e-10;

    bool passed() const { return calderon <= calderon_tol && parseval <= parseval_tol && roundtrip <= roundtrip_tol; }
};

/// Calderon, Parseval and round-trip checks on `trials` random grids
/// (real and complex alternating) drawn from consecutive seeds.
inline VerifyReport verify_frame(const Frame& frame, std::uint64_t seed, int trials) {
    VerifyReport r;
    r.calderon = frame.windows.calderon_deviation;
    r.psi_min = frame.windows.psi_min;
    r.psi_max = frame.windows.psi_max;
    for (int t = 0; t < trials; ++t) {
        const Grid f = random_grid(frame.size(), seed + static_cast<std::uint64_t>(t), t % 2 == 1);
        const auto c = analyze(f, frame);
        const double e = f.energy();
        r.parseval = std::max(r.parseval, std::abs(c.energy() - e) / e);
        r.roundtrip = std::max(r.roundtrip, relative_l2_error(synthesize(c, frame), f));
    }
    return r;
}

inline nlohmann::json to_json(const VerifyReport& r) {
    return {{"calderon", r.calderon},
            {"psi_min", r.psi_min},
            {"psi_max", r.psi_max},
            {"parseval", r.parseval},
            {"roundtrip", r.roundtrip},
            {"passed", r.passed()}};
}

/// err2 and tail2 averaged over seeded random cartoons of one class.
inline ErrorCurve benchmark_curve(const Frame& frame, double beta, double gamma, double nu, bool binary,
                                  std::span<const std::uint64_t> seeds, std::span<const std::size_t> ns) {
    if (seeds.empty()) throw std::invalid_argument("benchmark: need at least one seed");
    ErrorCurve mean;
    mean.alpha = frame.params.alpha;
    mean.beta = beta;
    mean.size = frame.size();
    for (auto seed : seeds) {
        const auto spec = random_cartoon(beta, gamma, nu, seed, binary);
        const auto curve = nterm_error_curve(rasterize(spec, frame.size()), frame, ns);
        if (mean.points.empty()) {
            mean.points = curve.points;
            for (auto& p : mean.points) p.err2 = p.tail2 = 0.0;
        }
        for (std::size_t i = 0; i < curve.points.size(); ++i) {
            mean.points[i].err2 += curve.points[i].err2 / static_cast<double>(seeds.size());
            mean.points[i].tail2 += curve.points[i].tail2 / static_cast<double>(seeds.size());
        }
    }
    mean.spec_id = "random-cartoon";
    return mean;
}

}  // namespace acurve
