#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fft.hpp"
#include "frame.hpp"
#include "grid.hpp"

namespace acurve {

/// Unitary spectrum on the centered integer frequency grid:
/// values[frequency_index(M, xi1, xi2)] = M^{-1} sum_x f(x) exp(-2 pi i xi.x / M).
struct Spectrum {
    int size = 0;
    std::vector<cplx> values;

    cplx at(int xi1, int xi2) const { return values[static_cast<std::size_t>(frequency_index(size, xi1, xi2))]; }
};

inline Spectrum forward_spectrum(const Grid& g) {
    if (!g.finite()) throw std::invalid_argument("forward_spectrum: grid has non-finite values");
    const int m = g.size;
    std::vector<cplx> work = g.values;
    fft::unitary_dft_2d(work, m, m, fft::Direction::forward);
    Spectrum s;
    s.size = m;
    s.values.resize(work.size());
    for (int k1 = 0; k1 < m; ++k1)
        for (int k2 = 0; k2 < m; ++k2) {
            const int xi1 = k1 < m / 2 ? k1 : k1 - m;
            const int xi2 = k2 < m / 2 ? k2 : k2 - m;
            s.values[static_cast<std::size_t>(frequency_index(m, xi1, xi2))] =
                work[static_cast<std::size_t>(k1) * static_cast<std::size_t>(m) + static_cast<std::size_t>(k2)];
        }
    return s;
}

inline Grid inverse_spectrum(const Spectrum& s, bool real_output) {
    const int m = s.size;
    std::vector<cplx> work(s.values.size());
    for (int xi1 = -m / 2; xi1 < m / 2; ++xi1)
        for (int xi2 = -m / 2; xi2 < m / 2; ++xi2) {
            const int k1 = xi1 < 0 ? xi1 + m : xi1;
            const int k2 = xi2 < 0 ? xi2 + m : xi2;
            work[static_cast<std::size_t>(k1) * static_cast<std::size_t>(m) + static_cast<std::size_t>(k2)] =
                s.at(xi1, xi2);
        }
    fft::unitary_dft_2d(work, m, m, fft::Direction::backward);
    Grid g = Grid::zeros(m, real_output);
    g.values = std::move(work);
    if (real_output)
        for (auto& v : g.values) v = cplx(v.real(), 0.0);
    return g;
}

// ---------------------------------------------------------------------------
// Coefficients

struct CoefficientBlock {
    BlockKind kind = BlockKind::wedge;
    int j = 0;
    int ell = 0;
    int rows = 0;
    int cols = 0;
    std::vector<cplx> values;  // row-major rows x cols
};

/// All frame coefficients, in canonical order: coarse, wedges by (j, ell), residual.
struct CoefficientSet {
    FrameParams params;
    std::string digest;
    std::string norm = "unitary";
    bool real_source = true;
    std::vector<CoefficientBlock> blocks;

    std::size_t size() const {
        std::size_t n = 0;
        for (const auto& b : blocks) n += b.values.size();
        return n;
    }

    double energy() const {
        double e = 0.0;
        for (const auto& b : blocks)
            for (const auto& v : b.values) e += std::norm(v);
        return e;
    }
};

/// Flat position of a single coefficient.
struct CoeffIndex {
    std::size_t block = 0;
    int k1 = 0;
    int k2 = 0;
};

inline CoefficientSet zero_coefficients(const Frame& frame) {
    CoefficientSet c;
    c.params = frame.params;
    c.digest = frame.digest();
    for (const auto& b : frame.geometry.blocks) {
        CoefficientBlock cb;
        cb.kind = b.kind;
        cb.j = b.j;
        cb.ell = b.ell;
        cb.rows = b.cell.rows;
        cb.cols = b.cell.cols;
        cb.values.assign(b.cell.area(), cplx{});
        c.blocks.push_back(std::move(cb));
    }
    return c;
}

inline void check_compatible(const CoefficientSet& c, const Frame& frame) {
    if (c.digest != frame.digest()) throw std::invalid_argument("coefficient set was produced by a different frame");
    if (c.blocks.size() != frame.geometry.blocks.size())
        throw std::invalid_argument("coefficient set has the wrong number of blocks");
    for (std::size_t i = 0; i < c.blocks.size(); ++i) {
        const auto& cell = frame.geometry.blocks[i].cell;
        if (c.blocks[i].rows != cell.rows || c.blocks[i].cols != cell.cols || c.blocks[i].values.size() != cell.area())
            throw std::invalid_argument("coefficient block shape does not match frame geometry");
    }
}

/// d_J = f^ chi_J over the support list of block `block`.
inline std::vector<cplx> wedge_extract(const Spectrum& spectrum, const Frame& frame, std::size_t block) {
    const auto& b = frame.geometry.blocks.at(block);
    const auto& chi = frame.windows.chi[block];
    std::vector<cplx> d(b.support.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = spectrum.values[static_cast<std::size_t>(b.support[i])] * chi[i];
    return d;
}

/// Wrap wedge samples into the block's cell and take a unitary inverse DFT.
/// An isometry from support data onto rows x cols coefficients.
inline std::vector<cplx> wedge_to_coeffs(std::span<const cplx> wedge_data, const BlockGeometry& block) {
    if (wedge_data.size() != block.support.size())
        throw std::invalid_argument("wedge_to_coeffs: data length does not match wedge support");
    std::vector<cplx> cell(block.cell.area(), cplx{});
    for (std::size_t i = 0; i < wedge_data.size(); ++i)
        cell[static_cast<std::size_t>(block.cell.position[i])] = wedge_data[i];
    fft::unitary_dft_2d(cell, block.cell.rows, block.cell.cols, fft::Direction::backward);
    return cell;
}

/// Adjoint of wedge_to_coeffs (its inverse on the wedge support).
inline std::vector<cplx> coeffs_to_wedge(std::span<const cplx> coeffs, const BlockGeometry& block) {
    if (coeffs.size() != block.cell.area()) throw std::invalid_argument("coeffs_to_wedge: shape mismatch");
    std::vector<cplx> cell(coeffs.begin(), coeffs.end());
    fft::unitary_dft_2d(cell, block.cell.rows, block.cell.cols, fft::Direction::forward);
    std::vector<cplx> d(block.support.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = cell[static_cast<std::size_t>(block.cell.position[i])];
    return d;
}

/// theta_mu = <f, psi_mu> for every frame element.
inline CoefficientSet analyze(const Grid& f, const Frame& frame) {
    if (f.size != frame.size()) throw std::invalid_argument("analyze: grid size does not match frame");
    const Spectrum s = forward_spectrum(f);
    CoefficientSet c = zero_coefficients(frame);
    c.real_source = f.real;
    for (std::size_t bi = 0; bi < frame.geometry.blocks.size(); ++bi)
        c.blocks[bi].values = wedge_to_coeffs(wedge_extract(s, frame, bi), frame.geometry.blocks[bi]);
    return c;
}

/// Adjoint of analyze; for this Parseval frame also its left inverse.
inline Grid synthesize(const CoefficientSet& c, const Frame& frame) {
    check_compatible(c, frame);
    const int m = frame.size();
    Spectrum s;
    s.size = m;
    s.values.assign(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), cplx{});
    for (std::size_t bi = 0; bi < frame.geometry.blocks.size(); ++bi) {
        const auto& b = frame.geometry.blocks[bi];
        const auto d = coeffs_to_wedge(c.blocks[bi].values, b);
        const auto& chi = frame.windows.chi[bi];
        for (std::size_t i = 0; i < d.size(); ++i) s.values[static_cast<std::size_t>(b.support[i])] += chi[i] * d[i];
    }
    return inverse_spectrum(s, c.real_source);
}

/// The frame element psi_mu, synthesized from a unit coefficient.
inline Grid atom(const Frame& frame, const CoeffIndex& mu) {
    const auto& blocks = frame.geometry.blocks;
    if (mu.block >= blocks.size()) throw std::out_of_range("atom: block index out of range");
    const auto& cell = blocks[mu.block].cell;
    if (mu.k1 < 0 || mu.k1 >= cell.rows || mu.k2 < 0 || mu.k2 >= cell.cols)
        throw std::out_of_range("atom: coefficient index out of range");
    CoefficientSet c = zero_coefficients(frame);
    c.real_source = false;
    c.blocks[mu.block].values[static_cast<std::size_t>(mu.k1) * static_cast<std::size_t>(cell.cols) +
                              static_cast<std::size_t>(mu.k2)] = 1.0;
    return synthesize(c, frame);
}

}  // namespace acurve
