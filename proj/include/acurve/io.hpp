#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "approx.hpp"
#include "frame.hpp"
#include "grid.hpp"
#include "json.hpp"
#include "transform.hpp"

static_assert(std::endian::native == std::endian::little, "payload I/O assumes a little-endian host");

namespace acurve {

/// Malformed input, unreadable file, or coefficients from another frame.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A numerical identity failed.
struct VerificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr const char* grid_magic = "ACUR1";
inline constexpr const char* coeff_magic = "ACCF1";

namespace detail {

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void spit(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed for " + path);
}

/// Splits "MAGIC\n{json}\n<payload>" and parses the header.
inline nlohmann::json split_header(const std::string& bytes, const std::string& magic, std::string& payload) {
    const auto first = bytes.find('\n');
    if (first == std::string::npos || bytes.compare(0, first, magic) != 0)
        throw FormatError("bad magic line, expected " + magic);
    const auto second = bytes.find('\n', first + 1);
    if (second == std::string::npos) throw FormatError("missing header line");
    nlohmann::json header;
    try {
        header = nlohmann::json::parse(bytes.substr(first + 1, second - first - 1));
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("header is not valid JSON: ") + e.what());
    }
    payload = bytes.substr(second + 1);
    return header;
}

inline void put_doubles(std::string& out, const std::vector<double>& v) {
    const auto* p = reinterpret_cast<const char*>(v.data());
    out.append(p, v.size() * sizeof(double));
}

inline std::vector<double> get_doubles(const std::string& payload, std::size_t offset, std::size_t count) {
    if (offset + count * sizeof(double) > payload.size()) throw FormatError("payload shorter than declared");
    std::vector<double> v(count);
    std::copy_n(payload.data() + offset, count * sizeof(double), reinterpret_cast<char*>(v.data()));
    return v;
}

template <class T>
T header_field(const nlohmann::json& h, const char* key) {
    if (!h.contains(key)) throw FormatError(std::string("header lacks '") + key + "'");
    try {
        return h.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw FormatError(std::string("header field '") + key + "' has the wrong type");
    }
}

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Grids

inline std::string encode_grid(const Grid& g) {
    nlohmann::json h = {{"width", g.size}, {"height", g.size}, {"kind", g.real ? "real" : "complex"}, {"norm", "l2/M"}};
    std::string out = std::string(grid_magic) + "\n" + h.dump() + "\n";
    std::vector<double> flat;
    flat.reserve(g.values.size() * (g.real ? 1 : 2));
    for (const auto& v : g.values) {
        flat.push_back(v.real());
        if (!g.real) flat.push_back(v.imag());
    }
    detail::put_doubles(out, flat);
    return out;
}

inline Grid decode_grid(const std::string& bytes) {
    std::string payload;
    const auto h = detail::split_header(bytes, grid_magic, payload);
    const int w = detail::header_field<int>(h, "width");
    const int ht = detail::header_field<int>(h, "height");
    const auto kind = detail::header_field<std::string>(h, "kind");
    if (w != ht || w <= 0) throw FormatError("only square grids are supported");
    if (kind != "real" && kind != "complex") throw FormatError("kind must be real or complex");
    const bool real = kind == "real";
    const std::size_t n = static_cast<std::size_t>(w) * static_cast<std::size_t>(w);
    const std::size_t count = n * (real ? 1 : 2);
    if (payload.size() != count * sizeof(double)) throw FormatError("payload length does not match header");
    const auto flat = detail::get_doubles(payload, 0, count);
    Grid g = Grid::zeros(w, real);
    for (std::size_t i = 0; i < n; ++i) g.values[i] = real ? cplx(flat[i], 0.0) : cplx(flat[2 * i], flat[2 * i + 1]);
    return g;
}

inline void write_grid(const std::string& path, const Grid& g) { detail::spit(path, encode_grid(g)); }
inline Grid read_grid(const std::string& path) { return decode_grid(detail::slurp(path)); }

// ---------------------------------------------------------------------------
// Coefficients

/// File order: coarse, residual, then wedges by (j, ell).
inline std::vector<std::size_t> file_block_order(std::size_t block_count) {
    std::vector<std::size_t> order{0};
    if (block_count > 1) order.push_back(block_count - 1);
    for (std::size_t i = 1; i + 1 < block_count; ++i) order.push_back(i);
    return order;
}

inline nlohmann::json params_json(const FrameParams& p) {
    return {{"alpha", p.alpha}, {"size", p.size}, {"j_min", p.j_min}, {"j_max", p.j_max}, {"sharpness", p.sharpness}};
}

inline FrameParams params_from_json(const nlohmann::json& j) {
    FrameParams p;
    p.alpha = detail::header_field<double>(j, "alpha");
    p.size = detail::header_field<int>(j, "size");
    p.j_min = detail::header_field<int>(j, "j_min");
    p.j_max = detail::header_field<int>(j, "j_max");
    p.sharpness = detail::header_field<double>(j, "sharpness");
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("header frame parameters invalid: ") + e.what());
    }
    return p;
}

inline std::string encode_coefficients(const CoefficientSet& c) {
    nlohmann::json blocks = nlohmann::json::array();
    const auto order = file_block_order(c.blocks.size());
    for (auto bi : order) {
        const auto& b = c.blocks[bi];
        blocks.push_back({{"kind", to_string(b.kind)}, {"j", b.j}, {"ell", b.ell}, {"rows", b.rows}, {"cols", b.cols}});
    }
    nlohmann::json h = {{"params", params_json(c.params)},
                        {"digest", c.digest},
                        {"norm", c.norm},
                        {"source_kind", c.real_source ? "real" : "complex"},
                        {"blocks", blocks}};
    std::string out = std::string(coeff_magic) + "\n" + h.dump() + "\n";
    std::vector<double> flat;
    flat.reserve(2 * c.size());
    for (auto bi : order)
        for (const auto& v : c.blocks[bi].values) {
            flat.push_back(v.real());
            flat.push_back(v.imag());
        }
    detail::put_doubles(out, flat);
    return out;
}

inline BlockKind block_kind_from_string(const std::string& s) {
    if (s == "coarse") return BlockKind::coarse;
    if (s == "wedge") return BlockKind::wedge;
    if (s == "residual") return BlockKind::residual;
    throw FormatError("unknown block kind '" + s + "'");
}

inline CoefficientSet decode_coefficients(const std::string& bytes) {
    std::string payload;
    const auto h = detail::split_header(bytes, coeff_magic, payload);
    CoefficientSet c;
    c.params = params_from_json(detail::header_field<nlohmann::json>(h, "params"));
    c.digest = detail::header_field<std::string>(h, "digest");
    c.norm = detail::header_field<std::string>(h, "norm");
    const auto source = detail::header_field<std::string>(h, "source_kind");
    if (source != "real" && source != "complex") throw FormatError("source_kind must be real or complex");
    c.real_source = source == "real";
    const auto table = detail::header_field<nlohmann::json>(h, "blocks");
    if (!table.is_array() || table.empty()) throw FormatError("block table must be a non-empty array");

    std::vector<CoefficientBlock> in_file;
    std::size_t offset = 0;
    for (const auto& e : table) {
        CoefficientBlock b;
        b.kind = block_kind_from_string(detail::header_field<std::string>(e, "kind"));
        b.j = detail::header_field<int>(e, "j");
        b.ell = detail::header_field<int>(e, "ell");
        b.rows = detail::header_field<int>(e, "rows");
        b.cols = detail::header_field<int>(e, "cols");
        if (b.rows <= 0 || b.cols <= 0) throw FormatError("block shape must be positive");
        const std::size_t n = static_cast<std::size_t>(b.rows) * static_cast<std::size_t>(b.cols);
        const auto flat = detail::get_doubles(payload, offset, 2 * n);
        offset += 2 * n * sizeof(double);
        b.values.resize(n);
        for (std::size_t i = 0; i < n; ++i) b.values[i] = cplx(flat[2 * i], flat[2 * i + 1]);
        in_file.push_back(std::move(b));
    }
    if (offset != payload.size()) throw FormatError("payload longer than declared");

    const auto order = file_block_order(in_file.size());
    c.blocks.resize(in_file.size());
    for (std::size_t i = 0; i < order.size(); ++i) c.blocks[order[i]] = std::move(in_file[i]);
    return c;
}

inline void write_coefficients(const std::string& path, const CoefficientSet& c) {
    detail::spit(path, encode_coefficients(c));
}
inline CoefficientSet read_coefficients(const std::string& path) { return decode_coefficients(detail::slurp(path)); }

/// Rebuilds the frame named by a coefficient header and insists on the same digest.
inline Frame frame_for(const CoefficientSet& c) {
    Frame f = Frame::build(c.params);
    if (f.digest() != c.digest) throw FormatError("geometry digest mismatch: file " + c.digest + ", frame " + f.digest());
    try {
        check_compatible(c, f);
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
    return f;
}

// ---------------------------------------------------------------------------
// PGM

inline std::string encode_pgm(const Grid& g) {
    if (!g.real) throw std::invalid_argument("export_pgm: grid must be real");
    double lo = g.values.front().real();
    double hi = lo;
    for (const auto& v : g.values) {
        lo = std::min(lo, v.real());
        hi = std::max(hi, v.real());
    }
    std::string out = "P5\n" + std::to_string(g.size) + " " + std::to_string(g.size) + "\n255\n";
    out.reserve(out.size() + g.values.size());
    for (const auto& v : g.values) {
        const double t = hi > lo ? (v.real() - lo) / (hi - lo) : 128.0 / 255.0;
        out.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(255.0 * t))));
    }
    return out;
}

inline void export_pgm(const Grid& g, const std::string& path) { detail::spit(path, encode_pgm(g)); }

// ---------------------------------------------------------------------------
// CSV tables

inline std::string error_curve_csv(const ErrorCurve& c) {
    std::ostringstream os;
    os << "n,err2,tail2\n";
    for (const auto& p : c.points) os << p.n << ',' << detail::fmt(p.err2) << ',' << detail::fmt(p.tail2) << '\n';
    return os.str();
}

inline std::string wedge_energy_csv(const WedgeEnergyTable& t) {
    std::ostringstream os;
    os << "j,ell,omega,ell_J,energy\n";
    for (const auto& r : t.rows)
        os << t.j << ',' << r.ell << ',' << detail::fmt(r.omega) << ',' << detail::fmt(r.ell_j) << ','
           << detail::fmt(r.energy) << '\n';
    return os.str();
}

struct SliceSample {
    double eta = 0.0;
    int j = 0;
    double energy = 0.0;
};

inline std::string slices_csv(const std::vector<SliceSample>& rows) {
    std::ostringstream os;
    os << "eta,j,energy\n";
    for (const auto& r : rows) os << detail::fmt(r.eta) << ',' << r.j << ',' << detail::fmt(r.energy) << '\n';
    return os.str();
}

inline std::string hypercube_csv(const std::vector<HypercubeFamily>& fams) {
    std::ostringstream os;
    os << "k,m_k,delta_k\n";
    for (const auto& h : fams) os << h.k << ',' << h.m_k << ',' << detail::fmt(h.delta_k) << '\n';
    return os.str();
}

inline void write_text(const std::string& path, const std::string& text) { detail::spit(path, text); }

}  // namespace acurve
