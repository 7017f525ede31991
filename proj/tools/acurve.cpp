// Command-line driver: frame-info, cartoon, analyze, synthesize, benchmark,
// verify, wedge-energy, slices, hypercube, export-pgm.

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "acurve/acurve.hpp"

namespace {

using namespace acurve;

enum Exit : int { ok = 0, bad_flags = 1, bad_format = 2, failed_check = 3 };

struct Options {
    double alpha = 0.5;
    int size = 256;
    int j_min = 1;
    double beta = 2.0;
    double gamma = -1.0;
    double nu = 1.0;
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> seeds;
    std::vector<std::size_t> ns;
    std::vector<int> ks;
    bool binary = false;
    int scale = 0;
    int eta_count = 16;
    int trials = 4;
    int supersample = 1;
    std::string in;
    std::string out;
};

FrameParams frame_params(const Options& o, int size) {
    auto p = FrameParams::standard(o.alpha, size, o.j_min);
    p.validate();
    return p;
}

int frame_info(const Options& o) {
    const auto g = build_geometry(frame_params(o, o.size));
    const auto text = geometry_json(g).dump(2) + "\n";
    if (o.out.empty())
        std::cout << text;
    else
        write_text(o.out, text);
    return ok;
}

int cartoon(const Options& o) {
    const auto spec = random_cartoon(o.beta, o.gamma > 0.0 ? o.gamma : o.beta, o.nu, o.seed, o.binary);
    write_grid(o.out, rasterize(spec, o.size, o.supersample));
    write_text(o.out + ".spec.json", to_json(spec).dump(2) + "\n");
    return ok;
}

int analyze_cmd(const Options& o) {
    const Grid f = read_grid(o.in);
    const Frame frame = Frame::build(frame_params(o, f.size));
    write_coefficients(o.out, analyze(f, frame));
    return ok;
}

int synthesize_cmd(const Options& o) {
    const auto c = read_coefficients(o.in);
    const Frame frame = frame_for(c);
    write_grid(o.out, synthesize(c, frame));
    return ok;
}

int benchmark(const Options& o) {
    const Frame frame = Frame::build(frame_params(o, o.size));
    auto ns = o.ns;
    std::sort(ns.begin(), ns.end());
    const double gamma = o.gamma > 0.0 ? o.gamma : o.beta;
    const auto curve = benchmark_curve(frame, o.beta, gamma, o.nu, o.binary, o.seeds, ns);
    write_text(o.out + ".csv", error_curve_csv(curve));
    nlohmann::json report = {{"alpha", o.alpha}, {"beta", o.beta}, {"gamma", gamma}, {"size", o.size}, {"seeds", o.seeds}};
    std::size_t positive = 0;
    for (const auto& p : curve.points) positive += (p.n > 0 && p.err2 > 0.0) ? 1 : 0;
    if (positive >= 3) {
        const auto r = rate_fit(curve, ns.front(), ns.back(), gamma);
        report["rate"] = to_json(r);
    } else {
        report["rate"] = nullptr;
    }
    write_text(o.out + ".json", report.dump(2) + "\n");
    return ok;
}

int verify(const Options& o) {
    const Frame frame = Frame::build(frame_params(o, o.size));
    const auto r = verify_frame(frame, o.seed, o.trials);
    std::cout << to_json(r).dump(2) << "\n";
    if (!r.passed()) throw VerificationError("frame identities violated");
    return ok;
}

int wedge_energy(const Options& o) {
    const Grid f = read_grid(o.in);
    const Frame frame = Frame::build(frame_params(o, f.size));
    write_text(o.out, wedge_energy_csv(wedge_energy_table(f, frame, o.scale)));
    return ok;
}

int slices(const Options& o) {
    if (o.eta_count < 1) throw std::invalid_argument("--eta-count must be positive");
    const Grid f = read_grid(o.in);
    std::vector<SliceSample> rows;
    for (int i = 0; i < o.eta_count; ++i) {
        const double eta = -pi / 2.0 + pi * (i + 1) / o.eta_count;
        rows.push_back({eta, o.scale, radial_slice_energy(f, eta, o.scale)});
    }
    write_text(o.out, slices_csv(rows));
    return ok;
}

int hypercube(const Options& o) {
    std::vector<HypercubeFamily> fams;
    for (int k : o.ks) fams.push_back(hypercube_family(o.beta, k, o.nu));
    write_text(o.out, hypercube_csv(fams));
    return ok;
}

int export_pgm_cmd(const Options& o) {
    export_pgm(read_grid(o.in), o.out);
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"alpha-curvelet frame toolkit"};
    app.require_subcommand(1);
    Options o;

    auto* info = app.add_subcommand("frame-info", "print the frame geometry as JSON");
    info->add_option("--alpha", o.alpha)->required();
    info->add_option("--size", o.size)->required();
    info->add_option("--j-min", o.j_min);
    info->add_option("--out", o.out);

    auto* cart = app.add_subcommand("cartoon", "rasterize a seeded random cartoon");
    cart->add_option("--beta", o.beta)->required();
    cart->add_option("--gamma", o.gamma);
    cart->add_option("--nu", o.nu);
    cart->add_option("--seed", o.seed)->required();
    cart->add_option("--size", o.size)->required();
    cart->add_option("--supersample", o.supersample);
    cart->add_flag("--binary", o.binary);
    cart->add_option("--out", o.out)->required();

    auto* an = app.add_subcommand("analyze", "grid file to coefficient file");
    an->add_option("--in", o.in)->required();
    an->add_option("--alpha", o.alpha)->required();
    an->add_option("--j-min", o.j_min);
    an->add_option("--out", o.out)->required();

    auto* syn = app.add_subcommand("synthesize", "coefficient file to grid file");
    syn->add_option("--in", o.in)->required();
    syn->add_option("--out", o.out)->required();

    auto* bench = app.add_subcommand("benchmark", "mean N-term error curve over seeded cartoons");
    bench->add_option("--alpha", o.alpha)->required();
    bench->add_option("--beta", o.beta)->required();
    bench->add_option("--gamma", o.gamma);
    bench->add_option("--nu", o.nu);
    bench->add_option("--size", o.size)->required();
    bench->add_option("--seeds", o.seeds)->required()->delimiter(',');
    bench->add_option("--ns", o.ns)->required()->delimiter(',');
    bench->add_option("--j-min", o.j_min);
    bench->add_flag("--binary", o.binary);
    bench->add_option("--out", o.out)->required();

    auto* ver = app.add_subcommand("verify", "Calderon, Parseval and round-trip checks");
    ver->add_option("--alpha", o.alpha)->required();
    ver->add_option("--size", o.size)->required();
    ver->add_option("--j-min", o.j_min);
    ver->add_option("--seed", o.seed);
    ver->add_option("--trials", o.trials);

    auto* we = app.add_subcommand("wedge-energy", "per-wedge energies at one scale (CSV)");
    we->add_option("--in", o.in)->required();
    we->add_option("--alpha", o.alpha)->required();
    we->add_option("--scale", o.scale)->required();
    we->add_option("--j-min", o.j_min);
    we->add_option("--out", o.out)->required();

    auto* sl = app.add_subcommand("slices", "radial Fourier slice energies (CSV)");
    sl->add_option("--in", o.in)->required();
    sl->add_option("--eta-count", o.eta_count)->required();
    sl->add_option("--scale", o.scale)->required();
    sl->add_option("--out", o.out)->required();

    auto* hc = app.add_subcommand("hypercube", "hypercube family sizes (CSV)");
    hc->add_option("--beta", o.beta)->required();
    hc->add_option("--ks", o.ks)->required()->delimiter(',');
    hc->add_option("--nu", o.nu);
    hc->add_option("--out", o.out)->required();

    auto* pgm = app.add_subcommand("export-pgm", "grid file to 8-bit PGM");
    pgm->add_option("--in", o.in)->required();
    pgm->add_option("--out", o.out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return bad_flags;
    }

    try {
        if (*info) return frame_info(o);
        if (*cart) return cartoon(o);
        if (*an) return analyze_cmd(o);
        if (*syn) return synthesize_cmd(o);
        if (*bench) return benchmark(o);
        if (*ver) return verify(o);
        if (*we) return wedge_energy(o);
        if (*sl) return slices(o);
        if (*hc) return hypercube(o);
        if (*pgm) return export_pgm_cmd(o);
    } catch (const FormatError& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return bad_format;
    } catch (const VerificationError& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return failed_check;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return bad_flags;
    }
    return bad_flags;
}
