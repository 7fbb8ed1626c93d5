#include "gfeast/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gfeast/baseline.hpp"
#include "gfeast/driver.hpp"
#include "gfeast/errors.hpp"
#include "gfeast/matrix_market.hpp"
#include "gfeast/oracle.hpp"
#include "gfeast/report.hpp"

namespace gfeast {

namespace {

bool parse_center(const std::string& text, cd& out) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) return false;
    try {
        std::size_t used = 0;
        const double re = std::stod(text.substr(0, comma), &used);
        if (used != comma) return false;
        const std::string imag_part = text.substr(comma + 1);
        const double im = std::stod(imag_part, &used);
        if (used != imag_part.size()) return false;
        if (!std::isfinite(re) || !std::isfinite(im)) return false;
        out = cd(re, im);
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

int flag_to_exit(int flag) {
    switch (flag) {
        case 1: return 0;
        case 0: return 2;
        default: return 3;
    }
}

void emit(const std::string& payload, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(output_path);
    if (!out) throw Error("cannot write report to '" + output_path + "'");
    out << payload;
    if (!out) throw Error("write failed for '" + output_path + "'");
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"eigenvalues of a regular pencil inside a circle, by contour projection"};

    std::string matrix_a, matrix_b, center_text, method = "gfeast", output_path;
    double radius = 0.0, eta = 1e-3, eps = 1e-12, alpha = 1.5;
    std::size_t quad_points = 16, max_iter = 10, sample_size = 50;
    std::uint64_t seed = 123456789;
    bool with_history = false;

    app.add_option("--matrix-a", matrix_a, "Matrix Market file for A")->required();
    app.add_option("--matrix-b", matrix_b, "Matrix Market file for B (identity when omitted)");
    app.add_option("--center", center_text, "circle center as RE,IM")->required();
    app.add_option("--radius", radius, "circle radius (> 0)")->required();
    app.add_option("--method", method, "gfeast | cirr | oracle");
    app.add_option("--quad-points", quad_points, "quadrature nodes on the circle");
    app.add_option("--eta", eta, "residual threshold for keeping a pair");
    app.add_option("--eps", eps, "convergence target for the worst kept residual");
    app.add_option("--max-iter", max_iter, "iteration budget (refinement rounds for cirr)");
    app.add_option("--sample-size", sample_size, "probe block size (search p, cirr h)");
    app.add_option("--alpha", alpha, "search growth factor");
    app.add_option("--seed", seed, "random seed");
    app.add_option("--output", output_path, "write the JSON report here instead of stdout");
    app.add_flag("--history", with_history, "include per-iteration history in the report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n" << app.help();
        return 64;
    }

    cd center;
    if (!parse_center(center_text, center)) {
        std::cerr << "usage error: --center expects RE,IM (got '" << center_text << "')\n";
        return 64;
    }
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        std::cerr << "usage error: --radius must be a positive number\n";
        return 64;
    }
    if (method != "gfeast" && method != "cirr" && method != "oracle") {
        std::cerr << "usage error: --method must be gfeast, cirr or oracle\n";
        return 64;
    }
    if (quad_points < 1) {
        std::cerr << "usage error: --quad-points must be at least 1\n";
        return 64;
    }
    if (sample_size < 1) {
        std::cerr << "usage error: --sample-size must be at least 1\n";
        return 64;
    }
    if (max_iter < 1) {
        std::cerr << "usage error: --max-iter must be at least 1\n";
        return 64;
    }
    if (!(alpha > 1.0)) {
        std::cerr << "usage error: --alpha must exceed 1\n";
        return 64;
    }
    if (!(eta > 0.0) || !(eps > 0.0)) {
        std::cerr << "usage error: --eta and --eps must be positive\n";
        return 64;
    }

    try {
        RegularPencil pencil;
        pencil.A = read_matrix_market(matrix_a);
        if (matrix_b.empty()) {
            if (pencil.A.rows() != pencil.A.cols())
                throw DimensionError("matrix A must be square");
            pencil.B = CMatrix::identity(pencil.A.rows());
        } else {
            pencil.B = read_matrix_market(matrix_b);
        }
        pencil.validate();

        const Contour contour{center, radius};

        if (method == "oracle") {
            const OracleEigs oe = oracle_pencil_eigs(pencil, seed);
            emit(oracle_report_to_json(oe, contour, pencil.n()), output_path);
            return 0;
        }

        if (method == "gfeast") {
            GfeastOptions opts;
            opts.q = quad_points;
            opts.p = sample_size;
            opts.alpha = alpha;
            opts.eta = eta;
            opts.eps = eps;
            opts.max_iter = max_iter;
            opts.seed = seed;
            const GfeastReport rep = gfeast(pencil, contour, opts);
            emit(report_to_json(rep, "gfeast", pencil.n(), contour, with_history), output_path);
            return flag_to_exit(rep.flag);
        }

        // cirr: pick the moment count from the certified upper bound, so the
        // subspace h*g can hold everything the search expects to find.
        const ContourRule rule = circle_rule(contour, gauss_legendre(quad_points));
        const ShiftedFactorSet fs = shifted_factorizations(pencil, rule);
        SearchOptions sopts;
        sopts.p = sample_size;
        sopts.alpha = alpha;
        sopts.seed = seed;
        const SearchResult sr = search_upper_bound(pencil, fs, sopts);

        CirrOptions copts;
        copts.q = quad_points;
        copts.h = std::min<std::size_t>(sample_size, pencil.n());
        copts.g = std::max<std::size_t>(
            1, static_cast<std::size_t>(
                   std::ceil(static_cast<double>(sr.t) / static_cast<double>(copts.h))));
        copts.eta = eta;
        copts.eps = eps;
        copts.max_rounds = max_iter;
        copts.seed = seed;
        GfeastReport rep = block_cirr(pencil, contour, copts);
        rep.s0 = sr.s0;
        emit(report_to_json(rep, "cirr", pencil.n(), contour, with_history), output_path);
        return flag_to_exit(rep.flag);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace gfeast
