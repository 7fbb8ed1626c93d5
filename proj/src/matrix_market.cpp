#include "gfeast/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "gfeast/errors.hpp"

namespace gfeast {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

[[noreturn]] void fail(const std::string& path, std::size_t line, const std::string& msg) {
    throw MatrixMarketError(path + ":" + std::to_string(line) + ": " + msg);
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

double parse_number(const std::string& tok, const std::string& path, std::size_t line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) fail(path, line, "bad numeric value '" + tok + "'");
        return v;
    } catch (const std::exception&) {
        fail(path, line, "bad numeric value '" + tok + "'");
    }
}

std::size_t parse_index(const std::string& tok, const std::string& path, std::size_t line) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(tok, &used);
        if (used != tok.size() || v < 1) fail(path, line, "bad index '" + tok + "'");
        return static_cast<std::size_t>(v);
    } catch (const MatrixMarketError&) {
        throw;
    } catch (const std::exception&) {
        fail(path, line, "bad index '" + tok + "'");
    }
}

struct Mirror {
    bool enabled = false;
    bool conjugate = false;
    bool negate = false;
    bool reject_diagonal = false;
};

Mirror mirror_for(const std::string& symmetry) {
    Mirror m;
    if (symmetry == "general") return m;
    m.enabled = true;
    if (symmetry == "hermitian") m.conjugate = true;
    if (symmetry == "skew-symmetric") {
        m.negate = true;
        m.reject_diagonal = true;
    }
    return m;
}

} // namespace

CMatrix read_matrix_market(const std::string& path, MMHeader* header) {
    std::ifstream in(path);
    if (!in) throw MatrixMarketError("cannot open '" + path + "'");

    std::string banner;
    if (!std::getline(in, banner)) fail(path, 1, "empty file");
    std::vector<std::string> btoks = split(banner);
    for (auto& t : btoks) t = lower(t);
    if (btoks.size() < 5 || btoks[0] != "%%matrixmarket")
        fail(path, 1, "missing %%MatrixMarket banner");
    if (btoks[1] != "matrix") fail(path, 1, "object must be 'matrix'");

    MMHeader hdr;
    hdr.format = btoks[2];
    hdr.field = btoks[3];
    hdr.symmetry = btoks[4];
    if (hdr.format != "coordinate" && hdr.format != "array")
        fail(path, 1, "format must be 'coordinate' or 'array'");
    if (hdr.field != "real" && hdr.field != "complex" && hdr.field != "integer" &&
        hdr.field != "pattern")
        fail(path, 1, "unknown field '" + hdr.field + "'");
    if (hdr.symmetry != "general" && hdr.symmetry != "symmetric" &&
        hdr.symmetry != "skew-symmetric" && hdr.symmetry != "hermitian")
        fail(path, 1, "unknown symmetry '" + hdr.symmetry + "'");
    if (hdr.symmetry == "hermitian" && hdr.field != "complex")
        fail(path, 1, "hermitian storage requires a complex field");
    if (hdr.field == "pattern" &&
        (hdr.format == "array" || hdr.symmetry == "skew-symmetric" ||
         hdr.symmetry == "hermitian"))
        fail(path, 1, "pattern field is only valid for coordinate general/symmetric");

    std::size_t lineno = 1;
    std::string line;
    auto next_content = [&](bool required) -> std::vector<std::string> {
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty() || line[0] == '%') continue;
            std::vector<std::string> toks = split(line);
            if (!toks.empty()) return toks;
        }
        if (required) fail(path, lineno, "unexpected end of file");
        return {};
    };

    const std::vector<std::string> size_toks = next_content(true);
    const bool coord = hdr.format == "coordinate";
    if (size_toks.size() != (coord ? 3u : 2u))
        fail(path, lineno, "bad size line");
    hdr.rows = parse_index(size_toks[0], path, lineno);
    hdr.cols = parse_index(size_toks[1], path, lineno);
    if (coord) hdr.entries = parse_index(size_toks[2], path, lineno);

    const bool symmetric_kind = hdr.symmetry != "general";
    if (symmetric_kind && hdr.rows != hdr.cols)
        fail(path, lineno, hdr.symmetry + " storage requires a square matrix");

    CMatrix m(hdr.rows, hdr.cols);
    const Mirror mir = mirror_for(hdr.symmetry);

    if (coord) {
        const std::size_t values_per_entry = (hdr.field == "pattern") ? 0
                                             : (hdr.field == "complex") ? 2
                                                                        : 1;
        std::vector<char> seen(hdr.rows * hdr.cols, 0);
        for (std::size_t e = 0; e < hdr.entries; ++e) {
            const std::vector<std::string> toks = next_content(true);
            if (toks.size() != 2 + values_per_entry)
                fail(path, lineno, "expected " + std::to_string(2 + values_per_entry) +
                                       " tokens on entry line");
            const std::size_t i = parse_index(toks[0], path, lineno);
            const std::size_t j = parse_index(toks[1], path, lineno);
            if (i > hdr.rows || j > hdr.cols)
                fail(path, lineno, "entry index out of range");
            cd v(1.0, 0.0);
            if (hdr.field == "complex")
                v = cd(parse_number(toks[2], path, lineno), parse_number(toks[3], path, lineno));
            else if (hdr.field != "pattern")
                v = cd(parse_number(toks[2], path, lineno), 0.0);

            const std::size_t r = i - 1, c = j - 1;
            if (mir.reject_diagonal && r == c)
                fail(path, lineno, "diagonal entry in skew-symmetric file");
            if (seen[c * hdr.rows + r]) fail(path, lineno, "duplicate entry");
            seen[c * hdr.rows + r] = 1;
            m(r, c) = v;
            if (mir.enabled && r != c) {
                if (seen[r * hdr.rows + c]) fail(path, lineno, "duplicate entry (mirror)");
                seen[r * hdr.rows + c] = 1;
                cd w = v;
                if (mir.conjugate) w = std::conj(w);
                if (mir.negate) w = -w;
                m(c, r) = w;
            } else if (mir.conjugate && r == c && v.imag() != 0.0) {
                fail(path, lineno, "hermitian diagonal entry must be real");
            }
        }
        if (!next_content(false).empty())
            fail(path, lineno, "trailing data after the last entry");
    } else {
        // Array format: values in column-major order; symmetric kinds store
        // the lower triangle only.
        std::vector<double> numbers;
        for (;;) {
            const std::vector<std::string> toks = next_content(false);
            if (toks.empty()) break;
            for (const std::string& t : toks)
                numbers.push_back(parse_number(t, path, lineno));
        }
        const std::size_t per_value = (hdr.field == "complex") ? 2 : 1;
        std::size_t expected = 0;
        if (hdr.symmetry == "general")
            expected = hdr.rows * hdr.cols;
        else if (hdr.symmetry == "skew-symmetric")
            expected = hdr.rows * (hdr.rows - 1) / 2;
        else
            expected = hdr.rows * (hdr.rows + 1) / 2;
        if (numbers.size() != expected * per_value)
            fail(path, lineno, "array data has " + std::to_string(numbers.size() / per_value) +
                                   " values, expected " + std::to_string(expected));

        std::size_t idx = 0;
        auto next_value = [&]() {
            cd v;
            if (per_value == 2) {
                v = cd(numbers[idx], numbers[idx + 1]);
                idx += 2;
            } else {
                v = cd(numbers[idx], 0.0);
                idx += 1;
            }
            return v;
        };
        if (hdr.symmetry == "general") {
            for (std::size_t j = 0; j < hdr.cols; ++j)
                for (std::size_t i = 0; i < hdr.rows; ++i) m(i, j) = next_value();
        } else {
            for (std::size_t j = 0; j < hdr.cols; ++j) {
                const std::size_t start = (hdr.symmetry == "skew-symmetric") ? j + 1 : j;
                for (std::size_t i = start; i < hdr.rows; ++i) {
                    const cd v = next_value();
                    m(i, j) = v;
                    if (i != j) {
                        cd w = v;
                        if (mir.conjugate) w = std::conj(w);
                        if (mir.negate) w = -w;
                        m(j, i) = w;
                    } else if (mir.conjugate && v.imag() != 0.0) {
                        fail(path, lineno, "hermitian diagonal entry must be real");
                    }
                }
            }
        }
    }

    if (header) *header = hdr;
    return m;
}

void write_matrix_market_array(const std::string& path, const CMatrix& m) {
    std::ofstream out(path);
    if (!out) throw MatrixMarketError("cannot write '" + path + "'");
    out << "%%MatrixMarket matrix array complex general\n";
    out << m.rows() << " " << m.cols() << "\n";
    char buf[64];
    for (std::size_t j = 0; j < m.cols(); ++j) {
        for (std::size_t i = 0; i < m.rows(); ++i) {
            const cd v = m(i, j);
            std::snprintf(buf, sizeof(buf), "%.17g %.17g\n", v.real(), v.imag());
            out << buf;
        }
    }
    if (!out) throw MatrixMarketError("write failed for '" + path + "'");
}

} // namespace gfeast
