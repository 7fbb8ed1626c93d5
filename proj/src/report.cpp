#include "gfeast/report.hpp"

#include <algorithm>

#include <json.hpp>

namespace gfeast {

namespace {

using nlohmann::json;

json contour_json(const Contour& c, std::size_t n) {
    return {{"center_re", c.center.real()},
            {"center_im", c.center.imag()},
            {"radius", c.radius},
            {"n", n}};
}

} // namespace

std::string report_to_json(const GfeastReport& rep, const std::string& method,
                           std::size_t n, const Contour& c, bool include_history) {
    json j;
    j["schema"] = "gfeast-report-v1";
    j["method"] = method;
    j["problem"] = contour_json(c, n);
    j["flag"] = rep.flag;
    j["err"] = rep.err;
    if (rep.s_detected >= 0)
        j["s_detected"] = rep.s_detected;
    else
        j["s_detected"] = nullptr;
    j["t_used"] = rep.t_used;
    j["s0"] = rep.s0;
    j["search_rounds"] = rep.search_rounds;
    j["rank_warning"] = rep.rank_warning;

    json evals = json::array();
    json resids = json::array();
    for (const EigenPair& pr : rep.pairs) {
        evals.push_back({{"re", pr.lambda.real()}, {"im", pr.lambda.imag()}});
        resids.push_back(pr.residual);
    }
    j["eigenvalues"] = evals;
    j["residuals"] = resids;
    j["notes"] = rep.notes;

    if (include_history) {
        json hist = json::array();
        for (const IterationRecord& rec : rep.history) {
            json r;
            r["k"] = rec.k;
            r["c_k"] = rec.c_k;
            if (rec.e_k)
                r["e_k"] = *rec.e_k;
            else
                r["e_k"] = nullptr;
            json pairs = json::array();
            for (const PairSnapshot& ps : rec.pairs)
                pairs.push_back({{"re", ps.lambda.real()},
                                 {"im", ps.lambda.imag()},
                                 {"residual", ps.residual},
                                 {"inside", ps.inside}});
            r["pairs"] = pairs;
            hist.push_back(r);
        }
        j["history"] = hist;
    }

    j["timings"] = {{"factor_s", rep.timings.factor_s},
                    {"search_s", rep.timings.search_s},
                    {"iterate_s", rep.timings.iterate_s},
                    {"total_s", rep.timings.total_s}};
    return j.dump(2) + "\n";
}

std::string oracle_report_to_json(const OracleEigs& oe, const Contour& c, std::size_t n) {
    std::vector<cd> inside;
    for (const cd& v : oe.finite)
        if (std::abs(v - c.center) < c.radius) inside.push_back(v);
    std::sort(inside.begin(), inside.end(), [](const cd& a, const cd& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });

    json j;
    j["schema"] = "gfeast-report-v1";
    j["method"] = "oracle";
    j["problem"] = contour_json(c, n);
    j["flag"] = 1;
    json evals = json::array();
    for (const cd& v : inside) evals.push_back({{"re", v.real()}, {"im", v.imag()}});
    j["eigenvalues"] = evals;
    j["s_exact"] = inside.size();
    j["finite_count"] = oe.finite.size();
    j["infinite_count"] = oe.infinite_count;
    return j.dump(2) + "\n";
}

} // namespace gfeast
