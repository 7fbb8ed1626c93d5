#pragma once

#include <string>

#include "gfeast/driver.hpp"
#include "gfeast/oracle.hpp"

namespace gfeast {

// JSON serialization of a run (schema "gfeast-report-v1").  Key names are
// stable; timings live under their own key so that deterministic comparisons
// can strip them.  History is included only on request.
std::string report_to_json(const GfeastReport& rep, const std::string& method,
                           std::size_t n, const Contour& c, bool include_history);

// Oracle listing: every finite eigenvalue inside the circle, sorted by real
// then imaginary part, plus whole-spectrum counts.
std::string oracle_report_to_json(const OracleEigs& oe, const Contour& c, std::size_t n);

} // namespace gfeast
