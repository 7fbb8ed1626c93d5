#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gfeast/counting.hpp"
#include "gfeast/extraction.hpp"
#include "gfeast/projector.hpp"
#include "gfeast/quadrature.hpp"

namespace gfeast {

struct GfeastOptions {
    std::size_t q = 16;         // quadrature nodes
    std::size_t p = 50;         // probe block size for the count search
    double alpha = 1.5;         // search growth factor
    double eta = 1e-3;          // residual threshold for keeping a pair
    double eps = 1e-12;         // convergence target for the worst kept residual
    std::size_t max_iter = 10;  // refinement budget
    double rrqr_tol = kRrqrTol;
    std::uint64_t seed = 123456789;
};

struct PairSnapshot {
    cd lambda;
    double residual = -1.0;
    bool inside = false;
};

struct IterationRecord {
    int k = 0;
    int c_k = 0;                      // pairs kept this iteration
    std::optional<double> e_k;        // worst kept residual; empty when c_k = 0
    std::vector<PairSnapshot> pairs;  // every candidate pair this iteration
};

struct Timings {
    double factor_s = 0.0;
    double search_s = 0.0;
    double iterate_s = 0.0;
    double total_s = 0.0;
};

struct GfeastReport {
    // 1: converged below eps.  0: the worst residual stopped improving, the
    // previous iterate is reported.  -1: iteration budget exhausted.
    int flag = -1;
    double err = 0.0;     // worst residual among reported pairs (0 when none)
    EigenPairSet pairs;   // reported eigenpairs
    int s_detected = -1;  // kept count at first stabilization, -1 if never
    int t_used = 0;       // certified upper bound from the search
    double s0 = 0.0;      // raw stochastic count estimate
    int search_rounds = 0;
    bool rank_warning = false; // search basis filled the whole space
    std::vector<IterationRecord> history;
    std::vector<std::string> notes;
    Timings timings;
};

GfeastReport gfeast(const RegularPencil& p, const Contour& c, const GfeastOptions& opts);

} // namespace gfeast
