#pragma once

// Property checks run by `inner-entropy verify`.

#include <cstdint>
#include <string>
#include <vector>

#include "innerent/innerfn.hpp"
#include "innerent/quadrature.hpp"

namespace innerent {

struct InvariantResult {
    std::string name;
    bool passed = true;
    double statistic = 0.0;  ///< the quantity compared against the bound
    double bound = 0.0;
    std::string detail;
};

struct SuiteOptions {
    std::uint64_t seed = 20240601;
    std::size_t interior_points = 2000;
    std::size_t boundary_points = 64;
    std::size_t laplacian_points = 100;
    int threads = 0;
};

std::vector<InvariantResult> run_invariant_suite(const InnerFunctionSpec& f, const QuadratureConfig& cfg = {},
                                                 const SuiteOptions& opts = {});

}  // namespace innerent
