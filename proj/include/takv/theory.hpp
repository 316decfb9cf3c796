// Copyright (C) 2026 the takv authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace takv {

struct SuiteResult;  // simulator.hpp

/**
 * One bound compared against a measurement. `consistent` means the
 * measurement satisfies the predicted inequality (or equality within
 * tolerance); `violated` reports carry the offending value.
 */
struct BoundReport {
    std::string bound_name;
    std::string inputs;
    double predicted = 0;
    double measured = 0;
    bool consistent = false;
    std::string note;
};

// Survival ceiling for an attention-ranked policy on a dormant token:
// K / (epsilon_fraction * n). epsilon_fraction is the quantile fraction
// of tokens at-or-below the dormancy threshold, passed explicitly
// because it is a different quantity from the attention threshold
// itself. ConfigError on epsilon_fraction outside (0,1] or K > n.
double theorem1_bound(std::int64_t K, std::int64_t n, double epsilon_fraction);

// Minimum in-span voucher B * 0.8^L.
double min_voucher(double B, std::int64_t L);

// Smallest budget guaranteeing retrieval of an ell-token value:
// 1 (sink) + W (window) + ell.
std::int64_t min_budget(std::int64_t W, std::int64_t ell);

// Largest decoy count m with guaranteed retention at budget K:
// floor((K - 1 - W) / L) - 1, using the protected capacity
// K_p = K - 1 - W. Returns -1 when even a single span does not fit.
// ConfigError when K <= 1 + W.
std::int64_t decoy_max(std::int64_t K, std::int64_t W, std::int64_t L);

/**
 * Compare a measured suite against the closed-form bounds it covers.
 * Throws CheckError naming the absent cell when the suite lacks the
 * parameter point a bound needs.
 */
std::vector<BoundReport> check_bounds(const SuiteResult& suite);

}  // namespace takv
