// Copyright (C) 2026 the takv authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>

namespace takv {

/**
 * Per-position scoring state. One record per token position; the trial
 * runner updates the statistics as the stream advances and policies read
 * them when ranking candidates for retention.
 */
struct TokenRecord {
    std::int64_t position = 0;        // 1-based index in the stream
    std::int32_t token_id = 0;        // opaque vocabulary id
    double cumulative_attention = 0;  // raw sum across heads and steps
    double recency = 0;               // position / current length, in [0,1]
    bool is_anchor = false;
    double pension = 0;               // EMA of per-step attention
    double frequency_penalty = 0;     // repetitions of this token id
    double voucher = 0;               // current sponsorship boost
};

/**
 * Coefficients of the composite utility. The full preset tracks
 * attention; the fast preset zeroes the attention terms so the policy
 * can run against backends that never materialize attention weights.
 */
struct UtilityWeights {
    double alpha = 1.0;   // cumulative attention
    double beta = 0.5;    // recency
    double gamma = 0.3;   // anchor flag
    double delta = 0.2;   // pension
    double lambda = 0.1;  // frequency penalty (subtracted)

    static UtilityWeights full_ta() { return {1.0, 0.5, 0.3, 0.2, 0.1}; }
    static UtilityWeights ta_fast() { return {0.0, 0.5, 0.3, 0.0, 0.1}; }

    // Named preset lookup ("full-ta", "ta-fast"); throws ConfigError on
    // unknown names.
    static UtilityWeights preset(const std::string& name);

    // Key-value file with decimal reals, e.g. "alpha = 1.0".
    static UtilityWeights from_file(const std::string& path);
};

// u = alpha*A + beta*R + gamma*S + delta*P - lambda*F + V.
// Throws ScoringError if any field or weight is non-finite.
double compute_utility(const TokenRecord& record, const UtilityWeights& w);

// Same linear form without finiteness checks, for hot loops that have
// already validated their inputs.
inline double compute_utility_unchecked(const TokenRecord& r, const UtilityWeights& w) {
    return w.alpha * r.cumulative_attention + w.beta * r.recency +
           w.gamma * (r.is_anchor ? 1.0 : 0.0) + w.delta * r.pension -
           w.lambda * r.frequency_penalty + r.voucher;
}

// EMA update: coeff*old + (1-coeff)*step_attention. coeff must lie in
// (0,1); anything else throws ConfigError.
double update_pension(double old_pension, double step_attention, double ema_coefficient);

// Occurrences-so-far of token_id minus one, clamped at zero. First
// occurrences (and ids absent from the map) are unpenalized.
double update_frequency_penalty(const std::unordered_map<std::int32_t, std::int64_t>& counts,
                                std::int32_t token_id);

}  // namespace takv
