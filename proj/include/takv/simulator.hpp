// Copyright (C) 2026 the takv authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "takv/policies.hpp"

namespace takv {

/**
 * Attention-trace parameters. The generator's only hard contract is
 * dormancy: every needle/decoy value token accumulates less than
 * `epsilon` attention before the query.
 *
 * profile "uniform": softmax over seeded random logits, dormant spans
 * suppressed. profile "burst": a designated band of tokens receives a
 * short burst of mass on arrival (a topical-mention pattern), the sink
 * absorbs the rest, and everything else stays near the floor.
 */
struct AttentionModel {
    double epsilon = 1e-3;
    std::string profile = "uniform";  // uniform | burst
    double noise = 1.0;               // logit scale, uniform profile
    double suppression = 30.0;        // logit penalty on dormant spans
    double burst_total = 0.1875;      // mass a hot token accumulates
    std::int64_t burst_steps = 6;
    double floor_weight = 1e-7;       // per-token base weight, burst profile
};

struct WorkloadConfig {
    std::int64_t n = 4096;
    double needle_depth = 0.5;
    std::int64_t needle_len = 7;
    std::string anchor_text = "The secret code:";
    std::int64_t decoys = 0;
    std::int64_t injections = 0;  // adversarial anchors placed after the needle
    std::string injection_text = "key:";
    std::int64_t query_len = 6;
    std::int64_t hot_tokens = 0;  // burst-profile competitor band
    double hot_position = 0.9;
    AttentionModel attention;
    std::uint64_t seed = 1;
};

struct Token {
    std::int32_t id = 0;
    std::string text;
};

/**
 * A fully materialized synthetic stream. Everything (filler words,
 * span placement, attention logits) is a pure function of the config
 * and seed.
 */
struct Workload {
    WorkloadConfig config;
    std::vector<Token> tokens;  // tokens[i] sits at position i+1

    std::int64_t anchor_begin = 0, anchor_end = 0;  // anchor phrase span
    std::int64_t needle_begin = 0, needle_end = 0;  // value span
    std::vector<std::pair<std::int64_t, std::int64_t>> decoy_spans;
    std::vector<std::pair<std::int64_t, std::int64_t>> injection_spans;
    std::vector<std::int64_t> hot_positions;
    std::int64_t query_position = 0;  // first query token

    std::vector<bool> suppressed;  // size n+1; needle + decoy + injection values
    std::vector<bool> hot;         // size n+1

    std::int64_t n() const { return static_cast<std::int64_t>(tokens.size()); }
};

// Deterministic stream construction. ConfigError when the needle span
// cannot be placed (overlap with decoys or query, or it exceeds n).
Workload build_workload(const WorkloadConfig& cfg);

// Attention row over `positions` (the live set) at `step`. Sums to one.
std::vector<double> synth_attention(const Workload& w, std::int64_t step,
                                    const std::vector<std::int64_t>& positions);

// Convenience overload over the full prefix 1..step.
std::vector<double> synth_attention(const Workload& w, std::int64_t step);

struct TrialResult {
    std::string policy_name;
    bool needle_retained = false;
    std::int64_t needle_rank = 0;  // best rank of a span token, 1 = highest
    std::uint64_t retained_history_digest = 0;
    std::int64_t steps = 0;
    double needle_max_attention = 0;  // dormancy evidence
};

// Streams the workload one token per step through the policy and
// evaluates retention at query_position - 1. Policy invariant
// violations surface as TrialError.
TrialResult run_trial(RetentionPolicy& policy, const Workload& workload, std::int64_t K);

// Convenience: build the policy from config, run one trial.
TrialResult run_trial(const PolicyConfig& policy_cfg, const Workload& workload, std::int64_t K);

// ---------------------------------------------------------------------------
// Suites

struct SuiteConfig {
    std::vector<std::string> policies = {"ta-fast-regex"};
    std::vector<std::int64_t> budgets = {16};
    std::vector<double> depths = {0.5};
    std::vector<std::int64_t> decoy_counts = {};  // empty = workload default
    std::int64_t trials = 10;
    std::uint64_t master_seed = 1;
    std::int64_t workers = 1;
    WorkloadConfig workload;
    PolicyConfig policy_base;
};

struct SuiteCell {
    std::string policy;
    std::int64_t budget = 0;
    double depth = 0;
    std::int64_t decoys = 0;
    std::int64_t trials = 0;
    std::int64_t retained_count = 0;
    double retention = 0;  // percent
    double ci_lo = 0, ci_hi = 0;
    std::uint64_t digest = 0;
    std::vector<std::uint64_t> trial_seeds;
};

struct SuiteResult {
    SuiteConfig config;
    std::string config_hash_hex;
    std::vector<SuiteCell> cells;

    const SuiteCell* find_cell(const std::string& policy, std::int64_t budget, double depth,
                               std::int64_t decoys) const;
};

// Full grid run: policies x budgets x depths x decoy counts, `trials`
// seeded trials per cell. Aggregation is order-independent, so any
// worker count produces identical results.
SuiteResult run_suite(const SuiteConfig& cfg);

// Wilson 95% interval for k successes out of n, as fractions.
std::pair<double, double> wilson_interval(std::int64_t successes, std::int64_t n);

}  // namespace takv
