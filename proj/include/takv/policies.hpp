// Copyright (C) 2026 the takv authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "takv/anchors.hpp"
#include "takv/scoring.hpp"
#include "takv/sponsorship.hpp"

namespace takv {

struct Workload;  // simulator.hpp

// Split of the total budget K into utility-selected and
// sponsorship-reserved slots. The reserved slots are a floor, not a
// ceiling: sponsored tokens may also win main slots on utility.
struct Partition {
    std::int64_t k_main = 0;
    std::int64_t k_protected = 0;
};

// rule = "default": k_protected = round(K/4), clamped so the main pool
// still covers the three mandatory tokens; reproduces (12,4) at K=16.
// rule = "strict": (K, 0). K < 3 raises ConfigError.
Partition partition_budget(std::int64_t K, const std::string& rule = "default");

// Sink/window geometry of the window baselines. Defaults follow the
// usual 4-sink, 12-token-window layout at K=16.
struct BaselineConfig {
    std::int64_t sink_count = 4;
    std::int64_t window = 12;
};

/**
 * Retained-set bookkeeping for one sequence. `retained` is sorted;
 * `mandatory` must be a subset of it after every step.
 */
struct CacheState {
    std::vector<std::int64_t> retained;
    std::int64_t budget = 0;  // K
    Partition partition;
    std::vector<std::int64_t> mandatory;
};

// Mandatory-first top-K by utility, deterministic ties by higher
// position. ConfigError when |mandatory| > K.
std::vector<std::int64_t> select_top_k(const std::map<std::int64_t, double>& utilities,
                                       std::int64_t K,
                                       const std::set<std::int64_t>& mandatory);

// ---------------------------------------------------------------------------
// Per-step policy interface

/**
 * Read-only per-position statistics maintained by the trial runner.
 * Arrays are indexed by 1-based position; index 0 is unused.
 */
struct TrialTape {
    const Workload* workload = nullptr;
    std::vector<double> cumulative_attention;
    std::vector<double> pension;
    std::unordered_map<std::int32_t, std::int64_t> token_counts;

    double frequency_penalty_at(std::int64_t position) const;
    const std::string& text_at(std::int64_t position) const;
};

struct StepContext {
    std::int64_t step = 0;    // stream length so far; also the new position
    std::int64_t budget = 0;  // K
    const TrialTape* tape = nullptr;
    const std::vector<std::int64_t>* candidates = nullptr;  // sorted; prev retained + {step}
    const std::vector<double>* attention_row = nullptr;     // aligned with candidates
    std::uint64_t trial_seed = 0;
};

class RetentionPolicy {
public:
    virtual ~RetentionPolicy() = default;
    virtual const std::string& name() const = 0;

    // Consume one stream step and return the new retained set (sorted).
    virtual std::vector<std::int64_t> step(const StepContext& ctx) = 0;

    // Scores used for rank diagnostics over all positions 1..t,
    // matching the policy's own retention criterion.
    virtual std::vector<double> rank_scores(const StepContext& ctx) const = 0;

    virtual void reset() = 0;
};

// ---------------------------------------------------------------------------
// Policy configuration

enum class AnchorDetectorKind { regex, semantic, embedding, learned, learnrank };

struct PolicyConfig {
    std::string policy = "ta-fast-regex";

    UtilityWeights weights = UtilityWeights::ta_fast();
    SponsorConfig sponsor;
    double pension_coefficient = 0.99;

    // TA mandatory geometry: first `sinks` tokens plus the last `window`.
    std::int64_t sinks = 1;
    std::int64_t window = 2;
    std::string partition_rule = "default";  // default | strict
    std::string tie_break = "position";      // position | random

    AnchorDetectorKind detector = AnchorDetectorKind::regex;
    std::vector<std::string> patterns = {"key:", "code:", "password:", "token:", "secret:"};
    std::vector<std::string> allowlist;  // empty = no allowlist

    // Embedding detection over hashed text features.
    std::int64_t embed_dim = 16;
    std::vector<std::string> concepts;
    double sim_threshold = 0.5;

    // Learned detection.
    DetectorWeights detector_weights;
    double learned_gate = 0.5;  // confidence gate for plain learned detection

    // Full-TA: scale each anchor's budget by its share of attention mass
    // among competing anchors.
    bool attention_weighted_sponsorship = false;

    BaselineConfig baseline;  // tova / streaming geometry
};

// Builds one of: ta-full, ta-fast-regex, ta-fast-semantic,
// ta-fast-embedding, ta-learned, ta-learnrank, h2o, tova, streaming.
// The returned policy owns its detector and ledger; one instance per
// sequence.
std::unique_ptr<RetentionPolicy> make_policy(const PolicyConfig& cfg);

// Applies the policy-specific defaults (weights preset, detector kind,
// dilution) for a named policy on top of `base`.
PolicyConfig resolve_policy_config(const std::string& policy_name, PolicyConfig base = {});

}  // namespace takv
