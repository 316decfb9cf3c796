// Copyright (C) 2026 the takv authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

namespace takv {

// Anchor-sponsorship parameters. The offset decay localizes protection
// to the span right after the anchor; the step decay ages out entries
// whose anchor no longer re-fires.
struct SponsorConfig {
    double initial_budget = 15.0;   // B
    std::int64_t span = 6;          // L
    double offset_decay = 0.8;      // per-offset base inside a span
    double step_decay = 0.9;        // per-step budget decay
    double prune_floor = 1e-6;      // entries below this budget are dropped
    double confidence_floor = 0.3;  // gate for confidence-ranked allocation
};

struct SponsorEntry {
    std::int64_t anchor_position = 0;
    double budget = 0;      // remaining B_i
    double confidence = 1;  // detector confidence in [0,1]
    std::int64_t span = 0;  // L, number of sponsored successors
};

// Sparse voucher map; positions outside every span are implicitly zero.
using VoucherMap = std::unordered_map<std::int64_t, double>;

/**
 * Active anchors with their remaining budgets. At most one entry per
 * anchor position: re-sponsoring a position resets its budget to the
 * fresh value instead of stacking, so a static anchor cannot grow an
 * unbounded claim over time.
 */
class SponsorLedger {
public:
    // Insert or reset the entry at `anchor_position`.
    void sponsor(std::int64_t anchor_position, double budget, double confidence,
                 std::int64_t span);

    // Multiply every budget by `step_decay`, dropping entries that fall
    // below `prune_floor`.
    void decay(double step_decay = 0.9, double prune_floor = 1e-6);

    const std::vector<SponsorEntry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    void clear() { entries_.clear(); }

private:
    std::vector<SponsorEntry> entries_;  // sorted by anchor_position
};

// V_j = sum over entries of B_i * decay^(j-i) for i < j <= i+L, with
// overlapping spans adding up. `n` bounds the positions written.
VoucherMap allocate_vouchers(const SponsorLedger& ledger, std::int64_t n,
                             double offset_decay = 0.8);

// Confidence-ranked variant: V_j = sum of f_i * B * decay^(j-i) over
// anchors with f_i > floor. With a single confidence-1.0 anchor this
// reduces exactly to allocate_vouchers at budget B.
VoucherMap allocate_vouchers_ranked(const std::map<std::int64_t, double>& confidences, double B,
                                    std::int64_t L, double floor, std::int64_t n,
                                    double offset_decay = 0.8);

// Pure form of the per-step decay, returning the aged ledger.
SponsorLedger decay_budgets(SponsorLedger ledger, double step_decay = 0.9,
                            double prune_floor = 1e-6);

}  // namespace takv
