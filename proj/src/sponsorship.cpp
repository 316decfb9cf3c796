// Copyright (C) 2026 the takv authors
// SPDX-License-Identifier: Apache-2.0

#include "takv/sponsorship.hpp"

#include <algorithm>

namespace takv {

void SponsorLedger::sponsor(std::int64_t anchor_position, double budget, double confidence,
                            std::int64_t span) {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), anchor_position,
                               [](const SponsorEntry& e, std::int64_t pos) {
                                   return e.anchor_position < pos;
                               });
    if (it != entries_.end() && it->anchor_position == anchor_position) {
        it->budget = budget;
        it->confidence = confidence;
        it->span = span;
        return;
    }
    entries_.insert(it, SponsorEntry{anchor_position, budget, confidence, span});
}

void SponsorLedger::decay(double step_decay, double prune_floor) {
    for (auto& e : entries_) e.budget *= step_decay;
    entries_.erase(std::remove_if(entries_.begin(), entries_.end(),
                                  [prune_floor](const SponsorEntry& e) {
                                      return e.budget < prune_floor;
                                  }),
                   entries_.end());
}

VoucherMap allocate_vouchers(const SponsorLedger& ledger, std::int64_t n, double offset_decay) {
    VoucherMap vouchers;
    for (const SponsorEntry& e : ledger.entries()) {
        double v = e.budget;
        const std::int64_t last = std::min(e.anchor_position + e.span, n);
        for (std::int64_t j = e.anchor_position + 1; j <= last; ++j) {
            v *= offset_decay;
            vouchers[j] += v;
        }
    }
    return vouchers;
}

VoucherMap allocate_vouchers_ranked(const std::map<std::int64_t, double>& confidences, double B,
                                    std::int64_t L, double floor, std::int64_t n,
                                    double offset_decay) {
    VoucherMap vouchers;
    for (const auto& [pos, conf] : confidences) {
        if (!(conf > floor)) continue;
        double v = conf * B;
        const std::int64_t last = std::min(pos + L, n);
        for (std::int64_t j = pos + 1; j <= last; ++j) {
            v *= offset_decay;
            vouchers[j] += v;
        }
    }
    return vouchers;
}

SponsorLedger decay_budgets(SponsorLedger ledger, double step_decay, double prune_floor) {
    ledger.decay(step_decay, prune_floor);
    return ledger;
}

}  // namespace takv
