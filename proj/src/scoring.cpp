// Copyright (C) 2026 the takv authors
// SPDX-License-Identifier: Apache-2.0

#include "takv/scoring.hpp"

#include <cmath>

#include "takv/config.hpp"
#include "takv/errors.hpp"

namespace takv {

UtilityWeights UtilityWeights::preset(const std::string& name) {
    if (name == "full-ta") return full_ta();
    if (name == "ta-fast") return ta_fast();
    throw ConfigError("unknown weights preset '" + name + "' (expected full-ta or ta-fast)");
}

UtilityWeights UtilityWeights::from_file(const std::string& path) {
    KeyValueConfig cfg = KeyValueConfig::load(path);
    UtilityWeights w;
    w.alpha = cfg.get_real("alpha", w.alpha);
    w.beta = cfg.get_real("beta", w.beta);
    w.gamma = cfg.get_real("gamma", w.gamma);
    w.delta = cfg.get_real("delta", w.delta);
    w.lambda = cfg.get_real("lambda", w.lambda);
    for (const auto& k : {w.alpha, w.beta, w.gamma, w.delta, w.lambda}) {
        if (!(k >= 0.0) || !std::isfinite(k)) {
            throw ConfigError("utility weights in " + path + " must be non-negative reals");
        }
    }
    return w;
}

double compute_utility(const TokenRecord& record, const UtilityWeights& w) {
    const double fields[] = {record.cumulative_attention, record.recency,
                             record.pension,              record.frequency_penalty,
                             record.voucher,              w.alpha,
                             w.beta,                      w.gamma,
                             w.delta,                     w.lambda};
    for (double v : fields) {
        if (!std::isfinite(v)) {
            throw ScoringError("non-finite input to compute_utility at position " +
                               std::to_string(record.position));
        }
    }
    return compute_utility_unchecked(record, w);
}

double update_pension(double old_pension, double step_attention, double ema_coefficient) {
    if (!(ema_coefficient > 0.0) || !(ema_coefficient < 1.0)) {
        throw ConfigError("pension EMA coefficient must lie in (0,1), got " +
                          std::to_string(ema_coefficient));
    }
    return ema_coefficient * old_pension + (1.0 - ema_coefficient) * step_attention;
}

double update_frequency_penalty(const std::unordered_map<std::int32_t, std::int64_t>& counts,
                                std::int32_t token_id) {
    auto it = counts.find(token_id);
    if (it == counts.end() || it->second <= 1) return 0.0;
    return static_cast<double>(it->second - 1);
}

}  // namespace takv
