// Copyright (C) 2026 the takv authors
// SPDX-License-Identifier: Apache-2.0

#include "takv/policies.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "takv/errors.hpp"
#include "takv/rng.hpp"
#include "takv/simulator.hpp"

namespace takv {

Partition partition_budget(std::int64_t K, const std::string& rule) {
    if (K < 3) {
        throw ConfigError("budget K must be at least 3 (sink + 2 recency slots), got " +
                          std::to_string(K));
    }
    if (rule == "strict") return {K, 0};
    if (rule == "default") {
        // 3:1 main-to-protected split, clamped so the main pool always
        // covers the mandatory tokens.
        std::int64_t k_protected = std::llround(static_cast<double>(K) / 4.0);
        k_protected = std::min(k_protected, K - 3);
        k_protected = std::max<std::int64_t>(k_protected, 0);
        return {K - k_protected, k_protected};
    }
    throw ConfigError("unknown partition rule '" + rule + "' (expected default or strict)");
}

std::vector<std::int64_t> select_top_k(const std::map<std::int64_t, double>& utilities,
                                       std::int64_t K,
                                       const std::set<std::int64_t>& mandatory) {
    if (static_cast<std::int64_t>(mandatory.size()) > K) {
        throw ConfigError("mandatory set (" + std::to_string(mandatory.size()) +
                          ") exceeds budget K=" + std::to_string(K));
    }
    std::vector<std::int64_t> out(mandatory.begin(), mandatory.end());
    std::vector<std::pair<double, std::int64_t>> rest;
    for (const auto& [pos, u] : utilities) {
        if (!mandatory.count(pos)) rest.emplace_back(u, pos);
    }
    std::sort(rest.begin(), rest.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second > b.second;  // ties: higher position wins
    });
    const std::int64_t slots = K - static_cast<std::int64_t>(out.size());
    for (std::int64_t i = 0; i < slots && i < static_cast<std::int64_t>(rest.size()); ++i) {
        out.push_back(rest[static_cast<std::size_t>(i)].second);
    }
    std::sort(out.begin(), out.end());
    return out;
}

double TrialTape::frequency_penalty_at(std::int64_t position) const {
    const std::int32_t id = workload->tokens[static_cast<std::size_t>(position - 1)].id;
    return update_frequency_penalty(token_counts, id);
}

const std::string& TrialTape::text_at(std::int64_t position) const {
    return workload->tokens[static_cast<std::size_t>(position - 1)].text;
}

// ---------------------------------------------------------------------------
// Anchor scanners

namespace {

class AnchorScanner {
public:
    virtual ~AnchorScanner() = default;
    virtual void on_token(const std::string& text, std::int64_t pos) = 0;
    virtual const std::map<std::int64_t, double>& confidences() const = 0;
    virtual void reset() = 0;
};

class PatternScanner : public AnchorScanner {
public:
    PatternScanner(PatternSet set, AnchorSource source)
        : set_(std::move(set)), source_(source), stream_(set_, source_) {}

    void on_token(const std::string& text, std::int64_t) override {
        const std::size_t before = stream_.events().size();
        stream_.push(text);
        if (stream_.events().size() != before) {
            conf_.clear();
            for (const AnchorEvent& e : stream_.events()) conf_[e.position] = e.confidence;
        }
    }

    const std::map<std::int64_t, double>& confidences() const override { return conf_; }

    void reset() override {
        stream_ = StreamDetector(set_, source_);
        conf_.clear();
    }

private:
    PatternSet set_;
    AnchorSource source_;
    StreamDetector stream_;
    std::map<std::int64_t, double> conf_;
};

class EmbeddingScanner : public AnchorScanner {
public:
    EmbeddingScanner(const std::vector<std::string>& concepts, std::int64_t dim, double threshold)
        : dim_(dim), threshold_(threshold) {
        if (concepts.empty()) throw ConfigError("embedding detection needs concept strings");
        for (const std::string& c : concepts) {
            concepts_.push_back(text_feature_embedding(c, dim_));
        }
    }

    void on_token(const std::string& text, std::int64_t pos) override {
        const std::vector<double> emb = text_feature_embedding(text, dim_);
        double norm = 0;
        for (double v : emb) norm += v * v;
        if (norm == 0) return;  // punctuation-free short token; nothing to match
        double best = -1.0;
        for (const auto& c : concepts_) best = std::max(best, cosine_similarity(emb, c));
        if (best >= threshold_) conf_[pos] = std::clamp(best, 0.0, 1.0);
    }

    const std::map<std::int64_t, double>& confidences() const override { return conf_; }
    void reset() override { conf_.clear(); }

private:
    std::int64_t dim_;
    double threshold_;
    std::vector<std::vector<double>> concepts_;
    std::map<std::int64_t, double> conf_;
};

class LearnedScanner : public AnchorScanner {
public:
    LearnedScanner(DetectorWeights weights, double gate, std::int64_t window_tokens = 3)
        : weights_(std::move(weights)), gate_(gate), window_(window_tokens) {
        if (weights_.hidden_dim <= 0) {
            throw ConfigError("learned detection requires trained detector weights");
        }
    }

    void on_token(const std::string& text, std::int64_t pos) override {
        recent_.push_back(text);
        if (static_cast<std::int64_t>(recent_.size()) > window_) {
            recent_.erase(recent_.begin());
        }
        std::string window_text;
        for (const std::string& t : recent_) window_text += t;
        const double c =
            mlp_forward(text_feature_embedding(window_text, weights_.hidden_dim), weights_);
        if (c > gate_) conf_[pos] = c;
    }

    const std::map<std::int64_t, double>& confidences() const override { return conf_; }

    void reset() override {
        recent_.clear();
        conf_.clear();
    }

private:
    DetectorWeights weights_;
    double gate_;
    std::int64_t window_;
    std::vector<std::string> recent_;
    std::map<std::int64_t, double> conf_;
};

// ---------------------------------------------------------------------------
// Transactional-attention policy

struct Candidate {
    std::int64_t pos = 0;
    double utility = 0;
    double voucher = 0;
    bool mandatory = false;
    bool selected = false;
};

class TaPolicy final : public RetentionPolicy {
public:
    explicit TaPolicy(PolicyConfig cfg) : cfg_(std::move(cfg)) {
        switch (cfg_.detector) {
            case AnchorDetectorKind::regex:
                scanner_ = std::make_unique<PatternScanner>(
                    PatternSet::from_strings(cfg_.patterns, cfg_.allowlist), AnchorSource::regex);
                break;
            case AnchorDetectorKind::semantic:
                scanner_ = std::make_unique<PatternScanner>(
                    PatternSet::from_strings(cfg_.patterns, cfg_.allowlist),
                    AnchorSource::semantic);
                break;
            case AnchorDetectorKind::embedding:
                scanner_ = std::make_unique<EmbeddingScanner>(
                    cfg_.concepts.empty() ? cfg_.patterns : cfg_.concepts, cfg_.embed_dim,
                    cfg_.sim_threshold);
                break;
            case AnchorDetectorKind::learned:
                scanner_ = std::make_unique<LearnedScanner>(cfg_.detector_weights,
                                                            cfg_.learned_gate);
                break;
            case AnchorDetectorKind::learnrank:
                scanner_ = std::make_unique<LearnedScanner>(cfg_.detector_weights,
                                                            cfg_.sponsor.confidence_floor);
                break;
        }
    }

    const std::string& name() const override { return cfg_.policy; }
    double pension_coefficient() const override { return cfg_.pension_coefficient; }

    std::vector<std::int64_t> step(const StepContext& ctx) override {
        const std::int64_t t = ctx.step;
        const std::int64_t K = ctx.budget;
        scanner_->on_token(ctx.tape->text_at(t), t);

        // Re-detected anchors reset to the initial budget; entries whose
        // anchor stopped firing keep decaying until pruned.
        for (const auto& [pos, conf] : scanner_->confidences()) {
            ledger_.sponsor(pos, cfg_.sponsor.initial_budget, conf, cfg_.sponsor.span);
        }

        const std::vector<std::int64_t>& cand_pos = *ctx.candidates;
        const std::size_t m = cand_pos.size();
        cands_.assign(m, Candidate{});
        for (std::size_t i = 0; i < m; ++i) cands_[i].pos = cand_pos[i];

        accumulate_vouchers(cand_pos, t, *ctx.tape);

        // Utilities (Eq. 1 under the configured preset).
        const auto& conf = scanner_->confidences();
        for (std::size_t i = 0; i < m; ++i) {
            Candidate& c = cands_[i];
            TokenRecord r;
            r.position = c.pos;
            r.cumulative_attention = ctx.tape->cumulative_attention[static_cast<std::size_t>(c.pos)];
            r.recency = static_cast<double>(c.pos) / static_cast<double>(t);
            r.is_anchor = conf.count(c.pos) > 0;
            r.pension = ctx.tape->pension[static_cast<std::size_t>(c.pos)];
            r.frequency_penalty = ctx.tape->frequency_penalty_at(c.pos);
            r.voucher = c.voucher;
            c.utility = compute_utility_unchecked(r, cfg_.weights);
        }

        std::vector<std::int64_t> retained = select(ctx, t, K);

        ledger_.decay(cfg_.sponsor.step_decay, cfg_.sponsor.prune_floor);

        state_.retained = retained;
        state_.budget = K;
        state_.partition = partition_budget(K, cfg_.partition_rule);
        return retained;
    }

    std::vector<double> rank_scores(const StepContext& ctx) const override {
        const std::int64_t t = ctx.step;
        std::vector<double> scores(static_cast<std::size_t>(t) + 1, 0.0);
        VoucherMap vouchers;
        for (const SponsorEntry& e : ledger_.entries()) {
            double v = e.budget * entry_multiplier(e, *ctx.tape);
            const std::int64_t last = std::min(e.anchor_position + e.span, t);
            for (std::int64_t j = e.anchor_position + 1; j <= last; ++j) {
                v *= cfg_.sponsor.offset_decay;
                vouchers[j] += v;
            }
        }
        const auto& conf = scanner_->confidences();
        for (std::int64_t pos = 1; pos <= t; ++pos) {
            TokenRecord r;
            r.position = pos;
            r.cumulative_attention = ctx.tape->cumulative_attention[static_cast<std::size_t>(pos)];
            r.recency = static_cast<double>(pos) / static_cast<double>(t);
            r.is_anchor = conf.count(pos) > 0;
            r.pension = ctx.tape->pension[static_cast<std::size_t>(pos)];
            r.frequency_penalty = ctx.tape->frequency_penalty_at(pos);
            auto it = vouchers.find(pos);
            r.voucher = it == vouchers.end() ? 0.0 : it->second;
            scores[static_cast<std::size_t>(pos)] = compute_utility_unchecked(r, cfg_.weights);
        }
        return scores;
    }

    void reset() override {
        scanner_->reset();
        ledger_.clear();
        state_ = CacheState{};
    }

    const CacheState& cache() const { return state_; }
    const SponsorLedger& ledger() const { return ledger_; }

private:
    double entry_multiplier(const SponsorEntry& e, const TrialTape& tape) const {
        double mult = 1.0;
        if (cfg_.detector == AnchorDetectorKind::learnrank) mult *= e.confidence;
        if (cfg_.attention_weighted_sponsorship && ledger_.size() > 1) {
            double total = 0;
            for (const SponsorEntry& other : ledger_.entries()) {
                total += tape.cumulative_attention[static_cast<std::size_t>(other.anchor_position)];
            }
            if (total > 0) {
                mult *= tape.cumulative_attention[static_cast<std::size_t>(e.anchor_position)] /
                        total;
            } else {
                mult *= 1.0 / static_cast<double>(ledger_.size());
            }
        }
        return mult;
    }

    void accumulate_vouchers(const std::vector<std::int64_t>& cand_pos, std::int64_t t,
                             const TrialTape& tape) {
        for (const SponsorEntry& e : ledger_.entries()) {
            const double eff = e.budget * entry_multiplier(e, tape);
            if (eff <= 0) continue;
            const std::int64_t first = e.anchor_position + 1;
            const std::int64_t last = std::min(e.anchor_position + e.span, t);
            auto it = std::lower_bound(cand_pos.begin(), cand_pos.end(), first);
            for (; it != cand_pos.end() && *it <= last; ++it) {
                const std::size_t idx = static_cast<std::size_t>(it - cand_pos.begin());
                cands_[idx].voucher +=
                    eff * std::pow(cfg_.sponsor.offset_decay,
                                   static_cast<double>(*it - e.anchor_position));
            }
        }
    }

    std::uint64_t position_tie(std::int64_t pos, std::uint64_t trial_seed) const {
        if (cfg_.tie_break == "random") return mix64(trial_seed, 0x746965ULL, static_cast<std::uint64_t>(pos));
        return static_cast<std::uint64_t>(pos);
    }

    std::vector<std::int64_t> select(const StepContext& ctx, std::int64_t t, std::int64_t K) {
        const std::size_t m = cands_.size();
        std::vector<std::int64_t> retained;
        if (static_cast<std::int64_t>(m) <= K) {
            retained.reserve(m);
            for (const Candidate& c : cands_) retained.push_back(c.pos);
            state_.mandatory.clear();
            return retained;
        }

        // Mandatory: sinks plus the recency window, clamped to K.
        const std::int64_t sinks = std::min(cfg_.sinks, K);
        const std::int64_t window = std::min(cfg_.window, K - sinks);
        std::int64_t mand_count = 0;
        for (Candidate& c : cands_) {
            c.mandatory = c.pos <= sinks || c.pos > t - window;
            if (c.mandatory) {
                c.selected = true;
                ++mand_count;
            }
        }
        std::int64_t slots = K - mand_count;
        if (slots < 0) throw TrialError("mandatory set exceeds budget");

        // Sponsored candidates outside the mandatory set.
        std::vector<std::size_t> sponsored;
        for (std::size_t i = 0; i < m; ++i) {
            if (cands_[i].voucher > 0 && !cands_[i].selected) sponsored.push_back(i);
        }
        const bool overflow = static_cast<std::int64_t>(sponsored.size()) > slots;
        const Partition part = partition_budget(K, cfg_.partition_rule);

        if (!overflow) {
            // Reserved floor: the K_protected highest-voucher sponsored
            // tokens are retained outright; the rest compete on utility.
            std::int64_t quota = std::min<std::int64_t>(
                {part.k_protected, static_cast<std::int64_t>(sponsored.size()), slots});
            if (quota > 0) {
                std::sort(sponsored.begin(), sponsored.end(), [&](std::size_t a, std::size_t b) {
                    if (cands_[a].voucher != cands_[b].voucher) {
                        return cands_[a].voucher > cands_[b].voucher;
                    }
                    return position_tie(cands_[a].pos, ctx.trial_seed) >
                           position_tie(cands_[b].pos, ctx.trial_seed);
                });
                for (std::int64_t i = 0; i < quota; ++i) {
                    cands_[sponsored[static_cast<std::size_t>(i)]].selected = true;
                }
                slots -= quota;
            }
        } else {
            // Sponsored demand exceeds what the budget can hold. Keeping
            // fragments of every span would leave no value retrievable,
            // so contention collapses to a single intact span: the
            // highest-confidence anchor wins, ties broken by the
            // configured rule. Everything else competes as fragments.
            const SponsorEntry* winner = nullptr;
            std::uint64_t winner_tie = 0;
            for (const SponsorEntry& e : ledger_.entries()) {
                const bool has_live = std::any_of(sponsored.begin(), sponsored.end(),
                                                  [&](std::size_t i) {
                                                      return cands_[i].pos > e.anchor_position &&
                                                             cands_[i].pos <=
                                                                 e.anchor_position + e.span;
                                                  });
                if (!has_live) continue;
                const std::uint64_t tie =
                    cfg_.tie_break == "random"
                        ? mix64(ctx.trial_seed, 0x57494EULL,
                                static_cast<std::uint64_t>(e.anchor_position))
                        : static_cast<std::uint64_t>(e.anchor_position);
                if (winner == nullptr || e.confidence > winner->confidence ||
                    (e.confidence == winner->confidence && tie > winner_tie)) {
                    winner = &e;
                    winner_tie = tie;
                }
            }
            if (winner != nullptr) {
                std::vector<std::size_t> members;
                for (std::size_t i : sponsored) {
                    if (cands_[i].pos > winner->anchor_position &&
                        cands_[i].pos <= winner->anchor_position + winner->span) {
                        members.push_back(i);
                    }
                }
                std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
                    return cands_[a].voucher > cands_[b].voucher;
                });
                const std::int64_t quota =
                    std::min<std::int64_t>(static_cast<std::int64_t>(members.size()), slots);
                for (std::int64_t i = 0; i < quota; ++i) {
                    cands_[members[static_cast<std::size_t>(i)]].selected = true;
                }
                slots -= quota;
            }
        }

        // Remaining slots go to the highest-utility unselected candidates.
        if (slots > 0) {
            scratch_.clear();
            for (std::size_t i = 0; i < m; ++i) {
                if (!cands_[i].selected) scratch_.push_back(i);
            }
            auto better = [&](std::size_t a, std::size_t b) {
                if (cands_[a].utility != cands_[b].utility) {
                    return cands_[a].utility > cands_[b].utility;
                }
                return position_tie(cands_[a].pos, ctx.trial_seed) >
                       position_tie(cands_[b].pos, ctx.trial_seed);
            };
            if (static_cast<std::size_t>(slots) < scratch_.size()) {
                std::nth_element(scratch_.begin(), scratch_.begin() + slots, scratch_.end(),
                                 better);
                scratch_.resize(static_cast<std::size_t>(slots));
            }
            for (std::size_t i : scratch_) cands_[i].selected = true;
        }

        retained.reserve(static_cast<std::size_t>(K));
        state_.mandatory.clear();
        for (const Candidate& c : cands_) {
            if (c.selected) retained.push_back(c.pos);
            if (c.mandatory) state_.mandatory.push_back(c.pos);
        }
        if (static_cast<std::int64_t>(retained.size()) != K) {
            throw TrialError("ta_step retained " + std::to_string(retained.size()) +
                             " tokens under budget " + std::to_string(K));
        }
        return retained;
    }

    PolicyConfig cfg_;
    std::unique_ptr<AnchorScanner> scanner_;
    SponsorLedger ledger_;
    CacheState state_;
    std::vector<Candidate> cands_;
    std::vector<std::size_t> scratch_;
};

// ---------------------------------------------------------------------------
// Baselines

class H2oPolicy final : public RetentionPolicy {
public:
    explicit H2oPolicy(PolicyConfig cfg) : cfg_(std::move(cfg)) {}

    const std::string& name() const override { return cfg_.policy; }

    std::vector<std::int64_t> step(const StepContext& ctx) override {
        const std::vector<std::int64_t>& cand = *ctx.candidates;
        const std::int64_t K = ctx.budget;
        if (static_cast<std::int64_t>(cand.size()) <= K) return cand;
        std::vector<std::size_t> order(cand.size());
        std::iota(order.begin(), order.end(), 0);
        const auto& A = ctx.tape->cumulative_attention;
        auto better = [&](std::size_t a, std::size_t b) {
            const double aa = A[static_cast<std::size_t>(cand[a])];
            const double ab = A[static_cast<std::size_t>(cand[b])];
            if (aa != ab) return aa > ab;
            return cand[a] > cand[b];
        };
        std::nth_element(order.begin(), order.begin() + K, order.end(), better);
        order.resize(static_cast<std::size_t>(K));
        std::vector<std::int64_t> retained;
        retained.reserve(order.size());
        for (std::size_t i : order) retained.push_back(cand[i]);
        std::sort(retained.begin(), retained.end());
        return retained;
    }

    std::vector<double> rank_scores(const StepContext& ctx) const override {
        std::vector<double> s(static_cast<std::size_t>(ctx.step) + 1, 0.0);
        for (std::int64_t p = 1; p <= ctx.step; ++p) {
            s[static_cast<std::size_t>(p)] =
                ctx.tape->cumulative_attention[static_cast<std::size_t>(p)];
        }
        return s;
    }

    void reset() override {}

private:
    PolicyConfig cfg_;
};

class TovaPolicy final : public RetentionPolicy {
public:
    explicit TovaPolicy(PolicyConfig cfg) : cfg_(std::move(cfg)) {}

    const std::string& name() const override { return cfg_.policy; }

    std::vector<std::int64_t> step(const StepContext& ctx) override {
        const std::vector<std::int64_t>& cand = *ctx.candidates;
        const std::int64_t K = ctx.budget;
        if (cfg_.baseline.sink_count + cfg_.baseline.window > K) {
            throw ConfigError("tova: sink_count + window exceeds budget K");
        }
        if (static_cast<std::int64_t>(cand.size()) <= K) return cand;
        const std::int64_t t = ctx.step;
        // Sinks and the sliding window are untouchable; among the rest,
        // the token with the smallest current-step attention goes.
        std::vector<std::size_t> evictable;
        for (std::size_t i = 0; i < cand.size(); ++i) {
            const std::int64_t p = cand[i];
            const bool keep = p <= cfg_.baseline.sink_count || p > t - cfg_.baseline.window;
            if (!keep) evictable.push_back(i);
        }
        std::int64_t to_evict = static_cast<std::int64_t>(cand.size()) - K;
        if (to_evict > static_cast<std::int64_t>(evictable.size())) {
            throw TrialError("tova: cannot satisfy budget without breaking sinks/window");
        }
        const std::vector<double>& row = *ctx.attention_row;
        std::sort(evictable.begin(), evictable.end(), [&](std::size_t a, std::size_t b) {
            if (row[a] != row[b]) return row[a] < row[b];
            return cand[a] < cand[b];  // evict the older of tied tokens
        });
        std::vector<bool> dropped(cand.size(), false);
        for (std::int64_t i = 0; i < to_evict; ++i) {
            dropped[evictable[static_cast<std::size_t>(i)]] = true;
        }
        std::vector<std::int64_t> retained;
        retained.reserve(static_cast<std::size_t>(K));
        for (std::size_t i = 0; i < cand.size(); ++i) {
            if (!dropped[i]) retained.push_back(cand[i]);
        }
        return retained;
    }

    std::vector<double> rank_scores(const StepContext& ctx) const override {
        std::vector<double> s(static_cast<std::size_t>(ctx.step) + 1, 0.0);
        for (std::int64_t p = 1; p <= ctx.step; ++p) {
            s[static_cast<std::size_t>(p)] =
                ctx.tape->cumulative_attention[static_cast<std::size_t>(p)];
        }
        return s;
    }

    void reset() override {}

private:
    PolicyConfig cfg_;
};

class StreamingPolicy final : public RetentionPolicy {
public:
    explicit StreamingPolicy(PolicyConfig cfg) : cfg_(std::move(cfg)) {}

    const std::string& name() const override { return cfg_.policy; }

    std::vector<std::int64_t> step(const StepContext& ctx) override {
        const std::vector<std::int64_t>& cand = *ctx.candidates;
        const std::int64_t K = ctx.budget;
        if (static_cast<std::int64_t>(cand.size()) <= K) return cand;
        const std::int64_t t = ctx.step;
        const std::int64_t sinks = std::min(cfg_.baseline.sink_count, K);
        const std::int64_t window = K - sinks;
        std::vector<std::int64_t> retained;
        retained.reserve(static_cast<std::size_t>(K));
        for (std::int64_t p : cand) {
            if (p <= sinks || p > t - window) retained.push_back(p);
        }
        return retained;
    }

    std::vector<double> rank_scores(const StepContext& ctx) const override {
        std::vector<double> s(static_cast<std::size_t>(ctx.step) + 1, 0.0);
        for (std::int64_t p = 1; p <= ctx.step; ++p) {
            s[static_cast<std::size_t>(p)] =
                ctx.tape->cumulative_attention[static_cast<std::size_t>(p)];
        }
        return s;
    }

    void reset() override {}

private:
    PolicyConfig cfg_;
};

}  // namespace

// ---------------------------------------------------------------------------
// Factory

PolicyConfig resolve_policy_config(const std::string& policy_name, PolicyConfig base) {
    base.policy = policy_name;
    if (policy_name == "ta-full") {
        base.weights = UtilityWeights::full_ta();
        base.detector = AnchorDetectorKind::regex;
        base.attention_weighted_sponsorship = true;
    } else if (policy_name == "ta-fast-regex") {
        base.weights = UtilityWeights::ta_fast();
        base.detector = AnchorDetectorKind::regex;
    } else if (policy_name == "ta-fast-semantic") {
        base.weights = UtilityWeights::ta_fast();
        base.detector = AnchorDetectorKind::semantic;
        for (const char* verb : {"said", "told", "remember"}) {
            if (std::find(base.patterns.begin(), base.patterns.end(), verb) ==
                base.patterns.end()) {
                base.patterns.push_back(verb);
            }
        }
    } else if (policy_name == "ta-fast-embedding") {
        base.weights = UtilityWeights::ta_fast();
        base.detector = AnchorDetectorKind::embedding;
    } else if (policy_name == "ta-learned") {
        base.weights = UtilityWeights::ta_fast();
        base.detector = AnchorDetectorKind::learned;
    } else if (policy_name == "ta-learnrank") {
        base.weights = UtilityWeights::ta_fast();
        base.detector = AnchorDetectorKind::learnrank;
    } else if (policy_name == "h2o" || policy_name == "tova" || policy_name == "streaming") {
        // Baselines ignore the utility weights.
    } else {
        throw ConfigError("unknown policy '" + policy_name + "'");
    }
    return base;
}

std::unique_ptr<RetentionPolicy> make_policy(const PolicyConfig& cfg) {
    const std::string& p = cfg.policy;
    if (p == "h2o") return std::make_unique<H2oPolicy>(cfg);
    if (p == "tova") return std::make_unique<TovaPolicy>(cfg);
    if (p == "streaming") return std::make_unique<StreamingPolicy>(cfg);
    if (p == "ta-full" || p == "ta-fast-regex" || p == "ta-fast-semantic" ||
        p == "ta-fast-embedding" || p == "ta-learned" || p == "ta-learnrank") {
        return std::make_unique<TaPolicy>(cfg);
    }
    throw ConfigError("unknown policy '" + p + "'");
}

}  // namespace takv
