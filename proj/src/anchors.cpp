// Copyright (C) 2026 the takv authors
// SPDX-License-Identifier: Apache-2.0

#include "takv/anchors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "takv/errors.hpp"
#include "takv/rng.hpp"

namespace takv {

namespace {

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

bool is_literal_pattern(const std::string& p) {
    return p.find_first_of(".^$|()[]{}*+?\\") == std::string::npos;
}

std::vector<std::string> read_pattern_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open pattern file: " + path);
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        size_t b = line.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        size_t e = line.find_last_not_of(" \t");
        std::string t = line.substr(b, e - b + 1);
        if (t.empty() || t[0] == '#') continue;
        out.push_back(t);
    }
    return out;
}

}  // namespace

PatternSet PatternSet::from_strings(std::vector<std::string> patterns,
                                    std::vector<std::string> allowlist) {
    if (patterns.empty()) throw ConfigError("pattern set must be non-empty");
    PatternSet set;
    set.patterns_ = std::move(patterns);
    for (const std::string& p : set.patterns_) {
        Compiled c;
        c.source = p;
        c.literal = is_literal_pattern(p);
        if (c.literal) {
            c.lowered = lower(p);
        } else {
            try {
                c.re = std::regex(p, std::regex::ECMAScript | std::regex::icase);
            } catch (const std::regex_error& e) {
                throw ConfigError("malformed anchor pattern '" + p + "': " + e.what());
            }
        }
        set.compiled_.push_back(std::move(c));
    }
    if (!allowlist.empty()) {
        for (const std::string& a : allowlist) {
            if (std::find(set.patterns_.begin(), set.patterns_.end(), a) == set.patterns_.end()) {
                throw ConfigError("allowlist entry '" + a + "' is not in the pattern set");
            }
        }
        set.allowlist_ = std::move(allowlist);
    }
    for (std::size_t i = 0; i < set.patterns_.size(); ++i) {
        if (!set.allowlist_ ||
            std::find(set.allowlist_->begin(), set.allowlist_->end(), set.patterns_[i]) !=
                set.allowlist_->end()) {
            set.active_.push_back(i);
        }
    }
    return set;
}

PatternSet PatternSet::from_file(const std::string& path, const std::string& allowlist_path) {
    std::vector<std::string> allow;
    if (!allowlist_path.empty()) allow = read_pattern_lines(allowlist_path);
    return from_strings(read_pattern_lines(path), std::move(allow));
}

const std::vector<std::string>& PatternSet::allowlist() const {
    if (!allowlist_) throw ConfigError("pattern set has no allowlist");
    return *allowlist_;
}

// ---------------------------------------------------------------------------
// StreamDetector

StreamDetector::StreamDetector(PatternSet patterns, AnchorSource source,
                               std::size_t lookback_chars)
    : patterns_(std::move(patterns)), source_(source), lookback_(lookback_chars) {}

std::int64_t StreamDetector::token_at_offset(std::size_t offset) const {
    auto it = std::upper_bound(starts_.begin(), starts_.end(), offset);
    return static_cast<std::int64_t>(it - starts_.begin());  // 1-based
}

void StreamDetector::push(const std::string& token_text) {
    starts_.push_back(text_.size());
    fired_.push_back(false);
    const std::size_t before = text_.size();
    text_ += token_text;
    lowered_ += lower(token_text);
    const std::size_t scan_from = before > lookback_ ? before - lookback_ : 0;
    scan_tail(scan_from);
}

void StreamDetector::scan_tail(std::size_t from) {
    for (std::size_t idx : patterns_.active_indices()) {
        const PatternSet::Compiled& c = patterns_.compiled()[idx];
        if (c.literal) {
            std::size_t at = lowered_.find(c.lowered, from);
            while (at != std::string::npos) {
                const std::int64_t tok = token_at_offset(at);
                if (!fired_[tok - 1]) {
                    fired_[tok - 1] = true;
                    events_.push_back({tok, 1.0, source_});
                }
                at = lowered_.find(c.lowered, at + 1);
            }
        } else {
            auto begin = std::cregex_iterator(text_.c_str() + from, text_.c_str() + text_.size(),
                                              c.re);
            for (auto it = begin; it != std::cregex_iterator(); ++it) {
                const std::size_t at = from + static_cast<std::size_t>(it->position(0));
                const std::int64_t tok = token_at_offset(at);
                if (!fired_[tok - 1]) {
                    fired_[tok - 1] = true;
                    events_.push_back({tok, 1.0, source_});
                }
            }
        }
    }
    std::sort(events_.begin(), events_.end(),
              [](const AnchorEvent& a, const AnchorEvent& b) { return a.position < b.position; });
}

std::vector<AnchorEvent> detect_regex(const std::vector<std::string>& token_strings,
                                      const PatternSet& patterns) {
    StreamDetector det(patterns, AnchorSource::regex);
    for (const std::string& t : token_strings) det.push(t);
    return det.events();
}

std::vector<AnchorEvent> detect_semantic(const std::vector<std::string>& token_strings,
                                         const PatternSet& lexicon) {
    StreamDetector det(lexicon, AnchorSource::semantic);
    for (const std::string& t : token_strings) det.push(t);
    return det.events();
}

// ---------------------------------------------------------------------------
// Embedding detection

double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) {
        throw DetectionError("cosine: dimension mismatch (" + std::to_string(a.size()) + " vs " +
                             std::to_string(b.size()) + ")");
    }
    double dot = 0, na = 0, nb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) throw DetectionError("cosine: zero-norm embedding");
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::vector<AnchorEvent> detect_embedding(const std::vector<std::vector<double>>& token_embeddings,
                                          const std::vector<std::vector<double>>& concept_embeddings,
                                          double sim_threshold) {
    std::vector<AnchorEvent> events;
    for (std::size_t i = 0; i < token_embeddings.size(); ++i) {
        double best = -1.0;
        for (const auto& concept_vec : concept_embeddings) {
            best = std::max(best, cosine_similarity(token_embeddings[i], concept_vec));
        }
        if (best >= sim_threshold) {
            const double conf = std::clamp(best, 0.0, 1.0);
            events.push_back({static_cast<std::int64_t>(i) + 1, conf, AnchorSource::embedding});
        }
    }
    return events;
}

// ---------------------------------------------------------------------------
// Learned detector

double gelu(double x) {
    constexpr double k = 0.7978845608028654;  // sqrt(2/pi)
    return 0.5 * x * (1.0 + std::tanh(k * (x + 0.044715 * x * x * x)));
}

namespace {

double gelu_grad(double x) {
    constexpr double k = 0.7978845608028654;
    const double inner = k * (x + 0.044715 * x * x * x);
    const double t = std::tanh(inner);
    const double dinner = k * (1.0 + 3.0 * 0.044715 * x * x);
    return 0.5 * (1.0 + t) + 0.5 * x * (1.0 - t * t) * dinner;
}

}  // namespace

double sigmoid(double x) {
    if (x >= 0) {
        return 1.0 / (1.0 + std::exp(-x));
    }
    const double e = std::exp(x);
    return e / (1.0 + e);
}

double mlp_forward(const std::vector<double>& hidden, const DetectorWeights& w) {
    if (static_cast<std::int64_t>(hidden.size()) != w.hidden_dim ||
        static_cast<std::int64_t>(w.w1.size()) != w.hidden_dim * w.mid_dim ||
        static_cast<std::int64_t>(w.w2.size()) != w.mid_dim) {
        throw DetectionError("mlp_forward: dimension mismatch");
    }
    double z2 = 0;
    for (std::int64_t m = 0; m < w.mid_dim; ++m) {
        double z1 = 0;
        const double* row = w.w1.data() + m * w.hidden_dim;
        for (std::int64_t i = 0; i < w.hidden_dim; ++i) z1 += row[i] * hidden[i];
        z2 += w.w2[m] * gelu(z1);
    }
    return sigmoid(z2);
}

void DetectorWeights::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write detector weights: " + path);
    out << "takv-detector 1\n";
    out << "hidden_dim " << hidden_dim << "\n";
    out << "mid_dim " << mid_dim << "\n";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", threshold);
    out << "threshold " << buf << "\n";
    out << "w1\n";
    for (std::int64_t m = 0; m < mid_dim; ++m) {
        for (std::int64_t i = 0; i < hidden_dim; ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g", w1[m * hidden_dim + i]);
            out << buf << (i + 1 == hidden_dim ? "\n" : " ");
        }
    }
    out << "w2\n";
    for (std::int64_t m = 0; m < mid_dim; ++m) {
        std::snprintf(buf, sizeof(buf), "%.17g", w2[m]);
        out << buf << (m + 1 == mid_dim ? "\n" : " ");
    }
}

DetectorWeights DetectorWeights::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open detector weights: " + path);
    std::string magic;
    int version = 0;
    in >> magic >> version;
    if (magic != "takv-detector" || version != 1) {
        throw ConfigError("unrecognized detector weights header in " + path);
    }
    DetectorWeights w;
    std::string key;
    in >> key >> w.hidden_dim;
    if (key != "hidden_dim") throw ConfigError("expected hidden_dim in " + path);
    in >> key >> w.mid_dim;
    if (key != "mid_dim") throw ConfigError("expected mid_dim in " + path);
    in >> key >> w.threshold;
    if (key != "threshold") throw ConfigError("expected threshold in " + path);
    if (w.hidden_dim <= 0 || w.mid_dim <= 0) {
        throw ConfigError("detector dimensions must be positive in " + path);
    }
    in >> key;
    if (key != "w1") throw ConfigError("expected w1 block in " + path);
    w.w1.resize(static_cast<std::size_t>(w.hidden_dim * w.mid_dim));
    for (double& v : w.w1) in >> v;
    in >> key;
    if (key != "w2") throw ConfigError("expected w2 block in " + path);
    w.w2.resize(static_cast<std::size_t>(w.mid_dim));
    for (double& v : w.w2) in >> v;
    if (!in) throw ConfigError("truncated detector weights file: " + path);
    return w;
}

DetectorWeights train_detector(const std::vector<std::pair<std::vector<double>, bool>>& labeled,
                               const DetectorTrainConfig& cfg) {
    std::size_t positives = 0;
    for (const auto& [x, y] : labeled) positives += y ? 1 : 0;
    if (positives == 0 || positives == labeled.size()) {
        throw TrainingError("detector training needs both classes present");
    }
    const std::int64_t hidden_dim = static_cast<std::int64_t>(labeled.front().first.size());
    const std::int64_t mid = cfg.mid_dim;

    DetectorWeights w;
    w.hidden_dim = hidden_dim;
    w.mid_dim = mid;
    w.threshold = cfg.threshold;
    w.w1.resize(static_cast<std::size_t>(mid * hidden_dim));
    w.w2.resize(static_cast<std::size_t>(mid));
    Rng rng(mix64(cfg.seed, 0x6D6C70ULL));
    const double s1 = 1.0 / std::sqrt(static_cast<double>(hidden_dim));
    const double s2 = 1.0 / std::sqrt(static_cast<double>(mid));
    for (double& v : w.w1) v = (2.0 * rng.next_unit() - 1.0) * s1;
    for (double& v : w.w2) v = (2.0 * rng.next_unit() - 1.0) * s2;

    const double n = static_cast<double>(labeled.size());
    std::vector<double> z1(static_cast<std::size_t>(mid));
    std::vector<double> a1(static_cast<std::size_t>(mid));
    std::vector<double> gw1(w.w1.size());
    std::vector<double> gw2(w.w2.size());

    for (std::int64_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        std::fill(gw1.begin(), gw1.end(), 0.0);
        std::fill(gw2.begin(), gw2.end(), 0.0);
        for (const auto& [x, label] : labeled) {
            if (static_cast<std::int64_t>(x.size()) != hidden_dim) {
                throw TrainingError("inconsistent feature dimensions in training data");
            }
            double z2 = 0;
            for (std::int64_t m = 0; m < mid; ++m) {
                double acc = 0;
                const double* row = w.w1.data() + m * hidden_dim;
                for (std::int64_t i = 0; i < hidden_dim; ++i) acc += row[i] * x[i];
                z1[m] = acc;
                a1[m] = gelu(acc);
                z2 += w.w2[m] * a1[m];
            }
            const double p = sigmoid(z2);
            const double dz2 = p - (label ? 1.0 : 0.0);
            for (std::int64_t m = 0; m < mid; ++m) {
                gw2[m] += dz2 * a1[m];
                const double dz1 = dz2 * w.w2[m] * gelu_grad(z1[m]);
                double* grow = gw1.data() + m * hidden_dim;
                for (std::int64_t i = 0; i < hidden_dim; ++i) grow[i] += dz1 * x[i];
            }
        }
        const double step = cfg.learning_rate / n;
        for (std::size_t i = 0; i < w.w1.size(); ++i) w.w1[i] -= step * gw1[i];
        for (std::size_t i = 0; i < w.w2.size(); ++i) w.w2[i] -= step * gw2[i];
    }
    return w;
}

DetectorMetrics evaluate_detector(const DetectorWeights& weights,
                                  const std::vector<std::pair<std::vector<double>, bool>>& labeled) {
    std::int64_t tp = 0, fp = 0, fn = 0;
    for (const auto& [x, label] : labeled) {
        const bool predicted = mlp_forward(x, weights) > weights.threshold;
        if (predicted && label) ++tp;
        if (predicted && !label) ++fp;
        if (!predicted && label) ++fn;
    }
    DetectorMetrics m;
    m.precision = (tp + fp) == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
    m.recall = (tp + fn) == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
    m.f1 = (m.precision + m.recall) == 0.0
               ? 0.0
               : 2.0 * m.precision * m.recall / (m.precision + m.recall);
    return m;
}

// ---------------------------------------------------------------------------
// Synthetic features and families

std::vector<double> text_feature_embedding(const std::string& text, std::int64_t dim,
                                           std::uint64_t salt) {
    std::vector<double> v(static_cast<std::size_t>(dim), 0.0);
    const std::string padded = "^" + lower(text) + "$";
    if (padded.size() < 3) return v;
    for (std::size_t i = 0; i + 3 <= padded.size(); ++i) {
        const std::uint64_t h =
            mix64(salt, 0x3A67726DULL,
                  (static_cast<std::uint64_t>(static_cast<unsigned char>(padded[i])) << 16) |
                      (static_cast<std::uint64_t>(static_cast<unsigned char>(padded[i + 1])) << 8) |
                      static_cast<std::uint64_t>(static_cast<unsigned char>(padded[i + 2])));
        const std::size_t bucket = static_cast<std::size_t>(h % static_cast<std::uint64_t>(dim));
        v[bucket] += (h >> 32) & 1 ? 1.0 : -1.0;
    }
    double norm = 0;
    for (double x : v) norm += x * x;
    if (norm > 0) {
        norm = std::sqrt(norm);
        for (double& x : v) x /= norm;
    }
    return v;
}

const std::vector<PatternFamily>& anchor_pattern_families() {
    static const std::vector<PatternFamily> families = {
        {"key",
         {"key:", "{w}_key:", "apikey:", "api key:", "access key:", "{w} key:", "signing_key:"}},
        {"password",
         {"password:", "passwd:", "pwd:", "{w} password:", "root password:", "passphrase:"}},
        {"code",
         {"code:", "secret code:", "access code:", "entry code:", "{w} code:", "pin code:"}},
        {"token",
         {"token:", "bearer_token:", "auth token:", "session_token=", "{w}_token:", "refresh token:"}},
        {"identifier",
         {"session_id=", "user_id=", "{w}_id=", "uuid:", "account id:", "client_id="}},
        {"environment",
         {"{w}_url=", "endpoint=", "{w}_secret=", "export {w}=", "database_url=", "{w}_host="}},
        {"header",
         {"authorization:", "x-api-key:", "cookie:", "set-cookie:", "x-auth-{w}:", "proxy-authorization:"}},
        {"verbal",
         {"remember this {w}:", "the {w} is:", "note down:", "don't forget:", "write this down:",
          "remember:"}},
        {"secret",
         {"secret:", "credentials:", "private:", "{w} secret:", "client secret:", "vault {w}:"}},
    };
    return families;
}

namespace {

const std::vector<std::string>& word_pool() {
    static const std::vector<std::string> words = {
        "api",     "service", "backup",  "primary", "staging", "prod",   "admin",  "gateway",
        "billing", "device",  "cluster", "region",  "tenant",  "export", "deploy", "agent"};
    return words;
}

const std::vector<std::string>& negative_pool() {
    static const std::vector<std::string> negatives = {
        "the report was filed",  "meeting moved to noon", "gradient of the surface",
        "keyboard shortcuts",    "token of appreciation", "the passage continues",
        "code review finished",  "a secret garden",       "identity of the author",
        "weather stays mild",    "log of daily steps",    "authorized personnel area",
        "the key question here", "entryway was painted",  "session ended early",
        "remember the holidays", "private conversations", "id badge photograph",
        "the password was changed long ago", "curl of the wave"};
    return negatives;
}

std::string fill_template(const std::string& tmpl, Rng& rng) {
    std::string out = tmpl;
    const std::string marker = "{w}";
    std::size_t at;
    while ((at = out.find(marker)) != std::string::npos) {
        out.replace(at, marker.size(), word_pool()[rng.next_below(word_pool().size())]);
    }
    return out;
}

}  // namespace

std::vector<std::pair<std::string, bool>> make_family_samples(
    const std::vector<std::size_t>& family_indices, std::int64_t positives_per_family,
    std::uint64_t seed) {
    const auto& families = anchor_pattern_families();
    Rng rng(mix64(seed, 0x66616D73ULL));
    std::vector<std::pair<std::string, bool>> out;
    for (std::size_t fi : family_indices) {
        const PatternFamily& fam = families.at(fi);
        for (std::int64_t k = 0; k < positives_per_family; ++k) {
            const std::string& tmpl = fam.templates[rng.next_below(fam.templates.size())];
            out.emplace_back(fill_template(tmpl, rng), true);
        }
    }
    // Two negatives per positive: filler phrases plus near-miss variants
    // of the positives with the ':'/'=' suffix stripped.
    const std::int64_t total_pos = static_cast<std::int64_t>(out.size());
    for (std::int64_t k = 0; k < total_pos; ++k) {
        out.emplace_back(negative_pool()[rng.next_below(negative_pool().size())], false);
        std::string miss = out[static_cast<std::size_t>(k)].first;
        while (!miss.empty() && (miss.back() == ':' || miss.back() == '=')) miss.pop_back();
        miss += " " + word_pool()[rng.next_below(word_pool().size())];
        out.emplace_back(std::move(miss), false);
    }
    return out;
}

std::vector<std::pair<std::vector<double>, bool>> embed_samples(
    const std::vector<std::pair<std::string, bool>>& samples, std::int64_t dim) {
    std::vector<std::pair<std::vector<double>, bool>> out;
    out.reserve(samples.size());
    for (const auto& [text, label] : samples) {
        out.emplace_back(text_feature_embedding(text, dim), label);
    }
    return out;
}

std::map<std::int64_t, double> learned_confidences(const std::vector<std::string>& token_strings,
                                                   const DetectorWeights& weights,
                                                   std::int64_t window_tokens) {
    std::map<std::int64_t, double> out;
    for (std::size_t i = 0; i < token_strings.size(); ++i) {
        std::string window;
        const std::size_t begin =
            i + 1 >= static_cast<std::size_t>(window_tokens) ? i + 1 - window_tokens : 0;
        for (std::size_t j = begin; j <= i; ++j) window += token_strings[j];
        out[static_cast<std::int64_t>(i) + 1] =
            mlp_forward(text_feature_embedding(window, weights.hidden_dim), weights);
    }
    return out;
}

}  // namespace takv
