// Copyright (C) 2026 the takv authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <regex>
#include <string>
#include <utility>
#include <vector>

namespace takv {

enum class AnchorSource { regex, semantic, embedding, learned };

struct AnchorEvent {
    std::int64_t position = 0;  // 1-based token position
    double confidence = 1.0;    // in [0,1]; pattern detectors emit 1.0
    AnchorSource source = AnchorSource::regex;
};

/**
 * A set of anchor patterns with an optional allowlist. Patterns are
 * ECMAScript regexes matched case-insensitively against detokenized
 * text; pure literals take a fast substring path. Compilation happens
 * here so malformed patterns fail at load time, never during detection.
 */
class PatternSet {
public:
    static PatternSet from_strings(std::vector<std::string> patterns,
                                   std::vector<std::string> allowlist = {});

    // One pattern per line, '#' comments, UTF-8. The allowlist file uses
    // the same format and must be a subset of the patterns.
    static PatternSet from_file(const std::string& path, const std::string& allowlist_path = "");

    const std::vector<std::string>& patterns() const { return patterns_; }
    bool has_allowlist() const { return allowlist_.has_value(); }
    const std::vector<std::string>& allowlist() const;

    // Indices of patterns that are permitted to fire.
    const std::vector<std::size_t>& active_indices() const { return active_; }

    struct Compiled {
        std::string source;
        bool literal = false;
        std::string lowered;  // literal fast path
        std::regex re;        // regex path
    };
    const std::vector<Compiled>& compiled() const { return compiled_; }

private:
    std::vector<std::string> patterns_;
    std::optional<std::vector<std::string>> allowlist_;
    std::vector<std::size_t> active_;
    std::vector<Compiled> compiled_;
};

/**
 * Incremental anchor scanner over a growing token stream. Each pushed
 * token extends the detokenized text; only a bounded tail window is
 * rescanned, so a full stream costs O(total text), not O(n^2). Matches
 * are mapped back to the token containing the match start. Events
 * persist: the underlying text never changes, so a position that fired
 * once keeps firing on every later step.
 */
class StreamDetector {
public:
    StreamDetector(PatternSet patterns, AnchorSource source,
                   std::size_t lookback_chars = 96);

    void push(const std::string& token_text);
    const std::vector<AnchorEvent>& events() const { return events_; }
    std::int64_t tokens_pushed() const { return static_cast<std::int64_t>(starts_.size()); }

private:
    void scan_tail(std::size_t new_text_begin);
    std::int64_t token_at_offset(std::size_t offset) const;

    PatternSet patterns_;
    AnchorSource source_;
    std::size_t lookback_;
    std::string text_;
    std::string lowered_;
    std::vector<std::size_t> starts_;  // char offset where token i begins
    std::vector<AnchorEvent> events_;
    std::vector<bool> fired_;  // per token position
};

// Whole-stream detection; confidence 1.0 per matched position, events
// sorted by position. Requires a non-empty pattern set.
std::vector<AnchorEvent> detect_regex(const std::vector<std::string>& token_strings,
                                      const PatternSet& patterns);

// Same mechanics driven by a communication-verb lexicon.
std::vector<AnchorEvent> detect_semantic(const std::vector<std::string>& token_strings,
                                         const PatternSet& lexicon);

// Cosine-similarity detection against concept embeddings. Fires wherever
// the max similarity over concepts reaches sim_threshold; confidence is
// that maximum. Zero-norm vectors raise DetectionError.
std::vector<AnchorEvent> detect_embedding(const std::vector<std::vector<double>>& token_embeddings,
                                          const std::vector<std::vector<double>>& concept_embeddings,
                                          double sim_threshold);

double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b);

// ---------------------------------------------------------------------------
// Learned detector

struct DetectorWeights {
    std::int64_t hidden_dim = 0;     // input dimension
    std::int64_t mid_dim = 0;        // hidden layer width
    std::vector<double> w1;          // mid_dim x hidden_dim, row-major
    std::vector<double> w2;          // mid_dim
    double threshold = 0.5;

    void save(const std::string& path) const;  // bit-exact round trip
    static DetectorWeights load(const std::string& path);
};

// tanh-approximation GELU.
double gelu(double x);
double sigmoid(double x);

// sigmoid(w2 . gelu(W1 . hidden)); DetectionError on dimension mismatch.
double mlp_forward(const std::vector<double>& hidden, const DetectorWeights& weights);

struct DetectorTrainConfig {
    std::int64_t mid_dim = 32;
    std::int64_t epochs = 800;
    double learning_rate = 2.0;
    double threshold = 0.5;
    std::uint64_t seed = 1;
};

// Full-batch gradient descent with binary cross-entropy. Both classes
// must be present; otherwise TrainingError.
DetectorWeights train_detector(const std::vector<std::pair<std::vector<double>, bool>>& labeled,
                               const DetectorTrainConfig& cfg = {});

struct DetectorMetrics {
    double precision = 0;
    double recall = 0;
    double f1 = 0;
};

DetectorMetrics evaluate_detector(const DetectorWeights& weights,
                                  const std::vector<std::pair<std::vector<double>, bool>>& labeled);

// ---------------------------------------------------------------------------
// Synthetic text features and pattern families

// Deterministic bag-of-character-trigram embedding with signed hashing,
// L2-normalized. Stands in for model hidden states at desk scale.
std::vector<double> text_feature_embedding(const std::string& text, std::int64_t dim,
                                           std::uint64_t salt = 0);

struct PatternFamily {
    std::string name;
    std::vector<std::string> templates;  // "{w}" is filled with a random word
};

// Nine structural-anchor families (key/password/code/token/id/env/
// header/verbal/secret-misc) used to synthesize detector training data.
const std::vector<PatternFamily>& anchor_pattern_families();

// Labeled strings: positives drawn from the chosen families, negatives
// from filler phrases plus near-miss strings (anchor-like stems without
// the value-introducing suffix).
std::vector<std::pair<std::string, bool>> make_family_samples(
    const std::vector<std::size_t>& family_indices, std::int64_t positives_per_family,
    std::uint64_t seed);

std::vector<std::pair<std::vector<double>, bool>> embed_samples(
    const std::vector<std::pair<std::string, bool>>& samples, std::int64_t dim);

// Per-position confidences from the learned detector applied to a
// detokenized window ending at each token.
std::map<std::int64_t, double> learned_confidences(const std::vector<std::string>& token_strings,
                                                   const DetectorWeights& weights,
                                                   std::int64_t window_tokens = 3);

}  // namespace takv
