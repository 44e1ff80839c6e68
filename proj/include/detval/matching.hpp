#pragma once

#include <cstddef>
#include <vector>

#include "detval/localization.hpp"

namespace detval {

enum class AssignmentStrategy {
    greedy_by_confidence,
    optimal,
};

/// One-to-one resolution of prediction/reference correspondences for a single
/// image. Entries are indices into the input vectors.
struct MatchResult {
    struct Pair {
        std::size_t pred = 0;
        std::size_t ref = 0;
        double score = 0.0;
    };
    std::vector<Pair> tp_pairs;
    std::vector<std::size_t> fp_predictions;
    std::vector<std::size_t> fn_references;
};

/// Resolve hits into TP/FP/FN.
///
/// greedy_by_confidence walks predictions by descending confidence (ties:
/// descending box area, then input order); each takes the unmatched reference
/// with the best localization score among those it hits. For point kinds the
/// binary score ties are broken by smallest reference area, then lowest index.
///
/// optimal maximizes the number of matched pairs, tie-broken by maximal total
/// score, via bipartite assignment over the hit graph.
MatchResult match_image(const std::vector<const ScoredPrediction*>& preds,
                        const std::vector<const ReferenceInstance*>& refs,
                        const CriterionSpec& spec, AssignmentStrategy strategy);

/// Greedy matching with ignore flags for per-size evaluation: a prediction
/// prefers non-ignored references; one that only hits ignored references is
/// excluded from the counts entirely (neither TP nor FP). fn_references never
/// contains ignored references.
struct IgnoreAwareMatch {
    MatchResult counted;
    std::vector<std::size_t> ignored_predictions;
};

IgnoreAwareMatch match_image_ignoring(const std::vector<const ScoredPrediction*>& preds,
                                      const std::vector<const ReferenceInstance*>& refs,
                                      const std::vector<bool>& ignore_ref,
                                      const CriterionSpec& spec);

}  // namespace detval
