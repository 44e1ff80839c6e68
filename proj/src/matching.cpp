#include "detval/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "detval/errors.hpp"

namespace detval {

namespace {

// Processing order for greedy assignment: confidence desc, box area desc,
// then input order.
std::vector<std::size_t> greedy_order(const std::vector<const ScoredPrediction*>& preds) {
    std::vector<std::size_t> order(preds.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (preds[a]->confidence != preds[b]->confidence) {
            return preds[a]->confidence > preds[b]->confidence;
        }
        return preds[a]->bbox.area() > preds[b]->bbox.area();
    });
    return order;
}

struct Candidate {
    std::size_t ref = 0;
    double score = 0.0;
    bool valid = false;
};

bool prefer(const CriterionSpec& spec, const std::vector<const ReferenceInstance*>& refs,
            std::size_t ref, double score, const Candidate& best) {
    if (!best.valid) return true;
    if (score != best.score) return score_better(spec, score, best.score);
    if (refs[ref]->area() != refs[best.ref]->area()) {
        return refs[ref]->area() < refs[best.ref]->area();
    }
    return ref < best.ref;
}

MatchResult greedy_match(const std::vector<const ScoredPrediction*>& preds,
                         const std::vector<const ReferenceInstance*>& refs,
                         const CriterionSpec& spec) {
    MatchResult result;
    std::vector<bool> taken(refs.size(), false);
    for (std::size_t i : greedy_order(preds)) {
        Candidate best;
        for (std::size_t j = 0; j < refs.size(); ++j) {
            if (taken[j]) continue;
            const LocalizationOutcome out = localize(preds[i]->bbox, *refs[j], spec);
            if (!out.hit) continue;
            if (prefer(spec, refs, j, out.score, best)) {
                best = {j, out.score, true};
            }
        }
        if (best.valid) {
            taken[best.ref] = true;
            result.tp_pairs.push_back({i, best.ref, best.score});
        } else {
            result.fp_predictions.push_back(i);
        }
    }
    for (std::size_t j = 0; j < refs.size(); ++j) {
        if (!taken[j]) result.fn_references.push_back(j);
    }
    return result;
}

// Max-weight assignment (Hungarian, O(n^3)) on a square cost matrix.
// Returns for each row the assigned column.
std::vector<std::size_t> hungarian_max(const std::vector<std::vector<double>>& weight) {
    const std::size_t n = weight.size();
    // Minimize negated weights; standard potentials formulation, 1-indexed.
    const double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> match(n + 1, 0);  // match[col] = row
    for (std::size_t i = 1; i <= n; ++i) {
        std::vector<double> minv(n + 1, kInf);
        std::vector<bool> used(n + 1, false);
        std::vector<std::size_t> way(n + 1, 0);
        match[0] = i;
        std::size_t j0 = 0;
        do {
            used[j0] = true;
            const std::size_t i0 = match[j0];
            double delta = kInf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = -weight[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<std::size_t> row_to_col(n, 0);
    for (std::size_t j = 1; j <= n; ++j) {
        if (match[j] != 0) row_to_col[match[j] - 1] = j - 1;
    }
    return row_to_col;
}

MatchResult optimal_match(const std::vector<const ScoredPrediction*>& preds,
                          const std::vector<const ReferenceInstance*>& refs,
                          const CriterionSpec& spec) {
    MatchResult result;
    const std::size_t np = preds.size();
    const std::size_t nr = refs.size();
    if (np == 0 || nr == 0) {
        for (std::size_t i = 0; i < np; ++i) result.fp_predictions.push_back(i);
        for (std::size_t j = 0; j < nr; ++j) result.fn_references.push_back(j);
        return result;
    }
    // Each hit edge carries BIG so cardinality dominates the score tie-break.
    constexpr double kBig = 1e9;
    const std::size_t n = std::max(np, nr);
    std::vector<std::vector<double>> weight(n, std::vector<double>(n, 0.0));
    std::vector<std::vector<double>> score(np, std::vector<double>(nr, 0.0));
    std::vector<std::vector<bool>> hit(np, std::vector<bool>(nr, false));
    for (std::size_t i = 0; i < np; ++i) {
        for (std::size_t j = 0; j < nr; ++j) {
            const LocalizationOutcome out = localize(preds[i]->bbox, *refs[j], spec);
            score[i][j] = out.score;
            hit[i][j] = out.hit;
            if (out.hit) {
                const double rank = spec.kind == CriterionKind::center_distance
                                        ? -out.score
                                        : out.score;
                weight[i][j] = kBig + rank;
            }
        }
    }
    const std::vector<std::size_t> assignment = hungarian_max(weight);
    std::vector<bool> ref_matched(nr, false);
    for (std::size_t i = 0; i < np; ++i) {
        const std::size_t j = assignment[i];
        if (j < nr && hit[i][j]) {
            result.tp_pairs.push_back({i, j, score[i][j]});
            ref_matched[j] = true;
        } else {
            result.fp_predictions.push_back(i);
        }
    }
    for (std::size_t j = 0; j < nr; ++j) {
        if (!ref_matched[j]) result.fn_references.push_back(j);
    }
    return result;
}

}  // namespace

MatchResult match_image(const std::vector<const ScoredPrediction*>& preds,
                        const std::vector<const ReferenceInstance*>& refs,
                        const CriterionSpec& spec, AssignmentStrategy strategy) {
    spec.validate();
    return strategy == AssignmentStrategy::greedy_by_confidence ? greedy_match(preds, refs, spec)
                                                                : optimal_match(preds, refs, spec);
}

IgnoreAwareMatch match_image_ignoring(const std::vector<const ScoredPrediction*>& preds,
                                      const std::vector<const ReferenceInstance*>& refs,
                                      const std::vector<bool>& ignore_ref,
                                      const CriterionSpec& spec) {
    spec.validate();
    if (ignore_ref.size() != refs.size()) throw ConfigError("ignore flags/references mismatch");
    IgnoreAwareMatch out;
    std::vector<bool> taken(refs.size(), false);
    for (std::size_t i : greedy_order(preds)) {
        Candidate best_valid, best_ignored;
        for (std::size_t j = 0; j < refs.size(); ++j) {
            if (taken[j]) continue;
            const LocalizationOutcome o = localize(preds[i]->bbox, *refs[j], spec);
            if (!o.hit) continue;
            Candidate& slot = ignore_ref[j] ? best_ignored : best_valid;
            if (prefer(spec, refs, j, o.score, slot)) slot = {j, o.score, true};
        }
        if (best_valid.valid) {
            taken[best_valid.ref] = true;
            out.counted.tp_pairs.push_back({i, best_valid.ref, best_valid.score});
        } else if (best_ignored.valid) {
            taken[best_ignored.ref] = true;
            out.ignored_predictions.push_back(i);
        } else {
            out.counted.fp_predictions.push_back(i);
        }
    }
    for (std::size_t j = 0; j < refs.size(); ++j) {
        if (!taken[j] && !ignore_ref[j]) out.counted.fn_references.push_back(j);
    }
    return out;
}

}  // namespace detval
