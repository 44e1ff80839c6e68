#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "detval/dataset.hpp"
#include "detval/matching.hpp"

namespace detval {

struct ConfusionCounts {
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t fn = 0;

    ConfusionCounts& operator+=(const ConfusionCounts& o) {
        tp += o.tp;
        fp += o.fp;
        fn += o.fn;
        return *this;
    }
};

enum class CountingKind {
    sensitivity,
    ppv,
    f_beta,
};

/// sensitivity = tp/(tp+fn), ppv = tp/(tp+fp),
/// f_beta = (1+b^2) P R / (b^2 P + R).
/// Throws UndefinedMetricError on a zero denominator; callers report absent.
double counting_metric(const ConfusionCounts& c, CountingKind kind, double beta = 1.0);

/// One prediction of the ranked dataset-wide list with its TP/FP flag.
struct RankedFlag {
    double confidence = 0.0;
    double score = 0.0;  // matched localization score; 0 for FP
    bool is_tp = false;
};

struct PRPoint {
    double recall = 0.0;
    double precision = 0.0;
};

/// Cumulative precision/recall after each prediction in ranked order
/// (confidence desc, score desc, stable input order).
struct PRCurve {
    std::vector<PRPoint> points;
    std::int64_t total_references = 0;
};

/// Throws UndefinedMetricError when total_refs is zero.
PRCurve pr_curve(std::vector<RankedFlag> flags, std::int64_t total_refs);

enum class Interpolation {
    coco_101_point,
};

struct APConfig {
    Interpolation interpolation = Interpolation::coco_101_point;
    std::vector<double> tau_grid;  // nonempty, strictly increasing

    void validate() const;
};

/// Mean over the 101 recall points {0.00, 0.01, ..., 1.00} of
/// p_interp(r) = max precision at recall >= r.
double average_precision(const PRCurve& curve,
                         Interpolation interpolation = Interpolation::coco_101_point);

/// Match every image at the criterion and flatten into the ranked flag list.
/// Under greedy matching the per-cutoff TP/FP flags follow from one pass on
/// the fully ranked list.
std::vector<RankedFlag> dataset_flags(const EvalData& data, const CriterionSpec& spec,
                                      AssignmentStrategy strategy);
std::vector<RankedFlag> dataset_flags(const std::vector<const ImageSlice*>& images,
                                      const CriterionSpec& spec, AssignmentStrategy strategy);

/// Pooled TP/FP/FN counts over a set of images; predictions below the
/// confidence cutoff are excluded before matching.
ConfusionCounts dataset_counts(const std::vector<const ImageSlice*>& images,
                               const CriterionSpec& spec, AssignmentStrategy strategy,
                               std::optional<double> confidence_cutoff = std::nullopt);

/// AP at one fixed criterion. Requires at least one reference.
double ap_at(const EvalData& data, const CriterionSpec& spec,
             AssignmentStrategy strategy = AssignmentStrategy::greedy_by_confidence);
double ap_at(const std::vector<const ImageSlice*>& images, const CriterionSpec& spec,
             AssignmentStrategy strategy = AssignmentStrategy::greedy_by_confidence);

/// Mean of ap_at over the config's tau grid; matching is recomputed per tau.
double ap_over_range(const EvalData& data, CriterionKind kind, const APConfig& cfg,
                     AssignmentStrategy strategy = AssignmentStrategy::greedy_by_confidence);
double ap_over_range(const std::vector<const ImageSlice*>& images, CriterionKind kind,
                     const APConfig& cfg,
                     AssignmentStrategy strategy = AssignmentStrategy::greedy_by_confidence);

/// One component of a composite AP: either a single criterion or a criterion
/// kind averaged over a tau grid.
struct APRequest {
    CriterionSpec spec;
    std::optional<APConfig> range;  // when set, spec.kind is swept over the grid
};

/// Mean of the component AP values (EndoCV-style composite over a
/// user-supplied list of AP configurations).
double composite_ap(const EvalData& data, const std::vector<APRequest>& components,
                    AssignmentStrategy strategy = AssignmentStrategy::greedy_by_confidence);

}  // namespace detval
