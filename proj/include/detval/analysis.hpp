#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "detval/metrics.hpp"

namespace detval {

/// min/Q1/median/Q3/max plus mean and sample SD of a value set. Quartiles use
/// linear interpolation between closest ranks. SD is 0 for a single value.
struct Dispersion {
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
    double mean = 0.0;
    double sd = 0.0;
    int n = 0;
};

Dispersion dispersion_of(std::vector<double> values);

inline constexpr std::array<const char*, 5> kMetricNames{"sensitivity", "ppv", "f1", "f2", "ap"};

/// One value per entry of kMetricNames; absent when undefined.
using MetricSet = std::array<std::optional<double>, 5>;

struct AnalysisOptions {
    AssignmentStrategy strategy = AssignmentStrategy::greedy_by_confidence;
    std::optional<double> confidence_cutoff;  // counting metrics only; AP never uses it
    unsigned jobs = 1;
};

// ---------------------------------------------------------------------------
// Per-center variability

struct CenterSummary {
    std::string center_id;
    int n = 0;          // frame count
    double phi = 0.0;   // fraction of frames with at least one reference
    bool has_references = false;
    std::vector<MetricSet> values;  // parallel to the criteria list
};

struct PerCenterReport {
    std::vector<CriterionSpec> criteria;
    std::optional<double> confidence_cutoff;
    std::vector<CenterSummary> centers;
    /// dispersion[criterion][metric] across centers where the value exists.
    std::vector<std::array<std::optional<Dispersion>, 5>> dispersion;
};

PerCenterReport per_center_report(const EvalData& data, const std::vector<CriterionSpec>& criteria,
                                  const AnalysisOptions& options = {});

// ---------------------------------------------------------------------------
// Size stratification

struct SizeBuckets {
    double small_max_area = 32.0 * 32.0;
    double medium_max_area = 96.0 * 96.0;

    void validate() const;
};

enum class SizeBucket { small = 0, medium = 1, large = 2 };

inline constexpr std::array<const char*, 3> kBucketNames{"small", "medium", "large"};

SizeBucket bucket_of(double area, const SizeBuckets& buckets);

struct StratifyRow {
    std::string center_id;
    std::array<std::optional<double>, 3> ap_fixed;  // per bucket, fixed threshold
    std::array<std::optional<double>, 3> ap_range;  // per bucket, threshold range
    std::int64_t n = 0;
    double phi = 0.0;
};

struct StratifyReport {
    SizeBuckets buckets;
    CriterionKind kind = CriterionKind::box_iou;
    double fixed_tau = 0.5;
    APConfig range_cfg;
    std::vector<StratifyRow> per_center;
    /// Mean of the per-center values; n and phi pooled over all frames.
    StratifyRow all_centers;
    /// Sample SD across centers, per bucket.
    std::array<std::optional<double>, 3> sd_fixed;
    std::array<std::optional<double>, 3> sd_range;
};

/// AP per size bucket per center. Matching treats out-of-bucket references as
/// ignore regions: predictions matched to them count neither as TP nor FP.
StratifyReport stratify_by_size(const EvalData& data, const SizeBuckets& buckets,
                                CriterionKind kind, double fixed_tau, const APConfig& range_cfg,
                                const AnalysisOptions& options = {});

// ---------------------------------------------------------------------------
// Threshold sweeps and criterion comparison

struct SweepCurve {
    CriterionKind kind = CriterionKind::box_iou;
    std::vector<std::pair<double, double>> points;  // (tau, AP), taus strictly increasing
};

/// AP as a function of the IoU cutoff, one curve per overlap kind.
std::vector<SweepCurve> threshold_sweep(const EvalData& data,
                                        const std::vector<CriterionKind>& kinds,
                                        const std::vector<double>& taus,
                                        const AnalysisOptions& options = {});

enum class Aggregation {
    pooled,           // one confusion matrix / ranked list over all centers
    per_center_mean,  // metric per center, then averaged
};

struct ComparisonTable {
    std::vector<CriterionSpec> criteria;
    std::vector<MetricSet> values;           // parallel to criteria
    std::vector<ConfusionCounts> counts;     // pooled counts per criterion
    Aggregation aggregation = Aggregation::pooled;
    std::optional<double> confidence_cutoff;
};

ComparisonTable criterion_comparison(const EvalData& data,
                                     const std::vector<CriterionSpec>& criteria,
                                     Aggregation aggregation = Aggregation::pooled,
                                     const AnalysisOptions& options = {});

// ---------------------------------------------------------------------------
// Clinician agreement

struct AgreementRow {
    CriterionSpec criterion;
    std::optional<double> accepted_useful;      // accepted fraction of "useful" ratings
    std::optional<double> rejected_not_useful;  // rejected fraction of "not useful" ratings
    std::int64_t n_useful = 0;
    std::int64_t n_not_useful = 0;
    std::int64_t n_useful_accepted = 0;
    std::int64_t n_not_useful_rejected = 0;
};

struct AgreementReport {
    std::vector<AgreementRow> rows;  // sorted by accepted_useful, descending
};

/// A rated prediction is accepted under a criterion iff its best-scoring
/// reference on the image yields a hit. Ratings naming an unknown prediction
/// raise ValidationError.
AgreementReport agreement_analysis(const EvalData& data, const std::vector<RatingRecord>& ratings,
                                   const std::vector<CriterionSpec>& criteria,
                                   const AnalysisOptions& options = {});

}  // namespace detval
