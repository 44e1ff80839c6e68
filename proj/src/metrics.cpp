#include "detval/metrics.hpp"

#include <algorithm>

#include "detval/errors.hpp"

namespace detval {

double counting_metric(const ConfusionCounts& c, CountingKind kind, double beta) {
    const double tp = static_cast<double>(c.tp);
    switch (kind) {
        case CountingKind::sensitivity:
            if (c.tp + c.fn == 0) throw UndefinedMetricError("sensitivity undefined: no references");
            return tp / static_cast<double>(c.tp + c.fn);
        case CountingKind::ppv:
            if (c.tp + c.fp == 0) throw UndefinedMetricError("ppv undefined: no predictions");
            return tp / static_cast<double>(c.tp + c.fp);
        case CountingKind::f_beta: {
            const double p = counting_metric(c, CountingKind::ppv);
            const double r = counting_metric(c, CountingKind::sensitivity);
            const double b2 = beta * beta;
            if (b2 * p + r == 0.0) throw UndefinedMetricError("f_beta undefined: P and R both zero");
            return (1.0 + b2) * p * r / (b2 * p + r);
        }
    }
    throw Error("unreachable counting kind");
}

PRCurve pr_curve(std::vector<RankedFlag> flags, std::int64_t total_refs) {
    if (total_refs <= 0) throw UndefinedMetricError("PR curve undefined without references");
    std::stable_sort(flags.begin(), flags.end(), [](const RankedFlag& a, const RankedFlag& b) {
        if (a.confidence != b.confidence) return a.confidence > b.confidence;
        return a.score > b.score;
    });
    PRCurve curve;
    curve.total_references = total_refs;
    curve.points.reserve(flags.size());
    std::int64_t tp = 0;
    for (std::size_t i = 0; i < flags.size(); ++i) {
        if (flags[i].is_tp) ++tp;
        curve.points.push_back({static_cast<double>(tp) / static_cast<double>(total_refs),
                                static_cast<double>(tp) / static_cast<double>(i + 1)});
    }
    return curve;
}

void APConfig::validate() const {
    if (tau_grid.empty()) throw ConfigError("tau grid must be nonempty");
    for (std::size_t i = 1; i < tau_grid.size(); ++i) {
        if (tau_grid[i] <= tau_grid[i - 1]) throw ConfigError("tau grid must be strictly increasing");
    }
}

double average_precision(const PRCurve& curve, Interpolation) {
    double sum = 0.0;
    for (int k = 0; k <= 100; ++k) {
        const double r = static_cast<double>(k) / 100.0;
        double best = 0.0;
        for (const PRPoint& p : curve.points) {
            if (p.recall >= r) best = std::max(best, p.precision);
        }
        sum += best;
    }
    return sum / 101.0;
}

std::vector<RankedFlag> dataset_flags(const std::vector<const ImageSlice*>& images,
                                      const CriterionSpec& spec, AssignmentStrategy strategy) {
    std::vector<RankedFlag> flags;
    for (const ImageSlice* slice : images) {
        const MatchResult m = match_image(slice->preds, slice->refs, spec, strategy);
        std::vector<RankedFlag> local(slice->preds.size());
        for (std::size_t i = 0; i < slice->preds.size(); ++i) {
            local[i] = {slice->preds[i]->confidence, 0.0, false};
        }
        for (const MatchResult::Pair& pair : m.tp_pairs) {
            local[pair.pred].is_tp = true;
            local[pair.pred].score = pair.score;
        }
        flags.insert(flags.end(), local.begin(), local.end());
    }
    return flags;
}

std::vector<RankedFlag> dataset_flags(const EvalData& data, const CriterionSpec& spec,
                                      AssignmentStrategy strategy) {
    std::vector<const ImageSlice*> images;
    images.reserve(data.images().size());
    for (const ImageSlice& s : data.images()) images.push_back(&s);
    return dataset_flags(images, spec, strategy);
}

ConfusionCounts dataset_counts(const std::vector<const ImageSlice*>& images,
                               const CriterionSpec& spec, AssignmentStrategy strategy,
                               std::optional<double> confidence_cutoff) {
    ConfusionCounts counts;
    for (const ImageSlice* slice : images) {
        std::vector<const ScoredPrediction*> preds;
        preds.reserve(slice->preds.size());
        for (const ScoredPrediction* p : slice->preds) {
            if (!confidence_cutoff || p->confidence >= *confidence_cutoff) preds.push_back(p);
        }
        const MatchResult m = match_image(preds, slice->refs, spec, strategy);
        counts.tp += static_cast<std::int64_t>(m.tp_pairs.size());
        counts.fp += static_cast<std::int64_t>(m.fp_predictions.size());
        counts.fn += static_cast<std::int64_t>(m.fn_references.size());
    }
    return counts;
}

namespace {

std::int64_t count_refs(const std::vector<const ImageSlice*>& images) {
    std::int64_t n = 0;
    for (const ImageSlice* s : images) n += static_cast<std::int64_t>(s->refs.size());
    return n;
}

}  // namespace

double ap_at(const std::vector<const ImageSlice*>& images, const CriterionSpec& spec,
             AssignmentStrategy strategy) {
    const std::int64_t total = count_refs(images);
    return average_precision(pr_curve(dataset_flags(images, spec, strategy), total));
}

double ap_at(const EvalData& data, const CriterionSpec& spec, AssignmentStrategy strategy) {
    std::vector<const ImageSlice*> images;
    images.reserve(data.images().size());
    for (const ImageSlice& s : data.images()) images.push_back(&s);
    return ap_at(images, spec, strategy);
}

double ap_over_range(const std::vector<const ImageSlice*>& images, CriterionKind kind,
                     const APConfig& cfg, AssignmentStrategy strategy) {
    cfg.validate();
    double sum = 0.0;
    for (double tau : cfg.tau_grid) {
        CriterionSpec spec;
        spec.kind = kind;
        spec.tau = tau;
        sum += ap_at(images, spec, strategy);
    }
    return sum / static_cast<double>(cfg.tau_grid.size());
}

double ap_over_range(const EvalData& data, CriterionKind kind, const APConfig& cfg,
                     AssignmentStrategy strategy) {
    std::vector<const ImageSlice*> images;
    images.reserve(data.images().size());
    for (const ImageSlice& s : data.images()) images.push_back(&s);
    return ap_over_range(images, kind, cfg, strategy);
}

double composite_ap(const EvalData& data, const std::vector<APRequest>& components,
                    AssignmentStrategy strategy) {
    if (components.empty()) throw ConfigError("composite AP needs at least one component");
    double sum = 0.0;
    for (const APRequest& req : components) {
        sum += req.range ? ap_over_range(data, req.spec.kind, *req.range, strategy)
                         : ap_at(data, req.spec, strategy);
    }
    return sum / static_cast<double>(components.size());
}

}  // namespace detval
