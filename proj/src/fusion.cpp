#include "detval/fusion.hpp"

#include <algorithm>

#include "detval/errors.hpp"

namespace detval {

namespace {

void sort_by_confidence(std::vector<ScoredBox>& boxes) {
    std::stable_sort(boxes.begin(), boxes.end(), [](const ScoredBox& a, const ScoredBox& b) {
        return a.confidence > b.confidence;
    });
}

struct Cluster {
    std::vector<ScoredBox> members;  // confidence already model-weighted
    BBox fused;
    double fused_conf = 0.0;

    void update_fused() {
        double wsum = 0.0, csum = 0.0;
        BBox acc{0.0, 0.0, 0.0, 0.0};
        for (const ScoredBox& m : members) {
            const double w = m.confidence;
            acc.x_min += w * m.bbox.x_min;
            acc.y_min += w * m.bbox.y_min;
            acc.x_max += w * m.bbox.x_max;
            acc.y_max += w * m.bbox.y_max;
            wsum += w;
            csum += m.confidence;
        }
        fused = {acc.x_min / wsum, acc.y_min / wsum, acc.x_max / wsum, acc.y_max / wsum};
        fused_conf = csum / static_cast<double>(members.size());
    }
};

}  // namespace

void FusionConfig::validate(std::size_t n_models) const {
    for (double t : {nms_iou, wbf_iou, skip_box_thresh, shrink_conf}) {
        if (t < 0.0 || t > 1.0) throw ConfigError("fusion thresholds must be in [0,1]");
    }
    if (shrink_factor < 0.0 || shrink_factor >= 1.0) {
        throw ConfigError("shrink factor must be in [0,1)");
    }
    if (!model_weights.empty()) {
        if (model_weights.size() != n_models) {
            throw ConfigError("model weight count does not match model count");
        }
        for (double w : model_weights) {
            if (w <= 0.0) throw ConfigError("model weights must be positive");
        }
    }
}

std::vector<ScoredBox> nms(std::vector<ScoredBox> boxes, double iou_thresh) {
    sort_by_confidence(boxes);
    std::vector<ScoredBox> kept;
    kept.reserve(boxes.size());
    for (const ScoredBox& candidate : boxes) {
        bool suppressed = false;
        for (const ScoredBox& k : kept) {
            if (bbox_iou(candidate.bbox, k.bbox) >= iou_thresh) {
                suppressed = true;
                break;
            }
        }
        if (!suppressed) kept.push_back(candidate);
    }
    return kept;
}

std::vector<ScoredBox> weighted_boxes_fusion(const std::vector<std::vector<ScoredBox>>& per_model,
                                             const FusionConfig& cfg) {
    const std::size_t n_models = per_model.size();
    cfg.validate(n_models);
    std::vector<ScoredBox> pool;
    for (std::size_t m = 0; m < n_models; ++m) {
        const double w = cfg.model_weights.empty() ? 1.0 : cfg.model_weights[m];
        for (ScoredBox b : per_model[m]) {
            b.confidence *= w;
            b.model_id = static_cast<int>(m);
            if (b.confidence >= cfg.skip_box_thresh) pool.push_back(b);
        }
    }
    sort_by_confidence(pool);

    std::vector<Cluster> clusters;
    for (const ScoredBox& box : pool) {
        bool placed = false;
        for (Cluster& c : clusters) {
            if (bbox_iou(box.bbox, c.fused) >= cfg.wbf_iou) {
                c.members.push_back(box);
                c.update_fused();
                placed = true;
                break;
            }
        }
        if (!placed) {
            clusters.push_back(Cluster{{box}, box.bbox, box.confidence});
        }
    }

    std::vector<ScoredBox> fused;
    fused.reserve(clusters.size());
    for (const Cluster& c : clusters) {
        double conf = c.fused_conf;
        if (cfg.score_rescale) {
            conf *= static_cast<double>(std::min(c.members.size(), n_models)) /
                    static_cast<double>(n_models);
        }
        fused.push_back({c.fused, conf, -1});
    }
    sort_by_confidence(fused);
    return fused;
}

std::vector<ScoredBox> shrink_boxes(std::vector<ScoredBox> boxes, double conf_thresh,
                                    double factor) {
    if (factor < 0.0 || factor >= 1.0) throw ConfigError("shrink factor must be in [0,1)");
    for (ScoredBox& b : boxes) {
        if (b.confidence <= conf_thresh) continue;
        const Point c = b.bbox.center();
        const double hw = b.bbox.width() * (1.0 - factor) / 2.0;
        const double hh = b.bbox.height() * (1.0 - factor) / 2.0;
        b.bbox = {c.x - hw, c.y - hh, c.x + hw, c.y + hh};
    }
    return boxes;
}

}  // namespace detval
