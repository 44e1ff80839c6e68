#pragma once

#include <vector>

#include "detval/geometry.hpp"

namespace detval {

struct ScoredBox {
    BBox bbox;
    double confidence = 0.0;
    int model_id = 0;
};

/// Defaults follow the winning-configuration hyperparameters: NMS/WBF IoU 0.5,
/// skip box threshold 0.02, equal model weights, shrink boxes above confidence
/// 0.4 by 2% of each side.
struct FusionConfig {
    double nms_iou = 0.5;
    double wbf_iou = 0.5;
    double skip_box_thresh = 0.02;
    std::vector<double> model_weights;  // empty = all equal
    bool score_rescale = true;
    double shrink_conf = 0.4;
    double shrink_factor = 0.02;

    void validate(std::size_t n_models) const;
};

/// Keep a box iff its IoU with every already-kept higher-confidence box is
/// below the threshold. Output in descending confidence.
std::vector<ScoredBox> nms(std::vector<ScoredBox> boxes, double iou_thresh);

/// Cluster boxes across ensemble members and average their coordinates,
/// weighted by confidence. Boxes whose weighted confidence falls below the
/// skip threshold are discarded first. Clustering is greedy first-fit in
/// descending confidence order against the running fused box. When
/// score_rescale is on, the fused confidence is multiplied by
/// min(cluster size, n_models) / n_models.
std::vector<ScoredBox> weighted_boxes_fusion(const std::vector<std::vector<ScoredBox>>& per_model,
                                             const FusionConfig& cfg);

/// Boxes with confidence above conf_thresh get width and height multiplied by
/// (1 - factor), center preserved. Others pass through unchanged.
std::vector<ScoredBox> shrink_boxes(std::vector<ScoredBox> boxes, double conf_thresh,
                                    double factor);

}  // namespace detval
