#pragma once

#include <optional>
#include <string>

#include "detval/dataset.hpp"
#include "detval/geometry.hpp"

namespace detval {

enum class CriterionKind {
    box_iou,
    mask_iou,
    hull_iou,
    point_in_box,
    point_in_mask,
    point_in_hull,
    center_distance,
};

enum class TauUnit {
    pixels,
    diagonal_fraction,
};

bool is_overlap_kind(CriterionKind k);
bool is_point_kind(CriterionKind k);
const char* kind_name(CriterionKind k);
std::optional<CriterionKind> kind_from_name(const std::string& name);

/// A localization criterion: which spatial test decides hit/miss, and its
/// threshold. Point kinds ignore tau. strict_positive switches overlap kinds
/// from score >= tau to score > tau, which expresses "IoU > 0" without a fake
/// epsilon. The prediction center is always the box midpoint; the reference
/// center used by center_distance is configurable.
struct CriterionSpec {
    CriterionKind kind = CriterionKind::box_iou;
    std::optional<double> tau;
    TauUnit tau_unit = TauUnit::pixels;
    bool strict_positive = false;
    CenterMode reference_center = CenterMode::bbox_center;

    /// Throws ConfigError on a missing or out-of-range threshold.
    void validate() const;
};

/// Display label, e.g. "box_iou@0.5", "mask_iou>0", "point_in_hull",
/// "center_distance@25px".
std::string criterion_label(const CriterionSpec& spec);

/// score holds the IoU, the center distance in pixels, or 0/1 for point kinds.
struct LocalizationOutcome {
    double score = 0.0;
    bool hit = false;
};

/// Decide whether one prediction hits one reference under the criterion.
LocalizationOutcome localize(const BBox& pred, const ReferenceInstance& ref,
                             const CriterionSpec& spec);

/// True when score a should be preferred over b when picking among hit
/// candidates (higher overlap; lower center distance).
bool score_better(const CriterionSpec& spec, double a, double b);

}  // namespace detval
