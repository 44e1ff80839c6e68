#include "detval/localization.hpp"

#include <cmath>

#include "detval/errors.hpp"

namespace detval {

bool is_overlap_kind(CriterionKind k) {
    return k == CriterionKind::box_iou || k == CriterionKind::mask_iou ||
           k == CriterionKind::hull_iou;
}

bool is_point_kind(CriterionKind k) {
    return k == CriterionKind::point_in_box || k == CriterionKind::point_in_mask ||
           k == CriterionKind::point_in_hull;
}

const char* kind_name(CriterionKind k) {
    switch (k) {
        case CriterionKind::box_iou: return "box_iou";
        case CriterionKind::mask_iou: return "mask_iou";
        case CriterionKind::hull_iou: return "hull_iou";
        case CriterionKind::point_in_box: return "point_in_box";
        case CriterionKind::point_in_mask: return "point_in_mask";
        case CriterionKind::point_in_hull: return "point_in_hull";
        case CriterionKind::center_distance: return "center_distance";
    }
    return "?";
}

std::optional<CriterionKind> kind_from_name(const std::string& name) {
    for (CriterionKind k :
         {CriterionKind::box_iou, CriterionKind::mask_iou, CriterionKind::hull_iou,
          CriterionKind::point_in_box, CriterionKind::point_in_mask, CriterionKind::point_in_hull,
          CriterionKind::center_distance}) {
        if (name == kind_name(k)) return k;
    }
    return std::nullopt;
}

void CriterionSpec::validate() const {
    if (is_point_kind(kind)) return;
    if (!tau.has_value()) {
        throw ConfigError(std::string(kind_name(kind)) + " requires a threshold");
    }
    if (is_overlap_kind(kind) && (*tau < 0.0 || *tau > 1.0)) {
        throw ConfigError("IoU threshold must be in [0,1]");
    }
    if (kind == CriterionKind::center_distance && *tau < 0.0) {
        throw ConfigError("distance threshold must be >= 0");
    }
}

namespace {

std::string format_tau(double tau) {
    std::string s = std::to_string(tau);
    while (s.size() > 1 && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

}  // namespace

std::string criterion_label(const CriterionSpec& spec) {
    std::string label = kind_name(spec.kind);
    if (is_point_kind(spec.kind)) return label;
    if (is_overlap_kind(spec.kind) && spec.strict_positive) {
        return label + ">" + format_tau(spec.tau.value_or(0.0));
    }
    label += "@" + format_tau(spec.tau.value_or(0.0));
    if (spec.kind == CriterionKind::center_distance) {
        label += spec.tau_unit == TauUnit::pixels ? "px" : "diag";
    }
    return label;
}

LocalizationOutcome localize(const BBox& pred, const ReferenceInstance& ref,
                             const CriterionSpec& spec) {
    spec.validate();
    const Point pred_center = center_of(pred, CenterMode::bbox_center);
    switch (spec.kind) {
        case CriterionKind::box_iou:
        case CriterionKind::mask_iou:
        case CriterionKind::hull_iou: {
            double score = 0.0;
            if (spec.kind == CriterionKind::box_iou) {
                score = bbox_iou(pred, ref.bbox());
            } else if (spec.kind == CriterionKind::mask_iou) {
                score = mask_iou(pred, ref.mask());
            } else {
                score = convex_iou(ConvexPolygon::from_bbox(pred), ref.hull());
            }
            const bool hit = spec.strict_positive ? score > *spec.tau : score >= *spec.tau;
            return {score, hit};
        }
        case CriterionKind::point_in_box: {
            const bool hit = point_in(pred_center, ref.bbox());
            return {hit ? 1.0 : 0.0, hit};
        }
        case CriterionKind::point_in_mask: {
            const bool hit = point_in(pred_center, ref.mask());
            return {hit ? 1.0 : 0.0, hit};
        }
        case CriterionKind::point_in_hull: {
            const bool hit = point_in(pred_center, ref.hull());
            return {hit ? 1.0 : 0.0, hit};
        }
        case CriterionKind::center_distance: {
            const Point rc = center_of(ref.mask(), spec.reference_center);
            const double d = std::hypot(pred_center.x - rc.x, pred_center.y - rc.y);
            double limit = *spec.tau;
            if (spec.tau_unit == TauUnit::diagonal_fraction) {
                // The mask lives on the image grid, so its dimensions are the
                // image dimensions.
                limit *= std::hypot(static_cast<double>(ref.mask().width()),
                                    static_cast<double>(ref.mask().height()));
            }
            return {d, d <= limit};
        }
    }
    throw Error("unreachable criterion kind");
}

bool score_better(const CriterionSpec& spec, double a, double b) {
    return spec.kind == CriterionKind::center_distance ? a < b : a > b;
}

}  // namespace detval
