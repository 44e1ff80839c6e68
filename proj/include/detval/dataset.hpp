#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "detval/geometry.hpp"

namespace detval {

struct ImageRecord {
    std::string image_id;
    int width = 0;
    int height = 0;
    std::string center_id;
    std::string patient_id;
    std::string sequence_id;
};

enum class PolypType {
    flat,
    protruded,
};

/// One annotated reference object: a nonempty mask on the image grid plus
/// derived shapes. The extent box and area are computed up front; the convex
/// hull is derived on first use and cached (criterion sweeps hit it thousands
/// of times). The cache is shared between copies and race-free.
class ReferenceInstance {
public:
    ReferenceInstance(std::string reference_id, std::string image_id, BinaryMask mask,
                      std::optional<PolypType> polyp_type = std::nullopt);

    const std::string& reference_id() const { return reference_id_; }
    const std::string& image_id() const { return image_id_; }
    const BinaryMask& mask() const { return mask_; }
    const BBox& bbox() const { return bbox_; }
    std::int64_t area() const { return mask_.area(); }
    std::optional<PolypType> polyp_type() const { return polyp_type_; }

    const ConvexPolygon& hull() const;

private:
    struct HullCache {
        std::once_flag once;
        std::optional<ConvexPolygon> value;
    };

    std::string reference_id_;
    std::string image_id_;
    BinaryMask mask_;
    BBox bbox_;
    std::optional<PolypType> polyp_type_;
    std::shared_ptr<HullCache> hull_cache_;
};

struct ScoredPrediction {
    std::string prediction_id;
    std::string image_id;
    BBox bbox;
    double confidence = 0.0;
};

enum class Rating {
    useful,
    not_useful,
};

struct RatingRecord {
    std::string prediction_id;
    Rating rating = Rating::useful;
    std::string rater_id;
};

struct Dataset {
    std::vector<ImageRecord> images;
    std::vector<ReferenceInstance> references;
};

/// Per-image slice of a dataset joined with predictions, in dataset image
/// order. Built once, shared read-only by all evaluation passes.
struct ImageSlice {
    const ImageRecord* image = nullptr;
    std::vector<const ReferenceInstance*> refs;
    std::vector<const ScoredPrediction*> preds;
};

class EvalData {
public:
    /// Throws ValidationError if a reference or prediction names an unknown image.
    EvalData(const Dataset& dataset, const std::vector<ScoredPrediction>& predictions);

    const std::vector<ImageSlice>& images() const { return images_; }
    std::int64_t total_references() const { return total_references_; }

    /// Sub-view with only the images of one center, in dataset order.
    std::vector<const ImageSlice*> center_slice(const std::string& center_id) const;
    /// Distinct center ids in first-appearance order.
    std::vector<std::string> center_ids() const;

private:
    std::vector<ImageSlice> images_;
    std::int64_t total_references_ = 0;
};

}  // namespace detval
