#include "detval/dataset.hpp"

#include <unordered_map>

#include "detval/errors.hpp"

namespace detval {

ReferenceInstance::ReferenceInstance(std::string reference_id, std::string image_id,
                                     BinaryMask mask, std::optional<PolypType> polyp_type)
    : reference_id_(std::move(reference_id)),
      image_id_(std::move(image_id)),
      mask_(std::move(mask)),
      polyp_type_(polyp_type),
      hull_cache_(std::make_shared<HullCache>()) {
    if (mask_.empty()) {
        throw InvalidReferenceError("reference '" + reference_id_ + "' has an empty mask");
    }
    bbox_ = mask_.extent();
}

const ConvexPolygon& ReferenceInstance::hull() const {
    std::call_once(hull_cache_->once, [this] { hull_cache_->value = hull_of_mask(mask_); });
    return *hull_cache_->value;
}

EvalData::EvalData(const Dataset& dataset, const std::vector<ScoredPrediction>& predictions) {
    images_.reserve(dataset.images.size());
    std::unordered_map<std::string, std::size_t> index;
    for (const ImageRecord& img : dataset.images) {
        index.emplace(img.image_id, images_.size());
        images_.push_back(ImageSlice{&img, {}, {}});
    }
    std::vector<Diagnostic> issues;
    for (const ReferenceInstance& ref : dataset.references) {
        auto it = index.find(ref.image_id());
        if (it == index.end()) {
            issues.push_back({"reference " + ref.reference_id(),
                              "unknown image_id '" + ref.image_id() + "'"});
            continue;
        }
        images_[it->second].refs.push_back(&ref);
        ++total_references_;
    }
    for (const ScoredPrediction& pred : predictions) {
        auto it = index.find(pred.image_id);
        if (it == index.end()) {
            issues.push_back({"prediction " + pred.prediction_id,
                              "unknown image_id '" + pred.image_id + "'"});
            continue;
        }
        images_[it->second].preds.push_back(&pred);
    }
    if (!issues.empty()) throw ValidationError(std::move(issues));
}

std::vector<const ImageSlice*> EvalData::center_slice(const std::string& center_id) const {
    std::vector<const ImageSlice*> out;
    for (const ImageSlice& s : images_) {
        if (s.image->center_id == center_id) out.push_back(&s);
    }
    return out;
}

std::vector<std::string> EvalData::center_ids() const {
    std::vector<std::string> out;
    for (const ImageSlice& s : images_) {
        bool seen = false;
        for (const std::string& c : out) {
            if (c == s.image->center_id) {
                seen = true;
                break;
            }
        }
        if (!seen) out.push_back(s.image->center_id);
    }
    return out;
}

}  // namespace detval
