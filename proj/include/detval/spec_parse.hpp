#pragma once

#include <string>
#include <vector>

#include "detval/localization.hpp"

namespace detval {

/// Parse the criterion mini-grammar `kind[:tau[:unit][:strict]]`, e.g.
///   box_iou:0.5        mask_iou:0:strict      center_distance:0.05:diag
///   point_in_mask      center_distance:25:px
/// Units: `px` (default) or `diag`. Throws ConfigError on malformed input.
CriterionSpec parse_criterion(const std::string& text);

/// Parse a comma-separated criterion list.
std::vector<CriterionSpec> parse_criteria(const std::string& text);

/// Parse a threshold grid: either `start:step:stop` (inclusive, e.g.
/// `0.05:0.05:0.95`) or a comma-separated list `0.5,0.75`. Strictly increasing.
std::vector<double> parse_tau_grid(const std::string& text);

/// Label for a tau grid, e.g. "[0.5:0.95]".
std::string tau_grid_label(const std::vector<double>& grid);

}  // namespace detval
