#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace detval {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Reference shape is unusable (e.g. a mask without foreground pixels).
struct InvalidReferenceError : Error {
    using Error::Error;
};

/// Overlap requested between two zero-area shapes; the ratio is undefined.
struct UndefinedOverlapError : Error {
    using Error::Error;
};

/// Metric with a zero denominator. Reported as absent, never as 0.
struct UndefinedMetricError : Error {
    using Error::Error;
};

/// Bad or inconsistent configuration (thresholds, weights, flag combinations).
struct ConfigError : Error {
    using Error::Error;
};

/// Filesystem or serialization failure.
struct IoError : Error {
    using Error::Error;
};

/// One schema problem found while ingesting a file.
struct Diagnostic {
    std::string where;   ///< file name plus json path or line number
    std::string message;
};

/// Input failed validation. Carries every problem found, not just the first.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<Diagnostic> issues)
        : Error(join(issues)), issues_(std::move(issues)) {}

    const std::vector<Diagnostic>& issues() const { return issues_; }

private:
    static std::string join(const std::vector<Diagnostic>& issues) {
        std::string msg = "validation failed (" + std::to_string(issues.size()) + " issue(s))";
        for (const auto& d : issues) {
            msg += "\n  " + d.where + ": " + d.message;
        }
        return msg;
    }

    std::vector<Diagnostic> issues_;
};

}  // namespace detval
