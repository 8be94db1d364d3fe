#pragma once

#include <cstdint>
#include <string_view>

namespace levy {

enum class PrecisionPath {
    Standard,  ///< binary64 with compensated summation
    Extended,  ///< binary128 (about 34 significant digits)
    Oracle,    ///< numerical Laplace / Mellin inversion
};

std::string_view to_string(PrecisionPath path);

/// Result of any numerical evaluation in the library.
struct EvalReport {
    double value = 0.0;
    double abs_err_estimate = 0.0;
    std::uint64_t terms_used = 0;
    double max_term_magnitude = 0.0;
    /// max_term_magnitude / |value|; +inf when value == 0.
    double cancellation_ratio = 0.0;
    PrecisionPath precision_path = PrecisionPath::Standard;
    /// Standard-path cancellation exceeded the escalation threshold.
    bool precision_loss = false;
    /// Inputs outside the certified range (e.g. alpha > 1); best effort only.
    bool experimental = false;

    double relative_error_estimate() const;
};

}  // namespace levy
