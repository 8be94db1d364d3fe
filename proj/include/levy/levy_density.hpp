#pragma once

// f_alpha(x) from the residue-series representations.

#include "levy/levy_index.hpp"
#include "levy/oracle.hpp"
#include "levy/report.hpp"
#include "levy/representation.hpp"
#include "levy/wright.hpp"

namespace levy {

struct DensityConfig {
    SeriesConfig series;
    /// The binary64 result is kept only if its estimated relative error is
    /// at most this; otherwise the binary128 path runs.
    double target_rel = 1e-12;
    /// Certification bar for the binary128 path (8 significant digits).
    double extended_rel = 1e-8;
    /// Per-block stopping tolerance on the binary128 path.
    double extended_series_tol = 1e-30;
    /// When the binary128 path cannot certify, use the oracle (reported as
    /// PrecisionPath::Oracle) instead of throwing AccuracyError.
    bool oracle_fallback = true;
    OracleConfig oracle;
    /// Skip the binary64 attempt (tests of the extended path).
    bool force_extended = false;
};

/// Sum of all blocks at x in working precision T. Values, magnitudes and
/// error estimates are in final units.
template <class T>
SeriesSum<T> evaluate_representation(const Representation& rep, T x, const SeriesConfig& config);

/// f_alpha(x). Throws DomainError for x <= 0 and AccuracyError when neither
/// precision certifies and the oracle fallback is disabled.
EvalReport density(const Representation& rep, double x, const DensityConfig& config = {});
EvalReport density(const LevyIndex& index, double x, const DensityConfig& config = {});

}  // namespace levy
