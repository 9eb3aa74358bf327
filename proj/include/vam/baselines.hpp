#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vam/events.hpp"

namespace vam {

struct ArimaOrder {
    int p = 0;  // autoregressive terms
    int d = 0;  // differences
    int q = 0;  // lagged forecast errors

    void validate() const;
    static ArimaOrder ar(int p) { return {p, 0, 0}; }
    static ArimaOrder ma(int q) { return {0, 0, q}; }
    static ArimaOrder arma(int p, int q) { return {p, 0, q}; }
    static ArimaOrder arima(int p, int d, int q) { return {p, d, q}; }
};

// Shifts the trailing `horizon` values forward unchanged.
std::vector<std::int64_t> persistence_forecast(std::span<const std::int64_t> history,
                                               int horizon);

// Timestamp-relabelled copies of the given history graphs, shifted one
// horizon forward (graph i predicts bin history[i].bin_start + graphs.size()).
std::vector<TemporalGraph> persistence_network(const std::vector<TemporalGraph>& graphs);

// Conditional-least-squares ARMA fit of a (possibly differenced) series.
// Exposed so coefficient recovery is testable on synthetic processes.
struct ArimaFit {
    double intercept = 0.0;
    std::vector<double> ar_coeffs;
    std::vector<double> ma_coeffs;
    std::vector<double> residuals;  // aligned with the fitted series
    bool constant_series = false;   // zero-variance shortcut was taken
    double constant_value = 0.0;
    bool singular = false;  // normal equations were not solvable
};
ArimaFit fit_arma_cls(std::span<const double> z, int p, int q);

struct ForecastResult {
    std::vector<std::int64_t> values;
    bool used_fallback = false;  // singular fit fell back to persistence
};

// d-fold differencing, CLS fit, recursive forecast, un-differencing, then
// clamp at zero and round. A singular fit falls back to the persistence
// forecast and flags the result.
ForecastResult arima_forecast(std::span<const std::int64_t> history, const ArimaOrder& order,
                              int horizon);

}  // namespace vam
