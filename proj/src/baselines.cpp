#include "vam/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace vam {

void ArimaOrder::validate() const {
    if (p < 0 || d < 0 || q < 0) throw std::invalid_argument("arima order: negative term");
}

std::vector<std::int64_t> persistence_forecast(std::span<const std::int64_t> history,
                                               int horizon) {
    if (horizon < 1) throw std::invalid_argument("persistence: horizon must be >= 1");
    if (history.size() < static_cast<std::size_t>(horizon))
        throw std::invalid_argument("persistence: history shorter than horizon");
    const std::size_t start = history.size() - static_cast<std::size_t>(horizon);
    return {history.begin() + static_cast<std::ptrdiff_t>(start), history.end()};
}

std::vector<TemporalGraph> persistence_network(const std::vector<TemporalGraph>& graphs) {
    std::vector<TemporalGraph> out = graphs;
    const Hour shift = static_cast<Hour>(graphs.size());
    for (auto& g : out) g.bin_start += shift;
    return out;
}

namespace {

// Gaussian elimination with partial pivoting; false when near-singular.
bool solve_linear(std::vector<std::vector<double>> a, std::vector<double> b,
                  std::vector<double>& out) {
    const std::size_t n = a.size();
    double scale = 0.0;
    for (const auto& row : a)
        for (double v : row) scale = std::max(scale, std::fabs(v));
    if (scale == 0.0) return false;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
        if (std::fabs(a[pivot][col]) < 1e-10 * scale) return false;
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double m = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= m * a[col][c];
            b[r] -= m * b[col];
        }
    }
    out.assign(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * out[j];
        out[i] = s / a[i][i];
    }
    return true;
}

// Least squares via normal equations on the given regressor rows.
bool least_squares(const std::vector<std::vector<double>>& rows,
                   const std::vector<double>& target, std::vector<double>& coeffs) {
    if (rows.empty()) return false;
    const std::size_t k = rows[0].size();
    if (rows.size() < k) return false;
    std::vector<std::vector<double>> xtx(k, std::vector<double>(k, 0.0));
    std::vector<double> xty(k, 0.0);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t i = 0; i < k; ++i) {
            xty[i] += rows[r][i] * target[r];
            for (std::size_t j = i; j < k; ++j) xtx[i][j] += rows[r][i] * rows[r][j];
        }
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < i; ++j) xtx[i][j] = xtx[j][i];
    return solve_linear(std::move(xtx), std::move(xty), coeffs);
}

std::vector<double> difference(std::span<const double> x) {
    std::vector<double> z(x.size() - 1);
    for (std::size_t i = 1; i < x.size(); ++i) z[i - 1] = x[i] - x[i - 1];
    return z;
}

}  // namespace

ArimaFit fit_arma_cls(std::span<const double> z, int p, int q) {
    ArimaFit fit;
    fit.ar_coeffs.assign(static_cast<std::size_t>(p), 0.0);
    fit.ma_coeffs.assign(static_cast<std::size_t>(q), 0.0);
    const std::size_t n = z.size();
    if (n == 0) {
        fit.constant_series = true;
        return fit;
    }

    const double mean = std::accumulate(z.begin(), z.end(), 0.0) / static_cast<double>(n);
    double var = 0.0;
    for (double v : z) var += (v - mean) * (v - mean);
    if (var / static_cast<double>(n) < 1e-12 || (p == 0 && q == 0)) {
        fit.constant_series = true;
        fit.constant_value = mean;
        fit.intercept = mean;
        fit.residuals.assign(n, 0.0);
        return fit;
    }

    const std::size_t up = static_cast<std::size_t>(p);
    const std::size_t uq = static_cast<std::size_t>(q);

    // AR stage: z_t ~ [1, z_{t-1..t-p}] by ordinary least squares.
    std::vector<double> resid(n, 0.0);
    {
        std::vector<std::vector<double>> rows;
        std::vector<double> target;
        for (std::size_t t = up; t < n; ++t) {
            std::vector<double> r{1.0};
            for (std::size_t i = 1; i <= up; ++i) r.push_back(z[t - i]);
            rows.push_back(std::move(r));
            target.push_back(z[t]);
        }
        std::vector<double> coeffs;
        if (!least_squares(rows, target, coeffs)) {
            fit.singular = true;
            return fit;
        }
        fit.intercept = coeffs[0];
        for (std::size_t i = 0; i < up; ++i) fit.ar_coeffs[i] = coeffs[1 + i];
        for (std::size_t t = up; t < n; ++t) {
            double pred = fit.intercept;
            for (std::size_t i = 1; i <= up; ++i) pred += fit.ar_coeffs[i - 1] * z[t - i];
            resid[t] = z[t] - pred;
        }
    }

    // MA stage: re-regress with lagged residuals, iterated to a fixed point.
    if (q > 0) {
        const std::size_t start = std::max(up, uq);
        for (int iter = 0; iter < 50; ++iter) {
            std::vector<std::vector<double>> rows;
            std::vector<double> target;
            for (std::size_t t = start; t < n; ++t) {
                std::vector<double> r{1.0};
                for (std::size_t i = 1; i <= up; ++i) r.push_back(z[t - i]);
                for (std::size_t j = 1; j <= uq; ++j) r.push_back(resid[t - j]);
                rows.push_back(std::move(r));
                target.push_back(z[t]);
            }
            std::vector<double> coeffs;
            if (!least_squares(rows, target, coeffs)) {
                fit.singular = true;
                return fit;
            }
            double delta = std::fabs(coeffs[0] - fit.intercept);
            fit.intercept = coeffs[0];
            for (std::size_t i = 0; i < up; ++i) {
                delta = std::max(delta, std::fabs(coeffs[1 + i] - fit.ar_coeffs[i]));
                fit.ar_coeffs[i] = coeffs[1 + i];
            }
            for (std::size_t j = 0; j < uq; ++j) {
                delta = std::max(delta, std::fabs(coeffs[1 + up + j] - fit.ma_coeffs[j]));
                fit.ma_coeffs[j] = coeffs[1 + up + j];
            }
            std::vector<double> next(n, 0.0);
            for (std::size_t t = start; t < n; ++t) {
                double pred = fit.intercept;
                for (std::size_t i = 1; i <= up; ++i) pred += fit.ar_coeffs[i - 1] * z[t - i];
                for (std::size_t j = 1; j <= uq; ++j) pred += fit.ma_coeffs[j - 1] * next[t - j];
                next[t] = z[t] - pred;
            }
            resid = std::move(next);
            if (delta < 1e-10) break;
        }
    }
    fit.residuals = std::move(resid);
    return fit;
}

ForecastResult arima_forecast(std::span<const std::int64_t> history, const ArimaOrder& order,
                              int horizon) {
    order.validate();
    if (horizon < 1) throw std::invalid_argument("arima: horizon must be >= 1");
    const std::size_t need =
        static_cast<std::size_t>(std::max(order.p, order.q) + order.d + 1);
    if (history.size() < need)
        throw std::invalid_argument("arima: history too short for the requested order");

    // d-fold differencing, keeping each level for un-differencing later.
    std::vector<std::vector<double>> levels;
    levels.emplace_back(history.begin(), history.end());
    for (int i = 0; i < order.d; ++i) {
        if (levels.back().size() < 2)
            throw std::invalid_argument("arima: history too short to difference");
        levels.push_back(difference(levels.back()));
    }

    const std::vector<double>& z = levels.back();
    const ArimaFit fit = fit_arma_cls(z, order.p, order.q);
    ForecastResult result;
    if (fit.singular) {
        result.values = persistence_forecast(history, horizon);
        result.used_fallback = true;
        return result;
    }

    std::vector<double> zfor;
    if (fit.constant_series) {
        zfor.assign(static_cast<std::size_t>(horizon), fit.constant_value);
    } else {
        std::vector<double> zx(z.begin(), z.end());
        std::vector<double> ex = fit.residuals;  // future shocks are zero
        for (int h = 0; h < horizon; ++h) {
            double pred = fit.intercept;
            for (std::size_t i = 1; i <= fit.ar_coeffs.size(); ++i)
                pred += fit.ar_coeffs[i - 1] * zx[zx.size() - i];
            for (std::size_t j = 1; j <= fit.ma_coeffs.size(); ++j)
                pred += fit.ma_coeffs[j - 1] * ex[ex.size() - j];
            zx.push_back(pred);
            ex.push_back(0.0);
            zfor.push_back(pred);
        }
    }

    // Integrate the forecast back through each difference level.
    std::vector<double> fc = std::move(zfor);
    for (int lev = order.d; lev-- > 0;) {
        double last = levels[static_cast<std::size_t>(lev)].back();
        for (double& v : fc) {
            last += v;
            v = last;
        }
    }

    result.values.reserve(fc.size());
    for (double v : fc)
        result.values.push_back(v <= 0 ? 0 : static_cast<std::int64_t>(std::llround(v)));
    return result;
}

}  // namespace vam
