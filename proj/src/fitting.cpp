#include "photolink/fitting.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

namespace photolink::fitting {

void XYSeries::validate(std::size_t min_points) const {
    if (points.size() < min_points) {
        throw FitError("XYSeries: need at least " + std::to_string(min_points) +
                       " points, have " + std::to_string(points.size()));
    }
    for (const DataPoint& p : points) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw FitError("XYSeries: non-finite data point");
        }
        if (p.y_sigma && !(*p.y_sigma > 0.0)) {
            throw FitError("XYSeries: y_sigma must be > 0 where present");
        }
    }
}

namespace {

double weight_of(const DataPoint& p) {
    return p.y_sigma ? 1.0 / (*p.y_sigma * *p.y_sigma) : 1.0;
}

void require_spread_in_x(const XYSeries& data) {
    const auto [lo, hi] = std::minmax_element(
        data.points.begin(), data.points.end(),
        [](const DataPoint& a, const DataPoint& b) { return a.x < b.x; });
    if (lo->x == hi->x) {
        throw FitError("fit: degenerate data, all x values equal");
    }
}

}  // namespace

ScalarFit fit_half_quadratic(const XYSeries& data) {
    data.validate(3);
    require_spread_in_x(data);
    double szz = 0.0;
    double szy = 0.0;
    for (const DataPoint& p : data.points) {
        const double z = 0.5 * p.x * p.x;
        const double w = weight_of(p);
        szz += w * z * z;
        szy += w * z * p.y;
    }
    if (!(szz > 0.0)) {
        throw FitError("fit_half_quadratic: degenerate design (x == 0)");
    }
    ScalarFit fit;
    fit.value = szy / szz;
    double ssr = 0.0;
    for (const DataPoint& p : data.points) {
        const double r = p.y - fit.value * 0.5 * p.x * p.x;
        ssr += weight_of(p) * r * r;
    }
    const double dof = static_cast<double>(data.points.size()) - 1.0;
    fit.sigma = std::sqrt(std::max(0.0, ssr / dof) / szz);
    return fit;
}

QuadraticOffsetFit fit_quadratic_offset(const XYSeries& data) {
    data.validate(4);
    require_spread_in_x(data);
    Eigen::Matrix2d ata = Eigen::Matrix2d::Zero();
    Eigen::Vector2d atb = Eigen::Vector2d::Zero();
    for (const DataPoint& p : data.points) {
        const double w = weight_of(p);
        const Eigen::Vector2d row{p.x * p.x, 1.0};
        ata += w * row * row.transpose();
        atb += w * row * p.y;
    }
    const Eigen::FullPivLU<Eigen::Matrix2d> lu(ata);
    if (!lu.isInvertible()) {
        throw FitError("fit_quadratic_offset: degenerate design matrix");
    }
    const Eigen::Vector2d params = lu.solve(atb);
    double ssr = 0.0;
    for (const DataPoint& p : data.points) {
        const double r = p.y - (params[0] * p.x * p.x + params[1]);
        ssr += weight_of(p) * r * r;
    }
    const double dof = static_cast<double>(data.points.size()) - 2.0;
    const Eigen::Matrix2d cov = (ssr / dof) * lu.inverse();
    QuadraticOffsetFit fit;
    fit.quadratic = {params[0], std::sqrt(std::max(0.0, cov(0, 0)))};
    fit.offset = {params[1], std::sqrt(std::max(0.0, cov(1, 1)))};
    return fit;
}

double resonator_model(double f, double f0, double q_internal,
                       double q_external, double asymmetry, double baseline,
                       double amplitude) {
    const double q_loaded = 1.0 / (1.0 / q_internal + 1.0 / q_external);
    const std::complex<double> numerator =
        (q_loaded / q_external) * std::polar(1.0, asymmetry);
    const std::complex<double> denominator{1.0,
                                           2.0 * q_loaded * (f - f0) / f0};
    return baseline + amplitude * std::norm(1.0 - numerator / denominator);
}

namespace {

// Internal parameterization: (f0, ln Qi, ln Qe, phi, baseline, amplitude).
using Params = Eigen::Matrix<double, 6, 1>;

double model_at(double f, const Params& p) {
    return resonator_model(f, p[0], std::exp(p[1]), std::exp(p[2]), p[3],
                           p[4], p[5]);
}

Eigen::VectorXd residuals(const XYSeries& data, const Params& p) {
    Eigen::VectorXd r(data.points.size());
    for (Eigen::Index i = 0; i < r.size(); ++i) {
        const DataPoint& d = data.points[static_cast<std::size_t>(i)];
        r[i] = std::sqrt(weight_of(d)) * (d.y - model_at(d.x, p));
    }
    return r;
}

Eigen::MatrixXd jacobian(const XYSeries& data, const Params& p,
                         bool free_baseline) {
    Eigen::MatrixXd jac(data.points.size(), 6);
    for (int j = 0; j < 6; ++j) {
        if (j == 4 && !free_baseline) {
            jac.col(j).setZero();
            continue;
        }
        const double scale = (j == 0) ? std::abs(p[0]) : 1.0;
        const double step = std::max(1e-9 * scale, 1e-7 * std::abs(p[j]) + 1e-12);
        Params lo = p;
        Params hi = p;
        lo[j] -= step;
        hi[j] += step;
        jac.col(j) = (residuals(data, hi) - residuals(data, lo)) / (2.0 * step);
    }
    return jac;
}

struct LmOutcome {
    Params params;
    double cost{0.0};
    bool converged{false};
};

LmOutcome levenberg_marquardt(const XYSeries& data, Params p,
                              bool free_baseline) {
    double lambda = 1e-3;
    Eigen::VectorXd r = residuals(data, p);
    double cost = r.squaredNorm();
    bool converged = false;
    for (int iter = 0; iter < 200 && !converged; ++iter) {
        const Eigen::MatrixXd jac = jacobian(data, p, free_baseline);
        Eigen::Matrix<double, 6, 6> jtj = jac.transpose() * jac;
        Params g = -jac.transpose() * r;
        if (!free_baseline) {
            jtj.row(4).setZero();
            jtj.col(4).setZero();
            jtj(4, 4) = 1.0;
            g[4] = 0.0;
        }
        bool stepped = false;
        for (int attempt = 0; attempt < 12 && !stepped; ++attempt) {
            Eigen::Matrix<double, 6, 6> damped = jtj;
            damped.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-12);
            const Params step = damped.ldlt().solve(g);
            const Params candidate = p + step;
            const Eigen::VectorXd cr = residuals(data, candidate);
            const double ccost = cr.squaredNorm();
            if (std::isfinite(ccost) && ccost <= cost) {
                double rel_step = 0.0;
                for (int j = 0; j < 6; ++j) {
                    rel_step = std::max(
                        rel_step, std::abs(step[j]) / (std::abs(p[j]) + 1e-30));
                }
                p = candidate;
                r = cr;
                const double improvement = (cost - ccost) / (cost + 1e-300);
                cost = ccost;
                lambda = std::max(lambda / 3.0, 1e-12);
                stepped = true;
                if (rel_step < 1e-10 || improvement < 1e-14) {
                    converged = true;
                }
            } else {
                lambda *= 10.0;
            }
        }
        if (!stepped) {
            converged = true;  // damping exhausted, at a (local) minimum
        }
    }
    return {p, cost, converged};
}

}  // namespace

ResonatorFit fit_resonator(const XYSeries& data,
                           const std::optional<ResonatorFit>& initial_guess) {
    data.validate(6);
    require_spread_in_x(data);

    std::vector<DataPoint> sorted = data.points;
    std::sort(sorted.begin(), sorted.end(),
              [](const DataPoint& a, const DataPoint& b) { return a.x < b.x; });
    XYSeries series{sorted};

    // With magnitude-only data the additive baseline is exactly degenerate
    // with (amplitude, Q_e, phi): the line shape has only three independent
    // coefficients beyond (f0, Q_L). The baseline is therefore pinned to zero
    // unless the caller supplies an initial guess, which frees all six
    // parameters and keeps the solution near the supplied starting point.
    const bool free_baseline = initial_guess.has_value();
    std::vector<Params> starts;
    if (initial_guess) {
        Params p;
        p << initial_guess->f0, std::log(initial_guess->q_internal),
            std::log(initial_guess->q_external), initial_guess->asymmetry,
            initial_guess->baseline, initial_guess->amplitude;
        starts.push_back(p);
    } else {
        const std::size_t n = sorted.size();
        const std::size_t edge = std::max<std::size_t>(1, n / 10);
        double level = 0.0;
        for (std::size_t i = 0; i < edge; ++i) {
            level += sorted[i].y + sorted[n - 1 - i].y;
        }
        level /= static_cast<double>(2 * edge);
        const auto dip = std::min_element(
            sorted.begin(), sorted.end(),
            [](const DataPoint& a, const DataPoint& b) { return a.y < b.y; });
        const double depth = level - dip->y;
        if (!(depth > 0.02 * std::max(std::abs(level), 1e-300))) {
            throw FitError("fit_resonator: no resonance dip found (flat data)");
        }
        const double f0_guess = dip->x;
        // Half-depth width -> loaded Q.
        const double half_level = level - 0.5 * depth;
        double f_left = sorted.front().x;
        double f_right = sorted.back().x;
        for (auto it = dip; it != sorted.begin(); --it) {
            if (it->y >= half_level) {
                f_left = it->x;
                break;
            }
        }
        for (auto it = dip; it != sorted.end(); ++it) {
            if (it->y >= half_level) {
                f_right = it->x;
                break;
            }
        }
        double width = f_right - f_left;
        if (!(width > 0.0)) {
            width = (sorted.back().x - sorted.front().x) / 4.0;
        }
        const double q_loaded_guess = f0_guess / width;
        for (const double coupling : {0.95, 0.7, 0.4}) {
            // coupling = Q_L/Q_e; zero baseline puts the plateau at amplitude.
            Params p;
            p << f0_guess, std::log(q_loaded_guess / (1.0 - coupling)),
                std::log(q_loaded_guess / coupling), 0.0, 0.0, level;
            starts.push_back(p);
        }
    }

    LmOutcome best;
    best.cost = std::numeric_limits<double>::infinity();
    for (const Params& start : starts) {
        const LmOutcome outcome =
            levenberg_marquardt(series, start, free_baseline);
        if (outcome.cost < best.cost) {
            best = outcome;
        }
    }
    if (!std::isfinite(best.cost)) {
        throw FitError("fit_resonator: did not converge; best-so-far cost "
                       "non-finite");
    }
    if (!best.converged) {
        std::ostringstream msg;
        msg << "fit_resonator: no convergence after 200 iterations; "
            << "best-so-far f0=" << best.params[0]
            << " Qi=" << std::exp(best.params[1])
            << " Qe=" << std::exp(best.params[2]) << " cost=" << best.cost;
        throw FitError(msg.str());
    }

    ResonatorFit fit;
    fit.f0 = best.params[0];
    fit.q_internal = std::exp(best.params[1]);
    fit.q_external = std::exp(best.params[2]);
    fit.asymmetry = best.params[3];
    fit.baseline = best.params[4];
    fit.amplitude = best.params[5];

    const Eigen::VectorXd r = residuals(series, best.params);
    fit.residual_rms = std::sqrt(r.squaredNorm() / static_cast<double>(r.size()));
    const double n_free = free_baseline ? 6.0 : 5.0;
    const double dof =
        std::max(1.0, static_cast<double>(r.size()) - n_free);
    const Eigen::MatrixXd jac = jacobian(series, best.params, free_baseline);
    Eigen::Matrix<double, 6, 6> jtj = jac.transpose() * jac;
    if (!free_baseline) {
        jtj(4, 4) = 1e300;  // pinned parameter: zero variance
    }
    jtj.diagonal() += Eigen::Matrix<double, 6, 1>::Constant(1e-300);
    const Eigen::Matrix<double, 6, 6> cov_internal =
        (r.squaredNorm() / dof) *
        jtj.ldlt().solve(Eigen::Matrix<double, 6, 6>::Identity());
    // Map ln Q covariances back to Q.
    Eigen::Matrix<double, 6, 1> scale;
    scale << 1.0, fit.q_internal, fit.q_external, 1.0, 1.0, 1.0;
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) {
            fit.covariance[static_cast<std::size_t>(i)]
                          [static_cast<std::size_t>(j)] =
                scale[i] * scale[j] * cov_internal(i, j);
        }
    }
    return fit;
}

DetectorPower detector_power(double voltage, const DetectorCalibration& cal) {
    if (voltage < 0.0) {
        throw std::domain_error("detector_power: voltage must be >= 0");
    }
    if (!(cal.sensitivity > 0.0)) {
        throw std::domain_error("detector_power: sensitivity must be > 0");
    }
    DetectorPower out;
    out.power = voltage / cal.sensitivity;
    out.power_sigma =
        voltage * cal.sensitivity_sigma / (cal.sensitivity * cal.sensitivity);
    out.saturated = out.power > cal.square_law_max_power;
    return out;
}

double symmetric_insertion_loss(double total_loss_db, bool* suspicious) {
    if (suspicious != nullptr) {
        *suspicious = total_loss_db > 0.0;
    }
    return total_loss_db / 2.0;
}

XYSeries load_xy_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw FitError("load_xy_csv: cannot open " + path);
    }
    XYSeries series;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        if (header) {
            header = false;
            continue;
        }
        std::istringstream row(line);
        std::string cell;
        std::vector<double> values;
        while (std::getline(row, cell, ',')) {
            values.push_back(std::stod(cell));
        }
        if (values.size() != 2 && values.size() != 3) {
            throw FitError("load_xy_csv: expected 2 or 3 columns in '" + line +
                           "'");
        }
        DataPoint p{values[0], values[1], {}};
        if (values.size() == 3) {
            p.y_sigma = values[2];
        }
        series.points.push_back(p);
    }
    return series;
}

}  // namespace photolink::fitting
