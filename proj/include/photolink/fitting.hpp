#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace photolink::fitting {

struct DataPoint {
    double x{0.0};
    double y{0.0};
    std::optional<double> y_sigma{};
};

struct XYSeries {
    std::vector<DataPoint> points;

    void validate(std::size_t min_points) const;
};

struct FitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ScalarFit {
    double value{0.0};
    double sigma{0.0};
};

struct QuadraticOffsetFit {
    ScalarFit quadratic;  // a in y = a*x^2 + b
    ScalarFit offset;     // b
};

struct ResonatorFit {
    double f0{0.0};           // Hz
    double q_internal{0.0};
    double q_external{0.0};
    double asymmetry{0.0};    // rad
    double baseline{0.0};
    double amplitude{0.0};
    std::array<std::array<double, 6>, 6> covariance{};
    double residual_rms{0.0};

    double q_loaded() const {
        return 1.0 / (1.0 / q_internal + 1.0 / q_external);
    }
};

struct DetectorCalibration {
    double sensitivity{4.649};          // V/W
    double sensitivity_sigma{0.0};      // V/W
    double frequency{80e9};             // Hz
    double temperature{5.0};            // K
    double square_law_max_power{1e-5};  // W (default -20 dBm)
};

struct DetectorPower {
    double power{0.0};        // W
    double power_sigma{0.0};  // W
    bool saturated{false};
};

/// Least squares of y = 1/2 * a * x^2.
ScalarFit fit_half_quadratic(const XYSeries& data);

/// Least squares of y = a * x^2 + b.
QuadraticOffsetFit fit_quadratic_offset(const XYSeries& data);

/// Asymmetric-Lorentzian PSD model
///   y(f) = baseline + amplitude * |1 - (Q_L/Q_e) e^{i phi} /
///                                      (1 + 2i Q_L (f - f0)/f0)|^2
/// fitted by damped least squares.
ResonatorFit fit_resonator(const XYSeries& data,
                           const std::optional<ResonatorFit>& initial_guess = {});

double resonator_model(double f, double f0, double q_internal,
                       double q_external, double asymmetry, double baseline,
                       double amplitude);

DetectorPower detector_power(double voltage, const DetectorCalibration& cal);

double symmetric_insertion_loss(double total_loss_db,
                                bool* suspicious = nullptr);

/// CSV ingestion: one header line, then x,y[,y_sigma] rows.
XYSeries load_xy_csv(const std::string& path);

}  // namespace photolink::fitting
