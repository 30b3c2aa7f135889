#pragma once

#include <Eigen/Dense>

#include <map>
#include <string>
#include <vector>

#include "coinecon/vecm.hpp"

namespace coinecon::diagnostics {

struct LmEntry {
    int lag = 1;
    double statistic = 0.0;
    int df = 0;
    double p_value = 1.0;
};

struct JarqueBeraEntry {
    std::string equation;
    double skewness = 0.0;
    double kurtosis = 0.0;
    double statistic = 0.0;
    int df = 2;
    double p_value = 1.0;
};

struct StabilityResult {
    std::vector<double> moduli;    ///< companion eigenvalue moduli, descending
    int unit_moduli_expected = 0;  ///< n - r
    int unit_moduli_found = 0;
    bool stable = false;
};

/// Width of the band around 1 that counts as a structural unit root.
inline constexpr double kUnitModulusTolerance = 1e-6;

struct DiagnosticReport {
    std::vector<LmEntry> lm;
    std::vector<JarqueBeraEntry> jarque_bera;
    StabilityResult stability;
    std::map<std::string, bool> verdicts;  ///< "lm", "jarque_bera", "stability" -> pass at 5%
};

/// Artifact default when no max lag is given.
inline constexpr int kDefaultLmLags = 4;

/// LM statistic T (n - tr(Sigma_u^-1 Sigma_e)) for h = 1..max_lag, where Sigma_e
/// comes from regressing the residuals on `regressors` plus their own lag h
/// (pre-sample values set to zero). Chi-square with n^2 degrees of freedom.
/// @throws InputError T <= n max_lag + 10; NumericalError singular auxiliary regression.
[[nodiscard]] std::vector<LmEntry> lm_autocorrelation(const Eigen::MatrixXd& residuals,
                                                      const Eigen::MatrixXd& regressors,
                                                      int max_lag);

/// Uses the fit's second-stage regressors [Z1 beta, Z2].
[[nodiscard]] std::vector<LmEntry> lm_autocorrelation(const vecm::VecmFit& fit, int max_lag);

/// JB = T/6 (S^2 + (K - 3)^2 / 4) on one column; p from chi-square(2).
/// @throws InputError fewer than 20 observations; NumericalError zero variance.
[[nodiscard]] JarqueBeraEntry jarque_bera(const Eigen::VectorXd& x, const std::string& name = {});

/// Per-equation JB on the fit's residuals.
[[nodiscard]] std::vector<JarqueBeraEntry> jarque_bera(const vecm::VecmFit& fit);

/// Level-VAR coefficient matrices A_1..A_k implied by the VECM.
[[nodiscard]] std::vector<Eigen::MatrixXd> level_var_coefficients(const vecm::VecmFit& fit);

/// Moduli of the companion-matrix eigenvalues of the VAR with coefficients A_1..A_k, descending.
[[nodiscard]] std::vector<double> companion_moduli(const std::vector<Eigen::MatrixXd>& a);

/// Passes iff exactly `unit_expected` moduli are within 1 +/- kUnitModulusTolerance
/// and every other modulus is below 1.
[[nodiscard]] StabilityResult stability_verdict(std::vector<double> moduli, int unit_expected);

[[nodiscard]] StabilityResult stability(const vecm::VecmFit& fit);

[[nodiscard]] DiagnosticReport run_diagnostics(const vecm::VecmFit& fit, int max_lag = kDefaultLmLags);

}  // namespace coinecon::diagnostics
