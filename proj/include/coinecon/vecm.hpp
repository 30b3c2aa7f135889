#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "coinecon/deterministic.hpp"
#include "coinecon/johansen.hpp"
#include "coinecon/series_store.hpp"

namespace coinecon::vecm {

/**
 * @brief Estimated VECM  dZ_t = alpha beta' Z1_t + sum_i Gamma_i dZ_{t-i} + Psi D_t + e_t.
 *
 * `beta` has one row per entry of Z1 (variables, then any restricted
 * deterministic term). After estimate_vecm the columns are normalised so the
 * first variable carries coefficient 1 in every relation.
 */
struct VecmFit {
    Eigen::MatrixXd alpha;                 ///< n x r
    Eigen::MatrixXd beta;                  ///< n_aug x r
    std::vector<Eigen::MatrixXd> gamma;    ///< k-1 matrices, n x n
    Eigen::MatrixXd unrestricted_det;      ///< n x d (constant, trend columns)
    Eigen::MatrixXd residuals;             ///< T_eff x n
    Eigen::MatrixXd fitted;                ///< T_eff x n
    Eigen::MatrixXd residual_covariance;   ///< n x n, ML (divided by T_eff)
    double log_likelihood = 0.0;
    int rank = 0;
    int lag_order = 1;
    DeterministicCase deterministic = DeterministicCase::restricted_constant;
    std::string normalized_on;             ///< empty when beta is raw
    Eigen::VectorXd eigenvalues;           ///< from the Johansen analysis
    Eigen::MatrixXd s11;                   ///< moment matrix of Z1 purged of Z2
    Eigen::MatrixXd s00;
    johansen::Design design;

    [[nodiscard]] Eigen::Index n() const noexcept { return design.z0.cols(); }
    [[nodiscard]] Eigen::Index effective_T() const noexcept { return design.z0.rows(); }
    [[nodiscard]] const std::vector<std::string>& variables() const noexcept {
        return design.variables;
    }
    /// alpha beta' over all Z1 rows (n x n_aug).
    [[nodiscard]] Eigen::MatrixXd pi_augmented() const;
    /// alpha beta_vars' (n x n), the level-feedback matrix.
    [[nodiscard]] Eigen::MatrixXd pi() const;
};

/// VECM at cointegrating rank r, 1 <= r <= n-1.
/// @throws InputError rank out of range; NumericalError singular beta' S11 beta.
[[nodiscard]] VecmFit estimate_vecm(const series::Panel& p, int k, int rank, DeterministicCase c);

/// Same, reusing a finished Johansen analysis; accepts any rank in [0, n].
[[nodiscard]] VecmFit fit_at_rank(const johansen::EigenAnalysis& e, int rank);

enum class VarBoundary { rank_zero, full_rank };

/// rank_zero: VAR in differences (alpha, beta empty). full_rank: unrestricted
/// levels VAR in error-correction form.
[[nodiscard]] VecmFit reduce_to_var(const series::Panel& p, int k, VarBoundary boundary,
                                    DeterministicCase c = DeterministicCase::unrestricted_constant);

/// Rescales every beta column so the coefficient on `variable` is 1 and alpha
/// inversely, leaving alpha beta' unchanged.
/// @throws InputError unknown variable; NumericalError zero pivot.
[[nodiscard]] VecmFit normalize_long_run(const VecmFit& fit, const std::string& variable);

/// -(T/2)(n ln 2pi + n + ln det S00 + sum_{i<=r} ln(1 - lambda_i)).
[[nodiscard]] double eigenvalue_log_likelihood(const VecmFit& fit);

enum class Stars { none, one, two, three };

[[nodiscard]] std::string to_string(Stars stars);

/// |t| >= 2.576 -> ***, >= 1.960 -> **, >= 1.645 -> *.
[[nodiscard]] Stars stars_for(double t_stat) noexcept;

enum class Display { shown, dash };

struct CoefficientCell {
    double value = 0.0;
    double std_error = 0.0;
    double t_stat = 0.0;
    Stars stars = Stars::none;
    Display display = Display::dash;
};

[[nodiscard]] CoefficientCell make_cell(double value, double std_error);

struct NamedCell {
    std::string regressor;
    CoefficientCell cell;
};

/// Coefficient tables with inference for one fit.
struct EffectTables {
    std::vector<std::string> variables;                 ///< equation order
    std::vector<std::vector<NamedCell>> short_run;      ///< per equation: LD.x ..., constant, trend
    std::vector<std::vector<NamedCell>> adjustment;     ///< per equation: ce1..cer (alpha)
    std::vector<NamedCell> long_run;                    ///< relation 1, effects on the pivot variable
    std::optional<CoefficientCell> long_run_constant;
    std::string normalized_on;
    int rank = 0;
    int lag_order = 1;
    DeterministicCase deterministic = DeterministicCase::restricted_constant;

    [[nodiscard]] const std::vector<NamedCell>& short_run_for(const std::string& equation) const;
};

/// Short-run inference from the OLS covariance of dZ on [Z1 beta, Z2]; long-run
/// standard errors from the Johansen mixed-normal approximation
/// Var(beta_1) ~ (I - beta_1 e')(R1'R1)^-1 (I - e beta_1') [(alpha' Sigma^-1 alpha)^-1]_11.
/// @throws NumericalError non-invertible second-stage moments or singular residual covariance.
[[nodiscard]] EffectTables inference(const VecmFit& fit);

}  // namespace coinecon::vecm
