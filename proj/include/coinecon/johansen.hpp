#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "coinecon/deterministic.hpp"
#include "coinecon/series_store.hpp"
#include "coinecon/significance.hpp"

namespace coinecon::johansen {

/**
 * @brief Regression blocks of the VECM  dZ_t = Pi* Z1_t + Psi Z2_t + e_t.
 *
 * Z1 stacks Z_{t-1} and any restricted deterministic term; Z2 stacks the k-1
 * lagged differences followed by the unrestricted deterministic terms.
 */
struct Design {
    Eigen::MatrixXd z0;  ///< T_eff x n, dZ_t
    Eigen::MatrixXd z1;  ///< T_eff x n_aug
    Eigen::MatrixXd z2;  ///< T_eff x m
    std::vector<std::string> variables;  ///< n names, panel order
    std::vector<std::string> z1_names;   ///< variables plus "constant"/"trend"
    std::vector<std::string> z2_names;   ///< "LD.x", "L2D.x", ..., "constant", "trend"
    int lag_order = 1;
    DeterministicCase deterministic = DeterministicCase::restricted_constant;
    std::vector<series::Date> dates;     ///< date of each effective row
};

/// Builds the design from a log-level panel.
/// @throws InputError k < 1 or T <= n k + n + 10.
[[nodiscard]] Design build_design(const series::Panel& p, int k, DeterministicCase c);

/// Johansen reduced-rank analysis of one (panel, k, case).
struct EigenAnalysis {
    Eigen::VectorXd eigenvalues;   ///< n values, descending, in [0, 1)
    Eigen::MatrixXd eigenvectors;  ///< n_aug x n_aug, V' S11 V = I, columns follow eigenvalues
    Eigen::MatrixXd s00;
    Eigen::MatrixXd s01;
    Eigen::MatrixXd s11;
    Eigen::MatrixXd r0;            ///< dZ_t purged of Z2
    Eigen::MatrixXd r1;            ///< Z1_t purged of Z2
    Eigen::Index effective_T = 0;
    double max_clamp = 0.0;        ///< largest adjustment made when clamping eigenvalues
    std::vector<std::string> warnings;
    Design design;

    [[nodiscard]] Eigen::Index n() const noexcept { return eigenvalues.size(); }
    [[nodiscard]] DeterministicCase deterministic() const noexcept { return design.deterministic; }
};

/// Eigenvalues are clamped into [0, 1 - kEigenCeilingGap).
inline constexpr double kEigenCeilingGap = 1e-12;

/// Concentrates out short-run terms and solves the generalised eigenproblem
/// |lambda S11 - S10 S00^-1 S01| = 0 by Cholesky reduction of S11.
/// @throws InputError bad k or too few observations; NumericalError rank-deficient
///         regressors or non-positive-definite S00 / S11.
[[nodiscard]] EigenAnalysis concentrate(const series::Panel& p, int k, DeterministicCase c);
[[nodiscard]] EigenAnalysis concentrate(const Design& design);

/// -T sum_{i>r} ln(1 - lambda_i). @throws InputError r outside [0, n).
[[nodiscard]] double trace_statistic(const EigenAnalysis& e, int r);
/// -T ln(1 - lambda_{r+1}). @throws InputError r outside [0, n).
[[nodiscard]] double max_eigen_statistic(const EigenAnalysis& e, int r);

struct DecisionStep {
    int r = 0;
    double trace = 0.0;
    double trace_cv = 0.0;       ///< at the chosen level
    bool trace_rejected = false;
    double max_eigen = 0.0;
    double max_eigen_cv = 0.0;
    bool max_eigen_rejected = false;
};

struct CointRankResult {
    std::vector<double> trace_stats;                         ///< r = 0..n-1
    std::vector<double> max_eigen_stats;                     ///< r = 0..n-1
    std::vector<LevelMap<double>> trace_critical_values;     ///< indexed by r
    std::vector<LevelMap<double>> max_eigen_critical_values;
    int selected_rank = 0;      ///< trace test, sequential from r = 0
    int max_eigen_rank = 0;     ///< what the max-eigenvalue sequence would pick
    DeterministicCase deterministic = DeterministicCase::restricted_constant;
    Significance level = Significance::p05;
    Eigen::Index effective_T = 0;
    std::vector<double> eigenvalues;
    std::vector<DecisionStep> decision_trail;
};

/// Sequential testing of "rank <= r" for r = 0, 1, ...; the trace test decides.
/// @throws InputError when a critical value is missing (n - r beyond the table).
[[nodiscard]] CointRankResult rank_decision(const EigenAnalysis& e, Significance level);

struct PantulaStep {
    int r = 0;
    DeterministicCase deterministic = DeterministicCase::restricted_constant;
    double trace = 0.0;
    double critical_value = 0.0;
    bool rejected = false;
};

struct PantulaResult {
    DeterministicCase deterministic = DeterministicCase::restricted_constant;
    CointRankResult rank;
    std::vector<PantulaStep> trail;
};

/// Joint choice of deterministic case and rank: r outer, cases inner (most
/// restrictive first); the first non-rejected (case, r) wins, otherwise
/// (restricted_trend, n).
[[nodiscard]] PantulaResult pantula_select(const series::Panel& p, int k, Significance level);

}  // namespace coinecon::johansen
