#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace riskmdp {

/// Argument outside its documented domain (quantile level, deviation order, ...).
class DomainError : public std::invalid_argument {
  public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Risk-aversion level lies outside the admissible interval of the chosen measure.
class RejectedParameterError : public DomainError {
  public:
    RejectedParameterError(const std::string& what, double lo, double hi)
        : DomainError(what), admissible_lo(lo), admissible_hi(hi) {}
    double admissible_lo;
    double admissible_hi;
};

/// Structural problem with a model (bad kernel row, theta outside the box, ...).
class ModelError : public std::runtime_error {
  public:
    explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

/// Loss of numeric meaning (overflow in log-sum-exp, non-finite bracket values).
class NumericError : public std::runtime_error {
  public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// Value iteration hit its iteration cap; carries the residual trajectory.
class SolverError : public std::runtime_error {
  public:
    SolverError(const std::string& what, std::vector<double> residual_trajectory)
        : std::runtime_error(what), residuals(std::move(residual_trajectory)) {}
    std::vector<double> residuals;
};

/// Requested an explicit risk envelope for a kind that has none here.
class UnsupportedEnvelopeError : public std::runtime_error {
  public:
    explicit UnsupportedEnvelopeError(const std::string& what) : std::runtime_error(what) {}
};

/// Lipschitz budget violates (1+L_rho)(1+L_D) < 1/gamma_bar.
class InfeasibleBudgetError : public std::runtime_error {
  public:
    explicit InfeasibleBudgetError(const std::string& what) : std::runtime_error(what) {}
};

/// Brute-force policy enumeration would exceed its guard limits.
class OracleScaleError : public std::runtime_error {
  public:
    explicit OracleScaleError(const std::string& what) : std::runtime_error(what) {}
};

/// File or schema problem while reading/writing models and reports.
class IoError : public std::runtime_error {
  public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace riskmdp
