#pragma once

#include <vector>

#include "sigeq/meanfield.hpp"
#include "sigeq/response.hpp"

namespace sigeq {

/// u(x, xbar) = (x xbar^-theta)^(1 - alpha) / (1 - alpha).
double utility(const InvestorType& type, double x, double xbar);

/// Value constant for an investor holding `row` in the environment described by ctx:
/// -theta (tau - r) + theta^2 (1 - alpha) (vol^2 + idio) / 2 + the no-signal target at
/// row[0] + sum_z lambda p_s E[J(row[z]) ; signal z].
double m_constant(const TargetContext& ctx, const SignalRow& row);

/// Same constant with every position replaced by its optimum over the admissible interval.
double m_constant_optimal(const TargetContext& ctx, const Population& pop, std::size_t type_index);

double m_mf(const InvestorType& type, const SignalRow& row, const MeanFieldStats& stats,
            const Quadrature& q);

double m_nagent(std::size_t i, const Population& players, const Strategy& strat,
                const Quadrature& q);

/// u(x0 xbar0^-theta) exp(T (1 - alpha) ((1 - theta) r + M)).
double value_mf(const InvestorType& type, double M, double x0, double xbar0, double T);

double certainty_equivalent(double M_alt, double M_ref);

}  // namespace sigeq
