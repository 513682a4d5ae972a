// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "gngs/functionals.hpp"

namespace gngs::detail
{

/// Functional values together with the fields R_j^{a_j/nu_j} u (empty for zero order
/// terms), so the gradient can reuse them.
struct Evaluation
{
  FunctionalReport report;
  std::vector<std::vector<double>> fields;
};

Evaluation evaluate_fields(const ProblemSpec &ps, const GridFunction &u);
std::vector<double> gradient_from(const ProblemSpec &ps, const GridFunction &u, const Evaluation &ev);

}  // namespace gngs::detail
