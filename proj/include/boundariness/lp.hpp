#pragma once

#include <cstddef>
#include <vector>

// Dense two-phase simplex with Bland's anti-cycling rule. Intended for the
// small exact problems of the polytope module (tens of variables).
namespace boundariness::lp {

enum class Status { optimal, infeasible, unbounded };
enum class Sense { minimize, maximize };

const char* to_string(Status s);

/// optimize objective . x  subject to  a_eq x = b_eq,  x_j >= 0 where nonneg[j].
/// An empty nonneg vector means every variable is nonnegative.
struct Problem {
  Sense sense = Sense::minimize;
  std::vector<double> objective;
  std::vector<std::vector<double>> a_eq;
  std::vector<double> b_eq;
  std::vector<bool> nonneg;
};

struct Solution {
  Status status = Status::infeasible;
  double value = 0.0;
  std::vector<double> x;
  double residual = 0.0;  // max |a_eq x - b_eq| at the returned x
  std::size_t iterations = 0;
};

inline constexpr double kPivotTol = 1e-11;

/// Throws InputError on shape mismatch or non-finite coefficients and
/// NumericalError when the iteration cap is hit.
Solution solve(const Problem& problem);

}  // namespace boundariness::lp
