#pragma once

#include <vector>

namespace sketchlab {

/// Some ẑ ∈ [0,1]^v with |⟨ẑ,s⟩/v − answers[s]| ≤ ε for every s ∈ {0,1}^v
/// (answers indexed by the mask of s, 2^v entries, v ≤ 16). Solved as a
/// linear program that minimizes the largest violation, so the point
/// returned is as deep inside the constraints as possible; accepted when
/// every constraint holds to 1e-9. Throws DecodeFailure otherwise.
std::vector<double> zhat_recover(const std::vector<double>& answers, std::size_t v,
                                 double epsilon);

/// Largest violation of the constraints above by z (0 when feasible).
double zhat_violation(const std::vector<double>& answers, std::size_t v, double epsilon,
                      const std::vector<double>& z);

}  // namespace sketchlab
