#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace critprm {

/// Raised when a constant is requested outside its tabulated dimensions.
class NoTabulatedConstant : public std::out_of_range {
 public:
  NoTabulatedConstant(const std::string& name, int d);
};

inline constexpr int kGammaStarMinDim = 2;
inline constexpr int kGammaStarMaxDim = 11;
inline constexpr int kPStarMinDim = 2;
inline constexpr int kPStarMaxDim = 13;

/// Continuum percolation constant gamma*(d) for 2 <= d <= 11. The values are
/// critical ball radii of the Boolean model: two balls of radius r overlap
/// when their centers are within 2r, so the connection-distance threshold of
/// the radius graph is 2 * gamma*(d) * n^(-1/d).
double gamma_star(int d);

/// Site percolation threshold p*(d) on Z^d for 2 <= d <= 13, as tabulated.
double p_star(int d);

/// Large-d approximation 1 / (2 b_d^(1/d)); kept apart from gamma_star so
/// tabulated and approximate values are never mixed up.
double asymptotic_gamma_star(int d);

/// Lebesgue volume of the unit ball in R^d.
double unit_ball_volume(int d);

std::string gamma_star_provenance();
std::string p_star_provenance();

}  // namespace critprm
