#include "critprm/constants.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace critprm {

namespace {

constexpr std::array<double, 10> kGammaStar = {
    0.5992373341,  // d = 2
    0.4341989179,  // 3
    0.4031827664,  // 4
    0.4007817822,  // 5
    0.4067135508,  // 6
    0.4178609367,  // 7
    0.4317877097,  // 8
    0.447061366,   // 9
    0.462335684,   // 10
    0.4773913785,  // 11
};

constexpr std::array<double, 12> kPStar = {
    0.5,         // d = 2
    0.24881182,  // 3
    0.1601314,   // 4
    0.118172,    // 5
    0.0942019,   // 6
    0.0786752,   // 7
    0.06770839,  // 8
    0.05949601,  // 9
    0.05309258,  // 10
    0.04794969,  // 11
    0.04372386,  // 12
    0.04018762,  // 13
};

}  // namespace

NoTabulatedConstant::NoTabulatedConstant(const std::string& name, int d)
    : std::out_of_range("no tabulated constant " + name + " for d=" + std::to_string(d)) {}

double gamma_star(int d) {
  if (d < kGammaStarMinDim || d > kGammaStarMaxDim) throw NoTabulatedConstant("gamma*", d);
  return kGammaStar[static_cast<std::size_t>(d - kGammaStarMinDim)];
}

double p_star(int d) {
  if (d < kPStarMinDim || d > kPStarMaxDim) throw NoTabulatedConstant("p*", d);
  return kPStar[static_cast<std::size_t>(d - kPStarMinDim)];
}

double unit_ball_volume(int d) {
  if (d < 1) throw std::invalid_argument("dimension must be positive");
  const double half = static_cast<double>(d) / 2.0;
  return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

double asymptotic_gamma_star(int d) { return 1.0 / (2.0 * std::pow(unit_ball_volume(d), 1.0 / d)); }

std::string gamma_star_provenance() {
  return "continuum percolation critical radii (Boolean-model ball radius), tabulated for 2<=d<=11";
}

std::string p_star_provenance() {
  return "lattice percolation thresholds on Z^d, tabulated for 2<=d<=13";
}

}  // namespace critprm
