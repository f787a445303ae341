#pragma once

// Ensemble observables on standardized spectra: pooled spectral density,
// local density of states (LDOS), survival probability, and the q-Hermite
// theory curves they are compared against.

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "qee/eigensolver.hpp"
#include "qee/qfunc.hpp"

namespace qee {

/// Uniform bins on [lower, upper].
struct Binning {
  double lower = -3.0;
  double upper = 3.0;
  int bins = 50;

  void validate() const;
  double width() const noexcept { return (upper - lower) / bins; }
  std::vector<double> edges() const;
  std::vector<double> centers() const;
  /// Bin index of x, or -1 outside [lower, upper).
  int locate(double x) const noexcept;
};

/// Unit-area ensemble histogram. std_error is the standard error of the
/// ensemble mean per bin, estimated from member-to-member scatter.
struct Histogram {
  std::vector<double> edges;
  std::vector<double> density;
  std::vector<double> std_error;
  std::size_t members = 0;
  std::string axis_label = "E";

  std::vector<double> centers() const;
  double area() const;
};

/// Sampled function with metadata.
struct Curve {
  std::vector<double> x;
  std::vector<double> y;
  std::string x_label = "x";
  std::string y_label = "y";
  double q = 0.0;
  std::string kind;
};

/// Weighted contributions of one member to a histogram.
struct MemberBins {
  std::vector<double> weights;  ///< per bin, inside the binning range
  double total = 0.0;           ///< sum of weights inside the range
};

MemberBins bin_values(std::span<const double> values, std::span<const double> weights, const Binning& binning);

/// Pools members (in the given order) into a unit-area histogram.
Histogram merge_members(std::span<const MemberBins> members, const Binning& binning, std::string axis_label);

/// Pooled histogram of standardized eigenvalues.
Histogram density_histogram(std::span<const SpectralResult> standardized, const Binning& binning = {});

/// Energy window e_center +- half_width on the standardized basis energies.
struct WindowSpec {
  double center = 0.0;
  double half_width = 0.2;

  void validate() const;
  bool contains(double e) const noexcept { return std::abs(e - center) <= half_width; }
};

/// Weighted moments of one member's LDOS (sum of |C|^2 over window states).
struct LdosMoments {
  double weight = 0.0;
  double first = 0.0;
  double second = 0.0;
  std::size_t states = 0;

  LdosMoments& operator+=(const LdosMoments& o);
  double centroid() const { return first / weight; }
  double width() const;
};

struct MemberLdos {
  MemberBins bins;
  LdosMoments moments;
};

/// LDOS contribution of one standardized member; throws EmptyWindowError
/// (naming member_index) when no basis energy lies in the window.
MemberLdos member_ldos(const SpectralResult& standardized, const WindowSpec& window, const Binning& binning,
                       std::size_t member_index);

Histogram ldos_histogram(std::span<const SpectralResult> standardized, const WindowSpec& window,
                         const Binning& binning = {});

/// Sums of F_b(t) over the member's basis states inside the window.
struct MemberSurvival {
  std::vector<double> sum;
  std::size_t states = 0;
};

MemberSurvival member_survival(const SpectralResult& standardized, std::span<const double> times,
                               const WindowSpec& window);

/// Average of per-state F(t) over all qualifying states of all members.
Curve merge_survival(std::span<const MemberSurvival> members, std::span<const double> times);

/// F(t) = |sum_E |C^E|^2 exp(-iEt)|^2 averaged over basis states with
/// |e_b| <= delta1 in every member. Throws EmptyWindowError when none qualify.
Curve survival_mc(std::span<const SpectralResult> standardized, std::span<const double> times, double delta1);

/// |int v(x|q) exp(-ixt) dx|^2 by quadrature on the standardized axis.
Curve survival_theory(QValue q, std::span<const double> times, const WeightSettings& settings = {});

/// rho(E) = v((E - E_c)/sigma | q) / sigma.
Curve theory_density(std::span<const double> grid, QValue q, double centroid, double width,
                     const WeightSettings& settings = {});

/// Probability mass of rho in each bin (16-point Gauss-Legendre per bin).
std::vector<double> theory_bin_mass(const Binning& binning, QValue q, double centroid, double width,
                                    const WeightSettings& settings = {});

/// Reduced chi^2 between a histogram and the theory: mean over bins of
/// ((h_i - t_i) / se_i)^2 with t_i the bin-averaged theory density, renormalized
/// to the histogram range. Bins where neither data nor theory carries weight
/// are skipped.
double chi_square_per_bin(const Histogram& histogram, std::span<const double> theory_mass);

/// Reduced central moment m_p / m_2^(p/2) of the pooled eigenvalues.
double moments_of_spectrum(std::span<const SpectralResult> standardized, int order);

/// Uniform grid of `steps` intervals on [start, stop].
std::vector<double> uniform_grid(double start, double stop, int steps);

}  // namespace qee
