#include "qee/observables.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include "qee/error.hpp"

namespace qee {

void Binning::validate() const {
  if (bins < 1) throw DomainError("binning: need at least one bin");
  if (!(upper > lower)) throw DomainError("binning: upper edge must exceed lower edge");
}

std::vector<double> Binning::edges() const {
  std::vector<double> e(bins + 1);
  for (int i = 0; i <= bins; ++i) e[i] = lower + i * width();
  e.back() = upper;
  return e;
}

std::vector<double> Binning::centers() const {
  std::vector<double> c(bins);
  for (int i = 0; i < bins; ++i) c[i] = lower + (i + 0.5) * width();
  return c;
}

int Binning::locate(double x) const noexcept {
  if (!(x >= lower) || !(x < upper)) return -1;
  const int i = static_cast<int>((x - lower) / width());
  return std::min(i, bins - 1);
}

std::vector<double> Histogram::centers() const {
  std::vector<double> c(density.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = 0.5 * (edges[i] + edges[i + 1]);
  return c;
}

double Histogram::area() const {
  double a = 0.0;
  for (std::size_t i = 0; i < density.size(); ++i) a += density[i] * (edges[i + 1] - edges[i]);
  return a;
}

MemberBins bin_values(std::span<const double> values, std::span<const double> weights, const Binning& binning) {
  binning.validate();
  if (!weights.empty() && weights.size() != values.size()) throw DomainError("bin_values: weights/values size mismatch");
  MemberBins mb;
  mb.weights.assign(binning.bins, 0.0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const int b = binning.locate(values[i]);
    if (b < 0) continue;
    const double w = weights.empty() ? 1.0 : weights[i];
    mb.weights[b] += w;
    mb.total += w;
  }
  return mb;
}

Histogram merge_members(std::span<const MemberBins> members, const Binning& binning, std::string axis_label) {
  binning.validate();
  if (members.empty()) throw DomainError("histogram: need at least one member");
  const double w = binning.width();
  const auto nb = static_cast<std::size_t>(binning.bins);

  Histogram h;
  h.edges = binning.edges();
  h.members = members.size();
  h.axis_label = std::move(axis_label);
  h.density.assign(nb, 0.0);
  h.std_error.assign(nb, 0.0);

  double total = 0.0;
  for (const auto& m : members) {
    if (m.weights.size() != nb) throw DomainError("histogram: member bin count mismatch");
    total += m.total;
    for (std::size_t i = 0; i < nb; ++i) h.density[i] += m.weights[i];
  }
  if (!(total > 0.0)) throw NumericalError("histogram: no weight inside the binning range");
  for (auto& d : h.density) d /= total * w;

  if (members.size() > 1) {
    const double n = static_cast<double>(members.size());
    std::vector<double> mean(nb, 0.0), sq(nb, 0.0);
    for (const auto& m : members) {
      if (!(m.total > 0.0)) continue;
      for (std::size_t i = 0; i < nb; ++i) {
        const double d = m.weights[i] / (m.total * w);
        mean[i] += d;
        sq[i] += d * d;
      }
    }
    for (std::size_t i = 0; i < nb; ++i) {
      mean[i] /= n;
      const double var = std::max(0.0, (sq[i] - n * mean[i] * mean[i]) / (n - 1.0));
      h.std_error[i] = std::sqrt(var / n);
    }
  }
  return h;
}

Histogram density_histogram(std::span<const SpectralResult> standardized, const Binning& binning) {
  std::vector<MemberBins> members;
  members.reserve(standardized.size());
  for (const auto& r : standardized)
    members.push_back(bin_values({r.energies.data(), static_cast<std::size_t>(r.energies.size())}, {}, binning));
  return merge_members(members, binning, "E");
}

void WindowSpec::validate() const {
  if (!(half_width > 0.0)) throw DomainError("energy window half-width must be positive");
}

LdosMoments& LdosMoments::operator+=(const LdosMoments& o) {
  weight += o.weight;
  first += o.first;
  second += o.second;
  states += o.states;
  return *this;
}

double LdosMoments::width() const {
  const double c = centroid();
  return std::sqrt(std::max(0.0, second / weight - c * c));
}

MemberLdos member_ldos(const SpectralResult& standardized, const WindowSpec& window, const Binning& binning,
                       std::size_t member_index) {
  window.validate();
  if (!standardized.has_strengths()) throw DomainError("ldos: eigenvectors are required");
  const auto d = standardized.energies.size();
  Eigen::VectorXd weights = Eigen::VectorXd::Zero(d);
  MemberLdos out;
  for (Eigen::Index b = 0; b < standardized.basis_energies.size(); ++b) {
    if (!window.contains(standardized.basis_energies[b])) continue;
    weights += standardized.strengths.row(b).transpose();
    ++out.moments.states;
  }
  if (out.moments.states == 0)
    throw EmptyWindowError("ldos: member " + std::to_string(member_index) + " has no basis state in the window " +
                           std::to_string(window.center) + " +- " + std::to_string(window.half_width));
  out.bins = bin_values({standardized.energies.data(), static_cast<std::size_t>(d)},
                        {weights.data(), static_cast<std::size_t>(d)}, binning);
  out.moments.weight = weights.sum();
  out.moments.first = weights.dot(standardized.energies);
  out.moments.second = weights.dot(standardized.energies.cwiseAbs2());
  return out;
}

Histogram ldos_histogram(std::span<const SpectralResult> standardized, const WindowSpec& window,
                         const Binning& binning) {
  std::vector<MemberBins> members;
  members.reserve(standardized.size());
  for (std::size_t i = 0; i < standardized.size(); ++i)
    members.push_back(member_ldos(standardized[i], window, binning, i).bins);
  return merge_members(members, binning, "E");
}

MemberSurvival member_survival(const SpectralResult& standardized, std::span<const double> times,
                               const WindowSpec& window) {
  window.validate();
  if (!standardized.has_strengths()) throw DomainError("survival: eigenvectors are required");
  for (const double t : times)
    if (!(t >= 0.0)) throw DomainError("survival: times must be >= 0");

  std::vector<Eigen::Index> states;
  for (Eigen::Index b = 0; b < standardized.basis_energies.size(); ++b)
    if (window.contains(standardized.basis_energies[b])) states.push_back(b);

  MemberSurvival out;
  out.sum.assign(times.size(), 0.0);
  out.states = states.size();
  if (states.empty()) return out;

  const auto d = static_cast<std::size_t>(standardized.energies.size());
  const std::size_t nt = times.size();
  // phase[j * d + e] = exp(-i E_e t_j). Sums run in ascending e for every t,
  // so the t = 0 amplitude reproduces the completeness sum bit for bit.
  std::vector<std::complex<double>> phase(nt * d);
  for (std::size_t j = 0; j < nt; ++j)
    for (std::size_t e = 0; e < d; ++e) phase[j * d + e] = std::polar(1.0, -standardized.energies[e] * times[j]);
  std::vector<double> w(d);
  for (const auto b : states) {
    double norm = 0.0;
    for (std::size_t e = 0; e < d; ++e) {
      w[e] = standardized.strengths(b, static_cast<Eigen::Index>(e));
      norm += w[e];
    }
    const double norm2 = norm * norm;
    for (std::size_t j = 0; j < nt; ++j) {
      const std::complex<double>* p = phase.data() + j * d;
      double re = 0.0, im = 0.0;
      for (std::size_t e = 0; e < d; ++e) {
        re += w[e] * p[e].real();
        im += w[e] * p[e].imag();
      }
      out.sum[j] += (re * re + im * im) / norm2;
    }
  }
  return out;
}

Curve merge_survival(std::span<const MemberSurvival> members, std::span<const double> times) {
  Curve c;
  c.x.assign(times.begin(), times.end());
  c.y.assign(times.size(), 0.0);
  c.x_label = "t";
  c.y_label = "F";
  std::size_t states = 0;
  for (const auto& m : members) {
    if (m.sum.size() != times.size()) throw DomainError("survival: member grid mismatch");
    states += m.states;
    for (std::size_t j = 0; j < times.size(); ++j) c.y[j] += m.sum[j];
  }
  if (states == 0)
    throw EmptyWindowError("survival: no basis state qualifies in any member; increase the window half-width delta1");
  for (auto& y : c.y) y /= static_cast<double>(states);
  return c;
}

Curve survival_mc(std::span<const SpectralResult> standardized, std::span<const double> times, double delta1) {
  const WindowSpec window{0.0, delta1};
  std::vector<MemberSurvival> members;
  members.reserve(standardized.size());
  for (const auto& r : standardized) members.push_back(member_survival(r, times, window));
  return merge_survival(members, times);
}

Curve survival_theory(QValue q, std::span<const double> times, const WeightSettings& settings) {
  const auto rule = weighted_rule(q, settings);
  const double mass = std::accumulate(rule.weights.begin(), rule.weights.end(), 0.0);
  Curve c;
  c.x.assign(times.begin(), times.end());
  c.x_label = "t";
  c.y_label = "F";
  c.q = q.value();
  c.y.reserve(times.size());
  for (const double t : times) {
    if (!(t >= 0.0)) throw DomainError("survival_theory: times must be >= 0");
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      re += rule.weights[i] * std::cos(rule.nodes[i] * t);
      im -= rule.weights[i] * std::sin(rule.nodes[i] * t);
    }
    c.y.push_back((re * re + im * im) / (mass * mass));
  }
  return c;
}

Curve theory_density(std::span<const double> grid, QValue q, double centroid, double width,
                     const WeightSettings& settings) {
  if (!(width > 0.0)) throw DomainError("theory_density: width must be positive");
  Curve c;
  c.x.assign(grid.begin(), grid.end());
  c.x_label = "E";
  c.y_label = "density";
  c.q = q.value();
  c.y.reserve(grid.size());
  for (const double e : grid) c.y.push_back(weight_pdf((e - centroid) / width, q, settings) / width);
  return c;
}

std::vector<double> theory_bin_mass(const Binning& binning, QValue q, double centroid, double width,
                                    const WeightSettings& settings) {
  binning.validate();
  if (!(width > 0.0)) throw DomainError("theory_bin_mass: width must be positive");
  static const GaussLegendreRule rule = gauss_legendre(16);
  const auto edges = binning.edges();
  std::vector<double> mass(binning.bins);
  for (int i = 0; i < binning.bins; ++i) {
    const auto panel = composite_rule(rule, edges[i], edges[i + 1], 1);
    mass[i] = integrate(panel, [&](double e) { return weight_pdf((e - centroid) / width, q, settings) / width; });
  }
  return mass;
}

double chi_square_per_bin(const Histogram& histogram, std::span<const double> theory_mass) {
  const std::size_t nb = histogram.density.size();
  if (theory_mass.size() != nb) throw DomainError("chi_square: theory/histogram bin count mismatch");
  if (histogram.members < 2) throw DomainError("chi_square: need at least two members for error estimates");
  const double in_range = std::accumulate(theory_mass.begin(), theory_mass.end(), 0.0);
  if (!(in_range > 0.0)) throw DomainError("chi_square: theory has no mass in the histogram range");

  std::vector<double> theory(nb);
  for (std::size_t i = 0; i < nb; ++i)
    theory[i] = theory_mass[i] / in_range / (histogram.edges[i + 1] - histogram.edges[i]);
  const double peak = *std::max_element(theory.begin(), theory.end());
  double floor = std::numeric_limits<double>::infinity();
  for (const double se : histogram.std_error)
    if (se > 0.0) floor = std::min(floor, se);
  if (!std::isfinite(floor)) throw NumericalError("chi_square: histogram carries no error estimate");

  double sum = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < nb; ++i) {
    double se = histogram.std_error[i];
    if (se == 0.0) {
      if (histogram.density[i] == 0.0 && theory[i] < 1e-3 * peak) continue;
      se = floor;
    }
    const double z = (histogram.density[i] - theory[i]) / se;
    sum += z * z;
    ++used;
  }
  if (used == 0) throw NumericalError("chi_square: no usable bins");
  return sum / static_cast<double>(used);
}

double moments_of_spectrum(std::span<const SpectralResult> standardized, int order) {
  if (order < 2 || order > 8 || order % 2) throw DomainError("moments_of_spectrum: order must be 2, 4, 6 or 8");
  if (standardized.empty()) throw DomainError("moments_of_spectrum: no members");
  double n = 0.0, mean = 0.0;
  for (const auto& r : standardized) {
    mean += r.energies.sum();
    n += static_cast<double>(r.energies.size());
  }
  mean /= n;
  double m2 = 0.0, mp = 0.0;
  for (const auto& r : standardized) {
    for (const double e : r.energies) {
      const double x = e - mean;
      m2 += x * x;
      mp += std::pow(x, order);
    }
  }
  m2 /= n;
  mp /= n;
  return mp / std::pow(m2, order / 2);
}

std::vector<double> uniform_grid(double start, double stop, int steps) {
  if (steps < 1 || !(stop > start)) throw DomainError("uniform_grid: need steps >= 1 and stop > start");
  std::vector<double> g(steps + 1);
  for (int i = 0; i <= steps; ++i) g[i] = start + (stop - start) * i / steps;
  return g;
}

}  // namespace qee
