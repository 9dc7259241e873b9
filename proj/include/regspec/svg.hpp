#pragma once

#include <span>
#include <string>
#include <vector>

#include "regspec/dense_matrix.hpp"
#include "regspec/hermitization.hpp"

namespace regspec {

/// An SVG document and the CSV of exactly the data it draws
/// (columns: series, x, y).
struct Plot {
    std::string svg;
    std::string csv;
};

struct Curve {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

/// Points in the complex plane with a reference circle of radius
/// `overlay_radius` centred at 0 (1 for the circular law in rescaled
/// coordinates, sqrt(d) for Kesten-McKay on the unscaled matrix).
Plot render_scatter(std::span<const Complex> points, double overlay_radius, const std::string& title);

/// s_k against k on a log10 axis, with lower-bound curves drawn as lines.
/// Nonpositive values are drawn at the bottom edge (and written as-is to the CSV).
Plot render_sv_profile(std::span<const double> svals, const std::vector<Curve>& bounds, const std::string& title);

/// The three bounds of sv_bound_check over their index ranges, in the scale
/// of B_z (unscaled bounds divided by sqrt(d)).
std::vector<Curve> sv_bound_curves(int n, int d, const SvBoundReport& report, const BoundKnobs& knobs = {});

/// Empirical CDF of |atom| (a step at every atom) against law.radial_cdf on
/// a uniform grid.
Plot render_radial_cdf(const EmpiricalMeasure& mu, const ReferenceLaw& law, const std::string& title);

}  // namespace regspec
