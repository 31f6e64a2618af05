// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <cstdint>

#include "cps/field_space.hpp"

namespace cps {

/// Low-frequency random trigonometric fields.
struct SmoothSpec {
  double amplitude = 0.3;
  int modes = 2;
  std::uint64_t seed = 1;
};

/// Algebra-valued form of the given degree with random smooth coefficients.
Form<cplx> random_algebra_form(const Grid& grid, GroupTag group, int degree,
                               const SmoothSpec& spec);
/// Representation vector field, offset + smooth fluctuation in every entry.
Form<cplx> random_matter(const Grid& grid, GroupTag group, RepTag rep,
                         const SmoothSpec& spec, double offset = 1.0);
/// exp of a smooth algebra-valued 0-form.
Form<cplx> random_group_field(const Grid& grid, GroupTag group,
                              const SmoothSpec& spec);
/// exp of a constant random algebra element.
Form<cplx> random_constant_group(const Grid& grid, GroupTag group,
                                 std::uint64_t seed, double scale = 1.0);
/// Constant algebra-valued 0-form sum_a c_a T_a.
Form<cplx> constant_algebra(const Grid& grid, GroupTag group,
                            const std::vector<double>& coefficients);

FieldPoint<cplx> random_ym_point(const Grid& grid, GroupTag group, RepTag rep,
                                 const SmoothSpec& spec, double offset = 1.0);
FieldTangent<cplx> random_ym_tangent(const FieldPoint<cplx>& phi,
                                     const SmoothSpec& spec);

/// U(1) static configuration in (t, x, y): A = i a dt with a = amp I0(k r)
/// and constant real matter k_matter, solving the Gauss law exactly in the
/// continuum when k_matter = k.
FieldPoint<cplx> bessel_onshell(const Grid& grid, double k, double amplitude);

/// U(1) static potential A = i Phi dt of a Gaussian charge of total q and
/// width sigma centred at the spatial origin of (t, x, y).
FieldPoint<cplx> smoothed_coulomb(const Grid& grid, double charge,
                                  double sigma);
/// The 2D potential of that charge, with Laplacian -rho.
double coulomb_potential_2d(double r, double charge, double sigma);

/// Spatially constant field-dependent parameters built from slice averages.
/// matter_moment: i(M M^dagger - tr(M M^dagger)/n) with M the averaged
/// matter, times scale. For U(1) this is i scale |M|^2.
FieldDependentMap<cplx> matter_moment_parameter(double scale);
/// Pointwise i scale (m m^dagger - trace part); gauge invariant for u(1).
FieldDependentMap<cplx> matter_density_parameter(double scale);
/// scale * (P + [P, Q]) with P, Q the averaged A components along two axes.
FieldDependentMap<cplx> potential_average_parameter(int axis_p, int axis_q,
                                                    double scale);
/// Adds a constant algebra element to a field-dependent parameter.
FieldDependentMap<cplx> offset_parameter(FieldDependentMap<cplx> base,
                                         Form<cplx> constant);
/// phi -> exp(chi(phi)).
FieldDependentMap<cplx> exponentiated(FieldDependentMap<cplx> chi);

/// Real smooth fields for gravity tests: tetrad = 1 + small, so(1,3) A.
FieldPoint<double> random_gravity_point(const Grid& grid,
                                        const SmoothSpec& spec, double ell,
                                        int lambda_sign);
FieldTangent<double> random_gravity_tangent(const FieldPoint<double>& phi,
                                            const SmoothSpec& spec);

}  // namespace cps
