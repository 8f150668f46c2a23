#pragma once

#include <filesystem>
#include <vector>

#include "spe/grid_field.hpp"

namespace spe {

enum class Shape { GaussianDerivative, ModulatedPacket, Custom };

/// Initial datum description. The analytic shapes are exact x-derivatives of a
/// localized envelope, so they integrate to zero and their primitive is the envelope.
struct InitialSpec {
  Shape shape = Shape::GaussianDerivative;
  double amplitude = 1.0;
  double center = 0.0;
  double width = 1.0;
  double wavenumber = 0.0;
  // Custom shape: tabulated (x, u) samples, resampled by linear interpolation.
  std::vector<double> custom_x;
  std::vector<double> custom_u;
};

/// Closed-form value u0(x) of an analytic shape; no admissibility checks.
double shape_value(const InitialSpec& spec, double x);

/// Closed-form envelope (the exact primitive of u0) of an analytic shape.
double envelope_value(const InitialSpec& spec, double x);

/// Samples the datum at cell centers after checking that its numerical support
/// (|u| > 1e-14 A) lies in the inner 80% of the grid.
Field generate(const InitialSpec& spec, const Grid& grid);

/// Reads a two-column text file (x u per line, '#' comments allowed) into a Custom spec.
InitialSpec load_custom(const std::filesystem::path& path);

struct AdmissibilityReport {
  double mean_before = 0.0;  // discrete integral of u0 before projection
  double u_l1 = 0.0;
  double u_l2 = 0.0;
  double u_linf = 0.0;
  double p_l2 = 0.0;  // L2 norm of the primitive of the projected datum
};

struct ProjectedDatum {
  Field field;
  AdmissibilityReport report;
};

/// Rejects data whose discrete mean exceeds 1e-6 ||u0||_inf (zero-mean hypothesis),
/// otherwise removes the residual quadrature-level mean.
ProjectedDatum validate_and_project(const Field& u0);

}  // namespace spe
