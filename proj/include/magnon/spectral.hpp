#pragma once

#include <array>
#include <span>
#include <stdexcept>
#include <vector>

#include "magnon/matrix.hpp"
#include "magnon/params.hpp"

namespace magnon
{

/// A root could not be polished to the required residual.
class ConvergenceFailure : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

enum class Classification
{
  AllReal,
  Complex
};

inline constexpr double kDefaultEpsilonReal = 1e-7;

// Polished roots closer than this are snapped onto an exact conjugate pair.
inline constexpr double kSymmetrizeDistance = 1e-9;

using Eigenvalues = std::array<Complex, 4>;

struct Spectrum
{
  /// Ascending by real part, ties (within 1e-9 relative) ascending by imaginary part.
  Eigenvalues eigenvalues{};
  Classification classification = Classification::AllReal;
  /// Minimum pairwise eigenvalue distance.
  double coalescence = 0.0;
};

/// Roots of the characteristic polynomial, Durand-Kerner then Newton polish.
///
/// Throws ConvergenceFailure when a root's residual |p(z)| exceeds 1e-8 times the
/// largest coefficient magnitude.
Spectrum ComputeSpectrum(const ComplexMatrix4 &h, double epsilon_real = kDefaultEpsilonReal);

/// Roots of a monic quartic c0 + c1 z + c2 z^2 + c3 z^3 + z^4, unsorted.
Eigenvalues QuarticRoots(const std::array<Complex, 5> &coeffs);

Classification ClassifySpectrum(const Eigenvalues &eigs, double epsilon_real);

double CoalescenceMeasure(const Eigenvalues &eigs);

/// Eigenvalue branches with consistent identity across a one-knob sweep.
struct BranchSweep
{
  Knob knob = Knob::OmegaM;
  std::vector<double> parameter_values;
  std::array<std::vector<Complex>, 4> branches;
};

/// Reorders `next` to minimize total displacement from `previous` over all 24 permutations.
Eigenvalues MatchBranches(const Eigenvalues &previous, const Eigenvalues &next);

/// Points must differ in exactly one knob (the same one) between neighbours.
BranchSweep TrackBranches(std::span<const SystemParams> sweep_points);

/// n evenly spaced points from lo to hi (inclusive) along one knob of base.
std::vector<SystemParams> SweepPoints(const SystemParams &base, Knob knob, double lo, double hi,
                                      std::size_t n);

std::vector<double> Linspace(double lo, double hi, std::size_t n);

}  // namespace magnon
