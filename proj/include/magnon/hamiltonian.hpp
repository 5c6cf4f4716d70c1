#pragma once

#include <array>
#include <stdexcept>

#include "magnon/matrix.hpp"
#include "magnon/params.hpp"

namespace magnon
{

/// The intertwining operator is not invertible.
class SingularEta : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kSingularEtaThreshold = 1e-12;

/// Model Hamiltonian in the basis (c1, c2, m1, m2):
///
///   [ wc1   0     g      g         ]
///   [ 0     wc2   g      g e^{-it} ]
///   [ g     g     wm-iy  0         ]
///   [ g     g e^{it} 0   wm+iy     ]
ComplexMatrix4 BuildHamiltonian(const SystemParams &p);

/// Hamiltonian rewritten in the permuted basis (c1, m1, m2, c2) with the loop
/// phase carried by the m1-c2 bond instead of the m2-c2 bond.
ComplexMatrix4 ReducedPermutedForm(const SystemParams &p);

/// Basis permutation (c1, c2, m1, m2) -> (c1, m1, m2, c2).
ComplexMatrix4 BasisPermutation();

/// U * P where P is BasisPermutation() and U = diag(1, 1, 1, e^{i s theta}).
///
/// Conjugating H by this operator moves it to ReducedPermutedForm() for exactly
/// one sign s. That sign is detected by trying both.
ComplexMatrix4 PermutationPhaseEta(double theta, int phase_sign);
ComplexMatrix4 PermutationPhaseEta(double theta);

/// Phase sign (+1 or -1) for which PermutationPhaseEta reproduces the reduced form.
int ResolvePhaseSign(double theta);

/// An invertible eta with H^dagger = eta H eta^-1 for H = BuildHamiltonian(p).
///
/// Built as eta = K(H^dagger, v) K(H, v)^-1 from Krylov matrices
/// K(A, v) = [v, Av, A^2 v, A^3 v] (on trace-shifted copies of H). The relation
/// holds exactly when the characteristic polynomial of H has real coefficients,
/// so a vanishing residual certifies pseudo-Hermiticity. Normalized to |det| = 1.
/// Throws SingularEta when H is derogatory and not Hermitian.
ComplexMatrix4 BuildEta(const SystemParams &p);

/// Same construction for an arbitrary matrix.
ComplexMatrix4 IntertwiningOperator(const ComplexMatrix4 &h);

/// Frobenius norm of H^dagger - eta H eta^-1. Throws SingularEta if |det eta| <= 1e-12.
double PseudoHermiticityResidual(const ComplexMatrix4 &h, const ComplexMatrix4 &eta);

/// Coefficients c0..c4 (ascending powers) of det(w I - H) via Faddeev-LeVerrier.
std::array<Complex, 5> CharacteristicPolynomial(const ComplexMatrix4 &h);

}  // namespace magnon
