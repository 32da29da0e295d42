#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "orbisymp/linalg.hpp"
#include "orbisymp/signature.hpp"
#include "orbisymp/splitting.hpp"
#include "orbisymp/words.hpp"

namespace orbisymp {

// Representation of an orbifold group in SL(3,R), stored as generator images.
struct GroupRep {
  OrbifoldSignature signature;
  std::map<Generator, Mat3> matrices;
  double residual_tol = 1e-8;

  Mat3 evaluate(const Word& w) const;
  Mat3 operator()(const Word& w) const { return evaluate(w); }
};

// Maximum Frobenius distance to the identity over the surface relator and all
// torsion relators.
double relation_residual(const GroupRep& rep);

// Spectral data of a positive hyperbolic matrix: real simple spectrum
// lambda1 > lambda2 > lambda3 > 0.
struct HypInvariants {
  double ell = 0.0;     // log(lambda1 / lambda3)
  double middle = 0.0;  // log(lambda2)
  Vec3 eigenvalues;     // descending
  std::array<Mat3, 3> projectors;
};

// Throws NonHyperbolicError for complex or non-positive spectra and
// ClusteredSpectrumError when a relative eigenvalue gap is below tol.
HypInvariants classify(const Mat3& m, double tol = 1e-8);

enum class InvariantFlavor { Length, Middle };

// The traceless matrix f#(h) with d/dt|0 f(h exp(tX)) = Tr(f#(h) X) for all
// traceless X, where f is the length (ell) or middle invariant:
//   ell#(h) = P1 - P3,   middle#(h) = P2 - I/3.
Mat3 goldman_derivative(const Mat3& h, InvariantFlavor flavor, double tol = 1e-8);

// --- Constructors for hyperbolic-plane (SO(2,1)) seed representations ---

// Rotation generators about the vertices of a hyperbolic triangle with angles
// pi/p, pi/q, pi/r; satisfies s1 s2 s3 = 1 and the torsion relations exactly
// up to rounding.
GroupRep fuchsian_triangle(int p, int q, int r);

// Cone-sphere representation with the given rotation orders; the k-th rotation
// center is seeded at the k-th given upper-half-plane point and all centers
// are then moved by Gauss-Newton until the relator closes up.
// Throws NewtonDivergedError if the seed does not converge.
GroupRep fuchsian_cone_sphere(const std::vector<int>& orders,
                              const std::vector<std::complex<double>>& centers);

// Closed genus-2 surface group built from a one-holed torus group and the
// half-turn about a point on the axis of its commutator. The default lengths
// keep the generator norms small: the evaluated relator can only be tuned to
// about eps times the product of partial-product norms, so longer lengths
// degrade the reachable residual.
GroupRep fuchsian_genus_two(double len_x = 1.95, double len_y = 1.95);

// Three-holed sphere with hyperbolic boundary monodromies z1, z2 of the given
// translation lengths (axes crossing at i), z3 = (z1 z2)^{-1}.
GroupRep fuchsian_pants(double len1 = 1.6, double len2 = 2.2);

// Representation of a piece pulled back along its inclusion word-map.
GroupRep restrict_rep(const GroupRep& ambient, const OrbifoldSignature& piece_sig,
                      const InclusionMap& inclusion);

// Word evaluation with extended-precision accumulation, rounded once on
// return. Long products telescope through partial products of much larger
// norm than the result; this keeps the rounding error at the storage
// quantization of the final value, which matters when conjugation-invariant
// quantities are extracted from words whose letters have been conjugated by
// large twists.
Mat3 evaluate_accurate(const GroupRep& rep, const Word& w);

// --- Refinement and deformation ---

// Decomposition s = h q h^{-1} with q the canonical block rotation with the
// same finite order and rotation amount as s.
struct RotationConjugacy {
  Mat3 conjugator;      // h
  Mat3 representative;  // q, exact canonical form
  int amount = 1;       // rotation by 2*pi*amount/order
};

// Fits the conjugacy structure of a matrix known to be a small perturbation
// of an order-`order` rotation class element.
RotationConjugacy fit_rotation_conjugator(const Mat3& s, int order);

struct RefineOptions {
  int max_iterations = 60;
  // Stopping residual. Floating-point evaluation of a long relator word has
  // granularity of roughly eps times the partial-product norms, so targets
  // far below 1e-10 are only reachable for representations with small
  // generator norms.
  double target_residual = 1e-10;
  double fd_step = 1e-6;
};

// Gauss-Newton on the surface relator residual over all generators, with cone
// generators constrained to their rotation conjugacy classes (torsion
// relations hold exactly by construction). Throws NewtonDivergedError.
GroupRep newton_refine(const GroupRep& rep, const RefineOptions& opts = {});

// First-order deformation along a cocycle tangent (values on generators),
// refined back onto the representation variety: free generators move by
// exp(t u(v)) rho(v); cone generators move inside their conjugacy class by
// the matching conjugation direction.
GroupRep deform(const GroupRep& rep, const std::map<Generator, Mat3>& tangent, double t,
                const RefineOptions& opts = {});

// Dimension of the joint centralizer of the image in sl(3,R); zero for
// irreducible representations.
int centralizer_dimension(const GroupRep& rep, double tol = 1e-8);

}  // namespace orbisymp
