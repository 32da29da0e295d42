#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "orbisymp/cocycle.hpp"
#include "orbisymp/rep.hpp"
#include "orbisymp/splitting.hpp"
#include "orbisymp/words.hpp"

namespace orbisymp {

// Result of pairing two tangent cocycles by the two independent evaluation
// routes, together with the auxiliary solutions that enter the cone and
// boundary correction terms (computed from the first argument).
struct PairingReport {
  double value_closed_form = 0.0;
  double value_cycle = 0.0;
  double discrepancy = 0.0;                // |value_closed_form - value_cycle|
  std::vector<Mat3> torsion_corrections;   // T_i, one per cone point
  std::vector<Mat3> boundary_corrections;  // X_i, one per boundary curve
};

// The pairing evaluated from generator values and free-derivative words of
// the surface relator r:
//   omega(u, v) = - sum_gens Tr(u(bar dr/dg) v(g))
//                 - sum_cones Tr(T_i v(s_i)) - sum_boundary Tr(X_i v(z_i)),
// where T_i = solve_T(rep, u, i), X_i = solve_X(rep, u, z_i), and u applies
// to group-ring elements through extend_ring. Solver residuals above
// solver_tol surface as TorsionViolationError / NotParabolicError.
double omega_closed_form(const GroupRep& rep, const Cocycle& u, const Cocycle& v,
                         double solver_tol = 1e-8);

// The same pairing evaluated against the fundamental 2-chain:
//   omega(u, v) = sum_terms coef * Tr(u(a) Ad_{rho(a)} v(b))
//                 - sum_boundary Tr(X_i v(z_i)).
// Algebraically equal to omega_closed_form but computed through an
// independent route, which makes the pair a strong cross-check.
double omega_cycle(const GroupRep& rep, const Cocycle& u, const Cocycle& v,
                   double solver_tol = 1e-8);

PairingReport pairing_report(const GroupRep& rep, const Cocycle& u, const Cocycle& v,
                             double solver_tol = 1e-8);

// The 2-form on the conjugacy class of a hyperbolic element p, written in
// right-translation coordinates: tangent vectors at p have the form
// Ad_p X - X, and
//   tau(Ad_p X - X, Ad_p Y - Y) = (Tr(X Ad_p Y) - Tr(Y Ad_p X)) / 2.
// The value does not depend on the choice of representatives X, Y, so the
// function takes X and Y themselves. Throws NonHyperbolicError.
double tau_form(const Mat3& p, const Mat3& x, const Mat3& y);

// Residual of the identity expressing the antisymmetrized boundary
// corrections through tau:
//   | (1/2) sum_i [Tr(X_i v(z_i)) - Tr(Y_i u(z_i))]
//     - sum_i tau(rho(z_i); X_i, Y_i) |
// with X_i solved from u and Y_i solved from v.
double boundary_term_identity_check(const GroupRep& rep, const Cocycle& u, const Cocycle& v,
                                    double solver_tol = 1e-8);

// Matrix of pairings omega(basis[a], basis[b]) via the closed-form route.
Eigen::MatrixXd gram_matrix(const GroupRep& rep, const CocycleSpace& space,
                            double solver_tol = 1e-8);

struct GramReport {
  Eigen::MatrixXd gram;
  double min_singular_value = 0.0;
  double max_singular_value = 0.0;
  double antisymmetry_defect = 0.0;  // ||G + G^T||
};

GramReport gram_report(const GroupRep& rep, const CocycleSpace& space,
                       double solver_tol = 1e-8);

// |omega(u, v) - sum_pieces omega(u|_piece, v|_piece)| over the pieces of a
// splitting. u and v must be parabolic along every splitting curve. The
// default solver tolerance is looser than elsewhere because restricted
// cocycles inherit the ambient accuracy amplified by the inclusion-word
// holonomies.
double decomposition_residual(const GroupRep& rep, const SplittingSpec& splitting,
                              const Cocycle& u, const Cocycle& v, double solver_tol = 1e-5);

// Finite-difference estimate of the exterior derivative (d omega)(d1, d2, d3)
// on the chart (t1, t2, t3) -> deform(rep, t1 d1 + t2 d2 + t3 d3). Coordinate
// vector fields commute, so the estimate is the cyclic sum of central
// differences D_i omega(d_j, d_k) with step h; the fields themselves are
// recovered at each grid point by differencing the chart. Zero for a closed
// form up to the stencil error, which shrinks at least linearly in h.
double closedness_probe(const GroupRep& rep, const std::array<Cocycle, 3>& directions,
                        double h, double solver_tol = 1e-4);

}  // namespace orbisymp
