#pragma once

#include <map>
#include <vector>

#include "orbisymp/linalg.hpp"
#include "orbisymp/rep.hpp"
#include "orbisymp/splitting.hpp"
#include "orbisymp/words.hpp"

namespace orbisymp {

// Lie-algebra valued 1-cocycle on the group of a representation, stored by its
// values on the presentation generators. Generators absent from the map have
// value zero, which keeps sparse tangents (e.g. twist directions) cheap.
struct Cocycle {
  std::map<Generator, Mat3> values;

  Mat3 value(const Generator& g) const;
};

// Crossed-homomorphism extension of generator values to an arbitrary word:
//   u(gh) = u(g) + Ad_{rho(g)} u(h),   u(g^-1) = -Ad_{rho(g)^-1} u(g).
Mat3 extend(const GroupRep& rep, const Cocycle& u, const Word& w);

// Coefficient-linear extension to group ring elements (values act through Ad).
Mat3 extend_ring(const GroupRep& rep, const Cocycle& u, const GroupRingElement& e);

// The coboundary of X: v -> Ad_{rho(v)} X - X on every generator.
Cocycle coboundary(const GroupRep& rep, const Mat3& x);

// Maximum norm of u evaluated on the surface relator and all torsion
// relators; zero exactly when u is a cocycle of the presented group.
double cocycle_relation_residual(const GroupRep& rep, const Cocycle& u);

// Matrix of X -> g X g^{-1} acting on row-major stacked coordinates.
Eigen::Matrix<double, 9, 9> ad9(const Mat3& g);

// Ad of a group ring element: sum of coefficient * ad9(rho(word)).
Eigen::Matrix<double, 9, 9> ad9_ring(const GroupRep& rep, const GroupRingElement& e);

struct SubspaceOptions {
  // Relative singular-value threshold shared by every rank decision, so
  // chained computations agree on dimensions.
  double rank_threshold = 1e-8;
};

// Orthonormal basis (columns, stacked coordinates) of the subspace of
// admissible values at the i-th cone generator: the kernel of
// sum_k Ad_{rho(s_i)}^k, k = 0..r_i-1. Values there extend to cocycles on the
// cyclic subgroup. Throws DegenerateSpectrumError when rho(s_i)^{r_i} is far
// from the identity, the kernel is empty, or the singular gap is ambiguous.
Eigen::MatrixXd torsion_subspace(const GroupRep& rep, int i,
                                 const SubspaceOptions& opts = {});

// Orthonormal basis (columns, stacked coordinates) of im(1 - Ad_h).
Eigen::MatrixXd image_of_one_minus_ad(const Mat3& h, const SubspaceOptions& opts = {});

// Same image for the holonomy of a word; requires the holonomy to be
// hyperbolic (throws NonHyperbolicError otherwise).
Eigen::MatrixXd boundary_image_subspace(const GroupRep& rep, const Word& zeta,
                                        const SubspaceOptions& opts = {});

enum class CocycleKind {
  Full,               // all cocycles
  ParabolicBoundary,  // boundary values constrained into im(1 - Ad)
  ParabolicCurves,    // splitting-curve values constrained into im(1 - Ad)
  Coboundaries,
  ClassComplement,  // orthogonal complement of the coboundaries
};

// A cocycle space with an orthonormal basis (Frobenius inner product summed
// over generator values).
struct CocycleSpace {
  GroupRep rep;
  CocycleKind kind = CocycleKind::Full;
  std::vector<Cocycle> basis;
  // Words whose values were constrained into im(1 - Ad); empty otherwise.
  std::vector<Word> constraint_words;

  int dimension() const { return static_cast<int>(basis.size()); }
};

// Basis of the space of cocycles: values of free generators range over the
// whole Lie algebra, cone values over their torsion subspaces, and the
// surface relator condition (assembled from free derivatives of the relator)
// cuts out the kernel. Throws RankDeficientError when the relator condition
// has unexpected rank for the representation's centralizer, or when the
// singular spectrum has no clean gap at the threshold.
CocycleSpace z1_basis(const GroupRep& rep, const SubspaceOptions& opts = {});

// Same with the extra constraint u(w) in im(1 - Ad_{rho(w)}) for each listed
// word (boundary words, or splitting-curve words on a closed orbifold).
CocycleSpace z1_par_basis(const GroupRep& rep, const std::vector<Word>& parabolic_words,
                          CocycleKind kind = CocycleKind::ParabolicBoundary,
                          const SubspaceOptions& opts = {});

// Basis of the coboundaries delta X, X in sl(3,R); dimension is 8 minus the
// centralizer dimension.
CocycleSpace b1_basis(const GroupRep& rep, const SubspaceOptions& opts = {});

// Orthogonal complement of the coboundaries inside the given space; its
// classes represent the quotient cohomology of that space.
CocycleSpace class_complement(const CocycleSpace& space, const SubspaceOptions& opts = {});

// Solves Ad_{rho(s_i)} T - T = u(s_i) by the cyclic average
//   T = -(1/r)(u(s_i) + u(s_i^2) + ... + u(s_i^{r-1})).
// Throws TorsionViolationError when u(s_i) violates the torsion condition.
Mat3 solve_T(const GroupRep& rep, const Cocycle& u, int i, double tol = 1e-8);

// Minimum-norm least-squares solution X of (Ad_{rho(zeta)} - 1) X = u(zeta).
// Throws NotParabolicError when the equation is inconsistent beyond tol.
Mat3 solve_X(const GroupRep& rep, const Cocycle& u, const Word& zeta, double tol = 1e-8);

// Pullback along an inclusion: piece generator v -> extend(rep, u, inc(v)).
Cocycle restrict_cocycle(const GroupRep& ambient, const Cocycle& u, const InclusionMap& inc);

}  // namespace orbisymp
