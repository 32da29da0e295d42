#include "orbisymp/cocycle.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "orbisymp/errors.hpp"

namespace orbisymp {

namespace {

constexpr int kLieDim = 8;

// True when no singular value sits within one decade of the rank threshold,
// so the rank decision does not depend on the exact cutoff.
bool clean_gap(const Eigen::VectorXd& sv, double threshold) {
  if (sv.size() == 0) return true;
  double smax = sv(0);
  if (smax == 0.0) return true;
  for (int k = 0; k < sv.size(); ++k) {
    double rel = sv(k) / smax;
    if (rel > 0.1 * threshold && rel < 10.0 * threshold) return false;
  }
  return true;
}

int relative_rank(const Eigen::VectorXd& sv, double threshold) {
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  while (rank < sv.size() && sv(rank) > threshold * sv(0)) ++rank;
  return rank;
}

// Parameter space for cocycles: one orthonormal block of admissible values
// per generator (all of sl(3,R) for free generators, the torsion subspace for
// cone generators). Block columns are stacked-coordinate vectors, so the
// parametrization is an isometry onto generator tuples with the Frobenius
// inner product.
struct ParamBlocks {
  std::vector<Generator> gens;
  std::vector<Eigen::MatrixXd> basis;
  std::vector<int> offset;
  int total = 0;
};

ParamBlocks make_blocks(const GroupRep& rep, const SubspaceOptions& opts) {
  ParamBlocks blocks;
  blocks.gens = generator_list(rep.signature);
  for (const Generator& g : blocks.gens) {
    Eigen::MatrixXd b;
    if (g.kind == GenKind::S) {
      b = torsion_subspace(rep, g.index, opts);
    } else {
      b.resize(9, kLieDim);
      for (int k = 0; k < kLieDim; ++k) b.col(k) = vec9(sl3_frob_basis()[k]);
    }
    blocks.offset.push_back(blocks.total);
    blocks.total += static_cast<int>(b.cols());
    blocks.basis.push_back(std::move(b));
  }
  return blocks;
}

Cocycle cocycle_from_params(const ParamBlocks& blocks, const Eigen::VectorXd& p) {
  Cocycle u;
  for (std::size_t v = 0; v < blocks.gens.size(); ++v) {
    int cols = static_cast<int>(blocks.basis[v].cols());
    u.values[blocks.gens[v]] =
        unvec9(blocks.basis[v] * p.segment(blocks.offset[v], cols));
  }
  return u;
}

// Matrix of the linear map (parameters) -> stacked coordinates of u(w),
// assembled from free derivatives: u(w) = sum_v Ad_{rho(dw/dv)} u(v).
Eigen::MatrixXd word_value_map(const GroupRep& rep, const ParamBlocks& blocks, const Word& w) {
  Eigen::MatrixXd out(9, blocks.total);
  for (std::size_t v = 0; v < blocks.gens.size(); ++v) {
    Eigen::Matrix<double, 9, 9> m = ad9_ring(rep, fox_derivative(w, blocks.gens[v]));
    out.block(0, blocks.offset[v], 9, blocks.basis[v].cols()) = m * blocks.basis[v];
  }
  return out;
}

using Mat3x = Eigen::Matrix<long double, 3, 3>;
using Mat9x = Eigen::Matrix<long double, 9, 9>;
using MatrixXx = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

Mat3x evaluate_x(const GroupRep& rep, const Word& w) {
  Mat3x m = Mat3x::Identity();
  for (const Letter& l : w.letters()) {
    Mat3x g = rep.matrices.at(l.gen).cast<long double>();
    m = m * (l.exp == 1 ? g : Mat3x(g.inverse()));
  }
  return m;
}

Mat9x ad9_x(const Mat3x& g) {
  Mat3x gi = g.inverse();
  Mat9x m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) m(3 * i + j, 3 * a + b) = g(i, a) * gi(b, j);
  return m;
}

// Extended-precision mirror of word_value_map. The constraint rows are exact
// functions of the stored double-precision matrices, so they can be
// re-evaluated beyond double precision and used to polish the kernel returned
// by the double-precision SVD, whose accuracy is limited by the condition
// number of the assembled constraint matrix.
MatrixXx word_value_map_x(const GroupRep& rep, const ParamBlocks& blocks, const Word& w) {
  MatrixXx out(9, blocks.total);
  for (std::size_t v = 0; v < blocks.gens.size(); ++v) {
    Mat9x m = Mat9x::Zero();
    GroupRingElement derivative = fox_derivative(w, blocks.gens[v]);
    for (const auto& [term, coef] : derivative.terms())
      m += (static_cast<long double>(coef.num()) / static_cast<long double>(coef.den())) *
           ad9_x(evaluate_x(rep, term));
    out.block(0, blocks.offset[v], 9, blocks.basis[v].cols()) =
        m * blocks.basis[v].cast<long double>();
  }
  return out;
}

// Rank of the relator condition must match the centralizer: the cokernel of
// the relator map pairs with the invariants of the representation.
void check_relator_rank(const GroupRep& rep, const Eigen::MatrixXd& relator_map,
                        const SubspaceOptions& opts) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(relator_map);
  int rank = relative_rank(svd.singularValues(), opts.rank_threshold);
  int expected = kLieDim;
  if (rep.signature.closed()) expected -= centralizer_dimension(rep);
  if (rank != expected)
    throw RankDeficientError("relator condition has rank " + std::to_string(rank) +
                             ", expected " + std::to_string(expected));
  if (!clean_gap(svd.singularValues(), opts.rank_threshold))
    throw RankDeficientError("relator condition has an ambiguous singular gap");
}

CocycleSpace kernel_space(const GroupRep& rep, const ParamBlocks& blocks,
                          const Eigen::MatrixXd& constraints, const MatrixXx& constraints_x,
                          CocycleKind kind, std::vector<Word> constraint_words,
                          const SubspaceOptions& opts) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(constraints,
                                        Eigen::ComputeThinU | Eigen::ComputeFullV);
  if (!clean_gap(svd.singularValues(), opts.rank_threshold))
    throw RankDeficientError("cocycle constraints have an ambiguous singular gap");
  int rank = relative_rank(svd.singularValues(), opts.rank_threshold);
  svd.setThreshold(opts.rank_threshold);

  // Polish each kernel vector against the re-evaluated constraint rows. The
  // correction solve only inverts singular directions above the rank
  // threshold, so components along the genuine near-kernel (present at the
  // level of the representation's relator residual, e.g. along coboundary
  // directions) are deliberately left alone; only the SVD's own rounding
  // error is removed.
  Eigen::MatrixXd kernel = svd.matrixV().rightCols(blocks.total - rank);
  for (int c = 0; c < kernel.cols(); ++c) {
    Eigen::VectorXd p = kernel.col(c);
    for (int pass = 0; pass < 2; ++pass) {
      Eigen::VectorXd residual = (constraints_x * p.cast<long double>()).cast<double>();
      p -= svd.solve(residual);
    }
    kernel.col(c) = p;
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(kernel);
  kernel = qr.householderQ() * Eigen::MatrixXd::Identity(blocks.total, kernel.cols());

  CocycleSpace space;
  space.rep = rep;
  space.kind = kind;
  space.constraint_words = std::move(constraint_words);
  for (int k = 0; k < kernel.cols(); ++k)
    space.basis.push_back(cocycle_from_params(blocks, kernel.col(k)));
  return space;
}

// Tuple of stacked generator values, one 9-block per generator in
// presentation order; the coordinate system behind every Gram computation.
Eigen::VectorXd tuple_coordinates(const std::vector<Generator>& gens, const Cocycle& u) {
  Eigen::VectorXd t(9 * gens.size());
  for (std::size_t v = 0; v < gens.size(); ++v) t.segment<9>(9 * v) = vec9(u.value(gens[v]));
  return t;
}

Cocycle cocycle_from_tuple(const std::vector<Generator>& gens, const Eigen::VectorXd& t) {
  Cocycle u;
  for (std::size_t v = 0; v < gens.size(); ++v)
    u.values[gens[v]] = unvec9(t.segment<9>(9 * v));
  return u;
}

}  // namespace

Mat3 Cocycle::value(const Generator& g) const {
  auto it = values.find(g);
  return it == values.end() ? Mat3::Zero() : it->second;
}

Mat3 extend(const GroupRep& rep, const Cocycle& u, const Word& w) {
  Mat3 val = Mat3::Zero();
  Mat3 prefix = Mat3::Identity();
  Mat3 prefix_inv = Mat3::Identity();
  for (const Letter& l : w.letters()) {
    const Mat3& m = rep.matrices.at(l.gen);
    Mat3 uv = u.value(l.gen);
    Mat3 contrib, step, step_inv;
    if (l.exp == 1) {
      contrib = uv;
      step = m;
      step_inv = m.inverse();
    } else {
      step = m.inverse();
      step_inv = m;
      contrib = -(step * uv * m);
    }
    val += prefix * contrib * prefix_inv;
    prefix = prefix * step;
    prefix_inv = step_inv * prefix_inv;
  }
  return val;
}

Mat3 extend_ring(const GroupRep& rep, const Cocycle& u, const GroupRingElement& e) {
  Mat3 val = Mat3::Zero();
  for (const auto& [w, coef] : e.terms()) val += coef.to_double() * extend(rep, u, w);
  return val;
}

Cocycle coboundary(const GroupRep& rep, const Mat3& x) {
  Cocycle u;
  for (const Generator& g : generator_list(rep.signature)) {
    const Mat3& m = rep.matrices.at(g);
    u.values[g] = m * x * m.inverse() - x;
  }
  return u;
}

double cocycle_relation_residual(const GroupRep& rep, const Cocycle& u) {
  double worst = extend(rep, u, canonical_relator(rep.signature)).norm();
  for (const Word& w : torsion_relators(rep.signature))
    worst = std::max(worst, extend(rep, u, w).norm());
  return worst;
}

Eigen::Matrix<double, 9, 9> ad9(const Mat3& g) {
  Mat3 gi = g.inverse();
  Eigen::Matrix<double, 9, 9> m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) m(3 * i + j, 3 * a + b) = g(i, a) * gi(b, j);
  return m;
}

Eigen::Matrix<double, 9, 9> ad9_ring(const GroupRep& rep, const GroupRingElement& e) {
  Eigen::Matrix<double, 9, 9> m = Eigen::Matrix<double, 9, 9>::Zero();
  for (const auto& [w, coef] : e.terms()) m += coef.to_double() * ad9(rep.evaluate(w));
  return m;
}

Eigen::MatrixXd torsion_subspace(const GroupRep& rep, int i, const SubspaceOptions& opts) {
  const auto& orders = rep.signature.cone_orders;
  if (i < 1 || i > static_cast<int>(orders.size()))
    throw Error("torsion_subspace: cone index out of range");
  int order = orders[i - 1];
  const Mat3& m = rep.matrices.at(Generator{GenKind::S, i});

  Mat3 power = Mat3::Identity();
  Eigen::Matrix<double, 9, 9> averaged = Eigen::Matrix<double, 9, 9>::Zero();
  for (int k = 0; k < order; ++k) {
    averaged += ad9(power);
    power = power * m;
  }
  if (identity_distance(power) > 1e-6)
    throw DegenerateSpectrumError("cone holonomy power is far from the identity");

  Eigen::JacobiSVD<Eigen::Matrix<double, 9, 9>> svd(averaged, Eigen::ComputeFullV);
  if (!clean_gap(svd.singularValues(), opts.rank_threshold))
    throw DegenerateSpectrumError("averaged adjoint operator has an ambiguous singular gap");
  int rank = relative_rank(svd.singularValues(), opts.rank_threshold);
  if (rank == 9)
    throw DegenerateSpectrumError("cone holonomy admits no torsion directions");
  return svd.matrixV().rightCols(9 - rank);
}

Eigen::MatrixXd image_of_one_minus_ad(const Mat3& h, const SubspaceOptions& opts) {
  Eigen::Matrix<double, 9, 9> op = Eigen::Matrix<double, 9, 9>::Identity() - ad9(h);
  Eigen::JacobiSVD<Eigen::Matrix<double, 9, 9>> svd(op, Eigen::ComputeFullU);
  int rank = relative_rank(svd.singularValues(), opts.rank_threshold);
  return svd.matrixU().leftCols(rank);
}

Eigen::MatrixXd boundary_image_subspace(const GroupRep& rep, const Word& zeta,
                                        const SubspaceOptions& opts) {
  Mat3 h = rep.evaluate(zeta);
  classify(h);  // throws unless the holonomy is hyperbolic
  return image_of_one_minus_ad(h, opts);
}

CocycleSpace z1_basis(const GroupRep& rep, const SubspaceOptions& opts) {
  ParamBlocks blocks = make_blocks(rep, opts);
  Word relator = canonical_relator(rep.signature);
  Eigen::MatrixXd relator_map = word_value_map(rep, blocks, relator);
  check_relator_rank(rep, relator_map, opts);
  return kernel_space(rep, blocks, relator_map, word_value_map_x(rep, blocks, relator),
                      CocycleKind::Full, {}, opts);
}

CocycleSpace z1_par_basis(const GroupRep& rep, const std::vector<Word>& parabolic_words,
                          CocycleKind kind, const SubspaceOptions& opts) {
  ParamBlocks blocks = make_blocks(rep, opts);
  Word relator = canonical_relator(rep.signature);
  Eigen::MatrixXd relator_map = word_value_map(rep, blocks, relator);
  check_relator_rank(rep, relator_map, opts);

  Eigen::MatrixXd constraints(9 * (1 + parabolic_words.size()), blocks.total);
  MatrixXx constraints_x(constraints.rows(), blocks.total);
  constraints.topRows(9) = relator_map;
  constraints_x.topRows(9) = word_value_map_x(rep, blocks, relator);
  for (std::size_t k = 0; k < parabolic_words.size(); ++k) {
    Eigen::MatrixXd image = boundary_image_subspace(rep, parabolic_words[k], opts);
    Eigen::Matrix<double, 9, 9> off_image =
        Eigen::Matrix<double, 9, 9>::Identity() - image * image.transpose();
    constraints.middleRows(9 * (k + 1), 9) =
        off_image * word_value_map(rep, blocks, parabolic_words[k]);
    constraints_x.middleRows(9 * (k + 1), 9) =
        off_image.cast<long double>() * word_value_map_x(rep, blocks, parabolic_words[k]);
  }
  return kernel_space(rep, blocks, constraints, constraints_x, kind, parabolic_words, opts);
}

CocycleSpace b1_basis(const GroupRep& rep, const SubspaceOptions& opts) {
  std::vector<Generator> gens = generator_list(rep.signature);
  Eigen::MatrixXd columns(9 * gens.size(), kLieDim);
  for (int k = 0; k < kLieDim; ++k)
    columns.col(k) = tuple_coordinates(gens, coboundary(rep, sl3_frob_basis()[k]));

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(columns, Eigen::ComputeThinU);
  if (!clean_gap(svd.singularValues(), opts.rank_threshold))
    throw RankDeficientError("coboundary map has an ambiguous singular gap");
  int rank = relative_rank(svd.singularValues(), opts.rank_threshold);
  int expected = kLieDim - centralizer_dimension(rep);
  if (rank != expected)
    throw RankDeficientError("coboundary map has rank " + std::to_string(rank) +
                             ", expected " + std::to_string(expected));

  CocycleSpace space;
  space.rep = rep;
  space.kind = CocycleKind::Coboundaries;
  for (int k = 0; k < rank; ++k)
    space.basis.push_back(cocycle_from_tuple(gens, svd.matrixU().col(k)));
  return space;
}

CocycleSpace class_complement(const CocycleSpace& space, const SubspaceOptions& opts) {
  std::vector<Generator> gens = generator_list(space.rep.signature);
  CocycleSpace cob = b1_basis(space.rep, opts);

  Eigen::MatrixXd ms(9 * gens.size(), space.dimension());
  for (int k = 0; k < space.dimension(); ++k)
    ms.col(k) = tuple_coordinates(gens, space.basis[k]);
  Eigen::MatrixXd mb(9 * gens.size(), cob.dimension());
  for (int k = 0; k < cob.dimension(); ++k) mb.col(k) = tuple_coordinates(gens, cob.basis[k]);

  CocycleSpace out;
  out.rep = space.rep;
  out.kind = CocycleKind::ClassComplement;
  out.constraint_words = space.constraint_words;
  if (space.dimension() == 0) return out;
  if (cob.dimension() == 0) {
    out.basis = space.basis;
    return out;
  }

  // A vector in the span, written as ms * c, is orthogonal to every coboundary
  // column b exactly when c is in the kernel of beta^T with beta = ms^T * mb:
  // c^T (ms^T b) = (ms c)^T b.  Working in span coordinates keeps the singular
  // gap of order one; subtracting the coboundary projection from ms instead
  // would leave singular values at the level of the representation's relator
  // residual, where rank decisions become ambiguous.
  Eigen::MatrixXd beta_t = mb.transpose() * ms;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(beta_t, Eigen::ComputeFullV);
  if (!clean_gap(svd.singularValues(), opts.rank_threshold))
    throw RankDeficientError("class complement has an ambiguous singular gap");
  int rank = relative_rank(svd.singularValues(), opts.rank_threshold);
  if (rank != cob.dimension())
    throw RankDeficientError(
        "coboundaries project onto the span with rank " + std::to_string(rank) + ", expected " +
        std::to_string(cob.dimension()));
  int complement_dim = space.dimension() - rank;
  for (int k = 0; k < complement_dim; ++k) {
    Eigen::VectorXd column = ms * svd.matrixV().col(rank + k);
    out.basis.push_back(cocycle_from_tuple(gens, column));
  }
  return out;
}

Mat3 solve_T(const GroupRep& rep, const Cocycle& u, int i, double tol) {
  const auto& orders = rep.signature.cone_orders;
  if (i < 1 || i > static_cast<int>(orders.size()))
    throw Error("solve_T: cone index out of range");
  int order = orders[i - 1];
  const Mat3& m = rep.matrices.at(Generator{GenKind::S, i});
  Mat3 us = u.value(Generator{GenKind::S, i});

  // adj[j] = Ad_{rho(s)^j} u(s)
  std::vector<Mat3> adj(order);
  Mat3 power = Mat3::Identity(), power_inv = Mat3::Identity();
  Mat3 m_inv = m.inverse();
  for (int j = 0; j < order; ++j) {
    adj[j] = power * us * power_inv;
    power = power * m;
    power_inv = m_inv * power_inv;
  }
  Mat3 violation = Mat3::Zero();
  for (int j = 0; j < order; ++j) violation += adj[j];
  if (violation.norm() > tol)
    throw TorsionViolationError("cocycle value violates the torsion condition");

  // T = -(1/r) sum_{k=1}^{r-1} u(s^k), with u(s^k) = sum_{j<k} adj[j].
  Mat3 t = Mat3::Zero();
  for (int j = 0; j + 1 < order; ++j) t += static_cast<double>(order - 1 - j) * adj[j];
  return -t / static_cast<double>(order);
}

Mat3 solve_X(const GroupRep& rep, const Cocycle& u, const Word& zeta, double tol) {
  Mat3 h = rep.evaluate(zeta);
  Eigen::Matrix<double, 9, 9> jac =
      ad9(h) - Eigen::Matrix<double, 9, 9>::Identity();
  Eigen::VectorXd rhs = vec9(extend(rep, u, zeta));
  Eigen::VectorXd x = min_norm_solve(jac, rhs, 1e-8);
  if ((jac * x - rhs).norm() > tol)
    throw NotParabolicError("cocycle value is not in the image of Ad - 1");
  return unvec9(x);
}

Cocycle restrict_cocycle(const GroupRep& ambient, const Cocycle& u, const InclusionMap& inc) {
  Cocycle out;
  for (const auto& [g, w] : inc.images) out.values[g] = extend(ambient, u, w);
  return out;
}

}  // namespace orbisymp
