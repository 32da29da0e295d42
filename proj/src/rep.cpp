#include "orbisymp/rep.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "orbisymp/errors.hpp"

namespace orbisymp {

namespace {

constexpr double kPi = 3.14159265358979323846;

Mat3 conjugation_action(const Mat3& g, const Mat3& x) { return g * x * g.inverse(); }

// 9x9 matrix of X -> g X g^{-1} - X on vec9 coordinates.
Eigen::Matrix<double, 9, 9> ad_minus_identity(const Mat3& g) {
  Eigen::Matrix<double, 9, 9> a;
  Mat3 ginv = g.inverse();
  for (int j = 0; j < 9; ++j) {
    Mat3 e = unvec9(Eigen::Matrix<double, 9, 1>::Unit(j));
    a.col(j) = vec9(g * e * ginv - e);
  }
  return a;
}

// Relator words telescope: their partial products reach norms far above the
// norm of the final value, so a double-precision product floors the
// measurable defect near eps times the partial-product scale. Extended
// precision keeps the measurement (and hence the refinement line search)
// sensitive down to the spacing of the stored double entries.
using Mat3X = Eigen::Matrix<long double, 3, 3>;

Mat3X evaluate_extended(const GroupRep& rep, const Word& w) {
  Mat3X out = Mat3X::Identity();
  for (const Letter& l : w.letters()) {
    auto it = rep.matrices.find(l.gen);
    if (it == rep.matrices.end())
      throw Error("representation missing generator " + name(l.gen));
    Mat3X m = it->second.cast<long double>();
    out = out * ((l.exp == 1) ? m : Mat3X(m.inverse()));
  }
  return out;
}

double relator_defect(const GroupRep& rep, const Word& w) {
  return static_cast<double>((evaluate_extended(rep, w) - Mat3X::Identity()).norm());
}

}  // namespace

Mat3 GroupRep::evaluate(const Word& w) const {
  Mat3 out = Mat3::Identity();
  for (const Letter& l : w.letters()) {
    auto it = matrices.find(l.gen);
    if (it == matrices.end()) throw Error("representation missing generator " + name(l.gen));
    out *= (l.exp == 1) ? it->second : it->second.inverse().eval();
  }
  return out;
}

double relation_residual(const GroupRep& rep) {
  double res = relator_defect(rep, canonical_relator(rep.signature));
  for (const Word& t : torsion_relators(rep.signature))
    res = std::max(res, relator_defect(rep, t));
  return res;
}

Mat3 evaluate_accurate(const GroupRep& rep, const Word& w) {
  return evaluate_extended(rep, w).cast<double>();
}

HypInvariants classify(const Mat3& m, double tol) {
  if (std::abs(m.determinant() - 1.0) > 1e-6)
    throw NonHyperbolicError("matrix determinant is not 1");
  Eigen::EigenSolver<Mat3> es(m);
  if (es.info() != Eigen::Success) throw NonHyperbolicError("eigenvalue computation failed");

  std::array<int, 3> order = {0, 1, 2};
  auto vals = es.eigenvalues();
  for (int i = 0; i < 3; ++i) {
    if (std::abs(vals(i).imag()) > tol * (1.0 + std::abs(vals(i).real())))
      throw NonHyperbolicError("complex spectrum");
    if (vals(i).real() <= 0.0) throw NonHyperbolicError("non-positive spectrum");
  }
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return vals(a).real() > vals(b).real(); });

  HypInvariants inv;
  for (int i = 0; i < 3; ++i) inv.eigenvalues(i) = vals(order[i]).real();
  double scale = inv.eigenvalues(0);
  for (int i = 0; i < 2; ++i)
    if ((inv.eigenvalues(i) - inv.eigenvalues(i + 1)) < tol * scale)
      throw ClusteredSpectrumError("eigenvalue gap below tolerance");

  Mat3 v;
  for (int i = 0; i < 3; ++i) {
    Eigen::Vector3cd col = es.eigenvectors().col(order[i]);
    // Real simple spectrum: eigenvectors are real up to a scalar.
    int pivot = 0;
    col.cwiseAbs().maxCoeff(&pivot);
    col /= col(pivot);
    v.col(i) = col.real();
  }
  Mat3 vinv = v.inverse();
  for (int i = 0; i < 3; ++i) inv.projectors[i] = v.col(i) * vinv.row(i);

  inv.ell = std::log(inv.eigenvalues(0) / inv.eigenvalues(2));
  inv.middle = std::log(inv.eigenvalues(1));
  return inv;
}

Mat3 goldman_derivative(const Mat3& h, InvariantFlavor flavor, double tol) {
  HypInvariants inv = classify(h, tol);
  if (flavor == InvariantFlavor::Length) return inv.projectors[0] - inv.projectors[2];
  return inv.projectors[1] - Mat3::Identity() / 3.0;
}

// --- Constructors ---

namespace {

GroupRep rep_from_sl2(const OrbifoldSignature& sig, const std::vector<Mat2>& images) {
  GroupRep rep;
  rep.signature = sig;
  std::vector<Generator> gens = generator_list(sig);
  for (std::size_t i = 0; i < gens.size(); ++i) rep.matrices[gens[i]] = adjoint_so21(images[i]);
  return rep;
}

// Damped Gauss-Newton driver shared by the refinement entry points: central
// finite-difference Jacobian in chart coordinates, truncated min-norm step
// (near-null directions are gauge freedom and must not blow up the step),
// halving line search on the residual norm. Returns the best state found
// together with its residual norm; a stalled line search ends the loop, so
// callers decide whether the achieved residual is acceptable.
template <typename State, typename ApplyFn, typename ResFn>
std::pair<State, double> refine_loop(State st, int dim, const ApplyFn& apply,
                                     const ResFn& residual, const RefineOptions& opts) {
  Eigen::VectorXd res = residual(st);
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    if (res.norm() <= opts.target_residual) break;
    Eigen::MatrixXd jac(res.size(), dim);
    Eigen::VectorXd delta = Eigen::VectorXd::Zero(dim);
    for (int d = 0; d < dim; ++d) {
      delta(d) = opts.fd_step;
      Eigen::VectorXd plus = residual(apply(st, delta));
      delta(d) = -opts.fd_step;
      Eigen::VectorXd minus = residual(apply(st, delta));
      delta(d) = 0.0;
      jac.col(d) = (plus - minus) / (2.0 * opts.fd_step);
    }
    Eigen::VectorXd step = min_norm_solve(jac, -res, 1e-8);
    double scale = 1.0;
    bool improved = false;
    for (int bt = 0; bt < 20 && !improved; ++bt, scale /= 2.0) {
      Eigen::VectorXd scaled = scale * step;
      State trial = apply(st, scaled);
      Eigen::VectorXd trial_res = residual(trial);
      if (trial_res.norm() < res.norm()) {
        st = std::move(trial);
        res = std::move(trial_res);
        improved = true;
      }
    }
    if (!improved) break;
  }
  return {std::move(st), res.norm()};
}

// refine_loop followed by the hard target check most entry points want.
template <typename State, typename ApplyFn, typename ResFn>
State refine_to_target(State st, int dim, const ApplyFn& apply, const ResFn& residual,
                       const RefineOptions& opts, const char* what) {
  auto [out, achieved] = refine_loop(std::move(st), dim, apply, residual, opts);
  if (achieved > opts.target_residual)
    throw NewtonDivergedError(std::string(what) + " did not reach the target residual",
                              opts.max_iterations, achieved);
  return out;
}

}  // namespace

GroupRep fuchsian_triangle(int p, int q, int r) {
  OrbifoldSignature sig{0, 0, {p, q, r}};
  validate(sig);

  double alpha = kPi / p, beta = kPi / q, gamma = kPi / r;
  double cosh_ab =
      (std::cos(alpha) * std::cos(beta) + std::cos(gamma)) / (std::sin(alpha) * std::sin(beta));
  double cosh_ac =
      (std::cos(alpha) * std::cos(gamma) + std::cos(beta)) / (std::sin(alpha) * std::sin(gamma));
  double side_ab = std::acosh(cosh_ab);
  double side_ac = std::acosh(cosh_ac);

  Mat2 to_a = Mat2::Identity();
  Mat2 to_b = translation_along_axis(side_ab);
  for (double mirror : {1.0, -1.0}) {
    Mat2 to_c = rotation_about_i(mirror * alpha / 2.0) * translation_along_axis(side_ac);
    for (double sense : {1.0, -1.0}) {
      auto rot = [&](const Mat2& g, int ord) -> Mat2 {
        return g * rotation_about_i(sense * kPi / ord) * g.inverse();
      };
      GroupRep rep = rep_from_sl2(sig, {rot(to_a, p), rot(to_b, q), rot(to_c, r)});
      if (relation_residual(rep) < 1e-10) {
        rep.residual_tol = 1e-10;
        return rep;
      }
    }
  }
  throw Error("triangle rotation generators failed to close up");
}

GroupRep fuchsian_cone_sphere(const std::vector<int>& orders,
                              const std::vector<std::complex<double>>& centers) {
  OrbifoldSignature sig{0, 0, orders};
  validate(sig);
  const int c = sig.cone_count();
  if (static_cast<int>(centers.size()) != c)
    throw Error("need one rotation center per cone point");

  std::vector<Mat2> conj(c);
  std::vector<Mat2> rot(c);
  for (int k = 0; k < c; ++k) {
    conj[k] = move_i_to(centers[k]);
    rot[k] = rotation_about_i(kPi / orders[k]);
  }

  auto residual = [&](const std::vector<Mat2>& g) {
    Mat3 prod = Mat3::Identity();
    for (int k = 0; k < c; ++k) prod *= adjoint_so21(g[k] * rot[k] * g[k].inverse().eval());
    return Eigen::VectorXd(vec9(prod - Mat3::Identity()));
  };

  // Coincident rotation centers make the seed's Jacobian columns coincide, so
  // the symmetric iteration can never separate the generators; report that as
  // divergence up front instead of grinding on a plateau.
  for (int a = 0; a < c; ++a)
    for (int b = a + 1; b < c; ++b)
      if (std::abs(centers[a] - centers[b]) < 1e-12)
        throw NewtonDivergedError("coincident rotation centers leave the refinement singular", 0,
                                  residual(conj).norm());

  auto apply = [&](const std::vector<Mat2>& g, const Eigen::VectorXd& delta) {
    std::vector<Mat2> out = g;
    for (int k = 0; k < c; ++k)
      out[k] = g[k] * matrix_exp(Mat2(sl2_element(delta.segment<3>(3 * k))));
    return out;
  };

  RefineOptions opts;
  conj = refine_to_target(std::move(conj), 3 * c, apply, residual, opts, "cone-sphere refinement");

  std::vector<Mat2> images(c);
  for (int k = 0; k < c; ++k) images[k] = conj[k] * rot[k] * conj[k].inverse().eval();
  GroupRep rep = rep_from_sl2(sig, images);
  rep.residual_tol = 1e-10;
  return rep;
}

GroupRep fuchsian_genus_two(double len_x, double len_y) {
  // One-holed torus: translations along perpendicular axes crossing at i.
  Mat2 x0 = translation_along_axis(len_x);
  Mat2 y0;
  y0 << std::cosh(len_y / 2.0), std::sinh(len_y / 2.0), std::sinh(len_y / 2.0),
      std::cosh(len_y / 2.0);
  Mat2 k = x0 * y0 * x0.inverse() * y0.inverse();
  if (std::abs(k.trace()) <= 2.0 + 1e-9)
    throw Error("handle commutator is not hyperbolic; enlarge the translation lengths");

  // Move the commutator axis onto the imaginary axis: in the eigenvector
  // frame of k the commutator is diagonal, so the half-turn about any point
  // of the axis is the exact quarter-rotation block R. That keeps the second
  // handle the same size as the first and the relator closure exact up to
  // the accuracy of the frame, which the polish below removes.
  double tr = k.trace();
  double disc = std::sqrt(tr * tr - 4.0);
  auto eigvec = [&](double lam) {
    Eigen::Vector2d a(k(0, 1), lam - k(0, 0));
    Eigen::Vector2d b(lam - k(1, 1), k(1, 0));
    Eigen::Vector2d v = (a.norm() >= b.norm()) ? a : b;
    return Eigen::Vector2d(v / v.norm());
  };
  Mat2 frame;
  frame.col(0) = eigvec((tr + disc) / 2.0);
  frame.col(1) = eigvec((tr - disc) / 2.0);
  if (frame.determinant() < 0.0) frame.col(0) = -frame.col(0);
  frame /= std::sqrt(frame.determinant());

  // Slide the base point along the axis to balance the conjugated generator
  // norms: scaling the frame columns by (a, 1/a) scales the off-diagonal
  // entries of each conjugated generator by a^{-2} and a^{2}.
  Mat2 xi = frame.inverse() * x0 * frame;
  Mat2 yi = frame.inverse() * y0 * frame;
  double upper = xi(0, 1) * xi(0, 1) + yi(0, 1) * yi(0, 1);
  double lower = xi(1, 0) * xi(1, 0) + yi(1, 0) * yi(1, 0);
  double a = std::pow(upper / lower, 1.0 / 8.0);
  Mat2 balance = Mat2::Zero();
  balance(0, 0) = a;
  balance(1, 1) = 1.0 / a;
  frame = frame * balance;

  Mat2 x1 = frame.inverse() * x0 * frame;
  Mat2 y1 = frame.inverse() * y0 * frame;
  Mat2 quarter = rotation_about_i(kPi / 2.0);  // exact half-turn about i

  // Polish the first-handle matrices so the genus-2 relator closes to the
  // floating-point floor; the second handle is the exact quarter-turn
  // conjugate, so only six parameters move.
  auto assemble2 = [&](const std::array<Mat2, 2>& g) {
    std::array<Mat2, 4> out;
    out[0] = g[0];
    out[1] = g[1];
    out[2] = quarter * g[0] * quarter.inverse();
    out[3] = quarter * g[1] * quarter.inverse();
    return out;
  };
  auto residual = [&](const std::array<Mat2, 2>& g) {
    std::array<Mat2, 4> m = assemble2(g);
    Mat2 rel = m[0] * m[1] * m[0].inverse() * m[1].inverse() * m[2] * m[3] * m[2].inverse() *
               m[3].inverse();
    Mat2 diff = rel - Mat2::Identity();
    return Eigen::VectorXd(Eigen::Map<Eigen::Vector4d>(diff.data()));
  };
  auto apply = [&](const std::array<Mat2, 2>& g, const Eigen::VectorXd& delta) {
    std::array<Mat2, 2> out;
    for (int i = 0; i < 2; ++i)
      out[i] = matrix_exp(Mat2(sl2_element(delta.segment<3>(3 * i)))) * g[i];
    return out;
  };
  RefineOptions opts;
  opts.target_residual = 1e-13;
  std::array<Mat2, 2> handle =
      refine_to_target(std::array<Mat2, 2>{x1, y1}, 6, apply, residual, opts, "genus-two seed polish");

  std::array<Mat2, 4> imgs = assemble2(handle);
  GroupRep rep = rep_from_sl2(OrbifoldSignature{2, 0, {}},
                              {imgs[0], imgs[1], imgs[2], imgs[3]});
  rep.residual_tol = 1e-10;
  return rep;
}

GroupRep fuchsian_pants(double len1, double len2) {
  Mat2 z1 = translation_along_axis(len1);
  Mat2 z2;
  z2 << std::cosh(len2 / 2.0), std::sinh(len2 / 2.0), std::sinh(len2 / 2.0),
      std::cosh(len2 / 2.0);
  Mat2 z3 = (z1 * z2).inverse();
  GroupRep rep = rep_from_sl2(OrbifoldSignature{0, 3, {}}, {z1, z2, z3});
  rep.residual_tol = 1e-10;
  return rep;
}

GroupRep restrict_rep(const GroupRep& ambient, const OrbifoldSignature& piece_sig,
                      const InclusionMap& inclusion) {
  GroupRep rep;
  rep.signature = piece_sig;
  for (const Generator& g : generator_list(piece_sig))
    rep.matrices[g] = ambient.evaluate(inclusion.images.at(g));
  // Evaluating inclusion words amplifies the ambient residual by the norms of
  // the conjugating prefixes, so measure instead of inheriting the tolerance.
  rep.residual_tol = std::max(ambient.residual_tol, 10.0 * relation_residual(rep));
  return rep;
}

// --- Refinement ---

RotationConjugacy fit_rotation_conjugator(const Mat3& s, int order) {
  RotationConjugacy out;
  if (order < 2) throw Error("rotation order must be at least 2");

  if (order == 2) {
    // Spectrum -1, -1, 1: split the near-eigenspaces with SVDs.
    Eigen::JacobiSVD<Mat3> minus(s + Mat3::Identity(), Eigen::ComputeFullV);
    Eigen::JacobiSVD<Mat3> plus(s - Mat3::Identity(), Eigen::ComputeFullV);
    Mat3 h;
    h.col(0) = minus.matrixV().col(2);
    h.col(1) = minus.matrixV().col(1);
    h.col(2) = plus.matrixV().col(2);
    if (h.determinant() < 0.0) h = -h;
    if (std::abs(h.determinant()) < 1e-8)
      throw Error("order-two conjugacy fit is degenerate");
    out.conjugator = h;
    out.representative = Mat3::Identity();
    out.representative.diagonal() << -1.0, -1.0, 1.0;
    out.amount = 1;
    return out;
  }

  Eigen::EigenSolver<Mat3> es(s);
  int pair = -1, fixed = -1;
  for (int i = 0; i < 3; ++i) {
    if (es.eigenvalues()(i).imag() > 1e-8)
      pair = i;
    else if (std::abs(es.eigenvalues()(i).imag()) <= 1e-8)
      fixed = i;
  }
  if (pair < 0 || fixed < 0)
    throw Error("matrix is not near a rotation conjugacy class");
  double phi = std::arg(es.eigenvalues()(pair));
  int amount = static_cast<int>(std::lround(phi * order / (2.0 * kPi)));
  if (amount < 1 || amount > order - 1 ||
      std::abs(phi - 2.0 * kPi * amount / order) > 0.5 / order)
    throw Error("rotation amount does not match the requested order");

  // Only a common complex rescaling of the eigenvector preserves the exact
  // rotation block, so balance the real and imaginary parts with a phase
  // (making them orthogonal) and one shared magnitude.
  Eigen::Vector3cd v = es.eigenvectors().col(pair);
  Eigen::Vector3d re = v.real(), im = v.imag();
  double theta = 0.5 * std::atan2(-2.0 * re.dot(im), re.squaredNorm() - im.squaredNorm());
  v *= std::complex<double>(std::cos(theta), std::sin(theta));
  re = v.real();
  im = v.imag();
  double mag = std::sqrt(re.norm() * im.norm());
  if (mag < 1e-12) throw Error("rotation conjugacy fit is degenerate");
  Mat3 h;
  h.col(0) = re / mag;
  h.col(1) = -im / mag;
  h.col(2) = es.eigenvectors().col(fixed).real().normalized();
  if (h.determinant() < 0.0) h = -h;
  if (std::abs(h.determinant()) < 1e-8) throw Error("rotation conjugacy fit is degenerate");

  double psi = 2.0 * kPi * amount / order;
  Mat3 q = Mat3::Identity();
  q(0, 0) = std::cos(psi);
  q(0, 1) = -std::sin(psi);
  q(1, 0) = std::sin(psi);
  q(1, 1) = std::cos(psi);
  out.conjugator = h;
  out.representative = q;
  out.amount = amount;
  return out;
}

namespace {

struct RefineState {
  std::vector<Generator> free_gens;
  std::vector<Generator> cone_gens;
  std::map<Generator, Mat3> free_mats;
  std::vector<Mat3> cone_conj;
  std::vector<Mat3> cone_repr;

  GroupRep assemble(const OrbifoldSignature& sig, double tol) const {
    GroupRep rep;
    rep.signature = sig;
    rep.residual_tol = tol;
    for (const auto& [g, m] : free_mats) rep.matrices[g] = m;
    for (std::size_t k = 0; k < cone_gens.size(); ++k)
      rep.matrices[cone_gens[k]] =
          cone_conj[k] * cone_repr[k] * cone_conj[k].inverse();
    return rep;
  }
};

Eigen::VectorXd refine_residual(const RefineState& st, const OrbifoldSignature& sig) {
  GroupRep rep = st.assemble(sig, 1.0);
  Mat3X defect = evaluate_extended(rep, canonical_relator(sig)) - Mat3X::Identity();
  return Eigen::VectorXd(vec9(Mat3(defect.cast<double>())));
}

// Continuous refinement bottoms out where the line search can no longer see
// through storage quantization: every trial re-rounds whole matrices, which
// perturbs the relator by roughly its Jacobian norm times half an ulp per
// entry. Below that scale the minimization continues on the lattice of
// representable matrices: greedily nudge single entries by a few ulps while
// the summed squared relator defects (surface and torsion, measured in
// extended precision) keep dropping.
GroupRep lattice_polish(GroupRep rep, double target, int max_sweeps) {
  std::vector<Word> relators;
  relators.push_back(canonical_relator(rep.signature));
  for (const Word& t : torsion_relators(rep.signature)) relators.push_back(t);

  auto objective = [&]() {
    long double sum = 0;
    for (const Word& w : relators)
      sum += (evaluate_extended(rep, w) - Mat3X::Identity()).squaredNorm();
    return sum;
  };

  auto nudged = [](double x, int ulps) {
    double to = ulps > 0 ? std::numeric_limits<double>::infinity()
                         : -std::numeric_limits<double>::infinity();
    for (int k = std::abs(ulps); k > 0; --k) x = std::nextafter(x, to);
    return x;
  };

  long double best = objective();
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (relation_residual(rep) <= target) break;
    bool improved = false;
    for (auto& [g, m] : rep.matrices) {
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          for (int step : {4, -4, 2, -2, 1, -1}) {
            double saved = m(i, j);
            m(i, j) = nudged(saved, step);
            long double trial = objective();
            if (trial < best) {
              best = trial;
              improved = true;
            } else {
              m(i, j) = saved;
            }
          }
        }
      }
    }
    if (!improved) break;
  }
  return rep;
}

}  // namespace

GroupRep newton_refine(const GroupRep& rep, const RefineOptions& opts) {
  const OrbifoldSignature& sig = rep.signature;
  RefineState st;
  for (const Generator& g : generator_list(sig)) {
    if (g.kind == GenKind::S) {
      RotationConjugacy fit =
          fit_rotation_conjugator(rep.matrices.at(g), sig.cone_orders[g.index - 1]);
      st.cone_gens.push_back(g);
      st.cone_conj.push_back(fit.conjugator);
      st.cone_repr.push_back(fit.representative);
    } else {
      st.free_gens.push_back(g);
      st.free_mats[g] = rep.matrices.at(g);
    }
  }

  const auto& basis = sl3_basis();
  const int nf = static_cast<int>(st.free_gens.size());
  const int nc = static_cast<int>(st.cone_gens.size());
  const int dim = 8 * (nf + nc);

  // Trial states are produced with one extended-precision product and a
  // single rounding to storage; composing in working precision instead puts a
  // noise floor on the line search well above the storage quantization.
  auto moved_by = [](const Mat3& xi, const Mat3& m) {
    return Mat3((matrix_exp(xi).cast<long double>() * m.cast<long double>()).cast<double>());
  };
  auto perturbed = [&](const RefineState& base, const Eigen::VectorXd& delta) {
    RefineState out = base;
    for (int i = 0; i < nf; ++i) {
      Mat3 xi = Mat3::Zero();
      for (int d = 0; d < 8; ++d) xi += delta(8 * i + d) * basis[d];
      out.free_mats[base.free_gens[i]] = moved_by(xi, base.free_mats.at(base.free_gens[i]));
    }
    for (int k = 0; k < nc; ++k) {
      Mat3 eta = Mat3::Zero();
      for (int d = 0; d < 8; ++d) eta += delta(8 * (nf + k) + d) * basis[d];
      out.cone_conj[k] = moved_by(eta, base.cone_conj[k]);
    }
    return out;
  };

  auto residual = [&](const RefineState& state) { return refine_residual(state, sig); };
  auto [refined, achieved] = refine_loop(std::move(st), dim, perturbed, residual, opts);
  (void)achieved;  // final acceptance re-measures with torsion relators included
  GroupRep out = refined.assemble(sig, std::max(opts.target_residual, rep.residual_tol));
  if (relation_residual(out) > opts.target_residual)
    out = lattice_polish(std::move(out), opts.target_residual, 60);
  double final_residual = relation_residual(out);
  if (final_residual > opts.target_residual)
    throw NewtonDivergedError("representation refinement did not reach the target residual",
                              opts.max_iterations, final_residual);
  return out;
}

GroupRep deform(const GroupRep& rep, const std::map<Generator, Mat3>& tangent, double t,
                const RefineOptions& opts) {
  if (t == 0.0) return rep;
  GroupRep moved = rep;
  for (const Generator& g : generator_list(rep.signature)) {
    const Mat3& m = rep.matrices.at(g);
    Mat3 u = tangent.at(g);
    if (g.kind == GenKind::S) {
      // Stay on the conjugacy class: find W with (1 - Ad_s) W = t u(s) and
      // conjugate by exp(W); first order agrees with exp(t u(s)) s.
      Eigen::Matrix<double, 9, 9> a = -ad_minus_identity(m);
      Eigen::VectorXd rhs = vec9(t * u);
      Eigen::VectorXd w = min_norm_solve(a, rhs, 1e-10);
      if ((a * w - rhs).norm() > 1e-8 * (1.0 + rhs.norm()))
        throw Error("tangent at a cone generator is not a conjugation direction");
      Mat3 conj = matrix_exp(Mat3(unvec9(w)));
      moved.matrices[g] = conj * m * conj.inverse();
    } else {
      moved.matrices[g] = matrix_exp(Mat3(t * u)) * m;
    }
  }
  return newton_refine(moved, opts);
}

int centralizer_dimension(const GroupRep& rep, double tol) {
  const auto& basis = sl3_basis();
  const int rows = 9 * static_cast<int>(rep.matrices.size());
  Eigen::MatrixXd stacked(rows, 8);
  int r = 0;
  for (const auto& [g, m] : rep.matrices) {
    (void)g;
    for (int d = 0; d < 8; ++d)
      stacked.block<9, 1>(r, d) = vec9(conjugation_action(m, basis[d]) - basis[d]);
    r += 9;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked);
  int null_dim = 0;
  double scale = std::max(1.0, svd.singularValues()(0));
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) < tol * scale) ++null_dim;
  return null_dim;
}

}  // namespace orbisymp
