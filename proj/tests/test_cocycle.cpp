#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "doctest.h"
#include "orbisymp/cocycle.hpp"
#include "orbisymp/errors.hpp"
#include "orbisymp/linalg.hpp"
#include "orbisymp/rep.hpp"
#include "orbisymp/splitting.hpp"
#include "orbisymp/words.hpp"

using namespace orbisymp;

namespace {

Word random_word(std::mt19937& rng, const OrbifoldSignature& sig, int len) {
  std::vector<Generator> gens = generator_list(sig);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(gens.size()) - 1);
  std::uniform_int_distribution<int> sign(0, 1);
  Word w;
  for (int i = 0; i < len; ++i)
    w = w * Word({Letter{gens[pick(rng)], sign(rng) ? 1 : -1}});
  return w;
}

Mat3 random_traceless(std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat3 x;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) x(i, j) = gauss(rng);
  x -= (x.trace() / 3.0) * Mat3::Identity();
  return x;
}

Cocycle random_assignment(std::mt19937& rng, const OrbifoldSignature& sig) {
  Cocycle u;
  for (const Generator& g : generator_list(sig)) u.values[g] = random_traceless(rng);
  return u;
}

Cocycle random_combination(std::mt19937& rng, const CocycleSpace& space) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Cocycle u;
  std::vector<Generator> gens = generator_list(space.rep.signature);
  for (const Generator& g : gens) u.values[g] = Mat3::Zero();
  for (const Cocycle& b : space.basis) {
    double c = gauss(rng);
    for (const Generator& g : gens) u.values[g] += c * b.value(g);
  }
  return u;
}

// Brute-force kernel dimension via full-pivot LU, an algorithm independent of
// the singular-value route used by the library.
int lu_kernel_dimension(const Eigen::MatrixXd& m) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(1e-8);
  return static_cast<int>(lu.dimensionOfKernel());
}

Mat3 block_rotation(double angle) {
  Mat3 r = Mat3::Identity();
  r(0, 0) = std::cos(angle);
  r(0, 1) = -std::sin(angle);
  r(1, 0) = std::sin(angle);
  r(1, 1) = std::cos(angle);
  return r;
}

OrbifoldSignature genus2_sig() { return OrbifoldSignature{2, 0, {}}; }

GroupRep cone_sphere_2233() {
  return fuchsian_cone_sphere({2, 2, 3, 3}, circle_centers(4, 1.2));
}

}  // namespace

TEST_CASE("extension rules") {
  // Rotation generators keep every partial product small, so the two defining
  // rules can be checked on long random words without rounding amplification
  // (the accumulated error grows with the squared norm of the partial
  // products, which for surface-group generators quickly dominates).
  GroupRep rep = fuchsian_triangle(3, 3, 4);
  std::mt19937 rng(41);
  Cocycle u = random_assignment(rng, rep.signature);

  SUBCASE("the empty word extends to zero") {
    CHECK(extend(rep, u, Word()).norm() == 0.0);
  }
  SUBCASE("a generator cancels its inverse") {
    for (const Generator& g : generator_list(rep.signature)) {
      Word cancel = Word::gen(g) * Word::gen(g, -1);
      CHECK(cancel.is_identity());
      CHECK(extend(rep, u, cancel).norm() == 0.0);
      // Unreduced form via the two rules directly: u(g) + Ad_g u(g^{-1}).
      Mat3 m = rep.matrices.at(g);
      Mat3 by_rules = u.value(g) + m * (-(m.inverse() * u.value(g) * m)) * m.inverse();
      CHECK(by_rules.norm() < 1e-12 * (1.0 + u.value(g).norm() * m.norm() * m.norm()));
    }
  }
  SUBCASE("product rule on random words") {
    for (int trial = 0; trial < 20; ++trial) {
      Word a = random_word(rng, rep.signature, 5);
      Word b = random_word(rng, rep.signature, 5);
      Mat3 pa = rep.evaluate(a);
      Mat3 lhs = extend(rep, u, a * b);
      Mat3 rhs = extend(rep, u, a) + pa * extend(rep, u, b) * pa.inverse();
      CHECK((lhs - rhs).norm() < 1e-10 * (1.0 + rhs.norm() + pa.norm() * pa.norm()));
    }
  }
  SUBCASE("coboundaries extend to conjugation differences") {
    Mat3 x = random_traceless(rng);
    Cocycle dx = coboundary(rep, x);
    for (int trial = 0; trial < 20; ++trial) {
      Word w = random_word(rng, rep.signature, 8);
      Mat3 pw = rep.evaluate(w);
      Mat3 expected = pw * x * pw.inverse() - x;
      CHECK((extend(rep, dx, w) - expected).norm() <
            1e-10 * (1.0 + pw.norm() * pw.norm() * x.norm()));
    }
  }
}

TEST_CASE("extension agrees with the free-derivative expansion") {
  GroupRep rep = fuchsian_triangle(3, 3, 4);
  std::mt19937 rng(43);
  Cocycle u = random_assignment(rng, rep.signature);
  for (int trial = 0; trial < 20; ++trial) {
    Word w = random_word(rng, rep.signature, 7);
    Mat3 direct = extend(rep, u, w);
    Mat3 from_derivatives = Mat3::Zero();
    for (const Generator& g : generator_list(rep.signature)) {
      Eigen::Matrix<double, 9, 9> m = ad9_ring(rep, fox_derivative(w, g));
      from_derivatives += unvec9(m * vec9(u.value(g)));
    }
    CHECK((direct - from_derivatives).norm() < 1e-10 * (1.0 + direct.norm()));
  }
}

TEST_CASE("ring extension is coefficient-linear") {
  GroupRep rep = fuchsian_triangle(2, 3, 7);
  std::mt19937 rng(47);
  Cocycle u = random_assignment(rng, rep.signature);
  Word a = random_word(rng, rep.signature, 4);
  Word b = random_word(rng, rep.signature, 6);
  GroupRingElement ea(a), eb(b);
  GroupRingElement combo = ea + Rational(3, 2) * eb;
  Mat3 lhs = extend_ring(rep, u, combo);
  Mat3 rhs = extend_ring(rep, u, ea) + 1.5 * extend_ring(rep, u, eb);
  CHECK((lhs - rhs).norm() < 1e-12 * (1.0 + rhs.norm()));
  CHECK(extend_ring(rep, u, GroupRingElement::zero()).norm() == 0.0);
}

TEST_CASE("coboundaries") {
  GroupRep rep = fuchsian_genus_two();
  std::mt19937 rng(53);

  SUBCASE("zero input gives the zero cocycle") {
    Cocycle z = coboundary(rep, Mat3::Zero());
    for (const auto& [g, v] : z.values) CHECK(v.norm() == 0.0);
  }
  SUBCASE("coboundaries satisfy the relator condition") {
    for (int trial = 0; trial < 5; ++trial) {
      Cocycle dx = coboundary(rep, random_traceless(rng));
      // The conjugation difference of X along the relator word equals
      // (Ad_{rho(r)} - 1)X, so this residual is floored by the accuracy with
      // which the matrices satisfy the relation, amplified by the conjugations
      // performed during the extension.
      CHECK(cocycle_relation_residual(rep, dx) < 1e-8);
    }
  }
  SUBCASE("the coboundary map is injective at an irreducible representation") {
    REQUIRE(centralizer_dimension(rep) == 0);
    CocycleSpace b1 = b1_basis(rep);
    CHECK(b1.dimension() == 8);
    CHECK(b1.kind == CocycleKind::Coboundaries);
  }
}

TEST_CASE("torsion value subspaces") {
  SUBCASE("order two, exact rotation") {
    Mat3 s = Mat3::Identity();
    s(0, 0) = -1.0;
    s(1, 1) = -1.0;
    Eigen::MatrixXd averaged =
        Eigen::MatrixXd(Eigen::Matrix<double, 9, 9>::Identity()) + Eigen::MatrixXd(ad9(s));
    CHECK(lu_kernel_dimension(averaged) == 4);
  }
  SUBCASE("order three, exact rotation") {
    Mat3 s = block_rotation(2.0 * M_PI / 3.0);
    Eigen::MatrixXd averaged = Eigen::MatrixXd(Eigen::Matrix<double, 9, 9>::Identity()) +
                               Eigen::MatrixXd(ad9(s)) + Eigen::MatrixXd(ad9(s * s));
    CHECK(lu_kernel_dimension(averaged) == 6);
  }
  SUBCASE("representation cone points match the brute-force counts") {
    GroupRep rep = fuchsian_triangle(2, 3, 7);
    Eigen::MatrixXd t1 = torsion_subspace(rep, 1);
    Eigen::MatrixXd t2 = torsion_subspace(rep, 2);
    Eigen::MatrixXd t3 = torsion_subspace(rep, 3);
    CHECK(t1.cols() == 4);
    CHECK(t2.cols() == 6);
    CHECK(t3.cols() == 6);
    // Columns are orthonormal and genuinely killed by the averaging operator.
    for (const auto* t : {&t1, &t2, &t3}) {
      CHECK(((*t).transpose() * (*t) - Eigen::MatrixXd::Identity(t->cols(), t->cols())).norm() <
            1e-12);
    }
    Mat3 s2 = rep.matrices.at(Generator{GenKind::S, 2});
    for (int k = 0; k < t2.cols(); ++k) {
      Mat3 v = unvec9(t2.col(k));
      Mat3 killed = v + s2 * v * s2.inverse() + (s2 * s2) * v * (s2 * s2).inverse();
      CHECK(killed.norm() < 1e-9);
    }
  }
  SUBCASE("identity holonomy has no torsion directions") {
    GroupRep rep = fuchsian_triangle(2, 3, 7);
    rep.matrices[Generator{GenKind::S, 1}] = Mat3::Identity();
    CHECK_THROWS_AS(torsion_subspace(rep, 1), DegenerateSpectrumError);
  }
}

TEST_CASE("hyperbolic image subspaces") {
  SUBCASE("regular hyperbolic image has dimension six") {
    Mat3 h = Mat3::Zero();
    h.diagonal() << 6.0, 0.5, 1.0 / 3.0;
    Eigen::MatrixXd image = image_of_one_minus_ad(h);
    CHECK(image.cols() == 6);
    Eigen::MatrixXd op =
        Eigen::MatrixXd(Eigen::Matrix<double, 9, 9>::Identity()) - Eigen::MatrixXd(ad9(h));
    CHECK(9 - lu_kernel_dimension(op) == 6);
  }
  SUBCASE("identity has a zero-dimensional image") {
    CHECK(image_of_one_minus_ad(Mat3::Identity()).cols() == 0);
  }
  SUBCASE("image and kernel are complementary") {
    Mat3 h = Mat3::Zero();
    h.diagonal() << 6.0, 0.5, 1.0 / 3.0;
    Eigen::MatrixXd image = image_of_one_minus_ad(h);
    Eigen::MatrixXd op =
        Eigen::MatrixXd(Eigen::Matrix<double, 9, 9>::Identity()) - Eigen::MatrixXd(ad9(h));
    Eigen::FullPivLU<Eigen::MatrixXd> lu(op);
    lu.setThreshold(1e-8);
    Eigen::MatrixXd kernel = lu.kernel();
    Eigen::MatrixXd joint(9, image.cols() + kernel.cols());
    joint << image, kernel;
    CHECK(image.cols() + kernel.cols() == 9);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(joint);
    CHECK(svd.singularValues()(8) > 1e-8 * svd.singularValues()(0));
  }
  SUBCASE("rotation holonomy is rejected") {
    GroupRep rep = fuchsian_triangle(2, 3, 7);
    CHECK_THROWS_AS(boundary_image_subspace(rep, Word::gen(Generator{GenKind::S, 1})),
                    NonHyperbolicError);
  }
}

TEST_CASE("cocycle space dimensions") {
  SUBCASE("closed genus two") {
    GroupRep rep = fuchsian_genus_two();
    CocycleSpace z1 = z1_basis(rep);
    CocycleSpace b1 = b1_basis(rep);
    CHECK(z1.dimension() == 24);
    CHECK(b1.dimension() == 8);
    CHECK(z1.dimension() - b1.dimension() == 16);
    CHECK(class_complement(z1).dimension() == 16);
    for (const Cocycle& u : z1.basis) CHECK(cocycle_relation_residual(rep, u) < 1e-9);

    // Basis orthonormality in the Frobenius inner product on generator tuples.
    std::vector<Generator> gens = generator_list(rep.signature);
    Eigen::MatrixXd gram(z1.dimension(), z1.dimension());
    for (int a = 0; a < z1.dimension(); ++a)
      for (int b = 0; b < z1.dimension(); ++b) {
        double dot = 0.0;
        for (const Generator& g : gens)
          dot += (z1.basis[a].value(g).transpose() * z1.basis[b].value(g)).trace();
        gram(a, b) = dot;
      }
    CHECK((gram - Eigen::MatrixXd::Identity(z1.dimension(), z1.dimension())).norm() < 1e-10);
  }
  SUBCASE("cone sphere with orders 2,2,3,3") {
    GroupRep rep = cone_sphere_2233();
    CocycleSpace z1 = z1_basis(rep);
    CHECK(z1.dimension() == 12);
    CHECK(z1.dimension() - b1_basis(rep).dimension() == 4);
    CHECK(dimension_closed(rep.signature) == 4);
    for (const Cocycle& u : z1.basis) CHECK(cocycle_relation_residual(rep, u) < 1e-9);
  }
  SUBCASE("rigid triangle orbifold") {
    GroupRep rep = fuchsian_triangle(2, 3, 7);
    CocycleSpace z1 = z1_basis(rep);
    CHECK(z1.dimension() == 8);
    CHECK(z1.dimension() - b1_basis(rep).dimension() == 0);
    CHECK(class_complement(z1).dimension() == 0);
  }
  SUBCASE("pants with boundary-parabolic condition") {
    GroupRep rep = fuchsian_pants();
    std::vector<Word> boundary = {Word::gen(Generator{GenKind::Z, 1}),
                                  Word::gen(Generator{GenKind::Z, 2}),
                                  Word::gen(Generator{GenKind::Z, 3})};
    CocycleSpace z1p = z1_par_basis(rep, boundary);
    CHECK(z1p.dimension() == 10);
    CocycleSpace classes = class_complement(z1p);
    CHECK(classes.dimension() == 2);
    CHECK(classes.kind == CocycleKind::ClassComplement);
    // Constrained values stay inside the admissible image subspaces.
    for (const Cocycle& u : z1p.basis)
      for (const Word& w : boundary) {
        Eigen::MatrixXd image = boundary_image_subspace(rep, w);
        Eigen::VectorXd value = vec9(extend(rep, u, w));
        CHECK((value - image * (image.transpose() * value)).norm() < 1e-7);
      }
  }
}

TEST_CASE("splitting-curve constrained spaces") {
  SUBCASE("genus two, one separating curve") {
    GroupRep rep = fuchsian_genus_two();
    SplittingSpec spec(genus2_sig());
    spec.split_separating(0, 1, 0, 0);
    CocycleSpace z1p =
        z1_par_basis(rep, {spec.curves()[0].plus_word}, CocycleKind::ParabolicCurves);
    CHECK(z1p.dimension() == 22);
    CHECK(class_complement(z1p).dimension() == 14);
  }
  SUBCASE("genus two, full decomposition") {
    GroupRep rep = fuchsian_genus_two();
    SplittingSpec spec = pants_decomposition(genus2_sig());
    REQUIRE(spec.curves().size() == 3);
    std::vector<Word> words;
    for (const CurveRecord& c : spec.curves()) words.push_back(c.plus_word);
    CocycleSpace z1p = z1_par_basis(rep, words, CocycleKind::ParabolicCurves);
    CHECK(z1p.dimension() == 18);
    CHECK(class_complement(z1p).dimension() == 10);
  }
  SUBCASE("cone sphere, full 1-suborbifold curve") {
    GroupRep rep = cone_sphere_2233();
    SplittingSpec spec = pants_decomposition(rep.signature);
    REQUIRE(spec.curves().size() == 1);
    REQUIRE(spec.curves()[0].type == CurveType::FullSuborbifold);
    CocycleSpace z1p =
        z1_par_basis(rep, {spec.curves()[0].plus_word}, CocycleKind::ParabolicCurves);
    // The middle-invariant direction is rigid along a curve through two
    // order-two cone points, so the constraint only removes one dimension.
    CHECK(z1p.dimension() == 11);
    CHECK(class_complement(z1p).dimension() == 3);
  }
}

TEST_CASE("cyclic averaging solver") {
  GroupRep rep = cone_sphere_2233();
  std::mt19937 rng(59);
  CocycleSpace z1 = z1_basis(rep);

  SUBCASE("order two averages to minus half") {
    Eigen::MatrixXd t1 = torsion_subspace(rep, 1);
    Cocycle u;
    u.values[Generator{GenKind::S, 1}] = unvec9(t1.col(0));
    Mat3 t = solve_T(rep, u, 1);
    CHECK((t + 0.5 * unvec9(t1.col(0))).norm() < 1e-12);
  }
  SUBCASE("zero value averages to zero") {
    Cocycle u;
    CHECK(solve_T(rep, u, 2).norm() == 0.0);
  }
  SUBCASE("conjugation equation holds on cocycle basis values") {
    for (int i = 1; i <= 4; ++i) {
      Generator s{GenKind::S, i};
      Mat3 m = rep.matrices.at(s);
      for (const Cocycle& u : z1.basis) {
        Mat3 t = solve_T(rep, u, i);
        CHECK((m * t * m.inverse() - t - u.value(s)).norm() < 1e-9);
      }
    }
  }
  SUBCASE("trace pairing is independent of the centralizer ambiguity") {
    Generator s{GenKind::S, 3};
    Mat3 m = rep.matrices.at(s);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(
        Eigen::MatrixXd(Eigen::Matrix<double, 9, 9>::Identity()) - Eigen::MatrixXd(ad9(m)));
    lu.setThreshold(1e-8);
    Eigen::MatrixXd fixed = lu.kernel();
    REQUIRE(fixed.cols() > 0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const Cocycle& u = z1.basis[0];
    const Cocycle& v = z1.basis[1];
    Mat3 t = solve_T(rep, u, 3);
    double base = (t * v.value(s)).trace();
    for (int trial = 0; trial < 10; ++trial) {
      Mat3 c = Mat3::Zero();
      for (int k = 0; k < fixed.cols(); ++k) c += gauss(rng) * unvec9(fixed.col(k));
      c -= (c.trace() / 3.0) * Mat3::Identity();
      CHECK((m * c * m.inverse() - c).norm() < 1e-7);
      double shifted = ((t + c) * v.value(s)).trace();
      CHECK(std::abs(shifted - base) < 1e-9);
    }
  }
  SUBCASE("violating values are rejected") {
    Cocycle u;
    u.values[Generator{GenKind::S, 1}] = random_traceless(rng);
    CHECK_THROWS_AS(solve_T(rep, u, 1), TorsionViolationError);
  }
}

TEST_CASE("conjugation-difference solver") {
  GroupRep rep = fuchsian_pants();
  std::mt19937 rng(61);
  Word zeta = Word::gen(Generator{GenKind::Z, 1});

  SUBCASE("coboundary input recovers its potential up to the centralizer") {
    Mat3 x0 = random_traceless(rng);
    Cocycle dx = coboundary(rep, x0);
    Mat3 x = solve_X(rep, dx, zeta);
    Mat3 h = rep.evaluate(zeta);
    CHECK((h * x * h.inverse() - x - extend(rep, dx, zeta)).norm() < 1e-9);
    Mat3 gap = x - x0;
    CHECK((h * gap * h.inverse() - gap).norm() < 1e-8);
  }
  SUBCASE("zero cocycle solves to zero") {
    Cocycle zero;
    CHECK(solve_X(rep, zero, zeta).norm() == 0.0);
  }
  SUBCASE("generic cocycles are not parabolic at the boundary") {
    CocycleSpace z1 = z1_basis(rep);
    Mat3 lsharp = goldman_derivative(rep.evaluate(zeta), InvariantFlavor::Length);
    double best = 0.0;
    int best_index = 0;
    for (int k = 0; k < z1.dimension(); ++k) {
      double pairing = std::abs((lsharp * extend(rep, z1.basis[k], zeta)).trace());
      if (pairing > best) {
        best = pairing;
        best_index = k;
      }
    }
    REQUIRE(best > 1e-6);
    CHECK_THROWS_AS(solve_X(rep, z1.basis[best_index], zeta), NotParabolicError);
  }
}

TEST_CASE("restriction to pieces") {
  GroupRep rep = fuchsian_genus_two();
  SplittingSpec spec = pants_decomposition(genus2_sig());
  std::mt19937 rng(67);

  SUBCASE("restriction commutes with coboundaries") {
    Mat3 x = random_traceless(rng);
    Cocycle dx = coboundary(rep, x);
    for (const Piece& piece : spec.pieces()) {
      GroupRep sub = restrict_rep(rep, piece.signature, piece.inclusion);
      Cocycle restricted = restrict_cocycle(rep, dx, piece.inclusion);
      Cocycle direct = coboundary(sub, x);
      // The two sides conjugate x by the same inclusion-word holonomy, but
      // with different multiplication orders, so they differ by roughly the
      // machine epsilon times the squared norm of the largest partial product
      // of the inclusion words.
      for (const Generator& g : generator_list(piece.signature))
        CHECK((restricted.value(g) - direct.value(g)).norm() < 2e-6);
    }
  }
  SUBCASE("zero restricts to zero") {
    Cocycle zero;
    Cocycle restricted = restrict_cocycle(rep, zero, spec.pieces()[0].inclusion);
    for (const auto& [g, v] : restricted.values) CHECK(v.norm() == 0.0);
  }
  SUBCASE("restricted cocycles satisfy the piece relator condition") {
    CocycleSpace z1 = z1_basis(rep);
    for (int trial = 0; trial < 5; ++trial) {
      Cocycle u = random_combination(rng, z1);
      for (const Piece& piece : spec.pieces()) {
        GroupRep sub = restrict_rep(rep, piece.signature, piece.inclusion);
        Cocycle restricted = restrict_cocycle(rep, u, piece.inclusion);
        // Floored by the ambient kernel accuracy (which in turn is floored
        // by the representation's relator residual) amplified through the
        // conjugations by inclusion-word holonomies.
        CHECK(cocycle_relation_residual(sub, restricted) < 1e-6);
      }
    }
  }
}

TEST_CASE("tangent dimensions add up across a decomposition") {
  auto flow_directions = [](const SplittingSpec& spec) {
    int count = 0;
    for (const CurveRecord& c : spec.curves())
      count += (c.type == CurveType::FullSuborbifold) ? 1 : 2;
    return count;
  };
  auto side_sum = [](const GroupRep& rep, const SplittingSpec& spec) {
    int sum = 0;
    for (const Piece& piece : spec.pieces()) {
      GroupRep sub = restrict_rep(rep, piece.signature, piece.inclusion);
      std::vector<Word> boundary;
      for (int j = 1; j <= piece.signature.boundary; ++j)
        boundary.push_back(Word::gen(Generator{GenKind::Z, j}));
      CocycleSpace z1p = z1_par_basis(sub, boundary);
      sum += z1p.dimension() - b1_basis(sub).dimension();
    }
    return sum;
  };

  SUBCASE("genus two") {
    GroupRep rep = fuchsian_genus_two();
    SplittingSpec spec = pants_decomposition(genus2_sig());
    std::vector<Word> words;
    for (const CurveRecord& c : spec.curves()) words.push_back(c.plus_word);
    CocycleSpace z1p = z1_par_basis(rep, words, CocycleKind::ParabolicCurves);
    int lhs = z1p.dimension() - b1_basis(rep).dimension();
    CHECK(lhs == side_sum(rep, spec) + flow_directions(spec));
  }
  SUBCASE("cone sphere with orders 2,2,3,3") {
    GroupRep rep = cone_sphere_2233();
    SplittingSpec spec = pants_decomposition(rep.signature);
    std::vector<Word> words;
    for (const CurveRecord& c : spec.curves()) words.push_back(c.plus_word);
    CocycleSpace z1p = z1_par_basis(rep, words, CocycleKind::ParabolicCurves);
    int lhs = z1p.dimension() - b1_basis(rep).dimension();
    CHECK(lhs == side_sum(rep, spec) + flow_directions(spec));
  }
}

TEST_CASE("deformation along a cocycle stays on the variety") {
  GroupRep rep = fuchsian_genus_two();
  std::mt19937 rng(71);
  CocycleSpace z1 = z1_basis(rep);
  Cocycle u = random_combination(rng, z1);
  GroupRep moved = deform(rep, u.values, 1e-2);
  CHECK(relation_residual(moved) < 1e-10);
  // The deformation genuinely moved the point.
  double gap = 0.0;
  for (const auto& [g, m] : rep.matrices)
    gap = std::max(gap, (m - moved.matrices.at(g)).norm());
  CHECK(gap > 1e-4);
}
