#include <vector>

#include "doctest.h"
#include "orbisymp/errors.hpp"
#include "orbisymp/splitting.hpp"
#include "orbisymp/words.hpp"

using namespace orbisymp;

namespace {

Word W(const std::string& s) { return word_from_string(s); }

// Every piece relator must push forward to the ambient relator or cancel to
// the identity, exactly as freely reduced words.
void check_relator_invariant(const SplittingSpec& spec) {
  Word ambient_rel = canonical_relator(spec.ambient());
  for (const Piece& p : spec.pieces()) {
    Word image = p.inclusion.apply(canonical_relator(p.signature));
    bool ok = image.is_identity() || image == ambient_rel;
    CHECK(ok);
  }
}

// Piece cone generators must map to single ambient cone generators whose
// orders agree with the piece signature.
void check_cone_orders(const SplittingSpec& spec) {
  const auto& ambient_orders = spec.ambient().cone_orders;
  for (const Piece& p : spec.pieces()) {
    for (int k = 1; k <= p.signature.cone_count(); ++k) {
      const Word& img = p.inclusion.images.at(Generator{GenKind::S, k});
      REQUIRE(img.length() == 1);
      const Letter& l = img.letters()[0];
      CHECK(l.gen.kind == GenKind::S);
      CHECK(l.exp == 1);
      CHECK(ambient_orders[l.gen.index - 1] == p.signature.cone_orders[k - 1]);
    }
  }
}

// Tags and curve sides must agree: each scc curve has exactly one plus and
// one minus slot, each full 1-suborbifold exactly one minus slot.
void check_sides(const SplittingSpec& spec) {
  for (int id = 0; id < static_cast<int>(spec.curves().size()); ++id) {
    const CurveRecord& rec = spec.curves()[id];
    int plus_seen = 0, minus_seen = 0;
    for (int p = 0; p < static_cast<int>(spec.pieces().size()); ++p) {
      const auto& tags = spec.pieces()[p].boundary_tags;
      REQUIRE(static_cast<int>(tags.size()) == spec.pieces()[p].signature.boundary);
      for (int s = 0; s < static_cast<int>(tags.size()); ++s) {
        if (tags[s].kind == BoundaryTag::Kind::CurvePlus && tags[s].index == id) {
          ++plus_seen;
          CHECK(rec.side_plus.piece == p);
          CHECK(rec.side_plus.slot == s + 1);
        }
        if (tags[s].kind == BoundaryTag::Kind::CurveMinus && tags[s].index == id) {
          ++minus_seen;
          CHECK(rec.side_minus.piece == p);
          CHECK(rec.side_minus.slot == s + 1);
        }
      }
    }
    CHECK(minus_seen == 1);
    CHECK(plus_seen == (rec.type == CurveType::FullSuborbifold ? 0 : 1));
  }
}

void check_all(const SplittingSpec& spec) {
  check_relator_invariant(spec);
  check_cone_orders(spec);
  check_sides(spec);
}

}  // namespace

TEST_CASE("separating curve on a genus-two surface yields two one-holed tori") {
  SplittingSpec spec(OrbifoldSignature{2, 0, {}});
  int id = spec.split_separating(0, 1, 0, 0);
  CHECK(id == 0);
  REQUIRE(spec.pieces().size() == 2);
  REQUIRE(spec.curves().size() == 1);

  const Piece& p1 = spec.pieces()[0];
  const Piece& p2 = spec.pieces()[1];
  CHECK(p1.signature == OrbifoldSignature{1, 1, {}});
  CHECK(p2.signature == OrbifoldSignature{1, 1, {}});

  CHECK(p1.inclusion.images.at(Generator{GenKind::X, 1}) == W("x1"));
  CHECK(p1.inclusion.images.at(Generator{GenKind::Y, 1}) == W("y1"));
  CHECK(p1.inclusion.images.at(Generator{GenKind::Z, 1}) ==
        W("y1 x1 y1^-1 x1^-1"));  // inverse of the first-handle commutator

  CHECK(p2.inclusion.images.at(Generator{GenKind::X, 1}) == W("x2"));
  CHECK(p2.inclusion.images.at(Generator{GenKind::Y, 1}) == W("y2"));
  CHECK(p2.inclusion.images.at(Generator{GenKind::Z, 1}) ==
        W("y2 x2 y2^-1 x2^-1 x1 y1 x1^-1 y1^-1 x2 y2 x2^-1 y2^-1"));

  const CurveRecord& rec = spec.curves()[0];
  CHECK(rec.type == CurveType::SccSeparating);
  CHECK(rec.minus_word == W("y1 x1 y1^-1 x1^-1"));
  CHECK(rec.plus_word == p2.inclusion.images.at(Generator{GenKind::Z, 1}));
  check_all(spec);
}

TEST_CASE("non-separating curve cuts the last handle into two boundary slots") {
  SplittingSpec spec(OrbifoldSignature{2, 0, {}});
  int id = spec.split_nonseparating(0);
  CHECK(id == 0);
  REQUIRE(spec.pieces().size() == 1);
  const Piece& p = spec.pieces()[0];
  CHECK(p.signature == OrbifoldSignature{1, 2, {}});

  CHECK(p.inclusion.images.at(Generator{GenKind::X, 1}) == W("x1"));
  CHECK(p.inclusion.images.at(Generator{GenKind::Y, 1}) == W("y1"));
  CHECK(p.inclusion.images.at(Generator{GenKind::Z, 1}) == W("x2 y2 x2^-1"));
  CHECK(p.inclusion.images.at(Generator{GenKind::Z, 2}) == W("y2^-1"));

  const CurveRecord& rec = spec.curves()[0];
  CHECK(rec.type == CurveType::SccNonseparating);
  CHECK(rec.minus_word == W("x2 y2 x2^-1"));
  CHECK(rec.plus_word == W("y2^-1"));
  CHECK(rec.perp_word == W("x2"));
  // Conjugating the plus side by the stable letter gives the inverse of the
  // minus side, exactly as words.
  CHECK(rec.perp_word * rec.plus_word * rec.perp_word.inverse() ==
        rec.minus_word.inverse());
  check_all(spec);
}

TEST_CASE("joining two order-two cone points removes them and adds a boundary") {
  SplittingSpec spec(OrbifoldSignature{0, 0, {2, 2, 3, 3}});
  int id = spec.split_full_suborbifold(0, 1, 2);
  CHECK(id == 0);
  REQUIRE(spec.pieces().size() == 1);
  const Piece& p = spec.pieces()[0];
  CHECK(p.signature == OrbifoldSignature{0, 1, {3, 3}});

  CHECK(p.inclusion.images.at(Generator{GenKind::Z, 1}) == W("s1 s2"));
  CHECK(p.inclusion.images.at(Generator{GenKind::S, 1}) == W("s3"));
  CHECK(p.inclusion.images.at(Generator{GenKind::S, 2}) == W("s4"));

  const CurveRecord& rec = spec.curves()[0];
  CHECK(rec.type == CurveType::FullSuborbifold);
  CHECK(rec.minus_word == W("s1 s2"));
  CHECK(rec.plus_word == W("s2^-1 s1^-1"));
  REQUIRE(rec.cone_pair.size() == 2);
  CHECK(rec.cone_pair[0] == Generator{GenKind::S, 1});
  CHECK(rec.cone_pair[1] == Generator{GenKind::S, 2});
  check_all(spec);
}

TEST_CASE("nested cone-pair curves compose their conjugating prefixes exactly") {
  SplittingSpec spec(OrbifoldSignature{0, 0, {2, 2, 2, 2, 3}});
  spec.split_full_suborbifold(0, 2, 3);  // joins ambient s2, s3
  const Piece& mid = spec.pieces()[0];
  CHECK(mid.signature == OrbifoldSignature{0, 1, {2, 2, 3}});
  CHECK(mid.inclusion.images.at(Generator{GenKind::Z, 1}) == W("s1 s2 s3 s1^-1"));

  spec.split_full_suborbifold(0, 1, 2);  // joins ambient s1, s4
  const Piece& p = spec.pieces()[0];
  CHECK(p.signature == OrbifoldSignature{0, 2, {3}});
  CHECK(p.inclusion.images.at(Generator{GenKind::Z, 2}) == W("s1 s4"));

  const CurveRecord& rec = spec.curves()[1];
  REQUIRE(rec.cone_pair.size() == 2);
  CHECK(rec.cone_pair[0] == Generator{GenKind::S, 1});
  CHECK(rec.cone_pair[1] == Generator{GenKind::S, 4});
  check_all(spec);
}

TEST_CASE("boundary slots keep their ambient identity through later cuts") {
  SplittingSpec spec(OrbifoldSignature{1, 1, {3}});
  spec.split_nonseparating(0);
  CHECK(spec.pieces()[0].signature == OrbifoldSignature{0, 3, {3}});
  spec.split_separating(0, 0, 2, 0);
  REQUIRE(spec.pieces().size() == 2);

  const Piece& p1 = spec.pieces()[0];
  const Piece& p2 = spec.pieces()[1];
  CHECK(p1.signature == OrbifoldSignature{0, 3, {}});
  CHECK(p2.signature == OrbifoldSignature{0, 2, {3}});

  // Slots of the three-holed sphere: the two halves of the handle curve, then
  // the new separating curve.
  REQUIRE(p1.boundary_tags.size() == 3);
  CHECK(p1.boundary_tags[0].kind == BoundaryTag::Kind::CurveMinus);
  CHECK(p1.boundary_tags[0].index == 0);
  CHECK(p1.boundary_tags[1].kind == BoundaryTag::Kind::CurvePlus);
  CHECK(p1.boundary_tags[1].index == 0);
  CHECK(p1.boundary_tags[2].kind == BoundaryTag::Kind::CurveMinus);
  CHECK(p1.boundary_tags[2].index == 1);

  // The original orbifold boundary survives as slot one of the other piece.
  REQUIRE(p2.boundary_tags.size() == 2);
  CHECK(p2.boundary_tags[0].kind == BoundaryTag::Kind::Ambient);
  CHECK(p2.boundary_tags[0].index == 1);
  CHECK(p2.inclusion.images.at(Generator{GenKind::Z, 1}) == W("z1"));
  CHECK(p2.boundary_tags[1].kind == BoundaryTag::Kind::CurvePlus);
  CHECK(p2.boundary_tags[1].index == 1);
  check_all(spec);
}

TEST_CASE("pants decomposition of a genus-two surface") {
  OrbifoldSignature sig{2, 0, {}};
  SplittingSpec spec = pants_decomposition(sig);
  CHECK(static_cast<int>(spec.pieces().size()) == elementary_piece_count(sig));
  CHECK(elementary_piece_count(sig) == 2);
  CHECK(scc_curve_count(sig) == 3);
  CHECK(suborbifold_curve_count(sig) == 0);
  CHECK(spec.curves().size() == 3);
  for (const Piece& p : spec.pieces()) {
    CHECK(is_elementary(p.signature));
    CHECK(p.signature == OrbifoldSignature{0, 3, {}});
  }
  check_all(spec);
  // Deterministic: same input, same decomposition.
  CHECK(spec == pants_decomposition(sig));
}

TEST_CASE("pants decomposition of a sphere with cone orders 2,2,3,3") {
  OrbifoldSignature sig{0, 0, {2, 2, 3, 3}};
  SplittingSpec spec = pants_decomposition(sig);
  CHECK(scc_curve_count(sig) == 0);
  CHECK(suborbifold_curve_count(sig) == 1);
  CHECK(elementary_piece_count(sig) == 1);
  REQUIRE(spec.pieces().size() == 1);
  REQUIRE(spec.curves().size() == 1);
  CHECK(spec.curves()[0].type == CurveType::FullSuborbifold);
  CHECK(spec.pieces()[0].signature == OrbifoldSignature{0, 1, {3, 3}});
  check_all(spec);
}

TEST_CASE("pants decomposition of a one-cone torus") {
  OrbifoldSignature sig{1, 0, {3}};
  SplittingSpec spec = pants_decomposition(sig);
  CHECK(scc_curve_count(sig) == 1);
  CHECK(suborbifold_curve_count(sig) == 0);
  CHECK(elementary_piece_count(sig) == 1);
  REQUIRE(spec.pieces().size() == 1);
  REQUIRE(spec.curves().size() == 1);
  CHECK(spec.curves()[0].type == CurveType::SccNonseparating);
  CHECK(spec.pieces()[0].signature == OrbifoldSignature{0, 2, {3}});
  check_all(spec);
}

TEST_CASE("pants decomposition of a sphere with five order-two cones") {
  OrbifoldSignature sig{0, 0, {2, 2, 2, 2, 2}};
  SplittingSpec spec = pants_decomposition(sig);
  CHECK(scc_curve_count(sig) == 0);
  CHECK(suborbifold_curve_count(sig) == 2);
  CHECK(elementary_piece_count(sig) == 1);
  REQUIRE(spec.pieces().size() == 1);
  REQUIRE(spec.curves().size() == 2);
  CHECK(spec.pieces()[0].signature == OrbifoldSignature{0, 2, {2}});
  check_all(spec);
}

TEST_CASE("pants decomposition of a one-holed torus with a cone point") {
  OrbifoldSignature sig{1, 1, {3}};
  SplittingSpec spec = pants_decomposition(sig);
  CHECK(scc_curve_count(sig) == 2);
  CHECK(elementary_piece_count(sig) == 2);
  CHECK(spec.curves().size() == 2);
  CHECK(spec.pieces().size() == 2);
  for (const Piece& p : spec.pieces()) CHECK(is_elementary(p.signature));
  check_all(spec);
}

TEST_CASE("elementary signatures are exactly the genus-zero ones with at most three features") {
  CHECK(is_elementary(OrbifoldSignature{0, 3, {}}));
  CHECK(is_elementary(OrbifoldSignature{0, 1, {3, 3}}));
  CHECK(is_elementary(OrbifoldSignature{0, 0, {2, 3, 7}}));
  CHECK(is_elementary(OrbifoldSignature{0, 2, {5}}));
  CHECK_FALSE(is_elementary(OrbifoldSignature{1, 1, {}}));
  CHECK_FALSE(is_elementary(OrbifoldSignature{0, 4, {}}));
  CHECK_FALSE(is_elementary(OrbifoldSignature{0, 2, {2, 2}}));
}

TEST_CASE("invalid cuts are rejected") {
  SUBCASE("piece index out of range") {
    SplittingSpec spec(OrbifoldSignature{2, 0, {}});
    CHECK_THROWS_AS(spec.split_nonseparating(1), InvalidSplittingError);
    CHECK_THROWS_AS(spec.split_separating(-1, 1, 0, 0), InvalidSplittingError);
  }
  SUBCASE("separating cut needs two nonempty sides") {
    SplittingSpec spec(OrbifoldSignature{2, 0, {}});
    CHECK_THROWS_AS(spec.split_separating(0, 0, 0, 0), InvalidSplittingError);
    CHECK_THROWS_AS(spec.split_separating(0, 2, 0, 0), InvalidSplittingError);
  }
  SUBCASE("separating prefix must sit contiguously in the relator") {
    SplittingSpec spec(OrbifoldSignature{1, 1, {}});
    // Taking a boundary circle without the handle skips over it.
    CHECK_THROWS_AS(spec.split_separating(0, 0, 1, 0), InvalidSplittingError);
  }
  SUBCASE("cuts violating the negative-curvature constraint") {
    SplittingSpec pants(OrbifoldSignature{0, 3, {}});
    CHECK_THROWS_AS(pants.split_separating(0, 0, 2, 0), EulerObstructionError);
    // Peeling off all but one order-three cone would leave a positively
    // curved disk.
    SplittingSpec disk(OrbifoldSignature{0, 1, {3, 3, 3}});
    CHECK_THROWS_AS(disk.split_separating(0, 0, 1, 2), EulerObstructionError);
  }
  SUBCASE("genus is required for a non-separating cut") {
    SplittingSpec spec(OrbifoldSignature{0, 4, {}});
    CHECK_THROWS_AS(spec.split_nonseparating(0), InvalidSplittingError);
  }
  SUBCASE("cone-pair curves need two order-two cones") {
    SplittingSpec spec(OrbifoldSignature{0, 0, {2, 3, 3, 4}});
    CHECK_THROWS_AS(spec.split_full_suborbifold(0, 1, 2), NotOrderTwoError);
    CHECK_THROWS_AS(spec.split_full_suborbifold(0, 2, 3), NotOrderTwoError);
    CHECK_THROWS_AS(spec.split_full_suborbifold(0, 1, 1), InvalidSplittingError);
    CHECK_THROWS_AS(spec.split_full_suborbifold(0, 1, 5), InvalidSplittingError);
  }
}
