#pragma once

#include <map>
#include <vector>

#include "orbisymp/signature.hpp"
#include "orbisymp/words.hpp"

namespace orbisymp {

// Homomorphism determined by generator images; applied by substitution.
struct InclusionMap {
  std::map<Generator, Word> images;

  Word apply(const Word& w) const;

  bool operator==(const InclusionMap&) const = default;
};

enum class CurveType { SccSeparating, SccNonseparating, FullSuborbifold };

// Location of one side of a splitting curve: a boundary slot (1-based z index)
// of a final piece.
struct CurveSide {
  int piece = -1;
  int slot = 0;

  bool operator==(const CurveSide&) const = default;
};

struct CurveRecord {
  CurveType type = CurveType::SccSeparating;
  // Ambient holonomy words for the two orientations of the curve. plus_word is
  // the one used for invariants and flow generators. For a full 1-suborbifold
  // minus_word is the image of the new boundary generator (a product of the
  // two order-two generators, conjugated into place) and plus_word its inverse.
  Word plus_word;
  Word minus_word;
  CurveSide side_plus, side_minus;
  // Non-separating curves only: the ambient generator that survives as the
  // stable letter of the induced HNN presentation.
  Word perp_word;
  // Full 1-suborbifolds only: the two ambient order-two cone generators.
  std::vector<Generator> cone_pair;

  bool operator==(const CurveRecord&) const = default;
};

struct BoundaryTag {
  enum class Kind { Ambient, CurvePlus, CurveMinus };
  Kind kind = Kind::Ambient;
  int index = 0;  // ambient z index (1-based) or curve id (0-based)

  bool operator==(const BoundaryTag&) const = default;
};

struct Piece {
  OrbifoldSignature signature;
  InclusionMap inclusion;                  // piece generators -> ambient words
  std::vector<BoundaryTag> boundary_tags;  // one per boundary slot

  bool operator==(const Piece&) const = default;
};

// A system of disjoint splitting curves on one ambient signature, built by
// applying single splits to pieces in sequence. Piece indices are stable:
// a split replaces the split piece in place; a separating split additionally
// appends the complement side at the end of the piece list.
class SplittingSpec {
 public:
  explicit SplittingSpec(const OrbifoldSignature& ambient);

  const OrbifoldSignature& ambient() const { return ambient_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  const std::vector<CurveRecord>& curves() const { return curves_; }

  // Cuts along a curve separating the prefix (g1 handles, b1 boundaries,
  // c1 cones) of the piece presentation from the complement. The prefix must
  // be contiguous in the relator: b1 > 0 requires g1 == g, and c1 > 0 requires
  // g1 == g and b1 == b. Returns the new curve id.
  int split_separating(int piece, int g1, int b1, int c1);

  // Cuts along the last handle of the piece (HNN normal form); the piece loses
  // one genus and gains two boundary slots, prepended as slots 1 and 2.
  int split_nonseparating(int piece);

  // Cuts along a full 1-suborbifold joining cone points i and j (1-based,
  // both of order two). The pair is removed and one boundary slot appended.
  int split_full_suborbifold(int piece, int i, int j);

  friend bool operator==(const SplittingSpec&, const SplittingSpec&) = default;

 private:
  void refresh_sides();
  const Piece& checked_piece(int piece) const;

  OrbifoldSignature ambient_;
  std::vector<Piece> pieces_;
  std::vector<CurveRecord> curves_;
};

// Deterministic decomposition into elementary pieces: pairs order-two cones
// lowest-index-first into full 1-suborbifolds, then reduces genus, then cuts
// spheres down to pieces with at most three boundary-or-cone features.
SplittingSpec pants_decomposition(const OrbifoldSignature& sig);

bool is_elementary(const OrbifoldSignature& sig);

// Expected counts for closed signatures.
int scc_curve_count(const OrbifoldSignature& sig);        // 3g - 3 + c - floor(c_b/2)
int suborbifold_curve_count(const OrbifoldSignature& sig);  // floor(c_b/2)
int elementary_piece_count(const OrbifoldSignature& sig);  // 2g - 2 + c - floor(c_b/2)

}  // namespace orbisymp
