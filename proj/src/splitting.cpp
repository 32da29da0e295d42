#include "orbisymp/splitting.hpp"

#include <algorithm>

#include "orbisymp/errors.hpp"

namespace orbisymp {

namespace {

Word gen_word(GenKind k, int index, int exp = 1) { return Word::gen(Generator{k, index}, exp); }

Word commutator(int i) {
  Word x = gen_word(GenKind::X, i), y = gen_word(GenKind::Y, i);
  return x * y * x.inverse() * y.inverse();
}

void check_valid_or_obstructed(const OrbifoldSignature& sig) {
  try {
    validate(sig);
  } catch (const InvalidSignatureError& e) {
    throw EulerObstructionError(std::string("split produces an inadmissible piece: ") + e.what());
  }
}

InclusionMap compose(const InclusionMap& outer, const InclusionMap& inner) {
  InclusionMap m;
  for (const auto& [g, w] : inner.images) m.images[g] = outer.apply(w);
  return m;
}

}  // namespace

Word InclusionMap::apply(const Word& w) const {
  Word out;
  for (const Letter& l : w.letters()) {
    auto it = images.find(l.gen);
    if (it == images.end()) throw Error("inclusion map missing image for " + name(l.gen));
    out = out * (l.exp == 1 ? it->second : it->second.inverse());
  }
  return out;
}

SplittingSpec::SplittingSpec(const OrbifoldSignature& ambient) : ambient_(ambient) {
  validate(ambient);
  Piece base;
  base.signature = ambient;
  for (const Generator& g : generator_list(ambient)) base.inclusion.images[g] = Word::gen(g);
  for (int j = 1; j <= ambient.boundary; ++j)
    base.boundary_tags.push_back(BoundaryTag{BoundaryTag::Kind::Ambient, j});
  pieces_.push_back(std::move(base));
}

const Piece& SplittingSpec::checked_piece(int piece) const {
  if (piece < 0 || piece >= static_cast<int>(pieces_.size()))
    throw InvalidSplittingError("piece index out of range");
  return pieces_[piece];
}

void SplittingSpec::refresh_sides() {
  for (int p = 0; p < static_cast<int>(pieces_.size()); ++p) {
    const auto& tags = pieces_[p].boundary_tags;
    for (int s = 0; s < static_cast<int>(tags.size()); ++s) {
      if (tags[s].kind == BoundaryTag::Kind::CurvePlus)
        curves_[tags[s].index].side_plus = CurveSide{p, s + 1};
      else if (tags[s].kind == BoundaryTag::Kind::CurveMinus)
        curves_[tags[s].index].side_minus = CurveSide{p, s + 1};
    }
  }
}

int SplittingSpec::split_separating(int piece, int g1, int b1, int c1) {
  const Piece old = checked_piece(piece);
  const OrbifoldSignature& sig = old.signature;
  const int g = sig.genus, b = sig.boundary, c = sig.cone_count();
  if (g1 < 0 || g1 > g || b1 < 0 || b1 > b || c1 < 0 || c1 > c)
    throw InvalidSplittingError("separating split parameters out of range");
  if ((b1 > 0 && g1 != g) || (c1 > 0 && (g1 != g || b1 != b)))
    throw InvalidSplittingError("separating split prefix must be contiguous in the relator");
  bool side1_empty = (g1 == 0 && b1 == 0 && c1 == 0);
  bool side2_empty = (g1 == g && b1 == b && c1 == c);
  if (side1_empty || side2_empty)
    throw InvalidSplittingError("separating split must have two nonempty sides");

  OrbifoldSignature sig1{g1, b1 + 1,
                         std::vector<int>(sig.cone_orders.begin(), sig.cone_orders.begin() + c1)};
  OrbifoldSignature sig2{g - g1, b - b1 + 1,
                         std::vector<int>(sig.cone_orders.begin() + c1, sig.cone_orders.end())};
  check_valid_or_obstructed(sig1);
  check_valid_or_obstructed(sig2);

  // Relator blocks of the split piece: P = H1 Z1 S1 is the prefix side.
  Word h1, z1w, s1w, h2, z2w;
  for (int i = 1; i <= g1; ++i) h1 = h1 * commutator(i);
  for (int i = g1 + 1; i <= g; ++i) h2 = h2 * commutator(i);
  for (int j = 1; j <= b1; ++j) z1w = z1w * gen_word(GenKind::Z, j);
  for (int j = b1 + 1; j <= b; ++j) z2w = z2w * gen_word(GenKind::Z, j);
  for (int k = 1; k <= c1; ++k) s1w = s1w * gen_word(GenKind::S, k);
  Word prefix = h1 * z1w * s1w;

  // Piece-level inclusion maps (into the split piece's generators).
  InclusionMap inc1, inc2;
  for (int i = 1; i <= g1; ++i) {
    inc1.images[Generator{GenKind::X, i}] = gen_word(GenKind::X, i);
    inc1.images[Generator{GenKind::Y, i}] = gen_word(GenKind::Y, i);
  }
  for (int j = 1; j <= b1; ++j) inc1.images[Generator{GenKind::Z, j}] = gen_word(GenKind::Z, j);
  for (int k = 1; k <= c1; ++k) inc1.images[Generator{GenKind::S, k}] = gen_word(GenKind::S, k);
  Word new1 = (h1 * z1w).inverse() * s1w.inverse();
  inc1.images[Generator{GenKind::Z, b1 + 1}] = new1;

  for (int i = 1; i <= g - g1; ++i) {
    inc2.images[Generator{GenKind::X, i}] = gen_word(GenKind::X, g1 + i);
    inc2.images[Generator{GenKind::Y, i}] = gen_word(GenKind::Y, g1 + i);
  }
  for (int j = 1; j <= b - b1; ++j)
    inc2.images[Generator{GenKind::Z, j}] = gen_word(GenKind::Z, b1 + j);
  for (int k = 1; k <= c - c1; ++k)
    inc2.images[Generator{GenKind::S, k}] = gen_word(GenKind::S, c1 + k);
  Word conj = h2 * z2w;
  Word new2 = conj.inverse() * prefix * conj;
  inc2.images[Generator{GenKind::Z, b - b1 + 1}] = new2;

  // Exact reduction checks: side one's relator cancels to nothing, side two's
  // reassembles the split piece's relator.
  if (!inc1.apply(canonical_relator(sig1)).is_identity())
    throw Error("separating split: side-one relator image must vanish");
  if (inc2.apply(canonical_relator(sig2)) != canonical_relator(sig))
    throw Error("separating split: side-two relator image must equal the relator");

  int curve_id = static_cast<int>(curves_.size());
  CurveRecord rec;
  rec.type = CurveType::SccSeparating;
  rec.minus_word = old.inclusion.apply(new1);
  rec.plus_word = old.inclusion.apply(new2);

  Piece p1, p2;
  p1.signature = sig1;
  p1.inclusion = compose(old.inclusion, inc1);
  for (int j = 1; j <= b1; ++j) p1.boundary_tags.push_back(old.boundary_tags[j - 1]);
  p1.boundary_tags.push_back(BoundaryTag{BoundaryTag::Kind::CurveMinus, curve_id});

  p2.signature = sig2;
  p2.inclusion = compose(old.inclusion, inc2);
  for (int j = b1 + 1; j <= b; ++j) p2.boundary_tags.push_back(old.boundary_tags[j - 1]);
  p2.boundary_tags.push_back(BoundaryTag{BoundaryTag::Kind::CurvePlus, curve_id});

  curves_.push_back(std::move(rec));
  pieces_[piece] = std::move(p1);
  pieces_.push_back(std::move(p2));
  refresh_sides();
  return curve_id;
}

int SplittingSpec::split_nonseparating(int piece) {
  const Piece old = checked_piece(piece);
  const OrbifoldSignature& sig = old.signature;
  const int g = sig.genus, b = sig.boundary;
  if (g < 1) throw InvalidSplittingError("non-separating split needs positive genus");
  OrbifoldSignature nsig{g - 1, b + 2, sig.cone_orders};
  check_valid_or_obstructed(nsig);

  InclusionMap inc;
  for (int i = 1; i < g; ++i) {
    inc.images[Generator{GenKind::X, i}] = gen_word(GenKind::X, i);
    inc.images[Generator{GenKind::Y, i}] = gen_word(GenKind::Y, i);
  }
  Word xg = gen_word(GenKind::X, g), yg = gen_word(GenKind::Y, g);
  inc.images[Generator{GenKind::Z, 1}] = xg * yg * xg.inverse();
  inc.images[Generator{GenKind::Z, 2}] = yg.inverse();
  for (int j = 1; j <= b; ++j) inc.images[Generator{GenKind::Z, j + 2}] = gen_word(GenKind::Z, j);
  for (int k = 1; k <= sig.cone_count(); ++k)
    inc.images[Generator{GenKind::S, k}] = gen_word(GenKind::S, k);

  if (inc.apply(canonical_relator(nsig)) != canonical_relator(sig))
    throw Error("non-separating split: relator image must equal the relator");

  int curve_id = static_cast<int>(curves_.size());
  CurveRecord rec;
  rec.type = CurveType::SccNonseparating;
  rec.minus_word = old.inclusion.apply(xg * yg * xg.inverse());
  rec.plus_word = old.inclusion.apply(yg.inverse());
  rec.perp_word = old.inclusion.apply(xg);
  if (rec.perp_word.length() != 1)
    throw Error("non-separating split: stable letter must be a single ambient generator");

  Piece np;
  np.signature = nsig;
  np.inclusion = compose(old.inclusion, inc);
  np.boundary_tags.push_back(BoundaryTag{BoundaryTag::Kind::CurveMinus, curve_id});
  np.boundary_tags.push_back(BoundaryTag{BoundaryTag::Kind::CurvePlus, curve_id});
  for (int j = 1; j <= b; ++j) np.boundary_tags.push_back(old.boundary_tags[j - 1]);

  curves_.push_back(std::move(rec));
  pieces_[piece] = std::move(np);
  refresh_sides();
  return curve_id;
}

int SplittingSpec::split_full_suborbifold(int piece, int i, int j) {
  if (i > j) std::swap(i, j);
  const Piece old = checked_piece(piece);
  const OrbifoldSignature& sig = old.signature;
  const int c = sig.cone_count();
  if (i < 1 || i == j || j > c)
    throw InvalidSplittingError("full 1-suborbifold needs two distinct cone indices in range");
  if (sig.cone_orders[i - 1] != 2 || sig.cone_orders[j - 1] != 2)
    throw NotOrderTwoError("full 1-suborbifold joins two order-two cone points");

  std::vector<int> rest;
  for (int k = 1; k <= c; ++k)
    if (k != i && k != j) rest.push_back(sig.cone_orders[k - 1]);
  OrbifoldSignature nsig{sig.genus, sig.boundary + 1, rest};
  check_valid_or_obstructed(nsig);

  Word a, m;
  for (int k = 1; k < i; ++k) a = a * gen_word(GenKind::S, k);
  for (int k = i + 1; k < j; ++k) m = m * gen_word(GenKind::S, k);
  Word si = gen_word(GenKind::S, i), sj = gen_word(GenKind::S, j);
  Word newz = a * si * m * sj * m.inverse() * a.inverse();

  InclusionMap inc;
  for (int t = 1; t <= sig.genus; ++t) {
    inc.images[Generator{GenKind::X, t}] = gen_word(GenKind::X, t);
    inc.images[Generator{GenKind::Y, t}] = gen_word(GenKind::Y, t);
  }
  for (int t = 1; t <= sig.boundary; ++t) inc.images[Generator{GenKind::Z, t}] = gen_word(GenKind::Z, t);
  inc.images[Generator{GenKind::Z, sig.boundary + 1}] = newz;
  int next = 1;
  for (int k = 1; k <= c; ++k)
    if (k != i && k != j) inc.images[Generator{GenKind::S, next++}] = gen_word(GenKind::S, k);

  if (inc.apply(canonical_relator(nsig)) != canonical_relator(sig))
    throw Error("full 1-suborbifold split: relator image must equal the relator");

  int curve_id = static_cast<int>(curves_.size());
  CurveRecord rec;
  rec.type = CurveType::FullSuborbifold;
  rec.minus_word = old.inclusion.apply(newz);
  rec.plus_word = rec.minus_word.inverse();
  Word wi = old.inclusion.apply(si), wj = old.inclusion.apply(sj);
  if (wi.length() != 1 || wj.length() != 1)
    throw Error("full 1-suborbifold split: cone generators must be ambient generators");
  rec.cone_pair = {wi.letters()[0].gen, wj.letters()[0].gen};

  Piece np;
  np.signature = nsig;
  np.inclusion = compose(old.inclusion, inc);
  np.boundary_tags = old.boundary_tags;
  np.boundary_tags.push_back(BoundaryTag{BoundaryTag::Kind::CurveMinus, curve_id});

  curves_.push_back(std::move(rec));
  pieces_[piece] = std::move(np);
  refresh_sides();
  return curve_id;
}

bool is_elementary(const OrbifoldSignature& sig) {
  return sig.genus == 0 && sig.boundary + sig.cone_count() <= 3;
}

int scc_curve_count(const OrbifoldSignature& sig) {
  return 3 * sig.genus - 3 + sig.cone_count() + sig.boundary - order_two_count(sig) / 2;
}

int suborbifold_curve_count(const OrbifoldSignature& sig) { return order_two_count(sig) / 2; }

int elementary_piece_count(const OrbifoldSignature& sig) {
  return 2 * sig.genus - 2 + sig.cone_count() + sig.boundary - order_two_count(sig) / 2;
}

SplittingSpec pants_decomposition(const OrbifoldSignature& sig) {
  SplittingSpec spec(sig);

  // Pair order-two cone points, lowest indices first.
  for (int p = 0; p < static_cast<int>(spec.pieces().size()); ++p) {
    while (true) {
      const auto& orders = spec.pieces()[p].signature.cone_orders;
      int i = -1, j = -1;
      for (int k = 0; k < static_cast<int>(orders.size()); ++k) {
        if (orders[k] == 2) {
          if (i < 0)
            i = k + 1;
          else {
            j = k + 1;
            break;
          }
        }
      }
      if (j < 0) break;
      spec.split_full_suborbifold(p, i, j);
    }
  }

  // Reduce until every piece is elementary.
  bool progress = true;
  while (progress) {
    progress = false;
    for (int p = 0; p < static_cast<int>(spec.pieces().size()); ++p) {
      const OrbifoldSignature cur = spec.pieces()[p].signature;
      if (is_elementary(cur)) continue;
      progress = true;
      if (cur.genus > 0) {
        spec.split_nonseparating(p);
      } else if (cur.boundary >= 2) {
        spec.split_separating(p, 0, 2, 0);
      } else if (cur.boundary == 1) {
        spec.split_separating(p, 0, 1, 1);
      } else {
        spec.split_separating(p, 0, 0, 2);
      }
    }
  }
  return spec;
}

}  // namespace orbisymp
