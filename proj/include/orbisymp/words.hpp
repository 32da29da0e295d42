#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "orbisymp/rational.hpp"
#include "orbisymp/signature.hpp"

namespace orbisymp {

enum class GenKind : std::uint8_t { X, Y, Z, S };

// One generator of the canonical presentation
//   < x_1,y_1,...,x_g,y_g, z_1,...,z_b, s_1,...,s_c |
//     prod [x_i,y_i] prod z_j prod s_k = 1,  s_i^{r_i} = 1 >.
// Indices are 1-based.
struct Generator {
  GenKind kind = GenKind::X;
  int index = 1;

  auto operator<=>(const Generator&) const = default;
};

std::string name(const Generator& g);
Generator generator_from_name(const std::string& s);

struct Letter {
  Generator gen;
  int exp = 1;  // +1 or -1

  auto operator<=>(const Letter&) const = default;
};

// Freely reduced word in the generators. Structural equality is equality of
// reduced letter sequences.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters);

  static Word gen(Generator g, int exp = 1);

  const std::vector<Letter>& letters() const { return letters_; }
  bool is_identity() const { return letters_.empty(); }
  int length() const { return static_cast<int>(letters_.size()); }

  Word inverse() const;
  Word pow(int n) const;

  friend Word operator*(const Word& a, const Word& b);
  auto operator<=>(const Word&) const = default;

 private:
  std::vector<Letter> letters_;
};

std::string to_string(const Word& w);
Word word_from_string(const std::string& s);

// Finite Q-linear combination of reduced words.
class GroupRingElement {
 public:
  GroupRingElement() = default;
  explicit GroupRingElement(const Word& w) { terms_[w] = Rational(1); }

  static GroupRingElement zero() { return {}; }
  static GroupRingElement one() { return GroupRingElement(Word()); }

  const std::map<Word, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(const Word& w, const Rational& coef);

  // Sum of coefficients (image under the map killing all generators).
  Rational augmentation() const;

  friend GroupRingElement operator+(const GroupRingElement& a, const GroupRingElement& b);
  friend GroupRingElement operator-(const GroupRingElement& a, const GroupRingElement& b);
  friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b);
  friend GroupRingElement operator*(const Rational& c, const GroupRingElement& a);
  friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) {
    return a.terms_ == b.terms_;
  }

 private:
  std::map<Word, Rational> terms_;
};

// Free (Fox) partial derivative with respect to generator v:
//   d(v)/dv = 1,  d(v^-1)/dv = -v^-1,  d(uw)/dv = du/dv + u dw/dv.
GroupRingElement fox_derivative(const Word& w, const Generator& v);
GroupRingElement fox_derivative(const GroupRingElement& e, const Generator& v);

// Linear extension of g -> g^-1 on words.
GroupRingElement bar_involution(const GroupRingElement& e);

// Generators in presentation order: x_1,y_1,...,x_g,y_g, z_1..z_b, s_1..s_c.
std::vector<Generator> generator_list(const OrbifoldSignature& sig);

// prod_i [x_i,y_i] prod_j z_j prod_k s_k, freely reduced.
Word canonical_relator(const OrbifoldSignature& sig);

// s_i^{r_i} for each cone point, in order.
std::vector<Word> torsion_relators(const OrbifoldSignature& sig);

// Formal sum of bar-resolution symbols [[a|b]] with rational coefficients.
// Symbols with an identity entry are degenerate and dropped at insertion.
class BarTwoChain {
 public:
  const std::map<std::pair<Word, Word>, Rational>& terms() const { return terms_; }
  void add_term(const Word& a, const Word& b, const Rational& coef);
  // Adds coef * [[e|b]] expanded over the terms of the ring element e.
  void add_expanded(const GroupRingElement& e, const Word& b, const Rational& coef);

 private:
  std::map<std::pair<Word, Word>, Rational> terms_;
};

// 2-chain representing the (rational) fundamental class of the closed-up
// presentation 2-complex:
//   sum_i ([[dr/dx_i|x_i]] + [[dr/dy_i|y_i]]) + sum_j [[dr/dz_j|z_j]]
//   + sum_k [[dr/ds_k|s_k]] - sum_k (1/r_k) [[d(s_k^{r_k})/ds_k|s_k]].
BarTwoChain fundamental_two_chain(const OrbifoldSignature& sig);

}  // namespace orbisymp
