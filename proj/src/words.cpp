#include "orbisymp/words.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

#include "orbisymp/errors.hpp"

namespace orbisymp {

std::string name(const Generator& g) {
  static const char* prefix[] = {"x", "y", "z", "s"};
  return prefix[static_cast<int>(g.kind)] + std::to_string(g.index);
}

Generator generator_from_name(const std::string& s) {
  if (s.size() < 2) throw IoError("bad generator name: " + s);
  GenKind k;
  switch (s[0]) {
    case 'x': k = GenKind::X; break;
    case 'y': k = GenKind::Y; break;
    case 'z': k = GenKind::Z; break;
    case 's': k = GenKind::S; break;
    default: throw IoError("bad generator name: " + s);
  }
  int idx = std::atoi(s.c_str() + 1);
  if (idx < 1) throw IoError("bad generator index: " + s);
  return Generator{k, idx};
}

namespace {

void push_reduced(std::vector<Letter>& out, const Letter& l) {
  if (!out.empty() && out.back().gen == l.gen && out.back().exp == -l.exp)
    out.pop_back();
  else
    out.push_back(l);
}

}  // namespace

Word::Word(std::vector<Letter> letters) {
  letters_.reserve(letters.size());
  for (const Letter& l : letters) {
    if (l.exp != 1 && l.exp != -1) throw Error("letter exponent must be +1 or -1");
    push_reduced(letters_, l);
  }
}

Word Word::gen(Generator g, int exp) {
  Word w;
  if (exp == 0) return w;
  int sign = exp > 0 ? 1 : -1;
  for (int i = 0; i != exp; i += sign) w.letters_.push_back(Letter{g, sign});
  return w;
}

Word Word::inverse() const {
  Word w;
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    w.letters_.push_back(Letter{it->gen, -it->exp});
  return w;
}

Word Word::pow(int n) const {
  Word r;
  Word base = n < 0 ? inverse() : *this;
  int m = n < 0 ? -n : n;
  for (int i = 0; i < m; ++i) r = r * base;
  return r;
}

Word operator*(const Word& a, const Word& b) {
  Word r;
  r.letters_ = a.letters_;
  for (const Letter& l : b.letters_) push_reduced(r.letters_, l);
  return r;
}

std::string to_string(const Word& w) {
  if (w.is_identity()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const Letter& l : w.letters()) {
    if (!first) os << ' ';
    first = false;
    os << name(l.gen);
    if (l.exp == -1) os << "^-1";
  }
  return os.str();
}

Word word_from_string(const std::string& s) {
  std::istringstream is(s);
  std::vector<Letter> letters;
  std::string tok;
  while (is >> tok) {
    if (tok == "1") continue;
    int exp = 1;
    auto caret = tok.find('^');
    std::string base = tok;
    if (caret != std::string::npos) {
      base = tok.substr(0, caret);
      exp = std::atoi(tok.c_str() + caret + 1);
      if (exp != 1 && exp != -1) throw IoError("word letter exponent must be +-1: " + tok);
    }
    letters.push_back(Letter{generator_from_name(base), exp});
  }
  return Word(std::move(letters));
}

void GroupRingElement::add_term(const Word& w, const Rational& coef) {
  if (coef.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, coef);
  if (!inserted) {
    it->second += coef;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Rational GroupRingElement::augmentation() const {
  Rational s;
  for (const auto& [w, c] : terms_) s += c;
  return s;
}

GroupRingElement operator+(const GroupRingElement& a, const GroupRingElement& b) {
  GroupRingElement r = a;
  for (const auto& [w, c] : b.terms_) r.add_term(w, c);
  return r;
}

GroupRingElement operator-(const GroupRingElement& a, const GroupRingElement& b) {
  GroupRingElement r = a;
  for (const auto& [w, c] : b.terms_) r.add_term(w, -c);
  return r;
}

GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
  GroupRingElement r;
  for (const auto& [wa, ca] : a.terms_)
    for (const auto& [wb, cb] : b.terms_) r.add_term(wa * wb, ca * cb);
  return r;
}

GroupRingElement operator*(const Rational& c, const GroupRingElement& a) {
  GroupRingElement r;
  for (const auto& [w, cw] : a.terms_) r.add_term(w, c * cw);
  return r;
}

GroupRingElement fox_derivative(const Word& w, const Generator& v) {
  // d(uw)/dv = du/dv + u dw/dv applied letter by letter: each occurrence of
  // v^{+-1} contributes its prefix, negatively and shifted for inverses.
  GroupRingElement d;
  Word prefix;
  for (const Letter& l : w.letters()) {
    if (l.gen == v) {
      if (l.exp == 1)
        d.add_term(prefix, Rational(1));
      else
        d.add_term(prefix * Word::gen(v, -1), Rational(-1));
    }
    prefix = prefix * Word::gen(l.gen, l.exp);
  }
  return d;
}

GroupRingElement fox_derivative(const GroupRingElement& e, const Generator& v) {
  GroupRingElement d;
  for (const auto& [w, c] : e.terms()) d = d + c * fox_derivative(w, v);
  return d;
}

GroupRingElement bar_involution(const GroupRingElement& e) {
  GroupRingElement r;
  for (const auto& [w, c] : e.terms()) r.add_term(w.inverse(), c);
  return r;
}

std::vector<Generator> generator_list(const OrbifoldSignature& sig) {
  std::vector<Generator> gens;
  for (int i = 1; i <= sig.genus; ++i) {
    gens.push_back(Generator{GenKind::X, i});
    gens.push_back(Generator{GenKind::Y, i});
  }
  for (int j = 1; j <= sig.boundary; ++j) gens.push_back(Generator{GenKind::Z, j});
  for (int k = 1; k <= sig.cone_count(); ++k) gens.push_back(Generator{GenKind::S, k});
  return gens;
}

Word canonical_relator(const OrbifoldSignature& sig) {
  Word r;
  for (int i = 1; i <= sig.genus; ++i) {
    Word x = Word::gen(Generator{GenKind::X, i});
    Word y = Word::gen(Generator{GenKind::Y, i});
    r = r * x * y * x.inverse() * y.inverse();
  }
  for (int j = 1; j <= sig.boundary; ++j) r = r * Word::gen(Generator{GenKind::Z, j});
  for (int k = 1; k <= sig.cone_count(); ++k) r = r * Word::gen(Generator{GenKind::S, k});
  return r;
}

std::vector<Word> torsion_relators(const OrbifoldSignature& sig) {
  std::vector<Word> rels;
  for (int k = 1; k <= sig.cone_count(); ++k)
    rels.push_back(Word::gen(Generator{GenKind::S, k}).pow(sig.cone_orders[k - 1]));
  return rels;
}

void BarTwoChain::add_term(const Word& a, const Word& b, const Rational& coef) {
  if (coef.is_zero() || a.is_identity() || b.is_identity()) return;
  auto key = std::make_pair(a, b);
  auto [it, inserted] = terms_.try_emplace(key, coef);
  if (!inserted) {
    it->second += coef;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void BarTwoChain::add_expanded(const GroupRingElement& e, const Word& b, const Rational& coef) {
  for (const auto& [w, c] : e.terms()) add_term(w, b, coef * c);
}

BarTwoChain fundamental_two_chain(const OrbifoldSignature& sig) {
  validate(sig);
  BarTwoChain chain;
  Word r = canonical_relator(sig);
  for (const Generator& g : generator_list(sig))
    chain.add_expanded(fox_derivative(r, g), Word::gen(g), Rational(1));
  for (int k = 1; k <= sig.cone_count(); ++k) {
    Generator s{GenKind::S, k};
    int order = sig.cone_orders[k - 1];
    chain.add_expanded(fox_derivative(Word::gen(s).pow(order), s), Word::gen(s),
                       Rational(-1, order));
  }
  return chain;
}

}  // namespace orbisymp
