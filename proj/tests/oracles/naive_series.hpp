#pragma once

// Term-by-term reference arithmetic on label sequences, written without the
// library's PathWord/NCSeries machinery. Used to cross-check multiply,
// substitute and cyclic derivatives.

#include "qpalg/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace oracle {

using qpalg::Rational;

struct ArrowInfo {
  std::string label;
  std::string source;
  std::string target;
};

// A word is a vector of labels; the empty word is tagged by its vertex.
struct Word {
  std::vector<std::string> letters;
  std::string vertex;  // only meaningful when letters is empty
  bool operator<(const Word& o) const {
    if (letters.size() != o.letters.size()) return letters.size() < o.letters.size();
    if (letters != o.letters) return letters < o.letters;
    return vertex < o.vertex;
  }
  bool operator==(const Word& o) const { return letters == o.letters && vertex == o.vertex; }
};

using Poly = std::map<Word, Rational>;

struct NaiveQuiver {
  std::vector<ArrowInfo> arrows;

  const ArrowInfo& info(const std::string& l) const {
    for (const auto& a : arrows)
      if (a.label == l) return a;
    throw std::runtime_error("oracle: unknown label " + l);
  }
  std::string src(const Word& w) const { return w.letters.empty() ? w.vertex : info(w.letters.front()).source; }
  std::string tgt(const Word& w) const { return w.letters.empty() ? w.vertex : info(w.letters.back()).target; }
};

inline void add(Poly& p, const Word& w, const Rational& c) {
  if (c == 0) return;
  Rational& slot = p[w];
  slot += c;
  if (slot == 0) p.erase(w);
}

inline Poly mul(const NaiveQuiver& q, const Poly& a, const Poly& b, std::size_t n) {
  Poly out;
  for (const auto& [u, x] : a)
    for (const auto& [v, y] : b) {
      if (q.tgt(u) != q.src(v)) continue;
      Word w;
      w.letters = u.letters;
      w.letters.insert(w.letters.end(), v.letters.begin(), v.letters.end());
      if (w.letters.size() > n) continue;
      w.vertex = w.letters.empty() ? u.vertex : "";
      add(out, w, x * y);
    }
  return out;
}

// Expands each word letter by letter through the images, then truncates.
inline Poly subst(const NaiveQuiver& q, const Poly& s, const std::map<std::string, Poly>& images, std::size_t n) {
  Poly out;
  for (const auto& [w, c] : s) {
    if (w.letters.empty()) {
      add(out, w, c);
      continue;
    }
    Poly acc = images.at(w.letters.front());
    for (std::size_t i = 1; i < w.letters.size(); ++i) acc = mul(q, acc, images.at(w.letters[i]), n);
    for (const auto& [v, x] : acc) add(out, v, c * x);
  }
  return out;
}

// Sum over all positions k with cycle[k] == a of the rotated remainder.
inline Poly cyclic_derivative(const NaiveQuiver& q, const std::vector<std::string>& cycle, const std::string& a) {
  Poly out;
  const std::size_t n = cycle.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (cycle[k] != a) continue;
    Word w;
    for (std::size_t j = 1; j < n; ++j) w.letters.push_back(cycle[(k + j) % n]);
    if (w.letters.empty()) w.vertex = q.info(a).target;
    add(out, w, Rational(1));
  }
  return out;
}

} // namespace oracle
