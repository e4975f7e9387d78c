#pragma once

#include "oracles/naive_series.hpp"
#include "qpalg/parse.hpp"

#include <random>

namespace testutil {

using namespace qpalg;

inline QuiverPtr quiver(const std::string& text) { return std::make_shared<const Quiver>(parse_quiver(text)); }

inline QuiverPtr one_loop() { return quiver("vertices 1; arrows x:1->1"); }
inline QuiverPtr two_loops() { return quiver("vertices 1; arrows x:1->1, y:1->1"); }
inline QuiverPtr three_loops() { return quiver("vertices 1; arrows x:1->1, y:1->1, z:1->1"); }
inline QuiverPtr two_cycle() { return quiver("vertices 1,2; arrows a:1->2, b:2->1"); }

// Random walk of the given length starting at a random vertex; the walk is
// cut short where a vertex has no outgoing arrow.
inline PathWord random_path(const Quiver& q, std::mt19937_64& rng, int length) {
  std::uniform_int_distribution<int> pickV(0, q.vertex_count() - 1);
  VertexId v = pickV(rng);
  std::vector<ArrowId> letters;
  for (int i = 0; i < length; ++i) {
    std::vector<ArrowId> out;
    for (ArrowId a = 0; a < q.arrow_count(); ++a)
      if (q.arrow(a).source == v) out.push_back(a);
    if (out.empty()) break;
    ArrowId a = out[std::uniform_int_distribution<std::size_t>(0, out.size() - 1)(rng)];
    letters.push_back(a);
    v = q.arrow(a).target;
  }
  if (letters.empty()) return PathWord::idempotent(v);
  return *PathWord::from_letters(q, letters);
}

inline Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  int n = num(rng);
  if (n == 0) n = 1;
  return Rational(n) / den(rng);
}

inline NCSeries random_series(const QuiverPtr& q, int truncation, std::mt19937_64& rng, int terms, int minLen,
                              int maxLen) {
  NCSeries s(q, truncation);
  std::uniform_int_distribution<int> len(minLen, maxLen);
  for (int i = 0; i < terms; ++i) s.add_term(random_path(*q, rng, len(rng)), random_rational(rng));
  return s;
}

inline oracle::NaiveQuiver naive(const Quiver& q) {
  oracle::NaiveQuiver nq;
  for (const auto& a : q.arrows()) nq.arrows.push_back({a.label, q.vertex_name(a.source), q.vertex_name(a.target)});
  return nq;
}

inline oracle::Word naive_word(const Quiver& q, const PathWord& w) {
  oracle::Word out;
  for (ArrowId a : w.letters()) out.letters.push_back(q.arrow(a).label);
  if (w.empty()) out.vertex = q.vertex_name(w.source());
  return out;
}

inline oracle::Poly naive(const NCSeries& s) {
  oracle::Poly p;
  for (const auto& [w, c] : s.terms()) oracle::add(p, naive_word(s.quiver(), w), c);
  return p;
}

} // namespace testutil
