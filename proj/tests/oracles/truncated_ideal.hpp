#pragma once

// Brute-force model of a truncated quotient kQ/(I + paths longer than N):
// enumerate every word, span all products u*g*v, and do dense-free sparse
// elimination. Only usable on tiny quivers and small N.

#include "oracles/naive_series.hpp"
#include "qpalg/linalg.hpp"

#include <map>

namespace oracle {

class TruncatedIdeal {
public:
  TruncatedIdeal(const NaiveQuiver& q, std::vector<std::string> vertices, const std::vector<Poly>& gens,
                 std::size_t n)
      : q_(q), n_(n) {
    for (const auto& v : vertices) {
      Word e;
      e.vertex = v;
      words_.push_back(e);
    }
    std::vector<Word> level = words_;
    for (std::size_t len = 1; len <= n; ++len) {
      std::vector<Word> next;
      for (const auto& u : level)
        for (const auto& a : q.arrows) {
          if (q.tgt(u) != a.source) continue;
          Word w;
          w.letters = u.letters;
          w.letters.push_back(a.label);
          next.push_back(w);
        }
      words_.insert(words_.end(), next.begin(), next.end());
      level = std::move(next);
    }
    for (std::size_t i = 0; i < words_.size(); ++i) index_[words_[i]] = static_cast<qpalg::Index>(i);
    for (const auto& g : gens)
      for (const auto& u : words_)
        for (const auto& v : words_) {
          Poly left{{u, Rational(1)}}, right{{v, Rational(1)}};
          Poly p = mul(q_, mul(q_, left, g, n_), right, n_);
          if (!p.empty()) ech_.insert(vec(p));
        }
  }

  std::size_t word_count() const { return words_.size(); }
  std::size_t quotient_dim() const { return words_.size() - static_cast<std::size_t>(ech_.rank()); }
  bool contains(const Poly& p) const { return ech_.contains(vec(p)); }

private:
  qpalg::SparseVec<Rational> vec(const Poly& p) const {
    std::map<qpalg::Index, Rational> m;
    for (const auto& [w, c] : p) m[index_.at(w)] += c;
    qpalg::SparseVec<Rational> out;
    for (const auto& [i, c] : m)
      if (c != 0) out.emplace_back(i, c);
    return out;
  }

  const NaiveQuiver& q_;
  std::size_t n_;
  std::vector<Word> words_;
  std::map<Word, qpalg::Index> index_;
  qpalg::SparseEchelon<Rational> ech_;
};

} // namespace oracle
