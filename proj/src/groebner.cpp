#include "qpalg/groebner.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>

namespace qpalg {

std::string to_string(CertificateStatus s) { return s == CertificateStatus::Exact ? "exact" : "truncated"; }

std::size_t ReductionSystem::max_lead_length() const {
  std::size_t m = 0;
  for (const auto& r : rules) m = std::max(m, r.lead.length());
  return m;
}

namespace {

bool occurs_at(const PathWord& w, std::size_t pos, const PathWord& lead) {
  if (pos + lead.length() > w.length()) return false;
  for (std::size_t k = 0; k < lead.length(); ++k)
    if (w[pos + k] != lead[k]) return false;
  return true;
}

bool contains(const PathWord& w, const PathWord& lead) {
  for (std::size_t p = 0; p + lead.length() <= w.length(); ++p)
    if (occurs_at(w, p, lead)) return true;
  return false;
}

bool has_lead_suffix(const ReductionSystem& r, const std::vector<ArrowId>& letters) {
  for (const auto& rule : r.rules) {
    const std::size_t l = rule.lead.length();
    if (l > letters.size()) continue;
    if (std::equal(rule.lead.letters().begin(), rule.lead.letters().end(), letters.end() - static_cast<std::ptrdiff_t>(l)))
      return true;
  }
  return false;
}

// Rules bucketed by their first letter.
class LeadIndex {
public:
  explicit LeadIndex(const ReductionSystem& r) : sys_(r), byFirst_(static_cast<std::size_t>(r.quiver->arrow_count())) {
    for (std::size_t i = 0; i < r.rules.size(); ++i)
      byFirst_[static_cast<std::size_t>(r.rules[i].lead[0])].push_back(i);
    dead_ = dead_length();
  }

  // Length from which every word contains a lead. Tails are never shorter
  // than their leads, so words this long reduce to zero.
  std::size_t dead() const { return dead_; }

  // Leftmost occurrence of any lead in w: (position, rule index).
  std::optional<std::pair<std::size_t, std::size_t>> find(const PathWord& w) const {
    for (std::size_t p = 0; p < w.length(); ++p)
      for (std::size_t i : byFirst_[static_cast<std::size_t>(w[p])])
        if (occurs_at(w, p, sys_.rules[i].lead)) return std::make_pair(p, i);
    return std::nullopt;
  }

private:
  std::size_t dead_length() const {
    const auto n = static_cast<std::size_t>(sys_.truncation);
    const Quiver& q = *sys_.quiver;
    constexpr std::size_t budget = 4096;
    std::vector<std::vector<ArrowId>> level;
    for (ArrowId a = 0; a < q.arrow_count(); ++a)
      if (!has_lead_suffix(sys_, {a})) level.push_back({a});
    for (std::size_t len = 1; len <= n; ++len) {
      if (level.empty()) return len;
      if (level.size() > budget) break;
      std::vector<std::vector<ArrowId>> next;
      for (const auto& u : level)
        for (ArrowId a = 0; a < q.arrow_count(); ++a) {
          if (q.arrow(a).source != q.arrow(u.back()).target) continue;
          auto v = u;
          v.push_back(a);
          if (!has_lead_suffix(sys_, v)) next.push_back(std::move(v));
        }
      level = std::move(next);
    }
    return n + 1;
  }

  const ReductionSystem& sys_;
  std::vector<std::vector<std::size_t>> byFirst_;
  std::size_t dead_ = 0;
};

NCSeries reduce_with(const NCSeries& s, const ReductionSystem& r, const LeadIndex& index) {
  const Quiver& q = *r.quiver;
  const std::size_t n = std::min(static_cast<std::size_t>(r.truncation), index.dead() - 1);
  NCSeries::Terms pending;
  for (const auto& [w, c] : s.terms())
    if (w.length() <= n) pending.emplace(w, c);
  NCSeries out(r.quiver, r.truncation);
  // Rewriting only produces later words, so the smallest pending word has
  // received all of its contributions when it is popped.
  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    const PathWord& w = node.key();
    const Rational c = node.mapped();
    if (c == 0) continue;
    auto hit = index.find(w);
    if (!hit) {
      out.add_term(w, c);
      continue;
    }
    const auto [pos, ri] = *hit;
    const Rule& rule = r.rules[ri];
    const PathWord left = w.subword(q, 0, pos);
    const PathWord right = w.subword(q, pos + rule.lead.length(), w.length() - pos - rule.lead.length());
    for (const auto& [t, x] : rule.tail.terms()) {
      if (left.length() + t.length() + right.length() > n) continue;
      auto lt = concat(left, t);
      auto ltr = lt ? concat(*lt, right) : std::nullopt;
      if (!ltr) throw Error("rewriting produced a non-composable word");
      auto [it, fresh] = pending.try_emplace(*ltr, c * x);
      if (!fresh) {
        it->second += c * x;
        if (it->second == 0) pending.erase(it);
      }
    }
  }
  return out;
}

NCSeries as_relation(const Rule& rule) {
  NCSeries f = NCSeries::monomial(rule.tail.quiver_ptr(), rule.tail.truncation(), rule.lead);
  f -= rule.tail;
  return f;
}

// S-polynomials of all proper overlaps lead_i = A B, lead_j = B C.
void overlaps(const ReductionSystem& r, std::size_t i, std::size_t j, std::vector<NCSeries>& out) {
  const Quiver& q = *r.quiver;
  const Rule& ri = r.rules[i];
  const Rule& rj = r.rules[j];
  const std::size_t li = ri.lead.length(), lj = rj.lead.length();
  for (std::size_t k = 1; k < std::min(li, lj); ++k) {
    if (li + lj - k > static_cast<std::size_t>(r.truncation)) continue;
    bool match = true;
    for (std::size_t t = 0; t < k && match; ++t) match = ri.lead[li - k + t] == rj.lead[t];
    if (!match) continue;
    const PathWord a = ri.lead.subword(q, 0, li - k);
    const PathWord c = rj.lead.subword(q, k, lj - k);
    NCSeries s = multiply(NCSeries::monomial(r.quiver, r.truncation, a), rj.tail);
    s -= multiply(ri.tail, NCSeries::monomial(r.quiver, r.truncation, c));
    out.push_back(std::move(s));
  }
}

std::vector<NCSeries> all_overlaps(const ReductionSystem& r) {
  std::vector<NCSeries> out;
  for (std::size_t i = 0; i < r.rules.size(); ++i)
    for (std::size_t j = 0; j < r.rules.size(); ++j) overlaps(r, i, j, out);
  return out;
}


} // namespace

NCSeries normal_form(const NCSeries& s, const ReductionSystem& r) {
  if (s.truncation() != r.truncation) throw InputError("normal_form: truncation mismatch");
  if (s.quiver_ptr() != r.quiver && !(s.quiver() == *r.quiver))
    throw InputError("normal_form: series and system live on different quivers");
  if (r.rules.empty()) return s;
  return reduce_with(s, r, LeadIndex(r));
}

namespace {

ReductionSystem complete(const std::vector<NCSeries>& gens, int truncation) {
  ReductionSystem sys{gens.front().quiver_ptr(), truncation, {}};
  std::deque<NCSeries> todo;
  for (const auto& g : gens) todo.push_back(g.truncated(truncation));

  for (;;) {
    while (!todo.empty()) {
      NCSeries f = normal_form(todo.front(), sys);
      todo.pop_front();
      if (f.is_zero()) continue;
      f *= Rational(1) / f.terms().begin()->second;
      const PathWord lead = f.terms().begin()->first;
      NCSeries tail = NCSeries::monomial(sys.quiver, truncation, lead) - f;

      std::vector<Rule> kept;
      for (auto& rule : sys.rules) {
        if (contains(rule.lead, lead))
          todo.push_back(as_relation(rule));
        else
          kept.push_back(std::move(rule));
      }
      sys.rules = std::move(kept);
      sys.rules.push_back({lead, std::move(tail)});

      std::vector<NCSeries> spolys;
      const std::size_t fresh = sys.rules.size() - 1;
      for (std::size_t i = 0; i < sys.rules.size(); ++i) {
        overlaps(sys, fresh, i, spolys);
        if (i != fresh) overlaps(sys, i, fresh, spolys);
      }
      for (auto& s : spolys) todo.push_back(std::move(s));
    }

    // Inter-reduce the tails, then make sure no ambiguity is left open.
    for (std::size_t i = 0; i < sys.rules.size(); ++i) sys.rules[i].tail = normal_form(sys.rules[i].tail, sys);
    for (auto& s : all_overlaps(sys)) {
      NCSeries red = normal_form(s, sys);
      if (!red.is_zero()) todo.push_back(std::move(red));
    }
    if (todo.empty()) break;
  }
  std::sort(sys.rules.begin(), sys.rules.end(), [](const Rule& a, const Rule& b) { return a.lead < b.lead; });
  return sys;
}

} // namespace

ReductionSystem groebner(const std::vector<NCSeries>& gens, int truncation) {
  if (gens.empty()) throw InputError("groebner: no generators (pass the quiver through a zero series)");
  for (const auto& g : gens) {
    if (g.truncation() < truncation) throw InputError("groebner: generator truncated below the requested order");
    for (const auto& [w, c] : g.terms())
      if (w.empty()) throw InputError("groebner: generators must be constant-free");
  }
  // If a lower order t already certifies a finite quotient with normal words
  // shorter than M < t, then every word of length M+1 lies in I + m^(M+2),
  // hence in I + m^(N+1) for every N. The rules found at order t are then a
  // confluent system at order N as well.
  for (int t = 6; t < truncation; t += 4) {
    ReductionSystem low = complete(gens, t);
    try {
      if (certify(low).status != CertificateStatus::Exact) continue;
    } catch (const RefusalError&) {
      break;  // too many normal words to be finite at any order worth trying
    }
    ReductionSystem sys{low.quiver, truncation, {}};
    for (auto& rule : low.rules) {
      NCSeries tail(low.quiver, truncation);
      for (const auto& [w, c] : rule.tail.terms()) tail.add_term(w, c);
      sys.rules.push_back({std::move(rule.lead), std::move(tail)});
    }
    return sys;
  }
  return complete(gens, truncation);
}

bool check_confluence(const ReductionSystem& r) {
  for (const auto& s : all_overlaps(r))
    if (!normal_form(s, r).is_zero()) return false;
  for (std::size_t i = 0; i < r.rules.size(); ++i)
    for (std::size_t j = 0; j < r.rules.size(); ++j)
      if (i != j && contains(r.rules[i].lead, r.rules[j].lead)) return false;
  return true;
}

std::vector<PathWord> normal_words(const ReductionSystem& r, std::size_t cap) {
  const Quiver& q = *r.quiver;
  std::vector<PathWord> out;
  std::vector<PathWord> level;
  for (VertexId v = 0; v < q.vertex_count(); ++v) level.push_back(PathWord::idempotent(v));
  for (int len = 0;; ++len) {
    out.insert(out.end(), level.begin(), level.end());
    if (out.size() > cap)
      throw RefusalError("quotient basis exceeds the cap of " + std::to_string(cap) + " normal words at length " +
                         std::to_string(len));
    if (len == r.truncation) break;
    std::vector<PathWord> next;
    for (const auto& u : level)
      for (ArrowId b = 0; b < q.arrow_count(); ++b) {
        if (q.arrow(b).source != u.target()) continue;
        std::vector<ArrowId> letters = u.letters();
        letters.push_back(b);
        if (has_lead_suffix(r, letters)) continue;
        next.push_back(*PathWord::from_letters(q, std::move(letters)));
      }
    if (next.empty()) break;
    std::sort(next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

QuotientCertificate certify(const ReductionSystem& r, std::size_t cap) {
  const Quiver& q = *r.quiver;
  QuotientCertificate cert;
  cert.truncation = r.truncation;
  cert.max_lead_length = static_cast<int>(r.max_lead_length());
  const auto words = normal_words(r, cap);
  cert.normal_word_count = words.size();
  cert.max_normal_length = words.empty() ? 0 : static_cast<int>(words.back().length());

  // Ufnarovski graph: nodes are normal words of length K = L - 1; an edge
  // u -> v whenever u b is normal and v is its last K letters.
  const std::size_t k = cert.max_lead_length > 0 ? static_cast<std::size_t>(cert.max_lead_length - 1) : 0;
  std::vector<PathWord> nodes;
  for (const auto& w : words)
    if (w.length() == k) nodes.push_back(w);
  std::map<PathWord, std::size_t> id;
  for (std::size_t i = 0; i < nodes.size(); ++i) id.emplace(nodes[i], i);
  std::vector<std::vector<std::size_t>> adj(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (ArrowId b = 0; b < q.arrow_count(); ++b) {
      if (q.arrow(b).source != nodes[i].target()) continue;
      std::vector<ArrowId> letters = nodes[i].letters();
      letters.push_back(b);
      if (has_lead_suffix(r, letters)) continue;
      PathWord ub = *PathWord::from_letters(q, letters);
      PathWord v = ub.subword(q, ub.length() - k, k);
      auto it = id.find(v);
      if (it != id.end()) adj[i].push_back(it->second);
    }
  std::vector<int> color(nodes.size(), 0);
  bool cyclic = false;
  std::function<void(std::size_t)> dfs = [&](std::size_t u) {
    color[u] = 1;
    for (std::size_t v : adj[u]) {
      if (cyclic) return;
      if (color[v] == 1) cyclic = true;
      else if (color[v] == 0) dfs(v);
    }
    color[u] = 2;
  };
  for (std::size_t i = 0; i < nodes.size() && !cyclic; ++i)
    if (color[i] == 0) dfs(i);
  cert.ufnarovski_acyclic = !cyclic;

  if (!cert.ufnarovski_acyclic) {
    cert.reason = "infinitely many normal words (Ufnarovski graph has a cycle)";
  } else if (cert.max_normal_length >= r.truncation) {
    cert.reason = "normal words reach the truncation order " + std::to_string(r.truncation);
  } else if (2 * cert.max_lead_length > r.truncation) {
    cert.reason = "overlaps of the leading words are not covered below the truncation order";
  }
  cert.status = cert.reason.empty() ? CertificateStatus::Exact : CertificateStatus::Truncated;
  return cert;
}

VectorQ coordinates(const NCSeries& s, const ReductionSystem& r, const std::vector<PathWord>& basis) {
  const NCSeries nf = normal_form(s, r);
  VectorQ v = VectorQ::Zero(static_cast<Index>(basis.size()));
  for (const auto& [w, c] : nf.terms()) {
    auto it = std::lower_bound(basis.begin(), basis.end(), w);
    if (it == basis.end() || !(*it == w)) throw Error("normal form contains a word outside the basis");
    v(it - basis.begin()) = c;
  }
  return v;
}

Quotient quotient_algebra(const ReductionSystem& r, std::size_t cap, std::size_t table_cap) {
  QuotientCertificate cert = certify(r, cap);
  std::vector<PathWord> basis = normal_words(r, cap);
  if (basis.size() > table_cap)
    throw RefusalError("quotient has " + std::to_string(basis.size()) +
                       " normal words; multiplication tables are built up to " + std::to_string(table_cap));
  const auto n = static_cast<Index>(basis.size());
  const LeadIndex index(r);
  std::vector<MatrixQ> left(static_cast<std::size_t>(n), MatrixQ::Zero(n, n));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      auto w = concat(basis[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(j)]);
      if (!w || static_cast<int>(w->length()) > r.truncation) continue;
      const NCSeries nf = reduce_with(NCSeries::monomial(r.quiver, r.truncation, *w), r, index);
      for (const auto& [word, c] : nf.terms()) {
        auto it = std::lower_bound(basis.begin(), basis.end(), word);
        left[static_cast<std::size_t>(i)](it - basis.begin(), j) = c;
      }
    }
  VectorQ unit = VectorQ::Zero(n);
  for (Index i = 0; i < n; ++i)
    if (basis[static_cast<std::size_t>(i)].empty()) unit(i) = 1;
  std::vector<std::string> labels;
  for (const auto& w : basis) labels.push_back(to_string(*r.quiver, w));
  return {FinDimAlgebra(std::move(labels), std::move(left), unit), std::move(basis), cert};
}

} // namespace qpalg
