#pragma once

#include "qpalg/findim.hpp"
#include "qpalg/series.hpp"

#include <string>
#include <vector>

namespace qpalg {

/// Rewriting rule lead -> tail. The order is local: shorter words lead, ties
/// broken lexicographically by arrow declaration order, so every word of the
/// tail is longer than the lead or of equal length and lexicographically later.
struct Rule {
  PathWord lead;
  NCSeries tail;
};

struct ReductionSystem {
  QuiverPtr quiver;
  int truncation = 0;
  std::vector<Rule> rules;

  std::size_t max_lead_length() const;
};

enum class CertificateStatus { Exact, Truncated };
std::string to_string(CertificateStatus s);

struct QuotientCertificate {
  CertificateStatus status = CertificateStatus::Truncated;
  int truncation = 0;
  bool ufnarovski_acyclic = false;  ///< finitely many normal words for the leading words
  int max_normal_length = 0;
  int max_lead_length = 0;
  std::size_t normal_word_count = 0;
  std::string reason;  ///< why the status is truncated (empty when exact)
};

/// Overlap completion of the two-sided ideal generated by gens, modulo paths
/// longer than `truncation`. Generators must be constant-free.
ReductionSystem groebner(const std::vector<NCSeries>& gens, int truncation);

/// Fully reduced representative; linear, idempotent, no word divisible by a lead.
NCSeries normal_form(const NCSeries& s, const ReductionSystem& r);

/// True when every overlap ambiguity of length <= truncation resolves.
bool check_confluence(const ReductionSystem& r);

/// Normal words of length <= truncation in PathWord order; throws RefusalError past cap.
std::vector<PathWord> normal_words(const ReductionSystem& r, std::size_t cap = 100000);

QuotientCertificate certify(const ReductionSystem& r, std::size_t cap = 100000);

struct Quotient {
  FinDimAlgebra algebra;
  std::vector<PathWord> basis;
  QuotientCertificate certificate;
};

/// Structure constants of the (truncated) quotient in the normal-word basis.
/// Throws RefusalError when the basis exceeds `cap` or `table_cap` (the
/// largest dimension for which a dense multiplication table is built).
Quotient quotient_algebra(const ReductionSystem& r, std::size_t cap = 100000, std::size_t table_cap = 1500);

/// Coordinates of a series in the normal-word basis (after reduction).
VectorQ coordinates(const NCSeries& s, const ReductionSystem& r, const std::vector<PathWord>& basis);

} // namespace qpalg
