#include "qpalg/hypersurf.hpp"

#include "qpalg/ginzburg.hpp"
#include "qpalg/parse.hpp"
#include "qpalg/potential.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace qpalg {

namespace {

int degree_of(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

bool divides(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Monomial quotient(const Monomial& b, const Monomial& a) {
  Monomial out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = b[i] - a[i];
  return out;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0 && b[i] > 0) return false;
  return true;
}

void require_same_vars(const CommPoly& a, const CommPoly& b) {
  if (a.vars() != b.vars()) throw InputError("polynomials over different variable lists");
}

CommPoly evaluate(const Expr& e, const std::vector<std::string>& vars) {
  const std::string at = " at " + std::to_string(e.line) + ":" + std::to_string(e.column);
  switch (e.kind) {
    case Expr::Kind::Number:
      return CommPoly::constant(vars, e.number);
    case Expr::Kind::Symbol: {
      auto it = std::find(vars.begin(), vars.end(), e.symbol);
      if (it == vars.end()) throw InputError("unknown variable '" + e.symbol + "'" + at);
      Monomial m(vars.size(), 0);
      m[static_cast<std::size_t>(it - vars.begin())] = 1;
      return CommPoly::monomial(vars, m);
    }
    case Expr::Kind::Sum: {
      CommPoly s(vars);
      for (const auto& a : e.args) s += evaluate(a, vars);
      return s;
    }
    case Expr::Kind::Product: {
      CommPoly s = CommPoly::constant(vars, 1);
      for (const auto& a : e.args) s = s * evaluate(a, vars);
      return s;
    }
    case Expr::Kind::Negate:
      return evaluate(e.args.at(0), vars) * Rational(-1);
    case Expr::Kind::Power: {
      if (e.exponent < 0) throw InputError("negative exponent" + at);
      const CommPoly base = evaluate(e.args.at(0), vars);
      CommPoly s = CommPoly::constant(vars, 1);
      for (int k = 0; k < e.exponent; ++k) s = s * base;
      return s;
    }
  }
  throw Error("unhandled expression kind");
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

} // namespace

bool DegRevLexGreater::operator()(const Monomial& a, const Monomial& b) const {
  const int da = degree_of(a), db = degree_of(b);
  if (da != db) return da > db;
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

CommPoly::CommPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

CommPoly CommPoly::constant(std::vector<std::string> vars, const Rational& c) {
  const std::size_t n = vars.size();
  return monomial(std::move(vars), Monomial(n, 0), c);
}

CommPoly CommPoly::monomial(std::vector<std::string> vars, Monomial m, const Rational& c) {
  if (m.size() != vars.size()) throw InputError("monomial has the wrong number of exponents");
  CommPoly p(std::move(vars));
  p.add_term(m, c);
  return p;
}

Rational CommPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

int CommPoly::total_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, degree_of(m));
  return d;
}

void CommPoly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  for (int e : m)
    if (e < 0) throw InputError("negative exponent");
  auto [it, fresh] = terms_.try_emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

CommPoly& CommPoly::operator+=(const CommPoly& o) {
  require_same_vars(*this, o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

CommPoly& CommPoly::operator-=(const CommPoly& o) {
  require_same_vars(*this, o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

CommPoly& CommPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, x] : terms_) x *= c;
  return *this;
}

CommPoly operator*(const CommPoly& a, const CommPoly& b) {
  require_same_vars(a, b);
  CommPoly out(a.vars());
  for (const auto& [m, c] : b.terms()) out += a.times_monomial(m, c);
  return out;
}

CommPoly CommPoly::times_monomial(const Monomial& m, const Rational& c) const {
  CommPoly out(vars_);
  if (c == 0) return out;
  for (const auto& [x, k] : terms_) {
    Monomial y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + m[i];
    out.terms_.emplace_hint(out.terms_.end(), std::move(y), k * c);  // the order is preserved
  }
  return out;
}

CommPoly CommPoly::derivative(std::size_t var) const {
  if (var >= vars_.size()) throw InputError("derivative: variable index out of range");
  CommPoly out(vars_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Monomial y = m;
    --y[var];
    out.add_term(y, c * m[var]);
  }
  return out;
}

Rational CommPoly::constant_term() const { return coefficient(Monomial(vars_.size(), 0)); }

std::string monomial_string(const std::vector<std::string>& vars, const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += vars[i];
    if (m[i] > 1) out += '^' + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

std::string to_string(const CommPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    const bool neg = c < 0;
    const Rational a = neg ? Rational(-c) : c;
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    first = false;
    const bool one = degree_of(m) == 0;
    if (a != 1 || one) out += to_string(a) + (one ? "" : "*");
    if (!one) out += monomial_string(p.vars(), m);
  }
  return out;
}

CommPoly parse_poly(std::string_view text, const std::vector<std::string>& vars) {
  std::set<std::string> seen;
  for (const auto& v : vars) {
    if (v.empty() || !seen.insert(v).second) throw InputError("variable list must hold distinct names");
  }
  return evaluate(parse_expression(text), vars);
}

CommPoly parse_poly_file(std::string_view text) {
  std::string expr;
  std::vector<std::string> vars;
  bool haveExpr = false;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::string varsPart;
    if (line.rfind("poly:", 0) == 0) {
      if (haveExpr) throw InputError("more than one poly: line");
      haveExpr = true;
      std::string rest = line.substr(5);
      const auto pos = rest.find(" vars ");
      if (pos != std::string::npos) {
        varsPart = rest.substr(pos + 6);
        rest.resize(pos);
      }
      expr = trim(rest);
    } else if (line.rfind("vars", 0) == 0) {
      varsPart = line.substr(4);
    } else {
      throw InputError("syntax error: expected 'poly:' or 'vars', got '" + line + "'");
    }
    if (!varsPart.empty()) {
      std::replace(varsPart.begin(), varsPart.end(), ',', ' ');
      std::istringstream vs(varsPart);
      std::string v;
      while (vs >> v) vars.push_back(v);
    }
  }
  if (!haveExpr) throw InputError("missing 'poly:' line");
  if (vars.empty()) throw InputError("missing variable list ('vars x,y,...')");
  return parse_poly(expr, vars);
}

CommPoly load_poly(const std::string& path) { return parse_poly_file(read_file(path)); }

CommPoly normal_form(const CommPoly& f, const std::vector<CommPoly>& gb) {
  CommPoly rem(f.vars());
  CommPoly p = f;
  while (!p.is_zero()) {
    const Monomial m = p.lead();
    const Rational c = p.lead_coefficient();
    const CommPoly* hit = nullptr;
    for (const auto& g : gb)
      if (divides(g.lead(), m)) {
        hit = &g;
        break;
      }
    if (!hit) {
      rem.add_term(m, c);
      p.add_term(m, -c);
      continue;
    }
    p -= hit->times_monomial(quotient(m, hit->lead()), c / hit->lead_coefficient());
  }
  return rem;
}

std::vector<CommPoly> groebner_basis(std::vector<CommPoly> gens) {
  std::vector<CommPoly> g;
  for (auto& f : gens)
    if (!f.is_zero()) g.push_back(f * (Rational(1) / f.lead_coefficient()));
  if (g.empty()) return g;
  std::deque<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j = 1; j < g.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);
  while (!pairs.empty()) {
    const auto [i, j] = pairs.front();
    pairs.pop_front();
    if (coprime(g[i].lead(), g[j].lead())) continue;  // Buchberger's first criterion
    const Monomial l = lcm(g[i].lead(), g[j].lead());
    CommPoly s = g[i].times_monomial(quotient(l, g[i].lead()), 1) - g[j].times_monomial(quotient(l, g[j].lead()), 1);
    CommPoly r = normal_form(s, g);
    if (r.is_zero()) continue;
    r *= Rational(1) / r.lead_coefficient();
    g.push_back(std::move(r));
    for (std::size_t k = 0; k + 1 < g.size(); ++k) pairs.emplace_back(k, g.size() - 1);
  }
  // Minimise, then inter-reduce.
  std::vector<CommPoly> minimal;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
      if (i == j || !divides(g[j].lead(), g[i].lead())) continue;
      redundant = g[j].lead() != g[i].lead() || j < i;
    }
    if (!redundant) minimal.push_back(g[i]);
  }
  std::vector<CommPoly> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<CommPoly> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    CommPoly tail = minimal[i];
    const Monomial lead = tail.lead();
    tail.add_term(lead, -tail.lead_coefficient());
    CommPoly r = normal_form(tail, others);
    r.add_term(lead, 1);
    reduced.push_back(std::move(r));
  }
  std::sort(reduced.begin(), reduced.end(),
            [](const CommPoly& a, const CommPoly& b) { return DegRevLexGreater{}(a.lead(), b.lead()); });
  return reduced;
}

std::vector<std::string> ArtinQuotient::basis_strings() const {
  std::vector<std::string> out;
  for (const auto& m : basis) out.push_back(monomial_string(vars, m));
  return out;
}

ArtinQuotient quotient_ring(const std::vector<CommPoly>& gens) {
  if (gens.empty()) throw InputError("quotient_ring needs at least one generator");
  ArtinQuotient q;
  q.vars = gens.front().vars();
  const std::size_t n = q.vars.size();
  q.basis_gb = groebner_basis(gens);
  if (!q.basis_gb.empty() && degree_of(q.basis_gb.front().lead()) == 0 && q.basis_gb.size() == 1 &&
      q.basis_gb.front().terms().size() == 1) {
    q.exact = true;  // unit ideal
    return q;
  }
  // Finite iff every variable has a pure power among the leads.
  std::vector<int> bound(n, -1);
  int maxLead = 0;
  for (const auto& g : q.basis_gb) {
    const Monomial& m = g.lead();
    maxLead = std::max(maxLead, degree_of(m));
    std::size_t nonzero = 0, var = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (m[i] > 0) {
        ++nonzero;
        var = i;
      }
    if (nonzero == 1 && (bound[var] < 0 || m[var] < bound[var])) bound[var] = m[var];
  }
  q.exact = std::all_of(bound.begin(), bound.end(), [](int b) { return b >= 0; });
  const int cap = q.exact ? std::numeric_limits<int>::max() : 2 * std::max(maxLead, 2);
  q.reached_degree = q.exact ? 0 : cap;
  auto standard = [&](const Monomial& m) {
    for (const auto& g : q.basis_gb)
      if (divides(g.lead(), m)) return false;
    return true;
  };
  Monomial cur(n, 0);
  std::function<void(std::size_t, int)> walk = [&](std::size_t i, int deg) {
    if (i == n) {
      if (standard(cur)) q.basis.push_back(cur);
      return;
    }
    for (int e = 0;; ++e) {
      if (bound[i] >= 0 && e >= bound[i]) break;
      if (deg + e > cap) break;
      cur[i] = e;
      walk(i + 1, deg + e);
      if (q.basis.size() > 200000) throw RefusalError("standard monomial count exceeds 200000");
    }
    cur[i] = 0;
  };
  walk(0, 0);
  std::sort(q.basis.begin(), q.basis.end(), [](const Monomial& a, const Monomial& b) { return DegRevLexGreater{}(b, a); });
  if (q.exact && !q.basis.empty()) {
    // The global quotient only equals the local one when each variable is nilpotent.
    const auto dim = static_cast<int>(q.basis.size());
    for (std::size_t i = 0; i < n; ++i) {
      Monomial m(n, 0);
      m[i] = dim;
      if (!normal_form(CommPoly::monomial(q.vars, m), q.basis_gb).is_zero()) {
        q.warning = "the ideal has zeros away from the origin; dimensions count every point of the global quotient";
        break;
      }
    }
  }
  return q;
}

VectorQ coordinates(const CommPoly& f, const ArtinQuotient& a) {
  if (!a.exact) throw RefusalError("coordinates need a finite quotient");
  const CommPoly r = normal_form(f, a.basis_gb);
  VectorQ v = VectorQ::Zero(a.dim());
  for (const auto& [m, c] : r.terms()) {
    auto it = std::lower_bound(a.basis.begin(), a.basis.end(), m,
                               [](const Monomial& x, const Monomial& y) { return DegRevLexGreater{}(y, x); });
    if (it == a.basis.end() || *it != m) throw Error("normal form left the standard monomials");
    v(it - a.basis.begin()) = c;
  }
  return v;
}

MatrixQ multiplication_matrix(const CommPoly& f, const ArtinQuotient& a) {
  if (!a.exact) throw RefusalError("multiplication matrix needs a finite quotient");
  MatrixQ m(a.dim(), a.dim());
  for (Index j = 0; j < a.dim(); ++j)
    m.col(j) = coordinates(f.times_monomial(a.basis[static_cast<std::size_t>(j)], 1), a);
  return m;
}

FinDimAlgebra as_algebra(const ArtinQuotient& a) {
  if (!a.exact) throw RefusalError("algebra structure needs a finite quotient");
  const Index d = a.dim();
  std::vector<std::vector<VectorQ>> table(static_cast<std::size_t>(d), std::vector<VectorQ>(static_cast<std::size_t>(d)));
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          coordinates(CommPoly::monomial(a.vars, a.basis[static_cast<std::size_t>(i)])
                          .times_monomial(a.basis[static_cast<std::size_t>(j)], 1),
                      a);
  VectorQ unit = d > 0 ? coordinates(CommPoly::constant(a.vars, 1), a) : VectorQ();
  return FinDimAlgebra::from_table(a.basis_strings(), table, unit);
}

namespace {

std::vector<CommPoly> jacobian(const CommPoly& g) {
  if (g.nvars() == 0) throw InputError("polynomial needs at least one variable");
  if (g.constant_term() != 0) throw InputError("g must vanish at the origin");
  std::vector<CommPoly> out;
  for (std::size_t i = 0; i < g.nvars(); ++i) {
    out.push_back(g.derivative(i));
    if (out.back().constant_term() != 0)
      throw InputError("the origin is not a critical point (d g/d" + g.vars()[i] + " is nonzero there)");
  }
  return out;
}

} // namespace

ArtinQuotient milnor_algebra(const CommPoly& g) { return quotient_ring(jacobian(g)); }

ArtinQuotient tyurina_algebra(const CommPoly& g) {
  auto gens = jacobian(g);
  gens.push_back(g);
  return quotient_ring(gens);
}

KgReport kg_module(const CommPoly& g) {
  const ArtinQuotient m = milnor_algebra(g);
  if (!m.exact) throw RefusalError("K_g needs a finite Milnor algebra (non-isolated singularity)");
  const MatrixQ mult = multiplication_matrix(g, m);
  const MatrixQ ker = kernel(mult);
  KgReport rep;
  rep.dim = ker.cols();
  for (Index c = 0; c < ker.cols(); ++c) {
    CommPoly v(m.vars);
    for (Index r = 0; r < ker.rows(); ++r) v.add_term(m.basis[static_cast<std::size_t>(r)], ker(r, c));
    rep.basis.push_back(to_string(v));
  }
  rep.cokernel_dim = m.dim() - rank(mult);
  rep.tyurina_dim = tyurina_algebra(g).dim();
  if (rep.cokernel_dim != rep.tyurina_dim) throw Error("cokernel of g on M_g disagrees with the Tyurina algebra");
  return rep;
}

Index stable_hh(const CommPoly& g, int r) {
  const auto n = static_cast<int>(g.nvars());
  if (r < n) throw RefusalError("stable_hh needs r >= " + std::to_string(n) + " (number of variables)");
  if (r % 2 == 0) {
    const ArtinQuotient t = tyurina_algebra(g);
    if (!t.exact) throw RefusalError("stable_hh needs an isolated singularity");
    return t.dim();
  }
  return kg_module(g).dim;
}

CommPoly dw_polynomial(int n) {
  if (n < 1) throw InputError("dw polynomial needs n >= 1");
  return parse_poly("x^2 + y^2 + u^2 + v^" + std::to_string(2 * n), {"x", "y", "u", "v"});
}

DWReport dw_check(int n, int truncation, int homology_truncation) {
  if (n < 1) throw InputError("dw_check needs n >= 1");
  DWReport rep;
  rep.n = n;
  auto q = std::make_shared<const Quiver>(parse_quiver("vertices 1; arrows x:1->1"));
  const Potential w = parse_potential("1/" + std::to_string(n + 1) + "*x^" + std::to_string(n + 1), q, truncation);
  const JacobiAlgebra jac = jacobi_algebra(w, truncation);
  rep.jacobi_dim = jac.dim();
  rep.jacobi_exact = jac.exact();
  if (!rep.jacobi_exact) rep.reasons.push_back("Jacobi algebra truncated: " + jac.quotient.certificate.reason);
  if (rep.jacobi_exact) {
    rep.class_zero = canonical_class(w, jac).is_zero;
    rep.symmetric = symmetric_form(jac.quotient.algebra).form.has_value();
  }
  const ArtinQuotient t = tyurina_algebra(dw_polynomial(n));
  rep.tyurina_dim = t.dim();
  rep.tyurina_exact = t.exact;
  if (!t.exact) rep.reasons.push_back("Tyurina algebra truncated at degree " + std::to_string(t.reached_degree));
  const DGAPresentation p = build_ginzburg(parse_potential(
      "1/" + std::to_string(n + 1) + "*x^" + std::to_string(n + 1), q, homology_truncation));
  rep.periodic = true;
  for (int i = 0; i >= -8; --i) {
    const HomologyEntry h = homology(p, i, homology_truncation);
    rep.homology.push_back(h.dim);
    const Index expected = i % 2 == 0 ? n : 0;
    if (h.dim != expected || h.certificate != CertificateStatus::Exact) {
      rep.periodic = false;
      rep.reasons.push_back("H^" + std::to_string(i) + " = " + std::to_string(h.dim) + " (" +
                            to_string(h.certificate) + ")");
    }
  }
  if (rep.jacobi_exact && rep.jacobi_dim != n) rep.reasons.push_back("dim Jacobi algebra differs from n");
  if (rep.tyurina_exact && rep.tyurina_dim != 2 * n - 1) rep.reasons.push_back("Tyurina number differs from 2n-1");
  if (rep.jacobi_exact && !rep.class_zero) rep.reasons.push_back("canonical class is nonzero");
  if (rep.jacobi_exact && !rep.symmetric) rep.reasons.push_back("no symmetric Frobenius form");
  return rep;
}

} // namespace qpalg
