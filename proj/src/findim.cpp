#include "qpalg/findim.hpp"

#include <map>
#include <random>
#include <set>

namespace qpalg {

namespace {

using SparseCol = std::vector<std::pair<Index, Rational>>;

SparseCol sparse(const VectorQ& v) {
  SparseCol out;
  for (Index i = 0; i < v.size(); ++i)
    if (v(i) != 0) out.emplace_back(i, v(i));
  return out;
}

Subspace hstack(const Subspace& a, const Subspace& b) {
  if (a.cols() == 0) return b;
  if (b.cols() == 0) return a;
  Subspace out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

Subspace vstack(const std::vector<MatrixQ>& blocks, Index cols) {
  Index rows = 0;
  for (const auto& b : blocks) rows += b.rows();
  MatrixQ out(rows, cols);
  Index r = 0;
  for (const auto& b : blocks) {
    out.middleRows(r, b.rows()) = b;
    r += b.rows();
  }
  return out;
}

Index span_rank(const Subspace& s) { return s.cols() == 0 ? 0 : rank(s); }

// Integer polynomial coefficients (low degree first) from rational ones.
std::vector<Integer> clear_denominators(const std::vector<Rational>& p) {
  Integer lcm = 1;
  for (const auto& c : p) {
    const Integer d = denominator(c);
    lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
  }
  std::vector<Integer> out;
  for (const auto& c : p) out.push_back(numerator(c) * (lcm / denominator(c)));
  return out;
}

Rational eval_poly(const std::vector<Rational>& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<Integer> divisors(Integer n, const Integer& limit) {
  if (n < 0) n = -n;
  std::vector<Integer> small, large;
  for (Integer d = 1; d * d <= n; ++d) {
    if (d > limit) throw RefusalError("idempotent search: eigenvalue candidates too large");
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

// All rational roots of p (distinct), by the rational root theorem.
std::vector<Rational> rational_roots(std::vector<Rational> p) {
  std::vector<Rational> roots;
  while (p.size() > 1 && p.front() == 0) {
    roots.push_back(0);
    p.erase(p.begin());
  }
  if (p.size() <= 1) return roots;
  const auto ip = clear_denominators(p);
  const Integer limit = 1000000;
  for (const auto& num : divisors(ip.front(), limit))
    for (const auto& den : divisors(ip.back(), limit))
      for (int sign : {1, -1}) {
        const Rational r = Rational(num * sign) / Rational(den);
        if (eval_poly(p, r) == 0 && std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
      }
  return roots;
}

// Minimal polynomial (low degree first, monic) of the operator m restricted
// to the cyclic subspace generated by v.
std::vector<Rational> krylov_min_poly(const MatrixQ& m, const VectorQ& v) {
  std::vector<VectorQ> powers{v};
  for (;;) {
    const Index k = static_cast<Index>(powers.size());
    MatrixQ basis(v.size(), k);
    for (Index i = 0; i < k; ++i) basis.col(i) = powers[static_cast<std::size_t>(i)];
    VectorQ next = m * powers.back();
    if (auto sol = solve(basis, next)) {
      std::vector<Rational> poly;
      for (Index i = 0; i < k; ++i) poly.push_back(-(*sol)(i));
      poly.push_back(1);
      return poly;
    }
    powers.push_back(std::move(next));
  }
}

} // namespace

FinDimAlgebra::FinDimAlgebra(std::vector<std::string> basis, std::vector<MatrixQ> mult, VectorQ unit)
    : basis_(std::move(basis)), left_(std::move(mult)), unit_(std::move(unit)) {
  const Index n = dim();
  if (static_cast<Index>(left_.size()) != n || unit_.size() != n)
    throw InputError("algebra: basis, table and unit sizes disagree");
  for (const auto& l : left_)
    if (l.rows() != n || l.cols() != n) throw InputError("algebra: multiplication matrix has the wrong shape");
  const MatrixQ id = MatrixQ::Identity(n, n);
  if (left_mult(unit_) != id || right_mult(unit_) != id) throw InputError("algebra: unit axiom fails");

  std::vector<std::vector<SparseCol>> cols(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) cols[static_cast<std::size_t>(i)].push_back(sparse(left(i).col(j)));
  auto check = [&](Index i, Index j, Index k) {
    VectorQ lhs = VectorQ::Zero(n), rhs = VectorQ::Zero(n);
    for (const auto& [l, c] : cols[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
      for (const auto& [r, x] : cols[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)]) lhs(r) += c * x;
    for (const auto& [l, c] : cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)])
      for (const auto& [r, x] : cols[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)]) rhs(r) += c * x;
    if (lhs != rhs)
      throw InputError("algebra: associativity fails on (" + basis_[static_cast<std::size_t>(i)] + ", " +
                       basis_[static_cast<std::size_t>(j)] + ", " + basis_[static_cast<std::size_t>(k)] + ")");
  };
  if (n <= 200) {
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        for (Index k = 0; k < n; ++k) check(i, j, k);
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<Index> pick(0, n - 1);
    for (int t = 0; t < 20000; ++t) check(pick(rng), pick(rng), pick(rng));
  }
}

FinDimAlgebra FinDimAlgebra::from_table(std::vector<std::string> basis,
                                        const std::vector<std::vector<VectorQ>>& table, VectorQ unit) {
  const auto n = static_cast<Index>(basis.size());
  if (static_cast<Index>(table.size()) != n) throw InputError("algebra: table has the wrong number of rows");
  std::vector<MatrixQ> left;
  for (Index i = 0; i < n; ++i) {
    const auto& row = table[static_cast<std::size_t>(i)];
    if (static_cast<Index>(row.size()) != n) throw InputError("algebra: table row has the wrong length");
    MatrixQ l(n, n);
    for (Index j = 0; j < n; ++j) {
      if (row[static_cast<std::size_t>(j)].size() != n) throw InputError("algebra: product vector has the wrong length");
      l.col(j) = row[static_cast<std::size_t>(j)];
    }
    left.push_back(std::move(l));
  }
  return FinDimAlgebra(std::move(basis), std::move(left), std::move(unit));
}

VectorQ FinDimAlgebra::multiply(const VectorQ& a, const VectorQ& b) const { return left_mult(a) * b; }

MatrixQ FinDimAlgebra::left_mult(const VectorQ& a) const {
  MatrixQ m = MatrixQ::Zero(dim(), dim());
  for (Index i = 0; i < dim(); ++i)
    if (a(i) != 0) m += a(i) * left(i);
  return m;
}

MatrixQ FinDimAlgebra::right_mult(const VectorQ& b) const {
  MatrixQ m(dim(), dim());
  for (Index i = 0; i < dim(); ++i) m.col(i) = left(i) * b;
  return m;
}

FinDimAlgebra FinDimAlgebra::change_basis(const MatrixQ& p) const {
  auto inv = inverse(p);
  if (!inv) throw InputError("change_basis: matrix is not invertible");
  std::vector<MatrixQ> left;
  for (Index a = 0; a < dim(); ++a) left.push_back(*inv * left_mult(p.col(a)) * p);
  std::vector<std::string> names;
  for (Index a = 0; a < dim(); ++a) names.push_back("f" + std::to_string(a));
  return FinDimAlgebra(std::move(names), std::move(left), *inv * unit_);
}

Subspace radical(const FinDimAlgebra& a) {
  const Index n = a.dim();
  MatrixQ trace(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) {
      Rational t = 0;
      const MatrixQ& li = a.left(i);
      const MatrixQ& lj = a.left(j);
      for (Index k = 0; k < n; ++k)
        for (Index l = 0; l < n; ++l)
          if (li(k, l) != 0 && lj(l, k) != 0) t += li(k, l) * lj(l, k);
      trace(i, j) = trace(j, i) = t;
    }
  return kernel(trace);
}

Subspace product_space(const FinDimAlgebra& a, const Subspace& s, const Subspace& t) {
  if (s.cols() == 0 || t.cols() == 0) return Subspace(a.dim(), 0);
  Subspace all(a.dim(), s.cols() * t.cols());
  for (Index i = 0; i < s.cols(); ++i) all.middleCols(i * t.cols(), t.cols()) = a.left_mult(s.col(i)) * t;
  return column_basis(all);
}

std::vector<Index> hilbert_function(const FinDimAlgebra& a) {
  const Subspace rad = radical(a);
  std::vector<Index> dims{a.dim()};
  Subspace power = rad;
  while (power.cols() > 0) {
    dims.push_back(power.cols());
    if (static_cast<Index>(dims.size()) > a.dim() + 1) throw Error("radical is not nilpotent");
    power = product_space(a, power, rad);
  }
  dims.push_back(0);
  std::vector<Index> out;
  for (std::size_t k = 0; k + 1 < dims.size(); ++k) out.push_back(dims[k] - dims[k + 1]);
  return out;
}

Subspace center(const FinDimAlgebra& a) {
  const Index n = a.dim();
  MatrixQ eq(n * n, n);
  for (Index j = 0; j < n; ++j)
    for (Index k = 0; k < n; ++k)
      for (Index i = 0; i < n; ++i) eq(j * n + k, i) = a.left(i)(k, j) - a.left(j)(k, i);
  return kernel(eq);
}

CommutatorQuotient commutator_quotient(const FinDimAlgebra& a) {
  const Index n = a.dim();
  MatrixQ comm(n, n * (n - 1) / 2);
  Index c = 0;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) comm.col(c++) = a.product(i, j) - a.product(j, i);
  CommutatorQuotient out;
  out.commutators = comm.cols() ? column_basis(comm) : Subspace(n, 0);
  out.dim = n - out.commutators.cols();
  std::set<Index> pivots;
  if (out.commutators.cols() > 0)
    for (Index p : rref(MatrixQ(out.commutators.transpose())).pivots) pivots.insert(p);
  for (Index k = 0; k < n; ++k)
    if (!pivots.count(k)) out.lifted.push_back(k);
  return out;
}

SymmetricFormResult symmetric_form(const FinDimAlgebra& a, std::uint64_t seed) {
  const Index n = a.dim();
  const CommutatorQuotient cq = commutator_quotient(a);
  const MatrixQ traces = cq.commutators.cols() ? kernel(MatrixQ(cq.commutators.transpose()))
                                               : MatrixQ(MatrixQ::Identity(n, n));
  SymmetricFormResult res;
  const Index s = traces.cols();
  if (s == 0) {
    res.evidence = "trivial";
    return res;
  }
  std::vector<MatrixQ> grams;
  for (Index k = 0; k < s; ++k) {
    MatrixQ g(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) g(i, j) = traces.col(k).dot(a.product(i, j));
    grams.push_back(std::move(g));
  }
  auto attempt = [&](const std::vector<Rational>& coeffs) -> bool {
    MatrixQ g = MatrixQ::Zero(n, n);
    VectorQ lambda = VectorQ::Zero(n);
    for (Index k = 0; k < s; ++k) {
      if (coeffs[static_cast<std::size_t>(k)] == 0) continue;
      g += coeffs[static_cast<std::size_t>(k)] * grams[static_cast<std::size_t>(k)];
      lambda += coeffs[static_cast<std::size_t>(k)] * traces.col(k);
    }
    ++res.trials;
    if (determinant(g) == 0) return false;
    res.form = FrobeniusForm{lambda, g};
    return true;
  };

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-10, 10);
  for (int t = 0; t < 24; ++t) {
    std::vector<Rational> c;
    for (Index k = 0; k < s; ++k) c.emplace_back(coef(rng));
    if (attempt(c)) {
      res.evidence = "witness";
      return res;
    }
  }
  // det(sum t_k G_k) has degree <= n in each t_k; it vanishes identically
  // iff it vanishes on the grid {0..n}^s.
  double gridSize = 1;
  for (Index k = 0; k < s; ++k) gridSize *= static_cast<double>(n + 1);
  if (gridSize > 20000) {
    res.evidence = "randomized";
    return res;
  }
  std::vector<Rational> point(static_cast<std::size_t>(s), Rational(0));
  for (;;) {
    if (attempt(point)) {
      res.evidence = "witness";
      return res;
    }
    Index k = 0;
    while (k < s && point[static_cast<std::size_t>(k)] == n) point[static_cast<std::size_t>(k++)] = 0;
    if (k == s) break;
    point[static_cast<std::size_t>(k)] += 1;
  }
  res.evidence = "exact";
  return res;
}

std::vector<VectorQ> primitive_idempotents(const FinDimAlgebra& a, std::uint64_t seed) {
  const Index n = a.dim();
  const Subspace rad = radical(a);
  const Index m = n - rad.cols();
  const CommutatorQuotient cq = commutator_quotient(a);
  if (span_rank(hstack(rad, cq.commutators)) != rad.cols())
    throw RefusalError("algebra is not basic: A/rad A is not commutative");
  if (m == 1) return {a.unit()};

  // Action of a on A/rad through a complement of rad.
  const auto ech = rref(MatrixQ(rad.transpose()));
  std::set<Index> pivots(ech.pivots.begin(), ech.pivots.end());
  MatrixQ basisChange(n, n);
  basisChange.leftCols(rad.cols()) = rad;
  Index col = rad.cols();
  for (Index k = 0; k < n; ++k)
    if (!pivots.count(k)) basisChange.col(col++) = VectorQ::Unit(n, k);
  const MatrixQ inv = *inverse(basisChange);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int attemptNo = 0; attemptNo < 12; ++attemptNo) {
    VectorQ x(n);
    for (Index i = 0; i < n; ++i) x(i) = coef(rng);
    const MatrixQ block = (inv * a.left_mult(x) * basisChange).bottomRightCorner(m, m);
    const VectorQ one = (inv * a.unit()).tail(m);
    const auto poly = krylov_min_poly(block, one);
    if (static_cast<Index>(poly.size()) - 1 != m) continue;
    const auto roots = rational_roots(poly);
    if (static_cast<Index>(roots.size()) != m)
      throw RefusalError("algebra is not basic over Q: A/rad A is not a product of copies of Q");
    std::vector<VectorQ> idems;
    for (Index k = 0; k < m; ++k) {
      VectorQ e = a.unit();
      for (Index l = 0; l < m; ++l) {
        if (l == k) continue;
        const Rational scale = Rational(1) / (roots[static_cast<std::size_t>(k)] - roots[static_cast<std::size_t>(l)]);
        e = a.multiply(e, x - roots[static_cast<std::size_t>(l)] * a.unit()) * scale;
      }
      // Newton-type lift e <- 3e^2 - 2e^3 doubles the nilpotency order each step.
      for (int it = 0; it < 64; ++it) {
        const VectorQ e2 = a.multiply(e, e);
        if (e2 == e) break;
        e = 3 * e2 - 2 * a.multiply(e2, e);
      }
      idems.push_back(std::move(e));
    }
    return idems;
  }
  throw RefusalError("algebra is not basic over Q: no element separates the simple modules");
}

namespace {

bool is_commutative(const FinDimAlgebra& a) {
  for (Index i = 0; i < a.dim(); ++i)
    for (Index j = i + 1; j < a.dim(); ++j)
      if (a.product(i, j) != a.product(j, i)) return false;
  return true;
}

} // namespace

bool is_self_injective(const FinDimAlgebra& a, std::uint64_t seed) {
  std::vector<VectorQ> idems;
  try {
    idems = primitive_idempotents(a, seed);
  } catch (const RefusalError&) {
    // A commutative algebra is self-injective iff it is Frobenius, and with
    // [A,A] = 0 that is exactly the symmetric form search.
    if (!is_commutative(a)) throw;
    const auto s = symmetric_form(a, seed);
    if (s.form) return true;
    if (s.evidence == "randomized") throw;
    return false;
  }
  const Index n = a.dim();
  const Subspace rad = radical(a);
  Subspace rightSocle, leftSocle;
  if (rad.cols() == 0) {
    rightSocle = leftSocle = MatrixQ::Identity(n, n);
  } else {
    std::vector<MatrixQ> rr, ll;
    for (Index k = 0; k < rad.cols(); ++k) {
      rr.push_back(a.right_mult(rad.col(k)));
      ll.push_back(a.left_mult(rad.col(k)));
    }
    rightSocle = kernel(vstack(rr, n));  // {x : x rad = 0}
    leftSocle = kernel(vstack(ll, n));   // {x : rad x = 0}
  }
  const auto m = static_cast<Index>(idems.size());
  auto uniquePartner = [&](const VectorQ& v, bool rightSide) -> Index {
    Index found = -1;
    for (Index l = 0; l < m; ++l) {
      const VectorQ& e = idems[static_cast<std::size_t>(l)];
      const VectorQ p = rightSide ? a.multiply(v, e) : a.multiply(e, v);
      if (p != VectorQ::Zero(n)) {
        if (found >= 0) return -1;
        found = l;
      }
    }
    return found;
  };
  std::vector<Index> nu(static_cast<std::size_t>(m)), nuLeft(static_cast<std::size_t>(m));
  for (Index k = 0; k < m; ++k) {
    const VectorQ& e = idems[static_cast<std::size_t>(k)];
    const Subspace sr = column_basis(MatrixQ(a.left_mult(e) * rightSocle));
    const Subspace sl = column_basis(MatrixQ(a.right_mult(e) * leftSocle));
    if (sr.cols() != 1 || sl.cols() != 1) return false;
    nu[static_cast<std::size_t>(k)] = uniquePartner(sr.col(0), true);
    nuLeft[static_cast<std::size_t>(k)] = uniquePartner(sl.col(0), false);
    if (nu[static_cast<std::size_t>(k)] < 0 || nuLeft[static_cast<std::size_t>(k)] < 0) return false;
  }
  std::set<Index> image(nu.begin(), nu.end());
  if (static_cast<Index>(image.size()) != m) return false;
  for (Index k = 0; k < m; ++k)
    if (nuLeft[static_cast<std::size_t>(nu[static_cast<std::size_t>(k)])] != k) return false;
  return true;
}

Fingerprint fingerprint(const FinDimAlgebra& a, std::uint64_t seed) {
  Fingerprint f;
  f.dim = a.dim();
  f.hilbert = hilbert_function(a);
  f.center_dim = center(a).cols();
  f.cocenter_dim = commutator_quotient(a).dim;
  try {
    f.self_injective = is_self_injective(a, seed);
  } catch (const RefusalError&) {
    f.self_injective.reset();
  }
  return f;
}

nlohmann::json to_json(const FinDimAlgebra& a) {
  nlohmann::json j;
  j["dim"] = a.dim();
  j["basis"] = a.basis();
  auto vec = [](const VectorQ& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (Index i = 0; i < v.size(); ++i) arr.push_back(to_string(v(i)));
    return arr;
  };
  j["unit"] = vec(a.unit());
  nlohmann::json table = nlohmann::json::array();
  for (Index i = 0; i < a.dim(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Index k = 0; k < a.dim(); ++k) row.push_back(vec(a.product(i, k)));
    table.push_back(std::move(row));
  }
  j["table"] = std::move(table);
  return j;
}

FinDimAlgebra algebra_from_json(const nlohmann::json& j) {
  try {
    const auto n = j.at("dim").get<Index>();
    auto vec = [&](const nlohmann::json& arr) {
      if (!arr.is_array() || static_cast<Index>(arr.size()) != n) throw InputError("algebra JSON: vector of wrong length");
      VectorQ v(n);
      for (Index i = 0; i < n; ++i) {
        const auto& x = arr[static_cast<std::size_t>(i)];
        v(i) = x.is_string() ? parse_rational(x.get<std::string>()) : Rational(x.get<long long>());
      }
      return v;
    };
    std::vector<std::string> basis = j.at("basis").get<std::vector<std::string>>();
    if (static_cast<Index>(basis.size()) != n) throw InputError("algebra JSON: basis length differs from dim");
    std::vector<std::vector<VectorQ>> table;
    for (const auto& row : j.at("table")) {
      std::vector<VectorQ> r;
      for (const auto& v : row) r.push_back(vec(v));
      table.push_back(std::move(r));
    }
    return FinDimAlgebra::from_table(std::move(basis), table, vec(j.at("unit")));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("algebra JSON: ") + e.what());
  }
}

nlohmann::json to_json(const Fingerprint& f) {
  nlohmann::json j;
  j["dim"] = f.dim;
  j["hilbert"] = f.hilbert;
  j["center_dim"] = f.center_dim;
  j["cocenter_dim"] = f.cocenter_dim;
  j["self_injective"] = f.self_injective ? nlohmann::json(*f.self_injective) : nlohmann::json("not basic");
  return j;
}

FinDimAlgebra truncated_polynomial(int n) {
  if (n < 1) throw InputError("truncated_polynomial needs n >= 1");
  std::vector<std::string> basis;
  std::vector<MatrixQ> left;
  for (int i = 0; i < n; ++i) {
    basis.push_back(i == 0 ? "1" : i == 1 ? "x" : "x^" + std::to_string(i));
    MatrixQ l = MatrixQ::Zero(n, n);
    for (int j = 0; i + j < n; ++j) l(i + j, j) = 1;
    left.push_back(std::move(l));
  }
  return FinDimAlgebra(std::move(basis), std::move(left), VectorQ::Unit(n, 0));
}

FinDimAlgebra split_semisimple(int m) {
  std::vector<std::string> basis;
  std::vector<MatrixQ> left;
  for (int i = 0; i < m; ++i) {
    basis.push_back("e" + std::to_string(i + 1));
    MatrixQ l = MatrixQ::Zero(m, m);
    l(i, i) = 1;
    left.push_back(std::move(l));
  }
  return FinDimAlgebra(std::move(basis), std::move(left), VectorQ::Ones(m));
}

FinDimAlgebra matrix_algebra(int n) {
  const int d = n * n;
  std::vector<std::string> basis;
  std::vector<MatrixQ> left;
  VectorQ unit = VectorQ::Zero(d);
  for (int i = 0; i < n; ++i) {
    unit(i * n + i) = 1;
    for (int j = 0; j < n; ++j) {
      basis.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
      MatrixQ l = MatrixQ::Zero(d, d);
      // E_ij E_jk = E_ik
      for (int k = 0; k < n; ++k) l(i * n + k, j * n + k) = 1;
      left.push_back(std::move(l));
    }
  }
  return FinDimAlgebra(std::move(basis), std::move(left), unit);
}

} // namespace qpalg
