#include "cli.hpp"

#include "qpalg/findim.hpp"
#include "qpalg/ginzburg.hpp"
#include "qpalg/hypersurf.hpp"
#include "qpalg/parse.hpp"
#include "qpalg/potential.hpp"

#include <algorithm>
#include <filesystem>
#include <functional>
#include <future>
#include <random>

namespace qpalg::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// Ordered (name, verdict) pairs; a verdict is "pass", "fail: ..." or "skip: ...".
class Checks {
public:
  void pass(const std::string& name, const std::string& note = "") { add(name, note.empty() ? "pass" : "pass: " + note); }
  void fail(const std::string& name, const std::string& why) { add(name, "fail: " + why); }
  void skip(const std::string& name, const std::string& why) { add(name, "skip: " + why); }
  void expect(const std::string& name, bool ok, const std::string& note) { ok ? pass(name, note) : fail(name, note); }

  // Runs f; refusals become skips, input errors and internal errors failures.
  void guarded(const std::string& name, const std::function<void()>& f) {
    try {
      f();
    } catch (const RefusalError& e) {
      skip(name, e.what());
    } catch (const std::exception& e) {
      fail(name, e.what());
    }
  }

  json row(const std::string& file, const std::string& kind) const {
    int passed = 0, failed = 0, skipped = 0;
    json checks = json::object();
    std::vector<std::string> failures;
    for (const auto& [k, v] : items_) {
      checks[k] = v;
      if (v.rfind("pass", 0) == 0) ++passed;
      else if (v.rfind("skip", 0) == 0) ++skipped;
      else {
        ++failed;
        failures.push_back(k);
      }
    }
    return {{"file", file}, {"kind", kind}, {"status", failed == 0 ? "pass" : "fail"}, {"passed", passed},
            {"failed", failed}, {"skipped", skipped}, {"failures", failures}, {"checks", checks}};
  }

private:
  void add(const std::string& name, const std::string& verdict) { items_.emplace_back(name, verdict); }
  std::vector<std::pair<std::string, std::string>> items_;
};

PathWord random_walk(const Quiver& q, std::mt19937_64& rng, int length) {
  VertexId v = std::uniform_int_distribution<int>(0, q.vertex_count() - 1)(rng);
  std::vector<ArrowId> letters;
  for (int i = 0; i < length; ++i) {
    std::vector<ArrowId> out;
    for (ArrowId a = 0; a < q.arrow_count(); ++a)
      if (q.arrow(a).source == v) out.push_back(a);
    if (out.empty()) break;
    const ArrowId a = out[std::uniform_int_distribution<std::size_t>(0, out.size() - 1)(rng)];
    letters.push_back(a);
    v = q.arrow(a).target;
  }
  return letters.empty() ? PathWord::idempotent(v) : *PathWord::from_letters(q, letters);
}

Rational random_coefficient(std::mt19937_64& rng) {
  int num = 0;
  while (num == 0) num = std::uniform_int_distribution<int>(-5, 5)(rng);
  return Rational(num) / std::uniform_int_distribution<int>(1, 4)(rng);
}

// del0 del1 = 0 and del1 del0 = 0 on random tensors over the doubled graded quiver.
bool tensor_identities(const QuiverPtr& base, std::uint64_t seed, int trials) {
  const int n = 8;
  const auto p = build_ginzburg(Potential(base, n));
  const QuiverPtr& q = p.quiver;
  std::mt19937_64 rng(seed);
  for (int k = 0; k < trials; ++k) {
    NCSeries cycles(q, n);
    for (int attempt = 0; attempt < 200 && cycles.size() < 3; ++attempt) {
      const PathWord w = random_walk(*q, rng, std::uniform_int_distribution<int>(1, 5)(rng));
      if (!w.empty() && w.is_cycle()) cycles.add_term(w, random_coefficient(rng));
    }
    if (!del1(del0(cycles), q, n).is_zero()) return false;
    Tensor t;
    for (int j = 0; j < 3; ++j) {
      NCSeries a(q, n);
      for (int m = 0; m < 4; ++m)
        a.add_term(random_walk(*q, rng, std::uniform_int_distribution<int>(0, 4)(rng)), random_coefficient(rng));
      auto [it, fresh] = t.try_emplace(random_walk(*q, rng, 1), q, n);
      it->second += a;
    }
    if (!del0(del1(t, q, n)).empty()) return false;
  }
  return true;
}

json check_qp(const std::string& path, const JobSpec& job) {
  Checks c;
  const int n = job.truncation.value_or(14);
  const int nh = std::min(n, 10);
  QPFile file;
  Potential w;
  try {
    file = load_qp(path);
    w = parse_potential(file.potential, file.quiver, n);
    c.pass("parse");
  } catch (const std::exception& e) {
    c.fail("parse", e.what());
    return c.row(path, "qp");
  }

  c.guarded("d_squared", [&] {
    DGAPresentation p = build_ginzburg(parse_potential(file.potential, file.quiver, 12));
    for (const auto& [label, expr] : file.differentials) p.override_differential(label, expr);
    c.expect("d_squared", check_d_squared(p, 12), "d^2 = 0 up to length 12");
  });
  if (!file.differentials.empty()) {
    c.skip("potential checks", "custom differential");
    return c.row(path, "qp");
  }

  c.guarded("S(t)", [&] {
    const STReport s = verify_S_of_t(parse_potential(file.potential, file.quiver, 12));
    c.expect("S(t)", s.passed(), std::string("dt ") + (s.dt_identity ? "ok" : "bad") + ", dual " +
                                     (s.dual_identity ? "ok" : "bad"));
  });
  c.guarded("del0del1", [&] { c.expect("del0del1", tensor_identities(file.quiver, job.seed, 20), "20 random tensors"); });

  const auto [dim, cert] = jacobi_dimension(w, n);
  if (cert.status != CertificateStatus::Exact) {
    c.skip("jacobi", "truncated at N=" + std::to_string(n) + ": " + cert.reason);
    return c.row(path, "qp");
  }
  c.pass("jacobi", "dim " + std::to_string(dim) + " exact");
  std::optional<JacobiAlgebra> jac;
  bool classZero = false;
  c.guarded("class", [&] {
    jac = jacobi_algebra(w, n);
    classZero = canonical_class(w, *jac).is_zero;
    const auto weights = find_weights(w);
    if (weights)
      c.expect("class", classZero, "weighted homogeneous, class must vanish");
    else
      c.pass("class", classZero ? "zero" : "nonzero");
  });
  if (!jac) return c.row(path, "qp");

  c.guarded("symmetric=>self-injective", [&] {
    const auto s = symmetric_form(jac->quotient.algebra, job.seed);
    if (!s.form) {
      c.pass("symmetric=>self-injective", "no symmetric form (" + s.evidence + ")");
      return;
    }
    c.expect("symmetric=>self-injective", is_self_injective(jac->quotient.algebra, job.seed), "symmetric");
  });

  c.guarded("right-equivalence", [&] {
    std::mt19937_64 rng(job.seed);
    for (int k = 0; k < 3; ++k) {
      const Potential v = apply_right_equivalence(w, random_right_equivalence(w.quiver_ptr(), n, rng));
      const JacobiAlgebra jv = jacobi_algebra(v, n);
      if (!jv.exact()) {
        c.skip("right-equivalence", "image not certified at N=" + std::to_string(n));
        return;
      }
      if (jv.dim() != jac->dim() || canonical_class(v, jv).is_zero != classZero) {
        c.fail("right-equivalence", "invariants changed under trial " + std::to_string(k));
        return;
      }
    }
    c.pass("right-equivalence", "3 random equivalences");
  });

  c.guarded("homology", [&] {
    const DGAPresentation p = build_ginzburg(parse_potential(file.potential, file.quiver, nh));
    if (!dg_weights(p)) {
      c.skip("homology", "no positive grading");
      return;
    }
    const HomologyEntry h0 = homology(p, 0, nh);
    if (h0.certificate != CertificateStatus::Exact) {
      c.skip("homology", "H^0 not certified at N=" + std::to_string(nh));
      return;
    }
    bool ok = h0.dim == jac->dim();
    std::string note = "H^0 = " + std::to_string(h0.dim);
    if (p.quiver->vertex_count() == 1 && file.quiver->arrow_count() == 1) {
      const HomologyEntry h1 = homology(p, -1, nh);
      ok = ok && h1.dim == 0;
      note += ", H^-1 = " + std::to_string(h1.dim);
    }
    c.expect("homology", ok, note);
  });
  return c.row(path, "qp");
}

json check_poly(const std::string& path) {
  Checks c;
  CommPoly g;
  try {
    g = load_poly(path);
    c.pass("parse");
  } catch (const std::exception& e) {
    c.fail("parse", e.what());
    return c.row(path, "poly");
  }
  c.guarded("milnor", [&] {
    const ArtinQuotient m = milnor_algebra(g);
    if (!m.exact) {
      c.skip("milnor", "non-isolated singularity");
      return;
    }
    c.pass("milnor", "dim " + std::to_string(m.dim()) + (m.warning.empty() ? "" : " (global)"));
    const ArtinQuotient t = tyurina_algebra(g);
    c.expect("tyurina<=milnor", t.exact && t.dim() <= m.dim(),
             std::to_string(t.dim()) + " <= " + std::to_string(m.dim()));
    const KgReport k = kg_module(g);
    c.expect("K_g=T_g", k.dim == t.dim() && k.cokernel_dim == t.dim(), "dim " + std::to_string(k.dim));
    const int r0 = static_cast<int>(g.nvars());
    bool periodic = true;
    for (int r = r0; r <= r0 + 1; ++r) periodic = periodic && stable_hh(g, r) == stable_hh(g, r + 2);
    c.expect("hh-periodic", periodic, "r = " + std::to_string(r0) + ".." + std::to_string(r0 + 3));
  });
  return c.row(path, "poly");
}

} // namespace

Outcome run_corpus(const std::string& dir, const JobSpec& job) {
  if (!fs::is_directory(dir)) throw InputError("not a directory: " + dir);
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string ext = entry.path().extension().string();
    if (entry.is_regular_file() && (ext == ".qp" || ext == ".poly")) files.push_back(entry.path().string());
  }
  std::sort(files.begin(), files.end());

  std::vector<std::future<json>> jobs;
  for (const auto& f : files)
    jobs.push_back(std::async(std::launch::async, [f, &job] {
      return fs::path(f).extension() == ".qp" ? check_qp(f, job) : check_poly(f);
    }));
  json rows = json::array();
  int failed = 0;
  for (auto& j : jobs) {
    json row = j.get();
    row["file"] = fs::path(row["file"].get<std::string>()).filename().string();
    if (row["status"] == "fail") ++failed;
    rows.push_back(std::move(row));
  }
  return {json{{"command", "corpus"}, {"directory", dir}, {"seed", job.seed}, {"files", files.size()},
               {"failed_files", failed}, {"rows", rows}},
          failed == 0 ? kOk : kCheckFailed};
}

} // namespace qpalg::cli
