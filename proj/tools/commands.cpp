#include "cli.hpp"

#include "qpalg/findim.hpp"
#include "qpalg/ginzburg.hpp"
#include "qpalg/hypersurf.hpp"
#include "qpalg/parse.hpp"
#include "qpalg/potential.hpp"

#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <sstream>

namespace qpalg::cli {

using nlohmann::json;

namespace {

std::string extension(const std::string& path) { return std::filesystem::path(path).extension().string(); }

const std::string& single_input(const JobSpec& job) {
  if (job.inputs.size() != 1)
    throw InputError(job.command + " expects exactly one input file, got " + std::to_string(job.inputs.size()));
  return job.inputs.front();
}

int truncation_or(const JobSpec& job, int fallback) {
  const int n = job.truncation.value_or(fallback);
  if (n < 1) throw InputError("--n must be at least 1");
  return n;
}

Potential load_potential(const std::string& path, int n) {
  if (extension(path) != ".qp") throw InputError("expected a .qp file: " + path);
  const QPFile f = load_qp(path);
  return parse_potential(f.potential, f.quiver, n);
}

DGAPresentation load_presentation(const std::string& path, int n) {
  if (extension(path) != ".qp") throw InputError("expected a .qp file: " + path);
  const QPFile f = load_qp(path);
  DGAPresentation p = build_ginzburg(parse_potential(f.potential, f.quiver, n));
  for (const auto& [label, expr] : f.differentials) p.override_differential(label, expr);
  return p;
}

CommPoly load_polynomial(const std::string& path) {
  if (extension(path) != ".poly") throw InputError("expected a .poly file: " + path);
  return load_poly(path);
}

json rationals(const VectorQ& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(to_string(v(i)));
  return out;
}

json rationals(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

json words(const Quiver& q, const std::vector<PathWord>& basis) {
  json out = json::array();
  for (const auto& w : basis) out.push_back(to_string(q, w));
  return out;
}

json certificate_json(const QuotientCertificate& c) {
  json j{{"status", to_string(c.status)},
         {"truncation", c.truncation},
         {"max_normal_length", c.max_normal_length},
         {"max_lead_length", c.max_lead_length}};
  if (!c.reason.empty()) j["reason"] = c.reason;
  return j;
}

json homology_row(const HomologyEntry& h, int n) {
  json row{{"degree", h.degree},
           {"dim", h.dim},
           {"certificate", to_string(h.certificate)},
           {"truncation", n},
           {"stabilized", h.stabilized},
           {"graded", h.graded},
           {"basis", h.basis}};
  if (!h.warning.empty()) row["warning"] = h.warning;
  return row;
}

Outcome homology_report(const DGAPresentation& p, const JobSpec& job, int n, json base) {
  json rows = json::array();
  bool exact = true;
  for (int i = job.degree_hi; i >= job.degree_lo; --i) {
    const HomologyEntry h = homology(p, i, n);
    exact = exact && h.certificate == CertificateStatus::Exact;
    rows.push_back(homology_row(h, n));
  }
  base["truncation"] = n;
  base["rows"] = rows;
  base["status"] = exact ? "exact" : "truncated";
  return {base, exact ? kOk : kRefused};
}

json quotient_json(const ArtinQuotient& a) {
  json j{{"dim", a.dim()},
         {"certificate", a.exact ? "exact" : "truncated"},
         {"basis", a.basis_strings()},
         {"groebner_basis", json::array()}};
  for (const auto& g : a.basis_gb) j["groebner_basis"].push_back(to_string(g));
  if (!a.exact) j["reached_degree"] = a.reached_degree;
  if (!a.warning.empty()) j["warning"] = a.warning;
  return j;
}

FinDimAlgebra load_algebra(const std::string& path, int n, json& provenance) {
  const std::string ext = extension(path);
  if (ext == ".json") {
    json j;
    try {
      j = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
      throw InputError(std::string("malformed JSON: ") + e.what());
    }
    provenance = {{"source", "structure constants"}, {"certificate", "exact"}};
    return algebra_from_json(j);
  }
  if (ext == ".qp") {
    const JacobiAlgebra jac = jacobi_algebra(load_potential(path, n), n);
    if (!jac.exact()) throw RefusalError("Jacobi algebra is not certified finite at N=" + std::to_string(n));
    provenance = {{"source", "Jacobi algebra"}, {"certificate", certificate_json(jac.quotient.certificate)}};
    return jac.quotient.algebra;
  }
  if (ext == ".poly") {
    const ArtinQuotient m = milnor_algebra(load_polynomial(path));
    if (!m.exact) throw RefusalError("Milnor algebra is not finite (non-isolated singularity)");
    provenance = {{"source", "Milnor algebra"}, {"certificate", "exact"}};
    return as_algebra(m);
  }
  throw InputError("expected a .json, .qp or .poly file: " + path);
}

Outcome cmd_jacobi(const JobSpec& job) {
  const std::string& path = single_input(job);
  const int n = truncation_or(job, 20);
  const Potential w = load_potential(path, n);
  json r{{"command", "jacobi"}, {"file", path}, {"truncation", n}, {"potential", to_string(w)}};
  const auto [dim, cert] = jacobi_dimension(w, n);
  r["certificate"] = certificate_json(cert);
  if (cert.status != CertificateStatus::Exact) {
    r["status"] = "truncated";
    r["normal_words_up_to_truncation"] = dim;
    return {r, kRefused};
  }
  const JacobiAlgebra jac = jacobi_algebra(w, n);
  r["status"] = "exact";
  r["dim"] = jac.dim();
  r["basis"] = words(w.quiver(), jac.quotient.basis);
  r["hilbert"] = hilbert_function(jac.quotient.algebra);
  return {r, kOk};
}

Outcome cmd_class(const JobSpec& job) {
  const std::string& path = single_input(job);
  const int n = truncation_or(job, 20);
  const Potential w = load_potential(path, n);
  const JacobiAlgebra jac = jacobi_algebra(w, n);
  json r{{"command", "class"}, {"file", path}, {"truncation", n}, {"certificate", certificate_json(jac.quotient.certificate)}};
  if (!jac.exact()) {
    r["status"] = "truncated";
    return {r, kRefused};
  }
  const CanonicalClass c = canonical_class(w, jac);
  r["status"] = "exact";
  r["class_zero"] = c.is_zero;
  r["cocenter_dim"] = c.vector.size();
  r["vector"] = rationals(c.vector);
  return {r, kOk};
}

Outcome cmd_saito(const JobSpec& job) {
  const std::string& path = single_input(job);
  const int n = truncation_or(job, 20);
  const SaitoReport s = saito_test(load_potential(path, n), n);
  json r{{"command", "saito"}, {"file", path}, {"truncation", n}, {"certificate", "exact"},
         {"class_zero", s.class_is_zero}, {"jacobi_dim", s.jacobi_dim},
         {"weighted_homogeneous", s.witness.has_value()}};
  if (s.witness) r["weights"] = rationals(*s.witness);
  r["consistent"] = s.class_is_zero == s.witness.has_value();
  return {r, kOk};
}

Outcome cmd_mycompare(const JobSpec& job) {
  if (job.inputs.size() != 2) throw InputError("mycompare expects two .qp files");
  const int n = truncation_or(job, 20);
  const Potential w1 = load_potential(job.inputs[0], n), w2 = load_potential(job.inputs[1], n);
  const MatherYauReport m = mather_yau_compare(w1, w2, n);
  json sides = json::array();
  for (int k = 0; k < 2; ++k)
    sides.push_back({{"file", job.inputs[static_cast<std::size_t>(k)]},
                     {"dim", m.dim[k]},
                     {"hilbert", m.hilbert[k]},
                     {"cocenter_dim", m.cocenter_dim[k]},
                     {"class_zero", m.class_is_zero[k]}});
  return {json{{"command", "mycompare"}, {"truncation", n}, {"certificate", "exact"}, {"rows", sides},
               {"all_equal", m.all_equal}, {"verdict", m.verdict}},
          kOk};
}

Outcome cmd_ginzburg_build(const JobSpec& job) {
  const std::string& path = single_input(job);
  const int n = truncation_or(job, 12);
  const DGAPresentation p = load_presentation(path, n);
  json rows = json::array();
  for (ArrowId a = 0; a < p.quiver->arrow_count(); ++a) {
    const Arrow& ar = p.quiver->arrow(a);
    rows.push_back({{"generator", ar.label},
                    {"source", p.quiver->vertex_name(ar.source)},
                    {"target", p.quiver->vertex_name(ar.target)},
                    {"degree", ar.degree},
                    {"d", to_string(p.differential[static_cast<std::size_t>(a)])}});
  }
  const bool ok = check_d_squared(p, n);
  return {json{{"command", "ginzburg-build"}, {"file", path}, {"truncation", n}, {"rows", rows},
               {"d_squared_zero", ok}, {"certificate", "exact"}},
          ok ? kOk : kCheckFailed};
}

Outcome cmd_ginzburg_homology(const JobSpec& job) {
  const std::string& path = single_input(job);
  const int n = truncation_or(job, 16);
  const DGAPresentation p = load_presentation(path, n);
  if (!check_d_squared(p, n)) throw InputError("the differential does not square to zero");
  return homology_report(p, job, n, {{"command", "ginzburg-homology"}, {"file", path}});
}

Outcome cmd_verify_s(const JobSpec& job) {
  const std::string& path = single_input(job);
  const int n = truncation_or(job, 12);
  const STReport s = verify_S_of_t(load_potential(path, n));
  return {json{{"command", "verify-s"}, {"file", path}, {"truncation", n}, {"certificate", "exact"},
               {"dt_identity", s.dt_identity}, {"dual_identity", s.dual_identity}, {"passed", s.passed()}},
          s.passed() ? kOk : kCheckFailed};
}

Outcome cmd_pagoda(const JobSpec& job) {
  if (!job.inputs.empty()) throw InputError("pagoda takes --width, not an input file");
  const int width = job.width.value_or(2);
  if (width < 1) throw InputError("--width must be at least 1");
  const int n = truncation_or(job, 16);
  const DGAPresentation p = pagoda_model(width, n);
  Outcome o = homology_report(p, job, n, {{"command", "pagoda"}, {"width", width}});
  const bool u = verify_u_action(p, n);
  o.report["u_action"] = u;
  if (!u && o.exit_code == kOk) o.exit_code = kCheckFailed;
  return o;
}

Outcome cmd_fingerprint(const JobSpec& job) {
  const std::string& path = single_input(job);
  json prov;
  const FinDimAlgebra a = load_algebra(path, truncation_or(job, 20), prov);
  json r = to_json(fingerprint(a, job.seed));
  r["command"] = "findim-fingerprint";
  r["file"] = path;
  r["provenance"] = prov;
  r["seed"] = job.seed;
  return {r, kOk};
}

Outcome cmd_frobenius(const JobSpec& job) {
  const std::string& path = single_input(job);
  json prov;
  const FinDimAlgebra a = load_algebra(path, truncation_or(job, 20), prov);
  const SymmetricFormResult s = symmetric_form(a, job.seed);
  json r{{"command", "frobenius"}, {"file", path}, {"provenance", prov}, {"dim", a.dim()},
         {"symmetric", s.form.has_value()}, {"seed", job.seed}};
  r["certificate"] = s.form ? "exact" : s.evidence;
  if (s.form) r["functional"] = rationals(s.form->functional);
  try {
    r["self_injective"] = is_self_injective(a, job.seed);
  } catch (const RefusalError& e) {
    r["self_injective"] = nullptr;
    r["self_injective_note"] = e.what();
  }
  return {r, kOk};
}

Outcome cmd_quotient(const JobSpec& job, bool tyurina) {
  const std::string& path = single_input(job);
  const CommPoly g = load_polynomial(path);
  const ArtinQuotient a = tyurina ? tyurina_algebra(g) : milnor_algebra(g);
  json r = quotient_json(a);
  r["command"] = tyurina ? "tyurina" : "milnor";
  r["file"] = path;
  r["polynomial"] = to_string(g);
  r["status"] = a.exact ? "exact" : "truncated";
  return {r, a.exact ? kOk : kRefused};
}

Outcome cmd_kg(const JobSpec& job) {
  const std::string& path = single_input(job);
  const KgReport k = kg_module(load_polynomial(path));
  return {json{{"command", "kg"}, {"file", path}, {"certificate", "exact"}, {"dim", k.dim}, {"basis", k.basis},
               {"cokernel_dim", k.cokernel_dim}, {"tyurina_dim", k.tyurina_dim}},
          kOk};
}

Outcome cmd_hh(const JobSpec& job) {
  const std::string& path = single_input(job);
  const CommPoly g = load_polynomial(path);
  const int lo = job.r.value_or(static_cast<int>(g.nvars()));
  const int hi = job.r ? *job.r : lo + 3;
  json rows = json::array();
  for (int r = lo; r <= hi; ++r)
    rows.push_back({{"r", r}, {"dim", stable_hh(g, r)}, {"certificate", "exact"}, {"source", r % 2 == 0 ? "T_g" : "K_g"}});
  return {json{{"command", "hh"}, {"file", path}, {"threshold", g.nvars()}, {"rows", rows}}, kOk};
}

Outcome cmd_dw_check(const JobSpec& job) {
  if (!job.inputs.empty()) throw InputError("dw-check takes --width, not an input file");
  std::vector<int> widths;
  if (job.width) {
    if (*job.width < 1) throw InputError("--width must be at least 1");
    widths.push_back(*job.width);
  } else {
    widths = {1, 2, 3, 4, 5};
  }
  const int n = truncation_or(job, 20);
  json rows = json::array();
  bool all = true;
  for (int k : widths) {
    const DWReport d = dw_check(k, n, std::min(n, 16));
    all = all && d.passed();
    rows.push_back({{"n", k},
                    {"jacobi_dim", d.jacobi_dim},
                    {"jacobi_certificate", d.jacobi_exact ? "exact" : "truncated"},
                    {"class_zero", d.class_zero},
                    {"tyurina_dim", d.tyurina_dim},
                    {"tyurina_certificate", d.tyurina_exact ? "exact" : "truncated"},
                    {"symmetric", d.symmetric},
                    {"periodic", d.periodic},
                    {"homology", d.homology},
                    {"result", d.passed() ? "pass" : "fail"},
                    {"reasons", d.reasons}});
  }
  return {json{{"command", "dw-check"}, {"truncation", n}, {"rows", rows}, {"passed", all}}, all ? kOk : kCheckFailed};
}

std::string cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array() && std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_primitive(); })) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ",") + cell(x);
    return s;
  }
  return v.dump();
}

} // namespace

std::pair<int, int> parse_degrees(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw InputError("--degrees expects <lo>..<hi>, got '" + text + "'");
  int lo = 0, hi = 0;
  try {
    std::size_t used = 0;
    lo = std::stoi(text.substr(0, dots), &used);
    if (used != dots) throw std::invalid_argument("trailing");
    const std::string rest = text.substr(dots + 2);
    hi = std::stoi(rest, &used);
    if (used != rest.size()) throw std::invalid_argument("trailing");
  } catch (const std::logic_error&) {
    throw InputError("--degrees expects integers, got '" + text + "'");
  }
  if (lo > hi || lo < -24 || hi > 0) throw InputError("--degrees window must satisfy -24 <= lo <= hi <= 0");
  return {lo, hi};
}

Outcome run(const JobSpec& job) {
  const std::string& c = job.command;
  if (c == "jacobi") return cmd_jacobi(job);
  if (c == "class") return cmd_class(job);
  if (c == "saito") return cmd_saito(job);
  if (c == "mycompare") return cmd_mycompare(job);
  if (c == "ginzburg-build") return cmd_ginzburg_build(job);
  if (c == "ginzburg-homology") return cmd_ginzburg_homology(job);
  if (c == "verify-s") return cmd_verify_s(job);
  if (c == "pagoda") return cmd_pagoda(job);
  if (c == "findim-fingerprint") return cmd_fingerprint(job);
  if (c == "frobenius") return cmd_frobenius(job);
  if (c == "milnor") return cmd_quotient(job, false);
  if (c == "tyurina") return cmd_quotient(job, true);
  if (c == "kg") return cmd_kg(job);
  if (c == "hh") return cmd_hh(job);
  if (c == "dw-check") return cmd_dw_check(job);
  if (c == "corpus") return run_corpus(single_input(job), job);
  throw InputError("unknown command '" + c + "'");
}

std::string render_table(const json& report) {
  std::ostringstream out;
  for (const auto& [k, v] : report.items())
    if (k != "rows") out << k << ": " << cell(v) << '\n';
  if (!report.contains("rows") || report["rows"].empty()) return out.str();
  // Identifying columns first; nested objects only appear in JSON output.
  std::vector<std::string> cols;
  for (const char* lead : {"file", "n", "generator", "degree", "r"})
    if (report["rows"].front().contains(lead)) cols.push_back(lead);
  for (const auto& row : report["rows"])
    for (const auto& [k, v] : row.items())
      if (!v.is_object() && std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width;
  for (const auto& c : cols) width.push_back(c.size());
  for (const auto& row : report["rows"]) {
    auto& line = cells.emplace_back();
    for (std::size_t i = 0; i < cols.size(); ++i) {
      line.push_back(row.contains(cols[i]) ? cell(row[cols[i]]) : "");
      width[i] = std::max(width[i], line.back().size());
    }
  }
  auto emit = [&](const std::vector<std::string>& line) {
    for (std::size_t i = 0; i < line.size(); ++i)
      out << std::left << std::setw(static_cast<int>(width[i])) << line[i] << (i + 1 < line.size() ? "  " : "\n");
  };
  emit(cols);
  for (const auto& line : cells) emit(line);
  return out.str();
}

} // namespace qpalg::cli
