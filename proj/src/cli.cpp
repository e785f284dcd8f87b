#include "gkz/cli.hpp"

#include <algorithm>
#include <sstream>

namespace gkz {

namespace {

Json lattice_json(const LatticeBasis& L) {
  Json a = Json::array();
  for (const auto& v : L.vectors) {
    Json row = Json::array();
    for (const auto& x : v) row.push_back(x.convert_to<long long>());
    a.push_back(row);
  }
  return a;
}

Json int_json(const IntVec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.convert_to<long long>());
  return a;
}

Json matrix_json(const IntMatrix& M) {
  Json a = Json::array();
  for (std::size_t i = 0; i < M.rows(); ++i) a.push_back(int_json(M.row(i)));
  return a;
}

Triangulation job_triangulation(const GkzSystem& sys, const JobSpec& job) {
  if (job.heights) return regular_triangulation(sys.cfg, *job.heights);
  return default_triangulation(sys.cfg);
}

Json triangulation_json(const GkzSystem& sys, const Triangulation& T) {
  Json j;
  if (T.heights) j["heights"] = rational_vector_json(*T.heights);
  Json simplices = Json::array();
  for (const auto& J : T.simplices)
    simplices.push_back(Json{{"simplex", index_json(J)}, {"volume", simplex_volume(sys.cfg, J).convert_to<long long>()}});
  j["simplices"] = simplices;
  return j;
}

Json certificate_json(const GkzSystem& sys, const GammaSeries& s) {
  if (!is_nonresonant(sys).nonresonant) return Json{{"available", false}, {"reason", "alpha is resonant"}};
  SupportCertificate cert = full_support_cone(sys, s.gamma);
  SupportCheck check = check_support(cert, s);
  Json j;
  j["available"] = true;
  j["nonintegral"] = index_json(cert.nonintegral);
  j["full_space"] = cert.full_space;
  Json rays = Json::array();
  for (const auto& r : cert.rays) rays.push_back(int_json(r));
  j["rays"] = rays;
  Json lin = Json::array();
  for (const auto& r : cert.lineality) lin.push_back(int_json(r));
  j["lineality"] = lin;
  j["interior_point"] = int_json(cert.interior_point);
  j["checked_terms"] = check.checked;
  j["all_nonzero"] = check.all_nonzero;
  return j;
}

Json eval_json(const EvalResult& e) {
  return Json{{"re", e.value.real()}, {"im", e.value.imag()}, {"last_shell", e.last_shell},
              {"convergence_warning", e.convergence_warning}};
}

Json residual_json(const GkzSystem& sys, const LogSeries& s) {
  Json ops = Json::array();
  bool all_zero = true;
  for (const auto& [name, op] : system_operators(sys)) {
    LogSeries r = apply(op, s);
    Json e;
    e["operator"] = name;
    if (r.terms.empty()) {
      e["residual"] = "0";
    } else {
      all_zero = false;
      e["residual"] = "nonzero";
      e["nonzero_offsets"] = r.terms.size();
      e["first_offset"] = int_json(r.terms.begin()->first);
    }
    ops.push_back(e);
  }
  return Json{{"operators", ops}, {"all_zero", all_zero}, {"terms", s.terms.size()}};
}

Json cmd_analyze(const GkzSystem& sys) {
  Json r;
  r["r"] = sys.r();
  r["N"] = sys.N();
  r["lattice"] = lattice_json(sys.lattice);
  ResonanceReport rep = is_nonresonant(sys);
  Json facets = Json::array();
  for (const auto& f : rep.facets)
    facets.push_back(Json{{"form", int_json(f.form.coeffs)}, {"value", to_string(f.value)}, {"integral", f.integral}});
  r["facets"] = facets;
  r["volume"] = normalized_volume(sys.cfg).convert_to<long long>();
  auto apex = is_pyramid(sys.cfg, sys.lattice);
  r["pyramid_apex"] = apex ? Json(*apex + 1) : Json(nullptr);
  r["nonresonant"] = rep.nonresonant;
  RankResult rk = rank(sys);
  r["rank"] = Json{{"value", rk.value.convert_to<long long>()}, {"warnings", rk.warnings}};
  Json ops = Json::array();
  for (const auto& [name, op] : system_operators(sys)) ops.push_back(Json{{"name", name}, {"operator", op.to_string()}});
  r["operators"] = ops;
  if (!rep.nonresonant) {
    std::string hint = "alpha is resonant; run `restrict` to obtain a face restriction witnessing reducibility";
    if (auto w = reducibility_witness(sys))
      hint += " (witness on facet " + std::to_string(w->facet + 1) + " with beta = " + format_vector(w->beta) + ")";
    r["hint"] = hint;
  }
  return r;
}

Json cmd_triangulate(const GkzSystem& sys, const JobSpec& job) {
  Triangulation T = job_triangulation(sys, job);
  Json r = triangulation_json(sys, T);
  Int total = 0;
  for (const auto& J : T.simplices) total += simplex_volume(sys.cfg, J);
  r["total_volume"] = total.convert_to<long long>();
  r["volume"] = normalized_volume(sys.cfg).convert_to<long long>();
  r["additive"] = total == normalized_volume(sys.cfg);
  if (job.rho) {
    Json conv = Json::array();
    for (const auto& J : T.simplices) {
      IndexSet I = complement(J, sys.N());
      conv.push_back(Json{{"simplex", index_json(J)},
                          {"sector", index_json(I)},
                          {"convergent", is_convergence_direction(sys.cfg, sys.lattice, *job.rho, I)}});
    }
    r["convergence"] = conv;
    Triangulation Trho = triangulation_from_direction(sys.cfg, sys.lattice, *job.rho);
    Json rs = Json::array();
    for (const auto& J : Trho.simplices) rs.push_back(index_json(J));
    r["rho_triangulation"] = rs;
  }
  return r;
}

Json cmd_series(const GkzSystem& sys, const JobSpec& job) {
  Triangulation T = job_triangulation(sys, job);
  Json r;
  r["triangulation"] = triangulation_json(sys, T);
  r["volume"] = normalized_volume(sys.cfg).convert_to<long long>();
  std::vector<GammaSeries> series;
  if (job.simplex) {
    IndexSet J = *job.simplex;
    std::sort(J.begin(), J.end());
    for (const auto& g : gamma_choices(sys, J)) series.push_back(gamma_series(sys, g, job.truncation));
  } else {
    series = basis_for_triangulation(sys, T, job.truncation);
  }
  r["count"] = series.size();
  Json arr = Json::array();
  for (const auto& s : series) {
    Json j = gamma_series_json(s);
    j["simplex"] = index_json(complement(s.gamma.sector, sys.N()));
    j["certificate"] = certificate_json(sys, s);
    if (job.rho) j["convergent"] = is_convergence_direction(sys.cfg, sys.lattice, *job.rho, s.gamma.sector);
    if (job.point) j["value"] = eval_json(evaluate(sys, s, *job.point, job.rho));
    arr.push_back(j);
  }
  r["series"] = arr;
  return r;
}

Json cmd_logbasis(const GkzSystem& sys, const JobSpec& job) {
  Triangulation T = job_triangulation(sys, job);
  LogBasis basis = full_basis(sys, T, job.truncation, job.eps_order);
  Json r;
  r["triangulation"] = triangulation_json(sys, T);
  r["volume"] = normalized_volume(sys.cfg).convert_to<long long>();
  r["count"] = basis.size();
  if (!basis.alpha_prime.empty()) r["alpha_prime"] = rational_vector_json(basis.alpha_prime);
  Json blocks = Json::array();
  for (const auto& blk : basis.blocks) {
    Json b;
    Json simplices = Json::array();
    std::vector<IndexSet> sectors;
    for (const auto& J : blk.simplices) {
      simplices.push_back(index_json(J));
      sectors.push_back(complement(J, sys.N()));
    }
    b["simplices"] = simplices;
    b["gamma"] = rational_vector_json(blk.gamma);
    b["logarithmic"] = blk.logarithmic;
    Json sols = Json::array();
    for (const auto& s : blk.solutions) {
      Json sj = series_json(s, sectors);
      if (job.point) sj["value"] = eval_json(evaluate(s, *job.point));
      sols.push_back(sj);
    }
    b["solutions"] = sols;
    blocks.push_back(b);
  }
  r["blocks"] = blocks;
  return r;
}

// Series carried by a previous report, if any.
std::vector<LogSeries> supplied_solutions(const GkzSystem& sys, const Json& input) {
  std::vector<LogSeries> out;
  const Json* result = nullptr;
  if (input.contains("result")) result = &input.at("result");
  if (input.contains("solutions"))
    for (const auto& s : input.at("solutions")) out.push_back(series_from_json(sys, s));
  if (result) {
    if (result->contains("series"))
      for (const auto& s : result->at("series")) out.push_back(series_from_json(sys, s));
    if (result->contains("blocks"))
      for (const auto& b : result->at("blocks"))
        for (const auto& s : b.at("solutions")) out.push_back(series_from_json(sys, s));
  }
  return out;
}

Json cmd_verify(const GkzSystem& sys, const JobSpec& job, const Json& input, bool& ok) {
  std::vector<LogSeries> sols = supplied_solutions(sys, input);
  Json r;
  r["source"] = sols.empty() ? "built" : "supplied";
  if (sols.empty()) sols = full_basis(sys, job_triangulation(sys, job), job.truncation, job.eps_order).solutions();
  Json arr = Json::array();
  ok = true;
  for (const auto& s : sols) {
    Json res = residual_json(sys, s);
    ok = ok && res["all_zero"].get<bool>();
    res["gamma"] = rational_vector_json(s.gamma);
    res["weight"] = s.weight;
    arr.push_back(res);
  }
  r["count"] = sols.size();
  r["solutions"] = arr;
  r["all_zero"] = ok;
  return r;
}

Json cmd_contiguity(const GkzSystem& sys, const JobSpec& job) {
  if (!job.index) throw PreconditionError("contiguity: the job needs an \"index\" (1-based column)");
  ContiguityResult c = contiguity_inverse(sys, *job.index, default_effort(), job.truncation);
  Json r;
  r["index"] = *job.index + 1;
  r["inverse"] = operator_json(c.inverse);
  r["passes"] = c.passes;
  r["trace"] = c.trace;
  r["truncation"] = job.truncation;
  r["certificate"] = Json{{"basis_size", c.basis_size}, {"certified_terms", c.certified_terms}, {"holds", true}};
  return r;
}

Json restriction_json(const GkzSystem& sys, const FaceRestriction& fr, int truncation) {
  Json r;
  Json forms = Json::array();
  for (int f : fr.facet_indices) forms.push_back(int_json(sys.facets[static_cast<std::size_t>(f)].coeffs));
  r["facets"] = index_json(fr.facet_indices);
  r["facet_forms"] = forms;
  r["face_columns"] = index_json(fr.face_columns);
  r["transform"] = matrix_json(fr.transform);
  r["s"] = fr.s;
  r["beta"] = rational_vector_json(fr.beta);
  r["beta_tilde"] = rational_vector_json(fr.beta_tilde);
  r["A_tilde"] = matrix_json(fr.restricted.cfg.matrix());
  GkzSystem full = make_system(sys.cfg, fr.beta);
  Json lifted = Json::array();
  for (const auto& s : lifted_restricted_solutions(sys, fr, truncation)) {
    Json j = series_json(s, {});
    j["check"] = residual_json(full, s);
    lifted.push_back(j);
  }
  r["lifted_solutions"] = lifted;
  return r;
}

Json cmd_restrict(const GkzSystem& sys, const JobSpec& job) {
  if (job.facets) return restriction_json(sys, face_restrict(sys, *job.facets, job.beta.value_or(sys.alpha)), job.truncation);
  auto w = reducibility_witness(sys);
  if (!w) return Json{{"witness", nullptr}, {"reason", "no facet form takes an integral value at alpha"}};
  Json r = restriction_json(sys, w->restriction, job.truncation);
  r["shift"] = int_json(w->shift);
  return Json{{"witness", r}};
}

void render(std::ostringstream& os, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  auto scalar = [](const Json& x) { return x.is_string() ? x.get<std::string>() : x.dump(); };
  auto flat = [](const Json& x) {
    if (!x.is_array()) return false;
    for (const auto& e : x)
      if (e.is_object() || (e.is_array() && !e.empty() && e.front().is_structured())) return false;
    return true;
  };
  auto inline_array = [&](const Json& x) {
    std::string s = "[";
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (i) s += ", ";
      s += x[i].is_array() ? x[i].dump() : scalar(x[i]);
    }
    return s + "]";
  };
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_structured() && !flat(v)) {
        os << pad << k << ":\n";
        render(os, v, indent + 2);
      } else {
        os << pad << k << ": " << (v.is_array() ? inline_array(v) : scalar(v)) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& e : j) {
      if (e.is_object()) {
        os << pad << "-\n";
        render(os, e, indent + 2);
      } else {
        os << pad << "- " << (e.is_array() ? inline_array(e) : scalar(e)) << "\n";
      }
    }
  } else {
    os << pad << scalar(j) << "\n";
  }
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"analyze", "triangulate", "series", "logbasis",
                                              "verify",  "contiguity",  "restrict"};
  return names;
}

JobSpec job_from_document(const Json& doc) {
  return job_from_json(doc.is_object() && doc.contains("job") ? doc.at("job") : doc);
}

CommandResult run_command(const std::string& verb, const Json& input, const JobSpec& job) {
  GkzSystem sys = build_system(job.A, job.alpha);
  CommandResult out;
  Json result;
  if (verb == "analyze") {
    result = cmd_analyze(sys);
  } else if (verb == "triangulate") {
    result = cmd_triangulate(sys, job);
  } else if (verb == "series") {
    result = cmd_series(sys, job);
  } else if (verb == "logbasis") {
    result = cmd_logbasis(sys, job);
  } else if (verb == "verify") {
    bool ok = true;
    result = cmd_verify(sys, job, input, ok);
    if (!ok) out.exit_code = 3;
  } else if (verb == "contiguity") {
    result = cmd_contiguity(sys, job);
  } else if (verb == "restrict") {
    result = cmd_restrict(sys, job);
  } else {
    throw ParseError("unknown command '" + verb + "'");
  }
  out.report["command"] = verb;
  out.report["job"] = job_to_json(job);
  out.report["result"] = result;
  return out;
}

std::string render_human(const Json& report) {
  std::ostringstream os;
  render(os, report, 0);
  return os.str();
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const nlohmann::json::exception*>(&e)) return 2;
  if (dynamic_cast<const InternalError*>(&e)) return 3;
  if (dynamic_cast<const Error*>(&e)) return 1;
  return 3;
}

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const nlohmann::json::exception*>(&e)) return "parse";
  if (dynamic_cast<const ConfigError*>(&e)) return "configuration";
  if (dynamic_cast<const PreconditionError*>(&e)) return "precondition";
  if (dynamic_cast<const GenericityError*>(&e)) return "genericity";
  if (dynamic_cast<const InconclusiveError*>(&e)) return "inconclusive";
  if (dynamic_cast<const InternalError*>(&e)) return "internal";
  return "internal";
}

}  // namespace gkz
