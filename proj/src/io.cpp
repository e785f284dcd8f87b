#include "gkz/io.hpp"

namespace gkz {

namespace {

Rat rational_from_json(const Json& j, const std::string& what) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<long long>());
  throw ParseError(what + ": expected a rational string \"p/q\" or an integer");
}

Int integer_from_json(const Json& j, const std::string& what) {
  if (j.is_number_integer()) return Int(j.get<long long>());
  if (j.is_string()) {
    Rat q = parse_rational(j.get<std::string>());
    if (is_integral(q)) return numerator(q);
  }
  throw ParseError(what + ": expected an integer");
}

IndexSet indices_from_json(const Json& j, const std::string& what) {
  if (!j.is_array()) throw ParseError(what + ": expected an array of 1-based indices");
  IndexSet out;
  for (const auto& x : j) {
    if (!x.is_number_integer() || x.get<long long>() < 1) throw ParseError(what + ": indices are positive integers");
    out.push_back(static_cast<int>(x.get<long long>()) - 1);
  }
  return out;
}

Json int_vector_json(const IntVec& v) {
  Json a = Json::array();
  for (const auto& x : v) {
    if (abs(x) < Int(1) << 52)
      a.push_back(x.convert_to<long long>());
    else
      a.push_back(to_string(x));
  }
  return a;
}

IntVec int_vector_from_json(const Json& j, const std::string& what) {
  if (!j.is_array()) throw ParseError(what + ": expected an array");
  IntVec out;
  for (const auto& x : j) out.push_back(integer_from_json(x, what));
  return out;
}

}  // namespace

bool JobSpec::operator==(const JobSpec& o) const {
  return A == o.A && alpha == o.alpha && heights == o.heights && rho == o.rho && simplex == o.simplex &&
         truncation == o.truncation && eps_order == o.eps_order && facets == o.facets && beta == o.beta &&
         index == o.index && point == o.point && seed == o.seed;
}

Json rational_vector_json(const RatVec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

RatVec rational_vector_from_json(const Json& j, const std::string& what) {
  if (!j.is_array()) throw ParseError(what + ": expected an array of rationals");
  RatVec out;
  for (const auto& x : j) out.push_back(rational_from_json(x, what));
  return out;
}

Json index_json(const IndexSet& s) {
  Json a = Json::array();
  for (int i : s) a.push_back(i + 1);
  return a;
}

JobSpec job_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("job: expected a JSON object");
  JobSpec job;
  if (!j.contains("A")) throw ParseError("job: missing matrix \"A\"");
  const Json& A = j.at("A");
  if (!A.is_array() || A.empty() || !A.front().is_array())
    throw ParseError("job: \"A\" must be a nonempty row-major array of integer rows");
  const std::size_t cols = A.front().size();
  std::vector<IntVec> rows;
  for (const auto& row : A) {
    if (!row.is_array() || row.size() != cols) throw ParseError("job: rows of \"A\" have inconsistent lengths");
    rows.push_back(int_vector_from_json(row, "A"));
  }
  if (cols == 0) throw ParseError("job: \"A\" has no columns");
  job.A = IntMatrix::from_rows(rows, cols);

  if (!j.contains("alpha")) throw ParseError("job: missing parameter vector \"alpha\"");
  job.alpha = rational_vector_from_json(j.at("alpha"), "alpha");
  if (job.alpha.size() != rows.size())
    throw ParseError("job: \"alpha\" has " + std::to_string(job.alpha.size()) + " entries, A has " +
                     std::to_string(rows.size()) + " rows");
  auto optional_vec = [&](const char* key, std::size_t n) -> std::optional<RatVec> {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    RatVec v = rational_vector_from_json(j.at(key), key);
    if (v.size() != n) throw ParseError(std::string("job: \"") + key + "\" has the wrong length");
    return v;
  };
  job.heights = optional_vec("heights", cols);
  job.rho = optional_vec("rho", cols);
  job.beta = optional_vec("beta", rows.size());
  if (j.contains("simplex") && !j.at("simplex").is_null()) job.simplex = indices_from_json(j.at("simplex"), "simplex");
  if (j.contains("facets") && !j.at("facets").is_null()) job.facets = indices_from_json(j.at("facets"), "facets");
  if (j.contains("truncation")) {
    if (!j.at("truncation").is_number_integer() || j.at("truncation").get<long long>() < 0)
      throw ParseError("job: \"truncation\" must be a nonnegative integer");
    job.truncation = static_cast<int>(j.at("truncation").get<long long>());
  }
  if (j.contains("eps_order") && !j.at("eps_order").is_null()) {
    if (!j.at("eps_order").is_number_integer() || j.at("eps_order").get<long long>() < 0)
      throw ParseError("job: \"eps_order\" must be a nonnegative integer");
    job.eps_order = static_cast<int>(j.at("eps_order").get<long long>());
  }
  if (j.contains("index") && !j.at("index").is_null()) {
    if (!j.at("index").is_number_integer() || j.at("index").get<long long>() < 1)
      throw ParseError("job: \"index\" must be a positive integer");
    job.index = static_cast<int>(j.at("index").get<long long>()) - 1;
  }
  if (j.contains("point") && !j.at("point").is_null()) {
    std::vector<std::complex<double>> pt;
    for (const auto& x : j.at("point")) {
      if (x.is_number())
        pt.emplace_back(x.get<double>(), 0.0);
      else if (x.is_array() && x.size() == 2 && x[0].is_number() && x[1].is_number())
        pt.emplace_back(x[0].get<double>(), x[1].get<double>());
      else
        throw ParseError("job: \"point\" entries are numbers or [re, im] pairs");
    }
    if (pt.size() != cols) throw ParseError("job: \"point\" has the wrong length");
    job.point = pt;
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) throw ParseError("job: \"seed\" must be a nonnegative integer");
    job.seed = j.at("seed").get<std::uint64_t>();
  }
  return job;
}

Json job_to_json(const JobSpec& job) {
  Json j;
  Json A = Json::array();
  for (std::size_t i = 0; i < job.A.rows(); ++i) A.push_back(int_vector_json(job.A.row(i)));
  j["A"] = A;
  j["alpha"] = rational_vector_json(job.alpha);
  if (job.heights) j["heights"] = rational_vector_json(*job.heights);
  if (job.rho) j["rho"] = rational_vector_json(*job.rho);
  if (job.simplex) j["simplex"] = index_json(*job.simplex);
  j["truncation"] = job.truncation;
  if (job.eps_order) j["eps_order"] = *job.eps_order;
  if (job.facets) j["facets"] = index_json(*job.facets);
  if (job.beta) j["beta"] = rational_vector_json(*job.beta);
  if (job.index) j["index"] = *job.index + 1;
  if (job.point) {
    Json p = Json::array();
    for (const auto& z : *job.point) p.push_back(Json::array({z.real(), z.imag()}));
    j["point"] = p;
  }
  j["seed"] = job.seed;
  return j;
}

Json logpoly_json(const LogPoly& p) {
  Json a = Json::array();
  for (const auto& [e, c] : p.terms()) {
    Json t;
    t["log_exponent"] = e;
    t["coefficient"] = to_string(c);
    a.push_back(t);
  }
  return a;
}

Json series_json(const LogSeries& s, const std::vector<IndexSet>& sectors) {
  Json j;
  j["gamma"] = rational_vector_json(s.gamma);
  j["weight"] = s.weight;
  j["log_degree"] = std::max(0, s.log_degree());
  j["truncation"] = s.truncation;
  Json sec = Json::array();
  for (const auto& I : sectors) sec.push_back(index_json(I));
  j["sectors"] = sec;
  Json terms = Json::array();
  for (const auto& [l, p] : s.terms) {
    Json t;
    t["l"] = int_vector_json(l);
    if (p.degree() <= 0)
      t["coefficient"] = to_string(p.constant_term());
    else
      t["log_poly"] = logpoly_json(p);
    terms.push_back(t);
  }
  j["terms"] = terms;
  return j;
}

Json gamma_series_json(const GammaSeries& s) {
  Json j = series_json(to_log_series(s), {s.gamma.sector});
  j["sector"] = index_json(s.gamma.sector);
  j["reference"] = int_vector_json(s.reference);
  // Zero coefficients are part of the exact output.
  Json terms = Json::array();
  for (const auto& [l, c] : s.terms) terms.push_back(Json{{"l", int_vector_json(l)}, {"coefficient", to_string(c)}});
  j["terms"] = terms;
  return j;
}

LogSeries series_from_json(const GkzSystem& sys, const Json& j) {
  if (!j.is_object() || !j.contains("gamma") || !j.contains("terms"))
    throw ParseError("series: expected an object with \"gamma\" and \"terms\"");
  const std::size_t N = static_cast<std::size_t>(sys.N());
  LogSeries s;
  s.gamma = rational_vector_from_json(j.at("gamma"), "series gamma");
  if (s.gamma.size() != N) throw ParseError("series: gamma has the wrong length");
  s.weight = j.value("weight", 0);
  s.truncation = j.value("truncation", 0);
  std::vector<IndexSet> sectors;
  if (j.contains("sectors"))
    for (const auto& I : j.at("sectors")) sectors.push_back(indices_from_json(I, "series sectors"));
  for (const auto& t : j.at("terms")) {
    IntVec l = int_vector_from_json(t.at("l"), "series term");
    if (l.size() != N) throw ParseError("series: term offset has the wrong length");
    LogPoly p(N);
    if (t.contains("log_poly")) {
      for (const auto& m : t.at("log_poly")) {
        auto e = m.at("log_exponent").get<std::vector<int>>();
        if (e.size() != N) throw ParseError("series: log exponent has the wrong length");
        p.add_term(e, rational_from_json(m.at("coefficient"), "log_poly coefficient"));
      }
    } else {
      p.add_term(LogPoly::Exponent(N, 0), rational_from_json(t.at("coefficient"), "series coefficient"));
    }
    if (!p.is_zero()) s.terms.emplace(std::move(l), std::move(p));
  }
  s.domain = std::make_shared<LatticeDomain>(sys.lattice, sectors, s.gamma, Int(s.truncation));
  return s;
}

Json operator_json(const DiffOperator& op) {
  Json j;
  j["text"] = op.to_string();
  Json terms = Json::array();
  for (const auto& [key, c] : op.terms())
    terms.push_back(Json{{"v", int_vector_json(key.first)}, {"d", int_vector_json(key.second)}, {"coefficient", to_string(c)}});
  j["terms"] = terms;
  return j;
}

}  // namespace gkz
