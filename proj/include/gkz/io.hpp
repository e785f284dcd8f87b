#pragma once

// JSON job specifications and reports. Rationals travel as "p/q" strings and
// indices are 1-based in every serialized form.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gkz/logseries.hpp"
#include "gkz/weyl.hpp"

namespace gkz {

using Json = nlohmann::ordered_json;

struct JobSpec {
  IntMatrix A;
  RatVec alpha;
  std::optional<RatVec> heights;
  std::optional<RatVec> rho;
  std::optional<IndexSet> simplex;  // 0-based
  int truncation = 8;
  std::optional<int> eps_order;
  std::optional<IndexSet> facets;  // 0-based into the facet list
  std::optional<RatVec> beta;
  std::optional<int> index;  // 0-based column for contiguity
  std::optional<std::vector<std::complex<double>>> point;
  std::uint64_t seed = 20240101;

  bool operator==(const JobSpec& other) const;
};

/// Throws ParseError on malformed input.
JobSpec job_from_json(const Json& j);
Json job_to_json(const JobSpec& job);

Json rational_vector_json(const RatVec& v);
RatVec rational_vector_from_json(const Json& j, const std::string& what);
Json index_json(const IndexSet& s);  // 1-based
Json logpoly_json(const LogPoly& p);

/// Series in the report format; `sectors` lets the reader rebuild the
/// domain of known offsets.
Json series_json(const LogSeries& s, const std::vector<IndexSet>& sectors);
Json gamma_series_json(const GammaSeries& s);
/// Inverse of series_json; the domain is rebuilt over the system lattice.
LogSeries series_from_json(const GkzSystem& sys, const Json& j);

Json operator_json(const DiffOperator& op);

}  // namespace gkz
