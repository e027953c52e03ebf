#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "paperlab.hpp"
#include "sphericity.hpp"

namespace spherical {

inline constexpr int kSchemaVersion = 1;

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(Finding, check, group, q, class_id, detail)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(LabFinding, check, group, q, inputs, verdict, witness)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(MaximalRepChecks, representatives, exhaustive, simple_reflection_items,
                                   support_in_phi_one, minus_pi_commutes, uw_commutes_with_rep,
                                   component_exclusion, big_cell_meets_rep_u, sandwich, centralizer_in_borel)

inline void to_json(nlohmann::json& j, const ClassReport& r) {
  j = nlohmann::json{{"group", r.group},
                     {"type", std::string(1, r.type)},
                     {"rank", r.rank},
                     {"q", r.q},
                     {"class_id", r.class_id},
                     {"rep", r.rep},
                     {"class_size", r.class_size},
                     {"dim_class", r.dim_class},
                     {"phi_image", r.phi_image},
                     {"all_involutions", r.all_involutions},
                     {"z_unique", r.z_unique},
                     {"z", r.z},
                     {"len_plus_rank", r.len_plus_rank},
                     {"spherical_by_dim", r.spherical_by_dim},
                     {"theorem_ok", r.theorem_ok},
                     {"closure_ok", r.closure_ok},
                     {"z_decomposition_ok", r.z_decomposition_ok}};
  if (r.has_maximal_checks) j["maximal"] = r.maximal;
  if (r.artifact_q) j["artifact"] = {{"q", r.artifact_q}, {"cell", r.artifact_cell}};
}

inline void from_json(const nlohmann::json& j, ClassReport& r) {
  r = ClassReport{};
  j.at("group").get_to(r.group);
  auto type = j.at("type").get<std::string>();
  if (type.size() != 1) throw InvalidArgument("type must be a single letter");
  r.type = type[0];
  j.at("rank").get_to(r.rank);
  j.at("q").get_to(r.q);
  j.at("class_id").get_to(r.class_id);
  j.at("rep").get_to(r.rep);
  j.at("class_size").get_to(r.class_size);
  j.at("dim_class").get_to(r.dim_class);
  j.at("phi_image").get_to(r.phi_image);
  j.at("all_involutions").get_to(r.all_involutions);
  j.at("z_unique").get_to(r.z_unique);
  j.at("z").get_to(r.z);
  j.at("len_plus_rank").get_to(r.len_plus_rank);
  j.at("spherical_by_dim").get_to(r.spherical_by_dim);
  j.at("theorem_ok").get_to(r.theorem_ok);
  j.at("closure_ok").get_to(r.closure_ok);
  j.at("z_decomposition_ok").get_to(r.z_decomposition_ok);
  if (j.contains("maximal")) {
    r.has_maximal_checks = true;
    j.at("maximal").get_to(r.maximal);
  }
  if (j.contains("artifact")) {
    j.at("artifact").at("q").get_to(r.artifact_q);
    j.at("artifact").at("cell").get_to(r.artifact_cell);
  }
}

/// A census report: one ClassReport per class in census order, plus the findings they raise.
struct CensusReport {
  char type = 'A';
  int rank = 0;
  std::uint64_t q = 0;
  std::vector<ClassReport> classes;
  std::vector<Finding> findings;

  bool operator==(const CensusReport&) const = default;
};

inline void to_json(nlohmann::json& j, const CensusReport& r) {
  j = nlohmann::json{{"schema_version", kSchemaVersion},
                     {"group", {{"type", std::string(1, r.type)}, {"rank", r.rank}, {"q", r.q}}},
                     {"classes", r.classes},
                     {"findings", r.findings}};
}

inline void from_json(const nlohmann::json& j, CensusReport& r) {
  if (j.at("schema_version").get<int>() != kSchemaVersion) throw InvalidArgument("unsupported schema_version");
  const auto& g = j.at("group");
  auto type = g.at("type").get<std::string>();
  if (type.size() != 1) throw InvalidArgument("type must be a single letter");
  r.type = type[0];
  g.at("rank").get_to(r.rank);
  g.at("q").get_to(r.q);
  j.at("classes").get_to(r.classes);
  j.at("findings").get_to(r.findings);
}

/// Full census of G with theorem checks on every class.
inline CensusReport census_report(const MatrixGroup& G, std::uint64_t budget = kDefaultBudget, int threads = 1) {
  ClassCensus census(G, enumerate_elements(G, budget), threads);
  auto borel = borel_elements(G);
  CensusReport out;
  out.type = family_char(G.family());
  out.rank = G.rank();
  out.q = G.field().q();
  for (std::size_t c = 0; c < census.classes().size(); ++c) {
    out.classes.push_back(theorem_check(census, static_cast<int>(c), &borel));
    for (auto& f : findings_of(out.classes.back())) out.findings.push_back(std::move(f));
  }
  return out;
}

/// Row-major integer arrays, as in the report's rep field. Entries are element codes 0..q-1; over a
/// prime field any integer is reduced mod p.
inline Mat matrix_from_json(const Field& F, const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw InvalidArgument("matrix must be a non-empty array of rows");
  const int d = static_cast<int>(j.size());
  if (d > kMaxDim) throw InvalidArgument("matrix too large");
  Mat m(d);
  for (int i = 0; i < d; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != d) throw InvalidArgument("matrix must be square");
    for (int k = 0; k < d; ++k) {
      auto v = j[i][k].get<std::int64_t>();
      if (F.is_prime_field())
        m(i, k) = F.from_int(v);
      else if (v >= 0 && static_cast<std::uint64_t>(v) < F.q())
        m(i, k) = static_cast<elem>(v);
      else
        throw InvalidArgument("entry is not an element code of F_" + std::to_string(F.q()));
    }
  }
  return m;
}

}  // namespace spherical
