#pragma once

#include <json.hpp>
#include <string>

#include "norm1lat/classify.hpp"
#include "norm1lat/corpus.hpp"

namespace norm1lat {

// Insertion-ordered, so dumps are deterministic.
using Json = nlohmann::ordered_json;

inline constexpr int kReportSchema = 1;

struct ReportOptions {
  // Include generator matrices and certificate matrices (re-verifiable, large).
  bool matrices = false;
};

Json to_json(const Integer& v);  // number when it fits int64, else decimal string
Json to_json(const IntMatrix& m);
Json to_json(const AbelianInvariants& a);
Json to_json(const FiniteGroup& g);
Json to_json(const FiniteGroup& g, const Subgroup& u);
Json to_json(const GLattice& m, const ReportOptions& opt);
Json to_json(const IsoCertificate& c, const ReportOptions& opt);
Json to_json(const ObstructionCertificate& c, const ReportOptions& opt);
Json to_json(const ExactTriple& t, const ReportOptions& opt);
Json to_json(const DihedralCase& c, const ReportOptions& opt);
Json to_json(const Classification& c, const ReportOptions& opt);
Json cohomology_json(const GLattice& m, const std::vector<CohomologyRow>& rows);

// Indented "key: value" rendering of a report.
std::string render_text(const Json& j);

}  // namespace norm1lat
