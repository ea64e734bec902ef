#ifndef MUTAD_JSONIO_HPP
#define MUTAD_JSONIO_HPP

#include <string>

#include <json.hpp>

#include "mutad/cluster.hpp"
#include "mutad/gkm.hpp"
#include "mutad/psi.hpp"
#include "mutad/quiver.hpp"
#include "mutad/report.hpp"

namespace mutad {

using Json = nlohmann::ordered_json;

Json quiver_to_json(const DecoratedQP& q);
DecoratedQP quiver_from_json(const Json& j);

Json report_to_json(const VerificationReport& r);
Json laurent_to_json(const LaurentRat& v);
Json cluster_enum_to_json(const ClusterEnumeration& e);
Json fixed_points_to_json(const DecoratedQP& q, const std::vector<FixedPoint>& pts);
Json psi_table_to_json(const std::map<std::string, PsiImage>& table);
Json phase_inequalities_to_json(const std::vector<PhaseInequality>& ineqs);

std::string gkm_to_dot(const GkmGraph& g);

// Canonical dump: sorted keys, 2-space indent, trailing newline.
std::string dump_canonical(const Json& j);

// Reports are deterministic up to wall time; golden comparison drops it.
bool matches_golden(const Json& produced, const Json& golden);

} // namespace mutad

#endif
