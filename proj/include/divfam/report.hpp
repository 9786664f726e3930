#pragma once

#include <nlohmann/json_fwd.hpp>

#include "divfam/analysis.hpp"
#include "divfam/structure.hpp"

namespace divfam {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Exit-code contract: 0 holds, 1 violated, 4 not applicable.
int verdict_exit_code(const Verdict& v);

Json verdict_to_json(const Verdict& v);
Json modvec_to_json(const ModVector& v);
Json certificate_to_json(const StructureCertificate& cert);
Json structure_report(const SetFamily& f, std::uint32_t prime);

struct ClosureSpec {
    std::uint64_t k = 2;
    std::uint32_t ell = 2;
};

Json analysis_report(const SetFamily& f, const std::vector<std::uint32_t>& primes,
                     const std::vector<ClosureSpec>& closures);

Json search_result_to_json(const SearchResult& result);
Json removal_trace_to_json(const RemovalTrace& trace);
Json cross_check_to_json(const CrossCheck& check);
Json threshold_to_json(const Threshold& th);

}  // namespace divfam
