#include "divfam/report.hpp"

#include <nlohmann/json.hpp>

namespace divfam {

int verdict_exit_code(const Verdict& v) {
    switch (v.kind) {
        case VerdictKind::Holds: return 0;
        case VerdictKind::Violated: return 1;
        case VerdictKind::NotApplicable: return 4;
    }
    return 3;
}

Json verdict_to_json(const Verdict& v) {
    const char* kind = v.kind == VerdictKind::Holds      ? "holds"
                       : v.kind == VerdictKind::Violated ? "violated"
                                                         : "not-applicable";
    Json j{{"kind", kind}};
    if (!v.detail.empty()) j["detail"] = v.detail;
    return j;
}

Json modvec_to_json(const ModVector& v) { return Json(v.values()); }

Json certificate_to_json(const StructureCertificate& cert) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["prime"] = cert.prime;
    j["n"] = cert.n;
    j["d"] = cert.d;
    j["h"] = cert.h;
    j["r"] = cert.r;
    j["dim_W"] = cert.dim_W;
    j["sibling_classes"] = cert.siblings.classes;
    j["B_prime"] = cert.siblings.residual;
    j["C"] = cert.C;
    Json entries = Json::array();
    for (const auto& e : cert.entries) {
        entries.push_back({{"c", e.c},
                           {"case", e.claim.case_tag},
                           {"alpha", e.claim.alpha},
                           {"c_prime", e.claim.c_prime},
                           {"x", modvec_to_json(e.claim.x)},
                           {"y", modvec_to_json(e.claim.y)},
                           {"z", modvec_to_json(e.z)}});
    }
    j["entries"] = entries;
    j["atoms"] = cert.atoms;
    j["I"] = cert.I;
    Json vprime = Json::array();
    for (const auto& v : cert.vprime) vprime.push_back(modvec_to_json(v));
    j["v_prime"] = vprime;
    j["invariants_ok"] = cert.invariants_ok;
    j["failures"] = cert.failures;
    return j;
}

Json structure_report(const SetFamily& f, std::uint32_t prime) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["prime"] = prime;
    StructureResult res = structure_decompose(f, prime);
    j["d"] = res.d;
    j["h"] = res.h;
    j["atoms"] = res.atoms;
    j["B"] = res.B;
    j["dim_FB"] = res.dim_FB;
    j["bound"] = 2 * res.h;
    j["bound_holds"] = res.bound_holds();
    ReduceResult red = reduce(f);
    j["dropped_coordinates"] = red.dropped;
    if (red.family.ground_size() > 0 && res.d > 0)
        j["certificate"] = certificate_to_json(build_certificate(red.family, prime));
    return j;
}

Json analysis_report(const SetFamily& f, const std::vector<std::uint32_t>& primes,
                     const std::vector<ClosureSpec>& closures) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["n"] = f.ground_size();
    j["mod"] = f.modulus();
    j["family_size"] = f.size();

    TwinDecomposition twins = twin_decomposition(f);
    j["twin_classes"] = twins.classes;
    Json sizes = Json::array();
    for (const auto& cls : twins.classes) sizes.push_back(cls.size());
    j["twin_class_sizes"] = sizes;
    j["uncovered"] = twins.uncovered;

    Json dims = Json::array();
    for (std::uint32_t p : primes) {
        std::vector<ModVector> vecs = f.char_vectors(p);
        std::uint32_t d = dim_span(vecs, p);
        SetFamily doubled = product(f, f);
        std::vector<ModVector> all = vecs;
        for (const auto& v : doubled.char_vectors(p)) all.push_back(v);
        std::uint32_t d2 = dim_span(all, p);
        StructureResult res = structure_decompose(f, p);
        dims.push_back({{"p", p},
                        {"d", d},
                        {"d_doubled", d2},
                        {"h", d2 - d},
                        {"structure",
                         {{"d", res.d},
                          {"h", res.h},
                          {"B_size", res.B.size()},
                          {"dim_FB", res.dim_FB},
                          {"bound", 2 * res.h},
                          {"bound_holds", res.bound_holds()}}}});
    }
    j["per_prime"] = dims;

    Json cls = Json::array();
    for (const auto& spec : closures) {
        ClosureReport rep = is_k_closed(f, spec.k, spec.ell);
        Json one{{"k", spec.k}, {"ell", spec.ell}, {"holds", rep.holds}};
        if (!rep.holds) one["witness"] = rep.witness;
        cls.push_back(one);
    }
    j["closures"] = cls;
    return j;
}

Json search_result_to_json(const SearchResult& result) {
    const char* mode = result.params.mode == ClosureMode::Pairwise     ? "pairwise"
                       : result.params.mode == ClosureMode::Distinct   ? "distinct"
                                                                       : "repetition";
    Json j;
    j["schema"] = kSchemaVersion;
    j["n"] = result.params.n;
    j["mod"] = result.params.ell;
    j["k"] = result.params.k;
    j["mode"] = mode;
    j["max_size"] = result.max_size;
    j["count_extremal"] = result.extremal.size();
    j["nodes_explored"] = result.nodes_explored;
    j["budget_exhausted"] = result.budget_exhausted;
    j["extremal_truncated"] = result.extremal_truncated;
    return j;
}

Json removal_trace_to_json(const RemovalTrace& trace) {
    Json rounds = Json::array();
    for (const auto& r : trace.rounds)
        rounds.push_back({{"t", r.t}, {"matching", r.matching}});
    return Json{{"schema", kSchemaVersion},
                {"rounds", rounds},
                {"removed_total", trace.removed_total},
                {"final_size", trace.final_family.size()},
                {"verdict", verdict_to_json(trace.verdict)}};
}

Json cross_check_to_json(const CrossCheck& check) {
    return Json{{"schema", kSchemaVersion},
                {"verdict", verdict_to_json(check.verdict)},
                {"product", check.product.str()},
                {"bound", check.bound.str()},
                {"equality", check.equality}};
}

Json threshold_to_json(const Threshold& th) {
    Json factors = Json::array();
    for (auto [p, a] : th.factorization) factors.push_back({{"p", p}, {"alpha", a}});
    return Json{{"schema", kSchemaVersion},
                {"k", th.k.str()},
                {"t", th.t},
                {"factorization", factors}};
}

}  // namespace divfam
