#include "divfam.h"

#include <cstring>
#include <string>

#include <nlohmann/json.hpp>

#include "divfam/constructions.hpp"
#include "divfam/report.hpp"

using namespace divfam;

struct divfam_family {
    SetFamily value;
};

namespace {

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void set_error(char** error, const std::string& msg) {
    if (error) *error = dup_string(msg);
}

template <typename Fn>
int guarded(char** error, Fn&& fn) {
    try {
        return fn();
    } catch (const ParseError& e) {
        set_error(error, e.what());
        return DIVFAM_BAD_INPUT;
    } catch (const SpecError& e) {
        set_error(error, e.what());
        return DIVFAM_BAD_INPUT;
    } catch (const ModulusError& e) {
        set_error(error, e.what());
        return DIVFAM_BAD_INPUT;
    } catch (const ShapeError& e) {
        set_error(error, e.what());
        return DIVFAM_BAD_INPUT;
    } catch (const Json::exception& e) {
        set_error(error, e.what());
        return DIVFAM_BAD_INPUT;
    } catch (const std::exception& e) {
        set_error(error, e.what());
        return DIVFAM_INTERNAL;
    }
}

Json parse_params(const char* params_json) {
    return Json::parse(params_json ? params_json : "{}");
}

SetFamily family_arg(const Json& params, const char* key = "family") {
    if (!params.contains(key)) throw SpecError(std::string("missing parameter: ") + key);
    return parse_family(params.at(key).get<std::string>());
}

BitVec bitvec_from_string(const std::string& s) {
    BitVec v(static_cast<std::uint32_t>(s.size()));
    for (std::uint32_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1') v.set(i);
        else if (s[i] != '0') throw SpecError("pair entries must be 0/1 strings");
    }
    return v;
}

// Default partition for the prime lemma: twin classes plus singletons for
// the uncovered coordinates (zero columns are trivially twin sets).
std::vector<std::vector<std::uint32_t>> default_classes(const SetFamily& f) {
    TwinDecomposition twins = twin_decomposition(f);
    auto classes = twins.classes;
    for (std::uint32_t c : twins.uncovered) classes.push_back({c});
    return classes;
}

int finish(const Verdict& v, Json payload, char** out_json) {
    payload["schema"] = kSchemaVersion;
    payload["verdict"] = verdict_to_json(v);
    if (out_json) *out_json = dup_string(payload.dump(2));
    return verdict_exit_code(v);
}

int do_verify(const std::string& lemma, const Json& params, char** out_json) {
    if (lemma == "structure") {
        SetFamily f = family_arg(params);
        std::uint32_t p = params.at("p").get<std::uint32_t>();
        Json rep = structure_report(f, p);
        Verdict v{VerdictKind::Holds, ""};
        if (!rep.at("bound_holds").get<bool>())
            v = {VerdictKind::Violated, "dim<F|_B> exceeds 2h"};
        else if (rep.contains("certificate") &&
                 !rep.at("certificate").at("invariants_ok").get<bool>())
            v = {VerdictKind::Violated, "certificate invariant failed"};
        return finish(v, std::move(rep), out_json);
    }
    if (lemma == "bilinear") {
        SetFamily f = family_arg(params);
        std::uint32_t p = params.at("p").get<std::uint32_t>();
        SubspaceBasis basis = rref(ModMatrix(p, f.char_vectors(p)));
        std::vector<std::uint32_t> b(f.ground_size(), 1);
        if (params.contains("b")) b = params.at("b").get<std::vector<std::uint32_t>>();
        Verdict v = check_bilinear_bound(b, basis);
        return finish(v, Json{{"d", f.ground_size()}, {"dim", basis.dimension()}}, out_json);
    }
    if (lemma == "prime") {
        SetFamily f = family_arg(params);
        std::uint32_t p = params.at("p").get<std::uint32_t>();
        SubspaceBasis basis = rref(ModMatrix(p, f.char_vectors(p)));
        auto classes = params.contains("classes")
                           ? params.at("classes").get<std::vector<std::vector<std::uint32_t>>>()
                           : default_classes(f);
        Verdict v = check_lemma_prime(basis, classes);
        return finish(v, Json{{"classes", classes}, {"dim", basis.dimension()}}, out_json);
    }
    if (lemma == "primepower") {
        SetFamily f = family_arg(params);
        std::uint32_t p = params.at("p").get<std::uint32_t>();
        std::uint32_t alpha = params.at("alpha").get<std::uint32_t>();
        StructureResult res = structure_decompose(f, p);
        auto atoms = params.contains("atoms")
                         ? params.at("atoms").get<std::vector<std::vector<std::uint32_t>>>()
                         : res.atoms;
        auto B = params.contains("B") ? params.at("B").get<std::vector<std::uint32_t>>()
                                      : res.B;
        std::uint32_t h = params.contains("h") ? params.at("h").get<std::uint32_t>() : res.h;
        Verdict v = check_lemma_primepower(f, p, alpha, atoms, B, h);
        return finish(v, Json{{"atoms", atoms}, {"B", B}, {"h", h}}, out_json);
    }
    if (lemma == "smalldim") {
        SetFamily f = family_arg(params);
        std::uint32_t p = params.at("p").get<std::uint32_t>();
        std::uint32_t alpha = params.at("alpha").get<std::uint32_t>();
        std::uint32_t t = params.at("t").get<std::uint32_t>();
        SmallDimResult res = check_lemma_smalldim(f, p, alpha, t);
        return finish(res.verdict, Json{{"B", res.B}, {"dim_FB", res.dim_FB}}, out_json);
    }
    if (lemma == "odim") {
        SetFamily f = family_arg(params);
        std::uint32_t p = params.at("p").get<std::uint32_t>();
        SubspaceBasis basis = rref(ModMatrix(p, f.char_vectors(p)));
        std::uint64_t count = count_01_in_span(basis);
        std::uint64_t bound = std::uint64_t{1} << basis.dimension();
        Verdict v = count <= bound
                        ? Verdict{VerdictKind::Holds, ""}
                        : Verdict{VerdictKind::Violated, "0/1 count exceeds 2^dim"};
        return finish(v, Json{{"count", count}, {"bound", bound}, {"dim", basis.dimension()}},
                      out_json);
    }
    if (lemma == "oddtown") {
        std::uint32_t n = params.at("n").get<std::uint32_t>();
        std::uint32_t ell = params.at("ell").get<std::uint32_t>();
        std::vector<std::pair<BitVec, BitVec>> pairs;
        for (const auto& pr : params.at("pairs")) {
            BitVec a = bitvec_from_string(pr.at(0).get<std::string>());
            BitVec b = bitvec_from_string(pr.at(1).get<std::string>());
            if (a.size() != n || b.size() != n) throw ShapeError("pair length differs from n");
            pairs.emplace_back(std::move(a), std::move(b));
        }
        Verdict v = oddtown_pairs_check(pairs, n, ell);
        std::size_t s = factorize(ell).size();
        return finish(v, Json{{"m", pairs.size()}, {"bound", s * n}}, out_json);
    }
    if (lemma == "removal") {
        SetFamily f = family_arg(params);
        std::uint32_t k = params.at("k").get<std::uint32_t>();
        std::uint32_t ell = params.at("ell").get<std::uint32_t>();
        RemovalTrace trace = greedy_removal_to_closed(f, k, ell);
        Verdict v = trace.verdict;
        std::uint64_t bound = factorize(ell).size() * std::uint64_t{k} * k * f.ground_size();
        if (v.holds() && trace.removed_total > bound)
            v = {VerdictKind::Violated, "removed_total exceeds s*k^2*n"};
        Json payload = removal_trace_to_json(trace);
        payload["bound"] = bound;
        payload["final_family"] = format_family(trace.final_family);
        return finish(v, std::move(payload), out_json);
    }
    if (lemma == "cross") {
        std::uint32_t ell = params.at("ell").get<std::uint32_t>();
        std::vector<SetFamily> fams;
        for (const auto& text : params.at("families"))
            fams.push_back(parse_family(text.get<std::string>()));
        CrossCheck check = cross_product_bound_check(fams, ell);
        return finish(check.verdict, cross_check_to_json(check), out_json);
    }
    if (lemma == "stability") {
        SetFamily f = family_arg(params);
        std::uint32_t ell = params.at("ell").get<std::uint32_t>();
        StabilityProjection proj = stability_projection(f, ell);
        return finish(proj.verdict,
                      Json{{"X", proj.X},
                           {"split_atoms", proj.split_atoms},
                           {"projected_size", proj.projected_size},
                           {"family_size", proj.family_size}},
                      out_json);
    }
    throw SpecError("unknown lemma: " + lemma);
}

}  // namespace

int divfam_family_parse(const char* text, divfam_family** out, char** error) {
    return guarded(error, [&] {
        if (!text || !out) throw SpecError("null argument");
        *out = new divfam_family{parse_family(text)};
        return DIVFAM_OK;
    });
}

char* divfam_family_format(const divfam_family* family) {
    if (!family) return nullptr;
    return dup_string(format_family(family->value));
}

void divfam_family_free(divfam_family* family) { delete family; }

void divfam_string_free(char* s) { std::free(s); }

int divfam_construct(const char* params_json, char** out_json, char** error) {
    return guarded(error, [&] {
        Json params = parse_params(params_json);
        std::string gen = params.at("generator").get<std::string>();
        std::vector<SetFamily> families;
        if (gen == "s") {
            families.push_back(s_family(params.at("n").get<std::uint32_t>(),
                                        params.at("mod").get<std::uint32_t>()));
        } else if (gen == "atomic") {
            AtomSpec spec;
            spec.ground_size = params.at("n").get<std::uint32_t>();
            spec.atoms = params.at("atoms").get<std::vector<std::vector<std::uint32_t>>>();
            std::uint32_t mod = params.value("mod", 2u);
            families.push_back(atomic_family(spec, mod));
        } else if (gen == "subspace") {
            families.push_back(subspace_stability_family(params.at("p").get<std::uint32_t>(),
                                                         params.at("k").get<std::uint32_t>(),
                                                         params.at("q").get<std::uint32_t>(),
                                                         params.at("r").get<std::uint32_t>()));
        } else if (gen == "cross") {
            std::uint32_t n = params.at("n").get<std::uint32_t>();
            auto sizes = params.at("parts").get<std::vector<std::uint32_t>>();
            std::vector<std::vector<std::uint32_t>> parts;
            std::uint32_t next = 0;
            for (std::uint32_t s : sizes) {
                std::vector<std::uint32_t> part;
                for (std::uint32_t i = 0; i < s; ++i) part.push_back(next++);
                parts.push_back(std::move(part));
            }
            std::uint32_t mod = params.value("mod", 2u);
            families = cross_extremal_families(n, parts, mod);
        } else {
            throw SpecError("unknown generator: " + gen);
        }
        Json out{{"schema", kSchemaVersion}};
        Json texts = Json::array();
        Json sizes = Json::array();
        for (const auto& f : families) {
            texts.push_back(format_family(f));
            sizes.push_back(f.size());
        }
        out["families"] = texts;
        out["sizes"] = sizes;
        if (out_json) *out_json = dup_string(out.dump(2));
        return DIVFAM_OK;
    });
}

int divfam_analyze(const divfam_family* family, const char* params_json, char** out_json,
                   char** error) {
    return guarded(error, [&] {
        if (!family) throw SpecError("null family");
        Json params = parse_params(params_json);
        std::vector<std::uint32_t> primes =
            params.value("primes", std::vector<std::uint32_t>{2});
        std::vector<ClosureSpec> closures;
        if (params.contains("closures"))
            for (const auto& c : params.at("closures"))
                closures.push_back(
                    {c.at("k").get<std::uint64_t>(), c.at("ell").get<std::uint32_t>()});
        Json rep = analysis_report(family->value, primes, closures);
        if (out_json) *out_json = dup_string(rep.dump(2));
        return DIVFAM_OK;
    });
}

int divfam_verify(const char* lemma, const char* params_json, char** out_json, char** error) {
    return guarded(error, [&] {
        if (!lemma) throw SpecError("null lemma name");
        return do_verify(lemma, parse_params(params_json), out_json);
    });
}

int divfam_search(const char* params_json, char** out_json, char** error) {
    return guarded(error, [&] {
        Json params = parse_params(params_json);
        SearchParams sp;
        sp.n = params.at("n").get<std::uint32_t>();
        sp.ell = params.at("mod").get<std::uint32_t>();
        sp.k = params.value("k", 2u);
        std::string mode = params.value("mode", std::string("pairwise"));
        if (mode == "pairwise") sp.mode = ClosureMode::Pairwise;
        else if (mode == "distinct") sp.mode = ClosureMode::Distinct;
        else if (mode == "repetition") sp.mode = ClosureMode::Repetition;
        else throw SpecError("unknown mode: " + mode);
        sp.budget_nodes = params.value("budget_nodes", sp.budget_nodes);
        sp.threads = params.value("threads", 1u);
        SearchResult result = exhaustive_max_family(sp);
        Json out = search_result_to_json(result);
        if (params.value("emit_extremal", false)) {
            Json fams = Json::array();
            for (const auto& f : result.extremal) fams.push_back(format_family(f));
            out["extremal"] = fams;
        }
        if (out_json) *out_json = dup_string(out.dump(2));
        return DIVFAM_OK;
    });
}

int divfam_threshold(const char* params_json, char** out_json, char** error) {
    return guarded(error, [&] {
        Json params = parse_params(params_json);
        std::uint32_t ell = params.at("ell").get<std::uint32_t>();
        Threshold th = params.contains("eps_num")
                           ? compute_stab_threshold(ell, params.at("eps_num").get<std::uint64_t>(),
                                                    params.value("eps_den", std::uint64_t{1}))
                           : compute_k_threshold(ell);
        if (out_json) *out_json = dup_string(threshold_to_json(th).dump(2));
        return DIVFAM_OK;
    });
}
