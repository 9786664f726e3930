#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "divfam.h"

namespace {

using Json = nlohmann::json;

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot open " << path << "\n";
        std::exit(2);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(path);
    out << text;
    if (text.empty() || text.back() != '\n') out << "\n";
}

struct Owned {
    char* ptr = nullptr;
    ~Owned() { divfam_string_free(ptr); }
    std::string str() const { return ptr ? ptr : ""; }
};

[[noreturn]] void fail(int code, const Owned& error) {
    std::cerr << "error: " << (error.ptr ? error.ptr : "unknown failure") << "\n";
    std::exit(code == DIVFAM_BAD_INPUT ? 2 : 3);
}

void emit_json(const std::string& json_text, const std::string& out_path, bool no_meta) {
    if (no_meta) {
        write_output(out_path, json_text);
        return;
    }
    Json j = Json::parse(json_text);
    j["meta"] = {{"generated_at", static_cast<long long>(std::time(nullptr))}};
    write_output(out_path, j.dump(2));
}

divfam_family* parse_family_file(const std::string& path) {
    std::string text = read_input(path);
    divfam_family* fam = nullptr;
    Owned err;
    int rc = divfam_family_parse(text.c_str(), &fam, &err.ptr);
    if (rc != DIVFAM_OK) fail(rc, err);
    return fam;
}

std::vector<std::uint32_t> parse_uint_list(const std::string& csv) {
    std::vector<std::uint32_t> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(static_cast<std::uint32_t>(std::stoul(item)));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ell-divisible set-family toolkit"};
    app.require_subcommand(1);
    bool no_meta = false;
    app.add_flag("--no-meta", no_meta, "omit the meta block for byte-identical output");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "report on a family file");
    std::string an_in = "-", an_out;
    std::vector<std::uint32_t> an_primes;
    std::vector<std::string> an_closures;
    analyze->add_option("--in", an_in, "family file ('-' for stdin)");
    analyze->add_option("--prime,--p", an_primes, "prime(s) to analyze over");
    analyze->add_option("--closure", an_closures, "closure check k:ell (repeatable)");
    analyze->add_option("--out", an_out, "output path (default stdout)");

    // construct
    auto* construct = app.add_subcommand("construct", "emit a built-in family");
    std::string gen, co_out, co_atoms, co_parts;
    std::uint32_t co_n = 0, co_mod = 2, co_p = 2, co_k = 1, co_q = 1, co_r = 1;
    construct->add_option("generator", gen, "s | atomic | subspace | cross")->required();
    construct->add_option("--n", co_n);
    construct->add_option("--mod", co_mod);
    construct->add_option("--atoms", co_atoms, "semicolon-separated atoms, e.g. 0,1;2,3");
    construct->add_option("--p", co_p);
    construct->add_option("--k", co_k);
    construct->add_option("--q", co_q);
    construct->add_option("--r", co_r);
    construct->add_option("--parts", co_parts, "comma-separated part sizes");
    construct->add_option("--out", co_out, "output path; cross appends _1, _2, ...");

    // verify
    auto* verify = app.add_subcommand("verify", "run a lemma verifier");
    std::string lemma, ve_out, ve_pairs;
    std::vector<std::string> ve_in;
    std::uint32_t ve_p = 2, ve_alpha = 1, ve_t = 1, ve_k = 2, ve_ell = 2;
    verify->add_option("lemma", lemma,
                       "bilinear|prime|primepower|smalldim|odim|oddtown|removal|cross|"
                       "structure|stability")
        ->required();
    verify->add_option("--in", ve_in, "family file(s)");
    verify->add_option("--pairs", ve_pairs, "pairs file for oddtown: header n=<int>, lines 'A B'");
    verify->add_option("--p", ve_p);
    verify->add_option("--alpha", ve_alpha);
    verify->add_option("--t", ve_t);
    verify->add_option("--k", ve_k);
    verify->add_option("--mod,--ell", ve_ell);
    verify->add_option("--out", ve_out);

    // search
    auto* search = app.add_subcommand("search", "exhaustive extremal search");
    std::uint32_t se_n = 0, se_mod = 2, se_k = 2, se_threads = 1;
    std::uint64_t se_budget = 0;
    std::string se_mode = "pairwise", se_emit, se_out;
    search->add_option("--n", se_n)->required();
    search->add_option("--mod", se_mod);
    search->add_option("--k", se_k);
    search->add_option("--mode", se_mode)->check(CLI::IsMember({"pairwise", "distinct", "repetition"}));
    search->add_option("--budget-nodes", se_budget);
    search->add_option("--threads", se_threads);
    search->add_option("--emit-extremal", se_emit, "write extremal families under this prefix");
    search->add_option("--out", se_out);

    // threshold
    auto* threshold = app.add_subcommand("threshold", "paper threshold formulas");
    std::uint32_t th_ell = 2;
    std::uint64_t th_eps_num = 0, th_eps_den = 1;
    std::string th_out;
    threshold->add_option("--mod,--ell", th_ell)->required();
    threshold->add_option("--eps-num", th_eps_num, "epsilon numerator (stability threshold)");
    threshold->add_option("--eps-den", th_eps_den, "epsilon denominator");
    threshold->add_option("--out", th_out);

    for (auto* sub : app.get_subcommands({}))
        sub->add_flag("--no-meta", no_meta, "omit the meta block");

    CLI11_PARSE(app, argc, argv);

    if (*analyze) {
        divfam_family* fam = parse_family_file(an_in);
        Json params;
        if (!an_primes.empty()) params["primes"] = an_primes;
        Json closures = Json::array();
        for (const auto& spec : an_closures) {
            auto colon = spec.find(':');
            if (colon == std::string::npos) {
                std::cerr << "error: closure spec must be k:ell\n";
                return 2;
            }
            closures.push_back({{"k", std::stoull(spec.substr(0, colon))},
                                {"ell", std::stoul(spec.substr(colon + 1))}});
        }
        if (!closures.empty()) params["closures"] = closures;
        Owned out, err;
        int rc = divfam_analyze(fam, params.dump().c_str(), &out.ptr, &err.ptr);
        divfam_family_free(fam);
        if (rc != DIVFAM_OK) fail(rc, err);
        emit_json(out.str(), an_out, no_meta);
        return 0;
    }

    if (*construct) {
        Json params{{"generator", gen}, {"n", co_n}, {"mod", co_mod}};
        if (gen == "atomic") {
            Json atoms = Json::array();
            std::stringstream ss(co_atoms);
            std::string atom;
            while (std::getline(ss, atom, ';')) atoms.push_back(parse_uint_list(atom));
            params["atoms"] = atoms;
        } else if (gen == "subspace") {
            params["p"] = co_p;
            params["k"] = co_k;
            params["q"] = co_q;
            params["r"] = co_r;
        } else if (gen == "cross") {
            params["parts"] = parse_uint_list(co_parts);
        }
        Owned out, err;
        int rc = divfam_construct(params.dump().c_str(), &out.ptr, &err.ptr);
        if (rc != DIVFAM_OK) fail(rc, err);
        Json result = Json::parse(out.str());
        const auto& families = result.at("families");
        if (families.size() == 1) {
            write_output(co_out, families.at(0).get<std::string>());
        } else {
            for (std::size_t i = 0; i < families.size(); ++i) {
                std::string path =
                    co_out.empty() ? "" : co_out + "_" + std::to_string(i + 1);
                write_output(path, families.at(i).get<std::string>());
            }
        }
        return 0;
    }

    if (*verify) {
        Json params{{"p", ve_p}, {"alpha", ve_alpha}, {"t", ve_t}, {"k", ve_k}, {"ell", ve_ell}};
        if (lemma == "cross") {
            Json fams = Json::array();
            for (const auto& path : ve_in) fams.push_back(read_input(path));
            params["families"] = fams;
        } else if (lemma == "oddtown") {
            if (ve_pairs.empty()) {
                std::cerr << "error: oddtown requires --pairs\n";
                return 2;
            }
            std::istringstream in(read_input(ve_pairs));
            std::string line;
            std::uint32_t n = 0;
            Json pairs = Json::array();
            std::size_t lineno = 0;
            while (std::getline(in, line)) {
                ++lineno;
                if (line.empty() || line[0] == '#') continue;
                if (line.rfind("n=", 0) == 0) {
                    n = static_cast<std::uint32_t>(std::stoul(line.substr(2)));
                    continue;
                }
                auto space = line.find(' ');
                if (space == std::string::npos) {
                    std::cerr << "error: line " << lineno << ": expected 'A B'\n";
                    return 2;
                }
                pairs.push_back({line.substr(0, space), line.substr(space + 1)});
            }
            params["n"] = n;
            params["pairs"] = pairs;
        } else {
            if (ve_in.empty()) {
                std::cerr << "error: verify " << lemma << " requires --in\n";
                return 2;
            }
            params["family"] = read_input(ve_in.front());
        }
        Owned out, err;
        int rc = divfam_verify(lemma.c_str(), params.dump().c_str(), &out.ptr, &err.ptr);
        if (rc == DIVFAM_BAD_INPUT || rc == DIVFAM_INTERNAL) fail(rc, err);
        emit_json(out.str(), ve_out, no_meta);
        return rc;
    }

    if (*search) {
        Json params{{"n", se_n}, {"mod", se_mod}, {"k", se_k},
                    {"mode", se_mode}, {"threads", se_threads}};
        if (se_budget == 0)
            if (const char* env = std::getenv("DIVFAM_BUDGET_NODES"))
                se_budget = std::strtoull(env, nullptr, 10);
        if (se_budget != 0) params["budget_nodes"] = se_budget;
        if (!se_emit.empty()) params["emit_extremal"] = true;
        Owned out, err;
        int rc = divfam_search(params.dump().c_str(), &out.ptr, &err.ptr);
        if (rc != DIVFAM_OK) fail(rc, err);
        Json result = Json::parse(out.str());
        if (!se_emit.empty()) {
            const auto& extremal = result.at("extremal");
            for (std::size_t i = 0; i < extremal.size(); ++i)
                write_output(se_emit + "_" + std::to_string(i + 1) + ".fam",
                             extremal.at(i).get<std::string>());
            result.erase("extremal");
        }
        emit_json(result.dump(2), se_out, no_meta);
        return 0;
    }

    if (*threshold) {
        Json params{{"ell", th_ell}};
        if (th_eps_num != 0) {
            params["eps_num"] = th_eps_num;
            params["eps_den"] = th_eps_den;
        }
        Owned out, err;
        int rc = divfam_threshold(params.dump().c_str(), &out.ptr, &err.ptr);
        if (rc != DIVFAM_OK) fail(rc, err);
        emit_json(out.str(), th_out, no_meta);
        return 0;
    }

    return 2;
}
