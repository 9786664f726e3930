#include <doctest.h>

#include <nlohmann/json.hpp>
#include <string>

#include "divfam.h"

namespace {

using Json = nlohmann::json;

struct Owned {
    char* ptr = nullptr;
    ~Owned() { divfam_string_free(ptr); }
    std::string str() const { return ptr ? ptr : ""; }
};

}  // namespace

TEST_CASE("family parse/format round-trip through the C API") {
    divfam_family* fam = nullptr;
    Owned err;
    int rc = divfam_family_parse("n=4 mod=2\n1100\n0011\n", &fam, &err.ptr);
    REQUIRE(rc == DIVFAM_OK);
    char* text = divfam_family_format(fam);
    CHECK(std::string(text) == "n=4 mod=2\n0011\n1100\n");
    divfam_string_free(text);
    divfam_family_free(fam);
}

TEST_CASE("parse failure returns bad-input with a message") {
    divfam_family* fam = nullptr;
    Owned err;
    int rc = divfam_family_parse("n=4 mod=2\n11x0\n", &fam, &err.ptr);
    CHECK(rc == DIVFAM_BAD_INPUT);
    REQUIRE(err.ptr != nullptr);
    CHECK(err.str().find("line 2") != std::string::npos);
}

TEST_CASE("construct and analyze") {
    Owned out, err;
    REQUIRE(divfam_construct(R"({"generator":"s","n":6,"mod":2})", &out.ptr, &err.ptr) ==
            DIVFAM_OK);
    Json constructed = Json::parse(out.str());
    REQUIRE(constructed.at("families").size() == 1);
    CHECK(constructed.at("sizes").at(0) == 8);

    divfam_family* fam = nullptr;
    REQUIRE(divfam_family_parse(constructed.at("families").at(0).get<std::string>().c_str(),
                                &fam, &err.ptr) == DIVFAM_OK);
    Owned rep;
    REQUIRE(divfam_analyze(fam, R"({"primes":[2],"closures":[{"k":2,"ell":2}]})", &rep.ptr,
                           &err.ptr) == DIVFAM_OK);
    divfam_family_free(fam);
    Json j = Json::parse(rep.str());
    CHECK(j.at("schema") == 1);
    CHECK(j.at("family_size") == 8);
    CHECK(j.at("per_prime").at(0).at("d") == 3);
    CHECK(j.at("per_prime").at(0).at("h") == 0);
    CHECK(j.at("closures").at(0).at("holds") == true);
}

TEST_CASE("verify exit codes follow the verdict") {
    std::string s62 = "n=6 mod=2\n000000\n000011\n001100\n001111\n110000\n110011\n111100\n111111\n";
    Json params{{"family", s62}, {"p", 2}};
    Owned out, err;
    CHECK(divfam_verify("structure", params.dump().c_str(), &out.ptr, &err.ptr) == DIVFAM_OK);
    Json j = Json::parse(out.str());
    CHECK(j.at("h") == 0);
    CHECK(j.at("verdict").at("kind") == "holds");

    // premise failure -> not-applicable (4)
    Json bad{{"family", "n=4 mod=2\n1000\n1110\n"}, {"k", 2}, {"ell", 2}};
    Owned out2, err2;
    CHECK(divfam_verify("removal", bad.dump().c_str(), &out2.ptr, &err2.ptr) ==
          DIVFAM_NOT_APPLICABLE);

    // unknown lemma -> bad input (2)
    Owned out3, err3;
    CHECK(divfam_verify("nonsense", "{}", &out3.ptr, &err3.ptr) == DIVFAM_BAD_INPUT);
}

TEST_CASE("search and threshold endpoints") {
    Owned out, err;
    REQUIRE(divfam_search(R"({"n":4,"mod":2,"mode":"pairwise","emit_extremal":true})",
                          &out.ptr, &err.ptr) == DIVFAM_OK);
    Json j = Json::parse(out.str());
    CHECK(j.at("max_size") == 4);
    CHECK(j.at("extremal").size() >= 1);

    Owned th, err2;
    REQUIRE(divfam_threshold(R"({"ell":2})", &th.ptr, &err2.ptr) == DIVFAM_OK);
    CHECK(Json::parse(th.str()).at("k") == "100663296");

    Owned st, err3;
    REQUIRE(divfam_threshold(R"({"ell":2,"eps_num":6,"eps_den":1})", &st.ptr, &err3.ptr) ==
            DIVFAM_OK);
    Json sj = Json::parse(st.str());
    CHECK(sj.at("k") == "12");
    CHECK(sj.at("t") == 1);
}
