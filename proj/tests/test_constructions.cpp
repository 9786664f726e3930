#include <doctest.h>

#include "divfam/constructions.hpp"
#include "divfam/structure.hpp"

using namespace divfam;

TEST_CASE("atomic family enumerates all unions") {
    AtomSpec spec;
    spec.ground_size = 5;
    spec.atoms = {{0, 1}, {2}, {4}};
    SetFamily f = atomic_family(spec, 2);
    CHECK(f.size() == 8);
    CHECK(product(f, f) == f);  // S.S = S

    AtomSpec overlap;
    overlap.ground_size = 3;
    overlap.atoms = {{0, 1}, {1, 2}};
    CHECK_THROWS_AS(atomic_family(overlap, 2), SpecError);

    AtomSpec empty_atom;
    empty_atom.ground_size = 2;
    empty_atom.atoms = {{}};
    CHECK_THROWS_AS(atomic_family(empty_atom, 2), SpecError);
}

TEST_CASE("s_family size formula for all n <= 30, ell <= 10") {
    for (std::uint32_t ell = 1; ell <= 10; ++ell)
        for (std::uint32_t n = 0; n <= 30; ++n) {
            if (n / ell > 16) continue;  // ell=1 blows up; formula covered to 2^16
            CHECK(s_family(n, ell).size() == std::uint64_t{1} << (n / ell));
        }
}

TEST_CASE("s_family twin classes are its ell-blocks") {
    SetFamily s = s_family(11, 3);
    TwinDecomposition t = twin_decomposition(s);
    REQUIRE(t.classes.size() == 3);
    for (std::uint32_t i = 0; i < 3; ++i)
        CHECK(t.classes[i] == std::vector<std::uint32_t>{3 * i, 3 * i + 1, 3 * i + 2});
    CHECK(t.uncovered == std::vector<std::uint32_t>{9, 10});
}

TEST_CASE("s_family is k-closed for every k") {
    for (std::uint32_t ell : {2u, 3u, 5u})
        CHECK(closure_profile(s_family(4 * ell, ell), ell).bad_depth == 0);
}

TEST_CASE("subspace stability family sizes and closure") {
    auto hyperplane_count = [](std::uint32_t p, std::uint32_t k) {
        std::uint64_t num = 1;
        for (std::uint32_t i = 0; i < k + 1; ++i) num *= p;
        return (num - 1) / (p - 1);
    };
    struct Case {
        std::uint32_t p, k, q, r;
    };
    for (Case c : {Case{2, 1, 1, 1}, Case{2, 1, 2, 1}, Case{2, 2, 1, 1}, Case{2, 1, 1, 2},
                   Case{3, 1, 1, 1}, Case{3, 1, 2, 1}}) {
        SetFamily f = subspace_stability_family(c.p, c.k, c.q, c.r);
        std::uint64_t expect = std::uint64_t{1} << c.q;
        for (std::uint32_t j = 0; j < c.r; ++j) expect *= hyperplane_count(c.p, c.k);
        CHECK(f.size() == expect);

        // k members meet each block in a subspace of dimension >= 1, so
        // all k-wise (with repetition) intersections are divisible by p
        CHECK(closure_profile(f, c.p).k_closed(c.k));
    }
    CHECK_THROWS_AS(subspace_stability_family(4, 1, 1, 1), ModulusError);
}

TEST_CASE("subspace stability family k-wise intersections exhaustively") {
    SetFamily f = subspace_stability_family(2, 2, 1, 1);  // k = 2
    for (std::size_t a = 0; a < f.size(); ++a)
        for (std::size_t b = 0; b < f.size(); ++b) {
            BitVec inter = f.member(a) & f.member(b);
            CHECK(inter.count() % 2 == 0);
        }
}

TEST_CASE("cross extremal families attain the bound with equality") {
    struct Case {
        std::uint32_t n;
        std::vector<std::vector<std::uint32_t>> parts;
    };
    for (const Case& c : {Case{2, {{0}, {1}}}, Case{3, {{0}, {1, 2}}},
                          Case{3, {{0}, {1}, {2}}}, Case{4, {{0, 1}, {2, 3}}}}) {
        auto fams = cross_extremal_families(c.n, c.parts, 2);
        REQUIRE(fams.size() == c.parts.size());
        BigInt prod = 1;
        for (const auto& f : fams) prod *= BigInt(f.size());
        CHECK(prod == BigInt(1) << ((c.parts.size() - 1) * c.n));
        // cross intersections are empty
        std::vector<std::size_t> idx(fams.size(), 0);
        bool done = false;
        while (!done) {
            BitVec inter = fams[0].member(idx[0]);
            for (std::size_t i = 1; i < fams.size(); ++i) inter = inter & fams[i].member(idx[i]);
            CHECK(inter.is_zero());
            std::size_t lvl = 0;
            while (lvl < idx.size() && ++idx[lvl] == fams[lvl].size()) idx[lvl++] = 0;
            done = lvl == idx.size();
        }
    }
    CHECK_THROWS_AS(cross_extremal_families(3, {{0}, {1}}, 2), SpecError);
    CHECK_THROWS_AS(cross_extremal_families(2, {{0, 1}, {1}}, 2), SpecError);
}
