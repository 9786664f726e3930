#include <doctest.h>

#include <random>

#include "divfam/constructions.hpp"
#include "divfam/structure.hpp"

using namespace divfam;

namespace {

SetFamily random_family(std::mt19937& rng, std::uint32_t n, std::size_t count) {
    std::vector<BitVec> members;
    for (std::size_t i = 0; i < count; ++i) {
        BitVec v(n);
        for (std::uint32_t b = 0; b < n; ++b)
            if (rng() & 1) v.set(b);
        members.push_back(std::move(v));
    }
    return SetFamily::from_members(n, 2, std::move(members));
}

}  // namespace

TEST_CASE("factorize") {
    CHECK(factorize(2) == std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}});
    CHECK(factorize(12) == std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 2}, {3, 1}});
    CHECK(factorize(97) == std::vector<std::pair<std::uint32_t, std::uint32_t>>{{97, 1}});
}

TEST_CASE("sibling decomposition rejects zero columns") {
    ModMatrix m(2, {ModVector::from_values(2, {1, 0, 1})});
    CHECK_THROWS_AS(sibling_decomposition(rref(m)), StructureError);
}

TEST_CASE("structure_decompose on atomic families is degenerate") {
    for (std::uint32_t ell : {2u, 3u}) {
        SetFamily s = s_family(4 * ell, ell);
        StructureResult res = structure_decompose(s, ell == 2 ? 2 : 3);
        CHECK(res.h == 0);
        CHECK(res.d == 4);
        CHECK(res.B.empty());
        CHECK(res.dim_FB == 0);
        CHECK(res.bound_holds());
        REQUIRE(res.atoms.size() == 4);
        for (std::uint32_t i = 0; i < 4; ++i) {
            std::vector<std::uint32_t> expect;
            for (std::uint32_t j = 0; j < ell; ++j) expect.push_back(i * ell + j);
            CHECK(res.atoms[i] == expect);
        }
    }
}

TEST_CASE("structure property suite on random families") {
    std::mt19937 rng(20240817);
    const std::vector<std::uint32_t> primes{2, 3, 5};
    int built = 0;
    for (int rep = 0; rep < 200; ++rep) {
        std::uint32_t n = 2 + rng() % 19;
        SetFamily f = random_family(rng, n, 1 + rng() % 40);
        std::uint32_t p = primes[rng() % primes.size()];

        StructureResult res = structure_decompose(f, p);
        CHECK(res.bound_holds());

        // atoms and B partition [n]
        std::vector<bool> hit(n, false);
        auto mark = [&](std::uint32_t c) {
            REQUIRE(c < n);
            CHECK_FALSE(hit[c]);
            hit[c] = true;
        };
        for (const auto& atom : res.atoms)
            for (std::uint32_t c : atom) mark(c);
        for (std::uint32_t c : res.B) mark(c);
        for (std::uint32_t c = 0; c < n; ++c) CHECK(hit[c]);

        // atoms are twin classes of F
        for (const auto& atom : res.atoms)
            for (const auto& m : f.members())
                for (std::uint32_t c : atom) CHECK(m.test(c) == m.test(atom.front()));

        ReduceResult red = reduce(f);
        if (red.family.ground_size() == 0 || res.d == 0) continue;
        StructureCertificate cert = build_certificate(red.family, p);
        ++built;
        CHECK(cert.invariants_ok);
        if (!cert.invariants_ok)
            for (const auto& why : cert.failures) MESSAGE(why);
        CHECK(2 * cert.dim_W >= cert.r);
        CHECK(cert.d == res.d);
        CHECK(cert.h == res.h);
    }
    CHECK(built > 100);
}

TEST_CASE("bilinear bound") {
    SetFamily s = s_family(8, 2);
    SubspaceBasis basis = rref(ModMatrix(2, s.char_vectors(2)));
    std::vector<std::uint32_t> ones(8, 1);
    Verdict v = check_bilinear_bound(ones, basis);
    CHECK(v.holds());  // 2*4 <= 8 + 0, tight

    // a basis that is not self-orthogonal is out of the lemma's scope
    SetFamily odd = SetFamily::from_members(3, 2, {[] {
        BitVec b(3);
        b.set(0);
        return b;
    }()});
    Verdict na = check_bilinear_bound(std::vector<std::uint32_t>(3, 1),
                                      rref(ModMatrix(2, odd.char_vectors(2))));
    CHECK(na.kind == VerdictKind::NotApplicable);
}

TEST_CASE("prime lemma on closed families") {
    for (std::uint32_t p : {2u, 3u}) {
        SetFamily s = s_family(3 * p, p);
        SubspaceBasis basis = rref(ModMatrix(p, s.char_vectors(p)));
        TwinDecomposition twins = twin_decomposition(s);
        Verdict v = check_lemma_prime(basis, twins.classes);
        CHECK(v.holds());

        // a partition that misses coordinates is rejected as inapplicable
        auto partial = twins.classes;
        partial.pop_back();
        CHECK(check_lemma_prime(basis, partial).kind == VerdictKind::NotApplicable);
    }
}

TEST_CASE("prime power lemma") {
    SetFamily s = s_family(8, 4);  // ell = 2^2
    StructureResult res = structure_decompose(s, 2);
    Verdict v = check_lemma_primepower(s, 2, 2, res.atoms, res.B, res.h);
    CHECK(v.holds());

    // a family with a bad product is out of scope
    std::vector<BitVec> odd;
    {
        BitVec b(4);
        b.set(0);
        odd.push_back(b);
    }
    SetFamily bad = SetFamily::from_members(4, 2, odd);
    CHECK(check_lemma_primepower(bad, 2, 1, {{0}, {1}, {2}, {3}}, {}, 0).kind ==
          VerdictKind::NotApplicable);
}

TEST_CASE("small dimension lemma") {
    SetFamily s = s_family(8, 2);
    SmallDimResult res = check_lemma_smalldim(s, 2, 1, 5);
    CHECK(res.verdict.holds());
    CHECK(res.B.empty());
    CHECK(res.dim_FB == 0);

    // reducible input is inapplicable
    SetFamily red = s_family(9, 2);  // coordinate 8 uncovered
    CHECK(check_lemma_smalldim(red, 2, 1, 5).verdict.kind == VerdictKind::NotApplicable);
}

TEST_CASE("threshold formulas") {
    Threshold k2 = compute_k_threshold(2);
    CHECK(k2.t == 24);
    CHECK(k2.k == BigInt(3) << 25);
    CHECK(k2.k == 100663296);

    Threshold k6 = compute_k_threshold(6);
    CHECK(k6.t == 144);
    CHECK(k6.k == BigInt(4) << 145);

    Threshold k12 = compute_k_threshold(12);  // 12 = 2^2 * 3
    CHECK(k12.t == 12ull * 12 * 3);
    CHECK(k12.k == BigInt(4) << (k12.t + 1));

    Threshold s2 = compute_stab_threshold(2, 6, 1);
    CHECK(s2.t == 1);
    CHECK(s2.k == 12);

    Threshold s6 = compute_stab_threshold(6, 1, 2);  // epsilon = 1/2
    CHECK(s6.t == 24);
    CHECK(s6.k == BigInt(4) << 25);

    CHECK_THROWS_AS(compute_k_threshold(1), SpecError);
    CHECK_THROWS_AS(compute_stab_threshold(2, 0, 1), SpecError);
}

TEST_CASE("stability projection") {
    SUBCASE("atomic family projects onto itself") {
        SetFamily s = s_family(10, 2);
        StabilityProjection proj = stability_projection(s, 2);
        CHECK(proj.verdict.holds());
        CHECK(proj.X.size() == 10);
        CHECK(proj.split_atoms.size() == 5);
        CHECK(proj.projected_size == proj.family_size);
    }
    SUBCASE("subspace construction keeps its p-blocks") {
        SetFamily f = subspace_stability_family(2, 1, 1, 1);
        StabilityProjection proj = stability_projection(f, 2);
        CHECK(proj.verdict.holds());
        CHECK(proj.X == std::vector<std::uint32_t>{0, 1});
        CHECK(proj.projected_size == 2);
        CHECK(proj.family_size == 6);
    }
    SUBCASE("larger twin classes split into ell-blocks") {
        AtomSpec spec;
        spec.ground_size = 4;
        spec.atoms = {{0, 1, 2, 3}};
        SetFamily f = atomic_family(spec, 2);
        StabilityProjection proj = stability_projection(f, 2);
        CHECK(proj.split_atoms ==
              std::vector<std::vector<std::uint32_t>>{{0, 1}, {2, 3}});
        CHECK(proj.verdict.holds());
    }
}

TEST_CASE("coordinate claim diagnostic") {
    SetFamily s = s_family(8, 2);
    CHECK(check_claim_coordinates(s, {0}, 2, 2).kind == VerdictKind::NotApplicable);
    CHECK(check_claim_coordinates(s, {0, 1, 2, 3}, 2, 2).holds());
}
