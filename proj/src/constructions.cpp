#include "divfam/constructions.hpp"

#include <algorithm>

namespace divfam {

SetFamily atomic_family(const AtomSpec& spec, std::uint32_t modulus) {
    std::vector<bool> used(spec.ground_size, false);
    for (const auto& atom : spec.atoms) {
        if (atom.empty()) throw SpecError("atomic_family: empty atom");
        for (std::uint32_t c : atom) {
            if (c >= spec.ground_size) throw SpecError("atomic_family: coordinate out of range");
            if (used[c]) throw SpecError("atomic_family: atoms overlap");
            used[c] = true;
        }
    }
    std::size_t d = spec.atoms.size();
    if (d >= 63) throw SpecError("atomic_family: too many atoms to enumerate");
    std::vector<BitVec> members;
    members.reserve(std::size_t{1} << d);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
        BitVec m(spec.ground_size);
        for (std::size_t i = 0; i < d; ++i)
            if (mask >> i & 1)
                for (std::uint32_t c : spec.atoms[i]) m.set(c);
        members.push_back(std::move(m));
    }
    return SetFamily::from_members(spec.ground_size, modulus, std::move(members));
}

SetFamily s_family(std::uint32_t n, std::uint32_t ell) {
    if (ell < 1) throw SpecError("s_family: ell must be >= 1");
    AtomSpec spec;
    spec.ground_size = n;
    for (std::uint32_t i = 0; i + ell <= n; i += ell) {
        std::vector<std::uint32_t> atom(ell);
        for (std::uint32_t j = 0; j < ell; ++j) atom[j] = i + j;
        spec.atoms.push_back(std::move(atom));
    }
    return atomic_family(spec, std::max<std::uint32_t>(ell, 2));
}

SetFamily subspace_stability_family(std::uint32_t p, std::uint32_t k_sub, std::uint32_t q,
                                    std::uint32_t r) {
    if (!is_prime(p)) throw ModulusError("subspace_stability_family: p must be prime");
    std::uint64_t block = 1;
    for (std::uint32_t i = 0; i < k_sub + 1; ++i) block *= p;  // p^{k+1}
    std::uint64_t n64 = std::uint64_t{p} * q + block * r;
    if (n64 > 4096) throw SpecError("subspace_stability_family: ground set too large");
    std::uint32_t n = static_cast<std::uint32_t>(n64);

    // Hyperplanes of F_p^{k+1} as kernels of normalized nonzero functionals.
    // Coordinate m of a block is the vector with base-p digits of m.
    std::vector<std::vector<std::uint32_t>> hyperplanes;
    std::vector<std::uint32_t> a(k_sub + 1, 0);
    auto digits_dot = [&](std::uint64_t m) {
        std::uint64_t acc = 0;
        for (std::uint32_t i = 0; i <= k_sub; ++i) {
            acc += a[i] * (m % p);
            m /= p;
        }
        return acc % p;
    };
    for (std::uint64_t code = 1; code < block; ++code) {
        std::uint64_t m = code;
        for (std::uint32_t i = 0; i <= k_sub; ++i) {
            a[i] = static_cast<std::uint32_t>(m % p);
            m /= p;
        }
        std::uint32_t lead = 0;
        while (a[lead] == 0) ++lead;
        if (a[lead] != 1) continue;  // one functional per scalar class
        std::vector<std::uint32_t> coords;
        for (std::uint64_t v = 0; v < block; ++v)
            if (digits_dot(v) == 0) coords.push_back(static_cast<std::uint32_t>(v));
        hyperplanes.push_back(std::move(coords));
    }
    std::uint64_t hcount = hyperplanes.size();

    std::vector<BitVec> members;
    std::vector<std::uint32_t> choice(r, 0);
    for (std::uint64_t tmask = 0; tmask < (std::uint64_t{1} << q); ++tmask) {
        std::fill(choice.begin(), choice.end(), 0);
        while (true) {
            BitVec m(n);
            for (std::uint32_t i = 0; i < q; ++i)
                if (tmask >> i & 1)
                    for (std::uint32_t j = 0; j < p; ++j) m.set(i * p + j);
            for (std::uint32_t j = 0; j < r; ++j) {
                std::uint32_t base = p * q + static_cast<std::uint32_t>(block) * j;
                for (std::uint32_t c : hyperplanes[choice[j]]) m.set(base + c);
            }
            members.push_back(std::move(m));
            std::uint32_t idx = 0;
            while (idx < r && choice[idx] + 1 == hcount) choice[idx++] = 0;
            if (idx == r) break;
            ++choice[idx];
        }
    }
    return SetFamily::from_members(n, p, std::move(members));
}

std::vector<SetFamily> cross_extremal_families(
    std::uint32_t n, const std::vector<std::vector<std::uint32_t>>& parts,
    std::uint32_t modulus) {
    if (n >= 26) throw SpecError("cross_extremal_families: ground set too large");
    std::vector<bool> used(n, false);
    for (const auto& part : parts) {
        if (part.empty()) throw SpecError("cross_extremal_families: empty part");
        for (std::uint32_t c : part) {
            if (c >= n || used[c]) throw SpecError("cross_extremal_families: not a partition");
            used[c] = true;
        }
    }
    if (std::find(used.begin(), used.end(), false) != used.end())
        throw SpecError("cross_extremal_families: parts do not cover [n]");

    std::vector<SetFamily> out;
    for (const auto& part : parts) {
        std::vector<std::uint32_t> rest;
        for (std::uint32_t c = 0; c < n; ++c)
            if (std::find(part.begin(), part.end(), c) == part.end()) rest.push_back(c);
        std::vector<BitVec> members;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << rest.size()); ++mask) {
            BitVec m(n);
            for (std::size_t i = 0; i < rest.size(); ++i)
                if (mask >> i & 1) m.set(rest[i]);
            members.push_back(std::move(m));
        }
        out.push_back(SetFamily::from_members(n, modulus, std::move(members)));
    }
    return out;
}

}  // namespace divfam
