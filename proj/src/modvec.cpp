#include "divfam/modvec.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace divfam {

bool is_prime(std::uint32_t m) {
    if (m < 2) return false;
    for (std::uint32_t d = 2; d * d <= m; ++d)
        if (m % d == 0) return false;
    return true;
}

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) {
    // Fermat; p prime and a nonzero mod p.
    a %= p;
    if (a == 0) throw ModulusError("inverse of zero");
    std::uint64_t result = 1, base = a, exp = p - 2;
    while (exp) {
        if (exp & 1) result = result * base % p;
        base = base * base % p;
        exp >>= 1;
    }
    return static_cast<std::uint32_t>(result);
}

namespace {

std::uint32_t lane_bits_for(std::uint32_t modulus) {
    std::uint32_t need = std::bit_width(modulus - 1);
    return std::uint32_t{1} << std::bit_width(need - 1);  // round up to power of two
}

}  // namespace

ModVector::ModVector(std::uint32_t modulus, std::uint32_t n) : mod_(modulus), n_(n) {
    if (modulus < 2) throw ModulusError("modulus must be >= 2");
    lane_bits_ = lane_bits_for(modulus);
    std::uint32_t per_word = 64 / lane_bits_;
    words_.assign((n + per_word - 1) / per_word, 0);
}

ModVector ModVector::from_values(std::uint32_t modulus, const std::vector<std::uint32_t>& values) {
    ModVector v(modulus, static_cast<std::uint32_t>(values.size()));
    for (std::uint32_t i = 0; i < values.size(); ++i) v.set(i, values[i] % modulus);
    return v;
}

std::uint32_t ModVector::get(std::uint32_t i) const {
    std::uint32_t per_word = 64 / lane_bits_;
    std::uint64_t word = words_[i / per_word];
    std::uint32_t shift = (i % per_word) * lane_bits_;
    std::uint64_t mask = lane_bits_ == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << lane_bits_) - 1);
    return static_cast<std::uint32_t>((word >> shift) & mask);
}

void ModVector::set(std::uint32_t i, std::uint32_t value) {
    std::uint32_t per_word = 64 / lane_bits_;
    std::uint32_t shift = (i % per_word) * lane_bits_;
    std::uint64_t mask = lane_bits_ == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << lane_bits_) - 1);
    std::uint64_t& word = words_[i / per_word];
    word = (word & ~(mask << shift)) | (std::uint64_t{value} << shift);
}

void ModVector::check_shape(const ModVector& other) const {
    if (mod_ != other.mod_ || n_ != other.n_)
        throw ShapeError("vector modulus/length mismatch");
}

ModVector ModVector::hadamard(const ModVector& other) const {
    check_shape(other);
    ModVector out(mod_, n_);
    if (mod_ == 2) {
        for (std::size_t w = 0; w < words_.size(); ++w)
            out.words_[w] = words_[w] & other.words_[w];
        return out;
    }
    for (std::uint32_t i = 0; i < n_; ++i)
        out.set(i, static_cast<std::uint32_t>(std::uint64_t{get(i)} * other.get(i) % mod_));
    return out;
}

ModVector ModVector::add(const ModVector& other) const {
    check_shape(other);
    ModVector out(mod_, n_);
    if (mod_ == 2) {
        for (std::size_t w = 0; w < words_.size(); ++w)
            out.words_[w] = words_[w] ^ other.words_[w];
        return out;
    }
    for (std::uint32_t i = 0; i < n_; ++i)
        out.set(i, (get(i) + other.get(i)) % mod_);
    return out;
}

ModVector ModVector::scaled(std::uint32_t a) const {
    a %= mod_;
    ModVector out(mod_, n_);
    if (a == 0) return out;
    if (a == 1) return *this;
    for (std::uint32_t i = 0; i < n_; ++i)
        out.set(i, static_cast<std::uint32_t>(std::uint64_t{get(i)} * a % mod_));
    return out;
}

void ModVector::add_scaled_inplace(std::uint32_t a, const ModVector& other) {
    check_shape(other);
    a %= mod_;
    if (a == 0) return;
    if (mod_ == 2) {
        for (std::size_t w = 0; w < words_.size(); ++w)
            words_[w] ^= other.words_[w];
        return;
    }
    for (std::uint32_t i = 0; i < n_; ++i)
        set(i, static_cast<std::uint32_t>((get(i) + std::uint64_t{other.get(i)} * a) % mod_));
}

std::uint32_t ModVector::norm() const {
    if (mod_ == 2) {
        std::uint64_t total = 0;
        for (std::uint64_t w : words_) total += std::popcount(w);
        return static_cast<std::uint32_t>(total & 1);
    }
    std::uint64_t total = 0;
    for (std::uint32_t i = 0; i < n_; ++i) total += get(i);
    return static_cast<std::uint32_t>(total % mod_);
}

std::vector<std::uint32_t> ModVector::support() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < n_; ++i)
        if (get(i) != 0) out.push_back(i);
    return out;
}

bool ModVector::is_zero() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

bool ModVector::is_zero_one() const {
    for (std::uint32_t i = 0; i < n_; ++i)
        if (get(i) > 1) return false;
    return true;
}

std::vector<std::uint32_t> ModVector::values() const {
    std::vector<std::uint32_t> out(n_);
    for (std::uint32_t i = 0; i < n_; ++i) out[i] = get(i);
    return out;
}

bool ModVector::operator==(const ModVector& other) const {
    return mod_ == other.mod_ && n_ == other.n_ && words_ == other.words_;
}

bool ModVector::operator<(const ModVector& other) const {
    check_shape(other);
    for (std::uint32_t i = 0; i < n_; ++i) {
        std::uint32_t a = get(i), b = other.get(i);
        if (a != b) return a < b;
    }
    return false;
}

ModMatrix::ModMatrix(std::uint32_t modulus, std::vector<ModVector> rows_in)
    : modulus(modulus), rows(std::move(rows_in)) {
    for (const auto& r : rows)
        if (r.modulus() != modulus || r.size() != rows.front().size())
            throw ShapeError("matrix rows must share modulus and length");
}

}  // namespace divfam
