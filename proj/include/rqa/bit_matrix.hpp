#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace rqa {

/// Square binary matrix with 64-bit packed rows. Rows are independent word
/// ranges, so concurrent writers of distinct rows never touch the same word.
class BitMatrix {
public:
    BitMatrix() = default;
    explicit BitMatrix(std::size_t n)
        : n_(n), words_(words_per_row(n)), bits_(n * words_per_row(n), 0) {}

    std::size_t size() const noexcept { return n_; }
    std::size_t row_words() const noexcept { return words_; }

    bool get(std::size_t i, std::size_t j) const {
        return (bits_[i * words_ + j / 64] >> (j % 64)) & 1u;
    }
    void set(std::size_t i, std::size_t j) {
        bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64);
    }
    void clear(std::size_t i, std::size_t j) {
        bits_[i * words_ + j / 64] &= ~(std::uint64_t{1} << (j % 64));
    }

    std::span<const std::uint64_t> row(std::size_t i) const {
        return {bits_.data() + i * words_, words_};
    }
    std::span<std::uint64_t> row(std::size_t i) {
        return {bits_.data() + i * words_, words_};
    }

    std::size_t row_popcount(std::size_t i) const {
        std::size_t total = 0;
        for (std::uint64_t w : row(i)) total += static_cast<std::size_t>(std::popcount(w));
        return total;
    }

    static std::size_t words_per_row(std::size_t n) noexcept { return (n + 63) / 64; }

private:
    std::size_t n_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> bits_;
};

} // namespace rqa
