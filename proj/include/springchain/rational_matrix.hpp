#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "springchain/rational.hpp"

namespace springchain {

using RationalVector = std::vector<Rational>;

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static RationalMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

RationalVector operator*(const RationalMatrix& m, std::span<const Rational> v);
/// Row vector times matrix.
RationalVector operator*(std::span<const Rational> v, const RationalMatrix& m);
Rational dot(std::span<const Rational> a, std::span<const Rational> b);

}  // namespace springchain
