#include "springchain/rational_matrix.hpp"

#include "springchain/error.hpp"

namespace springchain {

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = 1;
    return out;
}

RationalVector operator*(const RationalMatrix& m, std::span<const Rational> v) {
    if (v.size() != m.cols()) throw Error(ErrorCode::LengthMismatch, "matrix-vector shape mismatch");
    RationalVector out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (m(r, c) != 0 && v[c] != 0) out[r] += m(r, c) * v[c];
        }
    }
    return out;
}

RationalVector operator*(std::span<const Rational> v, const RationalMatrix& m) {
    if (v.size() != m.rows()) throw Error(ErrorCode::LengthMismatch, "vector-matrix shape mismatch");
    RationalVector out(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (v[r] == 0) continue;
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (m(r, c) != 0) out[c] += v[r] * m(r, c);
        }
    }
    return out;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
    if (a.size() != b.size()) throw Error(ErrorCode::LengthMismatch, "dot product length mismatch");
    Rational acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

}  // namespace springchain
