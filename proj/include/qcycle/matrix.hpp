#pragma once

#include "qcycle/padic.hpp"

#include <vector>

namespace qcycle {

// Dense exact-rational matrices.  Sizes here are tiny (n <= 6), so a
// plain row-major vector-of-rows representation is enough.
using RatMat = std::vector<std::vector<Rat>>;

RatMat identity_mat(int n);
RatMat transpose(const RatMat& a);
RatMat mat_mul(const RatMat& a, const RatMat& b);
Rat det(RatMat a);  // by fraction-free-ish Gaussian elimination
RatMat mat_inverse(const RatMat& a);

inline int mat_rows(const RatMat& a) { return static_cast<int>(a.size()); }
inline int mat_cols(const RatMat& a) { return a.empty() ? 0 : static_cast<int>(a[0].size()); }

// 2x2 convenience used by the tree module
struct Mat2 {
    Rat a, b, c, d;  // [[a, b], [c, d]]

    Rat det() const { return a * d - b * c; }
    Mat2 inverse() const;
    Mat2 operator*(const Mat2& o) const;
    Mat2 operator*(const Rat& s) const;
    bool operator==(const Mat2& o) const = default;
};

}  // namespace qcycle
