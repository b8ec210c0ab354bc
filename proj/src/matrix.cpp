#include "qcycle/matrix.hpp"

namespace qcycle {

RatMat identity_mat(int n) {
    RatMat m(n, std::vector<Rat>(n, Rat(0)));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

RatMat transpose(const RatMat& a) {
    RatMat r(mat_cols(a), std::vector<Rat>(mat_rows(a)));
    for (int i = 0; i < mat_rows(a); ++i)
        for (int j = 0; j < mat_cols(a); ++j) r[j][i] = a[i][j];
    return r;
}

RatMat mat_mul(const RatMat& a, const RatMat& b) {
    if (mat_cols(a) != mat_rows(b)) throw std::invalid_argument("dimension mismatch");
    RatMat r(mat_rows(a), std::vector<Rat>(mat_cols(b), Rat(0)));
    for (int i = 0; i < mat_rows(a); ++i)
        for (int k = 0; k < mat_cols(a); ++k) {
            if (a[i][k] == 0) continue;
            for (int j = 0; j < mat_cols(b); ++j) r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

Rat det(RatMat a) {
    const int n = mat_rows(a);
    if (n != mat_cols(a)) throw std::invalid_argument("det of non-square matrix");
    Rat d = 1;
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (a[i][k] != 0) { piv = i; break; }
        if (piv < 0) return Rat(0);
        if (piv != k) { std::swap(a[piv], a[k]); d = -d; }
        d *= a[k][k];
        for (int i = k + 1; i < n; ++i) {
            if (a[i][k] == 0) continue;
            Rat f = a[i][k] / a[k][k];
            for (int j = k; j < n; ++j) a[i][j] -= f * a[k][j];
        }
    }
    return d;
}

RatMat mat_inverse(const RatMat& a) {
    const int n = mat_rows(a);
    if (n != mat_cols(a)) throw std::invalid_argument("inverse of non-square matrix");
    RatMat m = a;
    RatMat inv = identity_mat(n);
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (m[i][k] != 0) { piv = i; break; }
        if (piv < 0) throw std::domain_error("singular matrix");
        std::swap(m[piv], m[k]);
        std::swap(inv[piv], inv[k]);
        Rat f = m[k][k];
        for (int j = 0; j < n; ++j) { m[k][j] /= f; inv[k][j] /= f; }
        for (int i = 0; i < n; ++i) {
            if (i == k || m[i][k] == 0) continue;
            Rat g = m[i][k];
            for (int j = 0; j < n; ++j) {
                m[i][j] -= g * m[k][j];
                inv[i][j] -= g * inv[k][j];
            }
        }
    }
    return inv;
}

Mat2 Mat2::inverse() const {
    Rat dd = det();
    if (dd == 0) throw std::domain_error("singular matrix");
    return Mat2{d / dd, -b / dd, -c / dd, a / dd};
}

Mat2 Mat2::operator*(const Mat2& o) const {
    return Mat2{a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
}

Mat2 Mat2::operator*(const Rat& s) const { return Mat2{a * s, b * s, c * s, d * s}; }

}  // namespace qcycle
