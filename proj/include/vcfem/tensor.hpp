#pragma once
#include <cmath>

namespace vcfem {

// 2x2 symmetric tensor (strain/stress). The off-diagonal entry is stored
// once; norms and contractions count it twice.
struct SymTensor2 {
    double xx = 0.0;
    double yy = 0.0;
    double xy = 0.0;

    double trace() const { return xx + yy; }
    double norm2() const { return xx * xx + yy * yy + 2.0 * xy * xy; }
    double norm() const { return std::sqrt(norm2()); }
    SymTensor2 deviator() const {
        const double m = 0.5 * trace();
        return {xx - m, yy - m, xy};
    }
    bool finite() const {
        return std::isfinite(xx) && std::isfinite(yy) && std::isfinite(xy);
    }
};

inline SymTensor2 operator+(const SymTensor2& a, const SymTensor2& b) {
    return {a.xx + b.xx, a.yy + b.yy, a.xy + b.xy};
}
inline SymTensor2 operator-(const SymTensor2& a, const SymTensor2& b) {
    return {a.xx - b.xx, a.yy - b.yy, a.xy - b.xy};
}
inline SymTensor2 operator*(double s, const SymTensor2& t) {
    return {s * t.xx, s * t.yy, s * t.xy};
}

// Double contraction a:b with the symmetric off-diagonal counted twice.
inline double ddot(const SymTensor2& a, const SymTensor2& b) {
    return a.xx * b.xx + a.yy * b.yy + 2.0 * a.xy * b.xy;
}

inline SymTensor2 sym_identity() { return {1.0, 1.0, 0.0}; }

}  // namespace vcfem
