#include "vcfem/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace vcfem::kernels {

namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void xpby_scalar(const double* x, double b, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + b * y[i];
}

void csr_matvec_scalar(std::size_t n, const int* row_ptr, const int* col, const double* val,
                       const double* x, double* y) {
    for (std::size_t r = 0; r < n; ++r) {
        double acc = 0.0;
        for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k) acc += val[k] * x[col[k]];
        y[r] = acc;
    }
}

const Ops kScalar{"scalar", dot_scalar, axpy_scalar, xpby_scalar, csr_matvec_scalar};

const Ops& select() {
    const char* force = std::getenv("VCFEM_KERNELS");
    if (force) {
        if (std::strcmp(force, "scalar") == 0) return kScalar;
        if (std::strcmp(force, "avx2") == 0 && avx2_ops()) return *avx2_ops();
        if (std::strcmp(force, "neon") == 0 && neon_ops()) return *neon_ops();
        return kScalar;  // unknown or unavailable lane: fall back
    }
    if (const Ops* ops = avx2_ops()) return *ops;
    if (const Ops* ops = neon_ops()) return *ops;
    return kScalar;
}

}  // namespace

const Ops& scalar_ops() { return kScalar; }

const Ops& active() {
    static const Ops& chosen = select();
    return chosen;
}

}  // namespace vcfem::kernels
