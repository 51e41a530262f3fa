#pragma once
#include <cstddef>

namespace vcfem::kernels {

// Dense vector and CSR kernels behind the iterative solvers. A scalar
// reference implementation always exists; AVX2 (x86-64) and NEON (aarch64)
// variants are selected once at startup when the CPU supports them.
// The environment variable VCFEM_KERNELS=scalar|avx2|neon forces a lane.
struct Ops {
    const char* name;
    double (*dot)(const double* x, const double* y, std::size_t n);
    // y += a * x
    void (*axpy)(double a, const double* x, double* y, std::size_t n);
    // y = x + b * y
    void (*xpby)(const double* x, double b, double* y, std::size_t n);
    // y = A x for CSR (row_ptr, col, val)
    void (*csr_matvec)(std::size_t n, const int* row_ptr, const int* col, const double* val,
                       const double* x, double* y);
};

const Ops& scalar_ops();
const Ops* avx2_ops();  // null when not compiled in or the CPU lacks AVX2+FMA
const Ops* neon_ops();  // null off aarch64

// The lane picked for this process (stable for the process lifetime).
const Ops& active();

}  // namespace vcfem::kernels
