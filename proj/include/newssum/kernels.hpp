#pragma once

// Dense f64 kernels used by the ranking hot loops (PageRank iteration,
// vector norms, score sums).
//
// Every reduction accumulates into four interleaved partial sums
// (lane k takes elements i with i % 4 == k) and combines them as
// (s0 + s1) + (s2 + s3), followed by a sequential scalar tail. The scalar
// reference emulates that lane layout exactly, so the scalar, AVX2 and NEON
// variants produce bit-identical results. Element-wise kernels (axpy) are
// trivially identical. No variant may use fused multiply-add.

#include <cstddef>
#include <span>
#include <string_view>

namespace newssum::kernels {

enum class Isa { kScalar, kAvx2, kNeon };

struct KernelTable {
  Isa isa;
  double (*dot)(const double* a, const double* b, std::size_t n) noexcept;
  double (*sum)(const double* a, std::size_t n) noexcept;
  double (*l1_distance)(const double* a, const double* b, std::size_t n) noexcept;
  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n) noexcept;
};

std::string_view isa_name(Isa isa) noexcept;

// Scalar reference table; always available.
const KernelTable& scalar_table() noexcept;

// Table for a specific ISA, or nullptr if it was not compiled in or the
// running CPU does not support it.
const KernelTable* table_for(Isa isa) noexcept;

// Best table for this CPU, chosen once on first use. Setting the environment
// variable NEWSSUM_KERNELS=scalar forces the reference path.
const KernelTable& active() noexcept;

inline double dot(std::span<const double> a, std::span<const double> b) noexcept {
  return active().dot(a.data(), b.data(), a.size() < b.size() ? a.size() : b.size());
}

inline double sum(std::span<const double> a) noexcept { return active().sum(a.data(), a.size()); }

inline double l1_distance(std::span<const double> a, std::span<const double> b) noexcept {
  return active().l1_distance(a.data(), b.data(), a.size() < b.size() ? a.size() : b.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) noexcept {
  active().axpy(alpha, x.data(), y.data(), x.size() < y.size() ? x.size() : y.size());
}

}  // namespace newssum::kernels
