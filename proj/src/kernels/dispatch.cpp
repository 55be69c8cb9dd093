#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"
#include "newssum/kernels.hpp"

namespace newssum::kernels {
namespace {

constexpr KernelTable kScalarTable{Isa::kScalar, &scalar::dot, &scalar::sum, &scalar::l1_distance,
                                   &scalar::axpy};

#if defined(NEWSSUM_HAVE_AVX2)
constexpr KernelTable kAvx2Table{Isa::kAvx2, &avx2::dot, &avx2::sum, &avx2::l1_distance, &avx2::axpy};

bool cpu_has_avx2() noexcept {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") != 0;
}
#endif

#if defined(NEWSSUM_HAVE_NEON)
constexpr KernelTable kNeonTable{Isa::kNeon, &neon::dot, &neon::sum, &neon::l1_distance, &neon::axpy};
#endif

const KernelTable& select() noexcept {
  if (const char* forced = std::getenv("NEWSSUM_KERNELS"); forced != nullptr) {
    if (std::string_view(forced) == "scalar") return kScalarTable;
  }
#if defined(NEWSSUM_HAVE_AVX2)
  if (cpu_has_avx2()) return kAvx2Table;
#endif
#if defined(NEWSSUM_HAVE_NEON)
  return kNeonTable;
#endif
  return kScalarTable;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
    case Isa::kNeon:
      return "neon";
  }
  return "unknown";
}

const KernelTable& scalar_table() noexcept { return kScalarTable; }

const KernelTable* table_for(Isa isa) noexcept {
  switch (isa) {
    case Isa::kScalar:
      return &kScalarTable;
    case Isa::kAvx2:
#if defined(NEWSSUM_HAVE_AVX2)
      if (cpu_has_avx2()) return &kAvx2Table;
#endif
      return nullptr;
    case Isa::kNeon:
#if defined(NEWSSUM_HAVE_NEON)
      return &kNeonTable;
#endif
      return nullptr;
  }
  return nullptr;
}

const KernelTable& active() noexcept {
  static const KernelTable& table = select();
  return table;
}

}  // namespace newssum::kernels
