#include <atomic>
#include <cstdlib>
#include <string_view>

#include "mtdm/kernels.hpp"

#if defined(MTDM_HAVE_AVX2_KERNELS)
#include "kernels_avx2.hpp"
#endif

namespace mtdm::kernels {

namespace {

constexpr KernelTable kScalar{"scalar", &scalar::dot, &scalar::axpy, &scalar::chord,
                              &scalar::min_value};

#if defined(MTDM_HAVE_AVX2_KERNELS)
constexpr KernelTable kAvx2{"avx2", &avx2::dot, &avx2::axpy, &avx2::chord, &avx2::min_value};

bool cpu_has_avx2() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
}
#endif

const KernelTable* initial_table() {
  const char* env = std::getenv("MTDM_ISA");
  if (env != nullptr && std::string_view(env) == "scalar") return &kScalar;
  if (const KernelTable* t = avx2_table()) return t;
  return &kScalar;
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

const KernelTable* avx2_table() {
#if defined(MTDM_HAVE_AVX2_KERNELS)
  static const bool available = cpu_has_avx2();
  return available ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

bool select(Isa isa) {
  const KernelTable* t = isa == Isa::Scalar ? &kScalar : avx2_table();
  if (t == nullptr) return false;
  current().store(t, std::memory_order_release);
  return true;
}

}  // namespace mtdm::kernels
