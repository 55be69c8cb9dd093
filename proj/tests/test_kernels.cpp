#include <cstring>
#include <random>
#include <vector>

#include "doctest.h"
#include "newssum/kernels.hpp"

using namespace newssum::kernels;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof(double)) == 0; }

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

}  // namespace

TEST_CASE("scalar reference matches naive arithmetic on small inputs") {
  const auto& s = scalar_table();
  const double a[] = {1, 2, 3, 4, 5, 6};
  const double b[] = {6, 5, 4, 3, 2, 1};
  CHECK(s.dot(a, b, 6) == doctest::Approx(56.0));
  CHECK(s.sum(a, 6) == doctest::Approx(21.0));
  CHECK(s.l1_distance(a, b, 6) == doctest::Approx(18.0));
  double y[] = {1, 1, 1};
  s.axpy(2.0, a, y, 3);
  CHECK(y[0] == 3.0);
  CHECK(y[2] == 7.0);
  CHECK(s.dot(a, b, 0) == 0.0);
}

TEST_CASE("every available ISA is bit-identical to the scalar reference") {
  std::mt19937_64 rng(12345);
  const auto& ref = scalar_table();
  for (Isa isa : {Isa::kAvx2, Isa::kNeon}) {
    const KernelTable* t = table_for(isa);
    if (t == nullptr) continue;
    CAPTURE(isa_name(isa));
    for (std::size_t n = 0; n < 70; ++n) {
      const auto a = random_vector(n, rng);
      const auto b = random_vector(n, rng);
      CHECK(same_bits(t->dot(a.data(), b.data(), n), ref.dot(a.data(), b.data(), n)));
      CHECK(same_bits(t->sum(a.data(), n), ref.sum(a.data(), n)));
      CHECK(same_bits(t->l1_distance(a.data(), b.data(), n), ref.l1_distance(a.data(), b.data(), n)));
      auto y1 = b;
      auto y2 = b;
      t->axpy(0.37, a.data(), y1.data(), n);
      ref.axpy(0.37, a.data(), y2.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(same_bits(y1[i], y2[i]));
    }
  }
}

TEST_CASE("active table is one of the known ISAs") {
  const auto& t = active();
  CHECK((t.isa == Isa::kScalar || t.isa == Isa::kAvx2 || t.isa == Isa::kNeon));
  CHECK(table_for(Isa::kScalar) == &scalar_table());
}
