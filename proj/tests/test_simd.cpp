#include <doctest.h>

#include <random>
#include <vector>

#include "ducci/simd.hpp"

using namespace ducci;

namespace {

const std::vector<Residue> kModuli = {2, 3, 4, 7, 64, 1000, 65535, 65536, 1u << 20, (1u << 31) - 1,
                                      1u << 31};

std::vector<Residue> random_residues(std::mt19937_64& rng, std::size_t count, Residue m) {
  std::vector<Residue> v(count);
  for (auto& x : v) x = static_cast<Residue>(rng() % m);
  // Push the boundaries: maximal residues make the wraparound path fire.
  if (count > 0) v[0] = m - 1;
  if (count > 2) v[count / 2] = m - 1;
  return v;
}

}  // namespace

TEST_SUITE("simd") {

TEST_CASE("scalar table is always available") {
  const auto isas = simd::available();
  REQUIRE_FALSE(isas.empty());
  CHECK(isas.front() == simd::Isa::scalar);
  CHECK(simd::table_for(simd::Isa::scalar) != nullptr);
  CHECK(simd::name(simd::active().isa) != "");
  MESSAGE("active kernel: " << simd::name(simd::active().isa));
}

TEST_CASE("cyclic adds agree with scalar on every ISA") {
  const simd::KernelTable& ref = *simd::table_for(simd::Isa::scalar);
  std::mt19937_64 rng(7);
  for (simd::Isa isa : simd::available()) {
    CAPTURE(simd::name(isa));
    const simd::KernelTable& k = *simd::table_for(isa);
    for (Residue m : kModuli) {
      for (std::size_t n : {1, 2, 3, 7, 8, 9, 15, 16, 17, 31, 33, 100, 257}) {
        const auto in = random_residues(rng, n, m);
        std::vector<Residue> a(n), b(n);
        ref.cyclic_add_next(in.data(), a.data(), n, m);
        k.cyclic_add_next(in.data(), b.data(), n, m);
        REQUIRE(a == b);
        ref.cyclic_add_prev(in.data(), a.data(), n, m);
        k.cyclic_add_prev(in.data(), b.data(), n, m);
        REQUIRE(a == b);
      }
    }
  }
}

TEST_CASE("scalar cyclic add is the definition") {
  const simd::KernelTable& ref = *simd::table_for(simd::Isa::scalar);
  const std::vector<Residue> in = {3, 0, 3};
  std::vector<Residue> out(3);
  ref.cyclic_add_next(in.data(), out.data(), 3, 4);
  CHECK(out == std::vector<Residue>{3, 3, 2});
  ref.cyclic_add_prev(in.data(), out.data(), 3, 4);
  CHECK(out == std::vector<Residue>{2, 3, 3});
}

TEST_CASE("batched planes agree with scalar on every ISA") {
  const simd::KernelTable& ref = *simd::table_for(simd::Isa::scalar);
  std::mt19937_64 rng(8);
  for (simd::Isa isa : simd::available()) {
    CAPTURE(simd::name(isa));
    const simd::KernelTable& k = *simd::table_for(isa);
    for (auto [m, n] : {std::pair<Residue, std::size_t>{2, 1}, {2, 32}, {4, 3}, {7, 11}, {255, 4},
                        {65536, 2}, {1000, 3}}) {
      for (std::size_t lanes : {1, 5, 8, 13, 64, 256}) {
        const auto in = random_residues(rng, n * lanes, m);
        std::vector<Residue> a(n * lanes), b(n * lanes);
        ref.step_planes(in.data(), a.data(), n, lanes, m);
        k.step_planes(in.data(), b.data(), n, lanes, m);
        REQUIRE(a == b);
        std::vector<std::uint32_t> ia(lanes), ib(lanes);
        ref.encode_planes(in.data(), ia.data(), n, lanes, m);
        k.encode_planes(in.data(), ib.data(), n, lanes, m);
        REQUIRE(ia == ib);
      }
    }
  }
}

TEST_CASE("scalar encode is mixed radix with x_1 most significant") {
  const simd::KernelTable& ref = *simd::table_for(simd::Isa::scalar);
  // Two lanes of (x1, x2, x3) in Z_4: (3,0,3) and (0,0,1).
  const std::vector<Residue> planes = {3, 0, 0, 0, 3, 1};
  std::vector<std::uint32_t> idx(2);
  ref.encode_planes(planes.data(), idx.data(), 3, 2, 4);
  CHECK(idx[0] == 3 * 16 + 0 * 4 + 3);
  CHECK(idx[1] == 1);
}

}  // TEST_SUITE
