#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "unram/zmatrix.hpp"

using namespace unram;

namespace {

// Independent oracle: torsion coefficients via naive elementary row/column
// operations, always clearing with the leading entry (no pivot strategy).
std::vector<Int> naive_torsion(IntMat a) {
  std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::size_t t = 0;
  while (t < std::min(rows, cols)) {
    std::size_t pi = rows, pj = cols;
    for (std::size_t i = t; i < rows && pi == rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (a[i][j] != 0) {
          pi = i;
          pj = j;
          break;
        }
    if (pi == rows) break;
    std::swap(a[t], a[pi]);
    for (std::size_t i = 0; i < rows; ++i) std::swap(a[i][t], a[i][pj]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < rows; ++i)
        while (a[i][t] != 0) {
          Int q = a[i][t] / a[t][t];
          for (std::size_t j = 0; j < cols; ++j) a[i][j] -= q * a[t][j];
          if (a[i][t] != 0) std::swap(a[t], a[i]);
        }
      for (std::size_t j = t + 1; j < cols; ++j)
        while (a[t][j] != 0) {
          Int q = a[t][j] / a[t][t];
          for (std::size_t i = 0; i < rows; ++i) a[i][j] -= q * a[i][t];
          if (a[t][j] != 0)
            for (std::size_t i = 0; i < rows; ++i) std::swap(a[i][t], a[i][j]);
          clean = false;
        }
    }
    ++t;
  }
  // collect diagonal, fix divisibility by prime factor redistribution
  std::vector<Int> d;
  for (std::size_t i = 0; i < t; ++i) d.push_back(abs(a[i][i]));
  for (bool moved = true; moved;) {
    moved = false;
    for (std::size_t i = 0; i + 1 < d.size(); ++i)
      for (std::size_t j = i + 1; j < d.size(); ++j)
        if (d[j] % d[i] != 0) {
          Int g = gcd(d[i], d[j]);
          Int l = d[i] / g * d[j];
          d[i] = g;
          d[j] = l;
          moved = true;
        }
  }
  std::sort(d.begin(), d.end());
  std::vector<Int> out;
  for (auto& x : d)
    if (x > 1) out.push_back(x);
  return out;
}

IntMat random_mat(std::mt19937& rng, std::size_t r, std::size_t c) {
  std::uniform_int_distribution<int> entry(-9, 9);
  IntMat m(r, IntVec(c));
  for (auto& row : m)
    for (auto& x : row) x = entry(rng);
  return m;
}

}  // namespace

TEST_CASE("smith normal form on pinned examples") {
  SECTION("diag(2,3) -> diag(1,6)") {
    auto s = smith_normal_form({{2, 0}, {0, 3}});
    REQUIRE(s.rank == 2);
    CHECK(s.normal[0][0] == 1);
    CHECK(s.normal[1][1] == 6);
  }
  SECTION("zero matrix") {
    auto s = smith_normal_form({{0, 0}, {0, 0}});
    CHECK(s.rank == 0);
    CHECK(s.normal == IntMat{{0, 0}, {0, 0}});
  }
  SECTION("[[2,4],[6,8]] -> diag(2,4)") {
    auto s = smith_normal_form({{2, 4}, {6, 8}});
    REQUIRE(s.rank == 2);
    CHECK(s.normal[0][0] == 2);
    CHECK(s.normal[1][1] == 4);
    CHECK(s.torsion_coefficients() == std::vector<Int>{2, 4});
  }
}

TEST_CASE("randomized smith oracle: transforms, divisibility, torsion") {
  std::mt19937 rng(20240811);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  for (int iter = 0; iter < 1000; ++iter) {
    std::size_t r = dim(rng), c = dim(rng);
    IntMat a = random_mat(rng, r, c);
    auto s = smith_normal_form(a);

    IntMat lhs = mat_mul(mat_mul(s.rowtrans, a), s.coltrans);
    REQUIRE(lhs == s.normal);
    for (std::size_t i = 0; i + 1 < s.rank; ++i) {
      REQUIRE(s.normal[i][i] > 0);
      REQUIRE(s.normal[i + 1][i + 1] % s.normal[i][i] == 0);
    }
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (i != j) REQUIRE(s.normal[i][j] == 0);
    REQUIRE(s.torsion_coefficients() == naive_torsion(a));

    // |det| of the transforms is 1
    auto check_unimodular = [](const IntMat& u) {
      auto h = hermite_normal_form(u);
      for (std::size_t i = 0; i < u.size(); ++i) REQUIRE(h.normal[i][i] == 1);
    };
    check_unimodular(s.rowtrans);
    check_unimodular(s.coltrans);
  }
}

TEST_CASE("lattice basis") {
  SECTION("empty input") { CHECK(lattice_basis({}).empty()); }
  SECTION("{(2,0),(0,2),(1,1)} -> {(1,1),(0,2)}") {
    IntMat b = lattice_basis({{2, 0}, {0, 2}, {1, 1}});
    REQUIRE(b.size() == 2);
    CHECK(b[0] == IntVec{1, 1});
    CHECK(b[1] == IntVec{0, 2});
    // derived oracle: enumerate the box [-4,4]^2 and compare memberships
    auto in_lat = [](const IntVec& v, const IntMat& gens) {
      for (int x = -8; x <= 8; ++x)
        for (int y = -8; y <= 8; ++y) {
          IntVec w{x * gens[0][0] + y * gens[1][0] + (gens.size() > 2 ? 0 : 0),
                   x * gens[0][1] + y * gens[1][1]};
          if (gens.size() == 3)
            for (int z = -8; z <= 8; ++z) {
              IntVec u{w[0] + z * gens[2][0], w[1] + z * gens[2][1]};
              if (u == v) return true;
            }
          else if (w == v)
            return true;
        }
      return false;
    };
    IntMat gens{{2, 0}, {0, 2}, {1, 1}};
    for (int x = -4; x <= 4; ++x)
      for (int y = -4; y <= 4; ++y) {
        IntVec v{x, y};
        CHECK(in_lat(v, gens) == in_lat(v, IntMat{b[0], b[1], {0, 0}}));
      }
  }
  SECTION("idempotent and order-insensitive") {
    std::mt19937 rng(7);
    for (int iter = 0; iter < 200; ++iter) {
      IntMat a = random_mat(rng, 5, 4);
      IntMat b1 = lattice_basis(a);
      std::shuffle(a.begin(), a.end(), rng);
      IntMat b2 = lattice_basis(a);
      REQUIRE(b1 == b2);
      REQUIRE(lattice_basis(b1) == b1);
    }
  }
}

TEST_CASE("solve_left") {
  SECTION("v = 0") {
    auto x = solve_left({0, 0}, {{1, 2}, {3, 4}});
    REQUIRE(x);
    CHECK(is_zero_vec(*x));
  }
  SECTION("diag(2,2), v=(4,6)") {
    auto x = solve_left({4, 6}, {{2, 0}, {0, 2}});
    REQUIRE(x);
    CHECK(*x == IntVec{2, 3});
  }
  SECTION("parity obstruction") { CHECK(!solve_left({1}, {{2}})); }
  SECTION("solve_left(x*A, A) round trip") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> entry(-9, 9);
    for (int iter = 0; iter < 300; ++iter) {
      IntMat a = random_mat(rng, 4, 5);
      IntVec x(4);
      for (auto& v : x) v = entry(rng);
      IntVec v = vec_mat(x, a);
      auto sol = solve_left(v, a);
      REQUIRE(sol);
      REQUIRE(vec_mat(*sol, a) == v);
    }
  }
  SECTION("row-subset solve") {
    IntMat a{{1, 0}, {0, 1}, {1, 1}};
    std::vector<std::size_t> subset{2};
    auto x = solve_left({2, 2}, a, &subset);
    REQUIRE(x);
    CHECK(*x == IntVec{0, 0, 2});
    CHECK(!solve_left({1, 2}, a, &subset));
  }
}

TEST_CASE("block_sum") {
  CHECK(block_sum({1, 2, 3, 4}, 2) == IntVec{3, 7});
  CHECK(block_sum({5, -5, 0, 0, 2, 2}, 3) == IntVec{0, 4});
  IntVec l{4, -1, 7};
  CHECK(block_sum(l, 1) == l);
  CHECK_THROWS_AS(block_sum({1, 2, 3}, 2), std::invalid_argument);
}

TEST_CASE("lattice accumulator matches batch HNF") {
  std::mt19937 rng(5150);
  for (int iter = 0; iter < 200; ++iter) {
    std::uniform_int_distribution<std::size_t> dim(1, 6);
    std::size_t n = dim(rng), k = dim(rng) + 2;
    IntMat rows = random_mat(rng, k, n);
    LatticeAccumulator acc(n);
    for (auto& r : rows) acc.add(r);
    REQUIRE(acc.basis() == lattice_basis(rows));
    for (auto& r : rows) REQUIRE(acc.contains(r));
  }
}

TEST_CASE("left kernel") {
  std::mt19937 rng(31337);
  for (int iter = 0; iter < 200; ++iter) {
    IntMat a = random_mat(rng, 5, 3);
    IntMat k = left_kernel(a);
    for (auto& row : k) REQUIRE(is_zero_vec(vec_mat(row, a)));
    // completeness: any kernel vector found by brute force lies in the lattice
    LatticeAccumulator acc(5);
    for (auto& row : k) acc.add(row);
    std::uniform_int_distribution<int> entry(-3, 3);
    for (int probe = 0; probe < 30; ++probe) {
      IntVec x(5);
      for (auto& v : x) v = entry(rng);
      if (is_zero_vec(vec_mat(x, a))) REQUIRE(acc.contains(x));
    }
  }
}
