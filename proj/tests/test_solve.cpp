#include "dioph/solve.hpp"
#include "dioph/verify.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace testing;
using dioph::LatticeBasis;

namespace {

bool kernel_is_valid(const IMatrix& k, const Integer& d, const IMatrix& coeffs) {
  const IMatrix image = k * coeffs;
  for (Index i = 0; i < image.rows(); ++i)
    for (Index j = 0; j < image.cols(); ++j)
      if (!dioph::divides(d, Integer(image(i, j))))
        return false;
  return true;
}

} // namespace

TEST_CASE("congruence kernel of the first example") {
  const auto rs = dioph::reduce_matrix(example1());
  const auto ker = dioph::solve_congruence_kernel(rs.K, rs.d);
  CHECK(ker.modulus == 19);
  CHECK(kernel_is_valid(rs.K, rs.d, ker.coefficient_basis));
  CHECK(abs(dioph::det(ker.coefficient_basis)) == 19);
  // alpha_2 ≡ 12 alpha_1 (mod 19)
  CHECK(kernel_is_valid(rs.K, rs.d, mat({{1}, {12}})));
  CHECK_FALSE(kernel_is_valid(rs.K, rs.d, mat({{1}, {0}})));
}

TEST_CASE("congruence kernel index matches the number of residue classes") {
  const auto rs = dioph::reduce_matrix(example2());
  const auto ker = dioph::solve_congruence_kernel(rs.K, rs.d);
  CHECK(kernel_is_valid(rs.K, rs.d, ker.coefficient_basis));
  // 4^3 / 16 classes of solutions modulo 4
  CHECK(abs(dioph::det(ker.coefficient_basis)) == 4);
  CHECK(dioph::brute_force_kernel_structure(rs.K, rs.d).cardinality == 16);
}

TEST_CASE("nullspace bases of the worked examples") {
  const LatticeBasis<Integer> s1{column_matrix({{1, -26, 0, 19}, {-1, -17, 1, 12}}), Integer(1)};
  CHECK(dioph::same_lattice(dioph::nullspace_basis_direct(example1()).basis, s1));
  CHECK(dioph::same_lattice(dioph::nullspace_basis_snf(example1()), s1));

  const auto m2 = column_matrix({{4, -9, 1, 4, 0, 0}, {0, -9, 1, 0, 4, 0}, {-4, -9, 1, 0, 0, 4}});
  IMatrix s2 = m2;
  s2.col(0) = dioph::divide_exactly(IMatrix(m2.col(0) - m2.col(1)), Integer(4));
  s2.col(1) = dioph::divide_exactly(IMatrix(m2.col(1) - m2.col(2)), Integer(4));
  CHECK(dioph::is_solution(example2(), s2));
  const auto direct2 = dioph::nullspace_basis_direct(example2()).basis;
  CHECK(dioph::same_lattice(direct2, dioph::nullspace_basis_snf(example2())));
  CHECK(dioph::same_lattice(direct2, LatticeBasis<Integer>{s2, Integer(1)}));

  const IMatrix w = column_matrix({{-4, 1, -6, -1, 5, 4}});
  const IMatrix v = column_matrix({{0, 0, -1, -1, -1, 1}});
  IMatrix s3(6, 3);
  s3 << w, v, column_matrix({{-5, 1, -3, 0, 12, 0}});
  CHECK(dioph::is_solution(example3(), s3));
  CHECK(dioph::same_lattice(dioph::nullspace_basis_direct(example3()).basis,
                            LatticeBasis<Integer>{s3, Integer(1)}));
  CHECK(dioph::same_lattice(dioph::nullspace_basis_snf(example3()),
                            LatticeBasis<Integer>{s3, Integer(1)}));
}

TEST_CASE("prime-d construction") {
  const auto rs = dioph::reduce_matrix(example1());
  const IMatrix g = dioph::prime_case_coefficients(rs);
  CHECK(g == mat({{19, -11}, {0, 1}}));
  CHECK(dioph::det(g) == 19);
  const auto basis = dioph::prime_case_basis(rs);
  CHECK(dioph::is_solution(example1(), basis.columns));
  CHECK(dioph::same_lattice(basis, dioph::nullspace_basis_snf(example1())));

  CHECK_THROWS_AS(dioph::prime_case_basis(dioph::reduce_matrix(example2())), dioph::NotPrime);
}

TEST_CASE("prime-d coefficients have determinant p^s") {
  std::mt19937_64 rng(7);
  int checked = 0;
  while (checked < 60) {
    IMatrix a = random_matrix(rng, 2 + Index(rng() % 3), 3 + Index(rng() % 3), -9, 9);
    const Index r = dioph::rank(a);
    if (r == 0 || r == a.cols())
      continue;
    const auto rs = dioph::reduce_matrix(a);
    if (!dioph::is_prime(rs.d))
      continue;
    ++checked;
    const auto h = dioph::rref_mod_p(rs.K, rs.d);
    Integer ps(1);
    for (Index i = 0; i < h.rank(); ++i)
      ps *= rs.d;
    REQUIRE(abs(dioph::det(dioph::prime_case_coefficients(rs))) == ps);
    REQUIRE(dioph::same_lattice(dioph::prime_case_basis(rs), dioph::nullspace_basis_snf(a)));
  }
}

TEST_CASE("direct and Smith methods agree on random systems") {
  std::mt19937_64 rng(11);
  int checked = 0;
  while (checked < 150) {
    IMatrix a = random_matrix(rng, 2 + Index(rng() % 5), 2 + Index(rng() % 5));
    const Index r = dioph::rank(a);
    if (r == 0 || r == a.cols())
      continue;
    ++checked;
    const auto direct = dioph::nullspace_basis_direct(a);
    const auto snf = dioph::nullspace_basis_snf(a);
    REQUIRE(direct.basis.rank() == a.cols() - r);
    REQUIRE(dioph::is_solution(a, direct.basis.columns));
    REQUIRE(dioph::is_solution(a, snf.columns));
    REQUIRE(dioph::same_lattice(direct.basis, snf));
    REQUIRE(dioph::saturation_quotient(snf).trivial());
  }
}

TEST_CASE("full-rank and zero inputs are out of scope") {
  CHECK_THROWS_AS(dioph::nullspace_basis_direct(mat({{1, 0}, {0, 1}})), dioph::RankOutOfScope);
  CHECK_THROWS_AS(dioph::nullspace_basis_direct(mat({{0, 0}})), dioph::RankOutOfScope);
  CHECK(dioph::nullspace_basis_snf(mat({{1, 0}, {0, 1}})).rank() == 0);
  CHECK(dioph::nullspace_basis_snf(mat({{0, 0}})).rank() == 2);
}
