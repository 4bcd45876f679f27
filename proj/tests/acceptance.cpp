// One line per acceptance criterion; exit status is nonzero if any fails.

#include "dioph/lift.hpp"
#include "dioph/solve.hpp"
#include "dioph/verify.hpp"
#include "test_support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace testing;
using dioph::LatticeBasis;
using dioph::QuotientStructure;

namespace {

constexpr std::uint64_t kSeed = 20260415;

struct Tally {
  int checks = 0;
  int failures = 0;
  std::string first;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures++ == 0)
      first = what;
  }
};

std::vector<Integer> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

QuotientStructure<Integer> qs(std::initializer_list<long> v) { return {ints(v)}; }

std::string show(const IMatrix& a) {
  std::ostringstream os;
  os << '[';
  for (Index i = 0; i < a.rows(); ++i) {
    os << (i ? "; " : "");
    for (Index j = 0; j < a.cols(); ++j)
      os << (j ? " " : "") << a(i, j);
  }
  os << ']';
  return os.str();
}

std::vector<Integer> diagonal(const IMatrix& d) {
  std::vector<Integer> out;
  for (Index i = 0; i < std::min(d.rows(), d.cols()); ++i)
    out.push_back(d(i, i));
  return out;
}

struct Bases {
  std::vector<std::pair<std::string, LatticeBasis<Integer>>> all;
};

// Every basis method available for A, labelled.
Bases all_methods(const IMatrix& a, std::uint64_t seed) {
  const auto rs = dioph::reduce_matrix(a);
  const auto mb = dioph::m_basis(rs);
  const auto q = dioph::quotient_S_over_M(rs);
  dioph::LiftOptions opts;
  opts.seed = seed;
  Bases b;
  b.all.emplace_back("direct", dioph::nullspace_basis_direct(a).basis);
  b.all.emplace_back("snf", dioph::nullspace_basis_snf(a));
  b.all.emplace_back("lift-inv",
                     dioph::lift_by_invariant_factors(mb, q, dioph::RelationWay::unimodular, opts).basis);
  b.all.emplace_back("lift-inv-euclid",
                     dioph::lift_by_invariant_factors(mb, q, dioph::RelationWay::euclidean, opts).basis);
  b.all.emplace_back("lift-elem",
                     dioph::lift_by_elementary_divisors(mb, dioph::elementary_divisors(q), opts).basis);
  b.all.emplace_back("lift-prime", dioph::lift_prime_at_a_time(mb, dioph::index(q), opts).basis);
  if (dioph::is_prime(rs.d))
    b.all.emplace_back("prime-d", dioph::prime_case_basis(rs));
  return b;
}

void expect_all_methods(Tally& t, const IMatrix& a, const LatticeBasis<Integer>& target,
                        const std::string& label) {
  for (const auto& [name, basis] : all_methods(a, 0).all) {
    t.expect(dioph::is_solution(a, basis.columns), label + ": " + name + " basis does not solve A x = 0");
    t.expect(dioph::same_lattice(basis, target), label + ": " + name + " basis spans a different lattice");
  }
}

// Random A with entries in [-20, 20], 2 <= m, n <= 6 and 0 < rank < n.
IMatrix random_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<Index> dim(2, 6);
  for (;;) {
    const IMatrix a = random_matrix(rng, dim(rng), dim(rng), -20, 20);
    const Index r = dioph::rank(a);
    if (r > 0 && r < a.cols())
      return a;
  }
}

std::string example1_check(Tally& t) {
  const IMatrix a = example1();
  const auto rs = dioph::reduce_matrix(a);
  t.expect(rs.d == 19, "d != 19");
  const auto snf = dioph::smith_normal_form(rs.K);
  t.expect(diagonal(snf.D) == ints({1, 817}), "SNF(K) != diag(1, 817)");
  t.expect(dioph::det(rs.K) == 817 || dioph::det(rs.K) == -817, "det K != +-817");
  t.expect(dioph::quotient_S_over_M(rs) == qs({19}), "S/M != (19)");
  t.expect(dioph::quotient_U_over_S(rs) == qs({19}), "U/S != (19)");
  const LatticeBasis<Integer> s{column_matrix({{1, -26, 0, 19}, {-1, -17, 1, 12}}), Integer(1)};
  expect_all_methods(t, a, s, "example 1");
  return "d=19, SNF(K)=diag(1,817), S/M=(19), U/S=(19), 7 methods";
}

std::string example2_check(Tally& t) {
  const IMatrix a = example2();
  const auto rs = dioph::reduce_matrix(a);
  t.expect(rs.d == 4, "d != 4");
  t.expect(diagonal(dioph::smith_normal_form(rs.K).D) == ints({1, 4, 0}), "SNF(K) != diag(1, 4, 0)");
  const auto sm = dioph::quotient_S_over_M(rs);
  const auto us = dioph::quotient_U_over_S(rs);
  t.expect(sm == qs({4, 4}), "S/M != (4, 4)");
  t.expect(us == qs({4}), "U/S != (4)");
  const auto s = dioph::nullspace_basis_snf(a);
  t.expect(dioph::quotient_invariants_oracle(s, dioph::u_basis(rs)) == us, "U/S disagrees with the oracle");
  const LatticeBasis<Integer> z{
      column_matrix({{1, 0, 0, 1, -1, 0}, {1, 0, 0, 0, 1, -1}, {-4, -9, 1, 0, 0, 4}}), Integer(1)};
  const auto lifted = dioph::lift_by_invariant_factors(dioph::m_basis(rs), sm, dioph::RelationWay::unimodular);
  t.expect(dioph::same_lattice(lifted.basis, z), "lift-inv basis differs from {z1, z2, u3}");
  t.expect(dioph::same_lattice(z, s), "{z1, z2, u3} differs from the oracle");
  return "d=4, SNF(K)=diag(1,4,0), S/M=(4,4), U/S=(4), lift-inv = {z1,z2,u3}";
}

std::string example3_check(Tally& t) {
  const IMatrix a = example3();
  const auto rs = dioph::reduce_matrix(a);
  t.expect(rs.d == 12, "d != 12");
  t.expect(diagonal(dioph::smith_normal_form(rs.K).D) == ints({1, 4, 12}), "SNF(K) != diag(1, 4, 12)");
  const auto sm = dioph::quotient_S_over_M(rs);
  t.expect(sm == qs({4, 12}), "S/M != (4, 12)");
  const auto mb = dioph::m_basis(rs);
  const auto s = dioph::nullspace_basis_snf(a);
  const LatticeBasis<Integer> wvu{
      column_matrix({{-4, 1, -6, -1, 5, 4}, {0, 0, -1, -1, -1, 1}, {-5, 1, -3, 0, 12, 0}}), Integer(1)};
  for (auto way : {dioph::RelationWay::unimodular, dioph::RelationWay::euclidean}) {
    const auto lifted = dioph::lift_by_invariant_factors(mb, sm, way);
    t.expect(lifted.steps.size() == 2, "expected two lift steps");
    if (lifted.steps.size() == 2) {
      const auto& p = lifted.steps[0].outgoing;
      t.expect(lifted.steps[0].modulus == 12, "first step is not g = 12");
      t.expect(dioph::quotient_invariants_oracle(p, s) == qs({4}), "S/P != Z/4");
      t.expect(dioph::quotient_invariants_oracle(mb, p) == qs({12}), "P/M != Z/12");
    }
    t.expect(dioph::same_lattice(lifted.basis, wvu), "lifted basis differs from {w, v, u2}");
  }
  // The intermediate module of the worked example, P = <v, u2, u3>.
  const LatticeBasis<Integer> p{
      column_matrix({{0, 0, -1, -1, -1, 1}, {-5, 1, -3, 0, 12, 0}, {-6, 2, -14, 0, 0, 12}}), Integer(1)};
  t.expect(dioph::quotient_invariants_oracle(p, s) == qs({4}), "S/<v,u2,u3> != Z/4");
  return "d=12, SNF(K)=diag(1,4,12), S/M=(4,12), S/P=Z/4, basis = {w,v,u2}";
}

struct PropertyStats {
  int instances = 0;
  int prime_d = 0;
  int lifted = 0;
  int brute = 0;
  int brute_skipped = 0;
};

std::string property_check(Tally& t, std::vector<IMatrix>& instances, PropertyStats& stats) {
  std::mt19937_64 rng(kSeed);
  for (int k = 0; k < 500; ++k) {
    const IMatrix a = random_instance(rng);
    instances.push_back(a);
    const std::string label = "instance " + std::to_string(k) + " " + show(a);
    try {
      const auto rs = dioph::reduce_matrix(a);
      const auto reference = dioph::nullspace_basis_snf(a);
      const auto bases = all_methods(a, static_cast<std::uint64_t>(k));
      if (dioph::is_prime(rs.d))
        ++stats.prime_d;
      for (const auto& [name, basis] : bases.all) {
        t.expect(dioph::is_solution(a, basis.columns), label + ": " + name + " A B != 0");
        t.expect(dioph::same_lattice(basis, reference), label + ": " + name + " lattice differs");
      }
      const auto sm = dioph::quotient_S_over_M(rs);
      const auto us = dioph::quotient_U_over_S(rs);
      if (!sm.trivial())
        ++stats.lifted;
      t.expect(dioph::quotient_invariants_oracle(dioph::m_basis(rs), reference) == sm,
               label + ": S/M oracle mismatch");
      t.expect(dioph::quotient_invariants_oracle(reference, dioph::u_basis(rs)) == us,
               label + ": U/S oracle mismatch");
      t.expect(dioph::complementary_structure(sm, rs.d, rs.nullity) == us, label + ": duality S/M -> U/S");
      t.expect(dioph::complementary_structure(us, rs.d, rs.nullity) == sm, label + ": duality U/S -> S/M");
      Integer df(1);
      for (Index i = 0; i < rs.nullity; ++i)
        df *= rs.d;
      t.expect(dioph::index(sm) * dioph::index(us) == df, label + ": index product != d^f");
    } catch (const std::exception& e) {
      t.expect(false, label + ": " + e.what());
    }
    ++stats.instances;
  }
  return std::to_string(stats.instances) + " instances, " + std::to_string(stats.lifted) +
         " with S != M, " + std::to_string(stats.prime_d) + " with prime d";
}

std::string brute_force_check(Tally& t, const std::vector<IMatrix>& instances, PropertyStats& stats) {
  for (std::size_t k = 0; k < instances.size(); ++k) {
    const auto rs = dioph::reduce_matrix(instances[k]);
    Integer df(1);
    for (Index i = 0; i < rs.nullity; ++i)
      df *= rs.d;
    if (df > 1'000'000) {
      ++stats.brute_skipped;
      continue;
    }
    ++stats.brute;
    const auto census = dioph::brute_force_kernel_structure(rs.K, rs.d, 1'000'000);
    const auto predicted = dioph::quotient_S_over_M(rs);
    const std::string label = "instance " + std::to_string(k);
    t.expect(census.structure == predicted, label + ": census structure differs");
    t.expect(census.cardinality == dioph::index(predicted), label + ": census cardinality differs");
  }
  return std::to_string(stats.brute) + " instances enumerated, " + std::to_string(stats.brute_skipped) +
         " above d^f = 10^6";
}

std::string prime_law_check(Tally& t) {
  std::mt19937_64 rng(kSeed + 6);
  int found = 0, drawn = 0;
  while (found < 100) {
    const IMatrix a = random_instance(rng);
    ++drawn;
    const auto rs = dioph::reduce_matrix(a);
    if (!dioph::is_prime(rs.d))
      continue;
    ++found;
    const Index s = dioph::rref_mod_p(rs.K, rs.d).rank();
    const auto us = dioph::quotient_U_over_S(rs);
    const auto sm = dioph::quotient_S_over_M(rs);
    const auto d_sized = std::count(sm.invariant_factors.begin(), sm.invariant_factors.end(), rs.d);
    const std::string label = show(a);
    t.expect(static_cast<Index>(us.invariant_factors.size()) == s, label + ": rank K mod p != #U/S factors");
    t.expect(rs.nullity - s == d_sized, label + ": f - rank K mod p != #d-sized S/M factors");
  }
  return "100 prime-d instances from " + std::to_string(drawn) + " draws";
}

std::string smith_check(Tally& t) {
  std::mt19937_64 rng(kSeed + 7);
  std::uniform_int_distribution<Index> dim(1, 6);
  for (int k = 0; k < 1000; ++k) {
    const Index m = dim(rng), n = dim(rng);
    IMatrix a = random_matrix(rng, m, n, -20, 20);
    if (k % 4 == 0 && m > 1)
      a.row(m - 1) = a.row(0) * Integer(3) - a.row(m - 2);
    const std::string label = show(a);
    const auto snf = dioph::smith_normal_form(a);
    t.expect(snf.P * a * snf.Q == snf.D, label + ": D != P A Q");
    t.expect(dioph::is_unimodular(snf.P), label + ": P not unimodular");
    t.expect(dioph::is_unimodular(snf.Q), label + ": Q not unimodular");
    bool diagonal_ok = true;
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < n; ++j)
        if (i != j && snf.D(i, j) != 0)
          diagonal_ok = false;
    t.expect(diagonal_ok, label + ": D not diagonal");
    const Index r = std::min(m, n);
    bool chain = true;
    for (Index i = 0; i + 1 < r; ++i)
      if (!dioph::divides(snf.D(i, i), snf.D(i + 1, i + 1)))
        chain = false;
    for (Index i = 0; i < r; ++i)
      if (snf.D(i, i) < 0)
        chain = false;
    t.expect(chain, label + ": divisibility chain broken");
  }
  return "1000 matrices up to 6x6";
}

bool report(int n, const char* title, double limit_seconds, const std::function<std::string(Tally&)>& body) {
  Tally t;
  std::string detail;
  const auto start = std::chrono::steady_clock::now();
  try {
    detail = body(t);
  } catch (const std::exception& e) {
    t.expect(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = limit_seconds <= 0 || secs < limit_seconds;
  const bool pass = t.failures == 0 && in_time;
  std::printf("%s criterion %d: %s | %s | %d checks, %d failures | %.3f s", pass ? "PASS" : "FAIL", n, title,
              detail.c_str(), t.checks, t.failures, secs);
  if (limit_seconds > 0)
    std::printf(" (limit %.0f s)", limit_seconds);
  std::printf("\n");
  if (t.failures)
    std::printf("     first failure: %s\n", t.first.c_str());
  if (!in_time)
    std::printf("     over the time limit\n");
  std::fflush(stdout);
  return pass;
}

} // namespace

int main() {
  std::vector<IMatrix> instances;
  PropertyStats stats;
  bool ok = true;
  ok &= report(1, "example 1 reproduction", 1, example1_check);
  ok &= report(2, "example 2 reproduction", 1, example2_check);
  ok &= report(3, "example 3 reproduction", 1, example3_check);
  ok &= report(4, "property suite", 60, [&](Tally& t) { return property_check(t, instances, stats); });
  ok &= report(5, "brute-force agreement", 0, [&](Tally& t) { return brute_force_check(t, instances, stats); });
  ok &= report(6, "prime-case dimension law", 0, prime_law_check);
  ok &= report(7, "Smith form self-certification", 30, smith_check);
  std::printf("%s\n", ok ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return ok ? 0 : 1;
}
