#pragma once

#include "dioph/io.hpp"
#include "dioph/lattice.hpp"
#include "dioph/verify.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace dioph::cli {

enum class Command { reduce, structure, solve };
enum class Method { direct, snf, lift_inv, lift_elem, lift_prime, prime_d };

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitVerification = 2;

std::optional<Method> parse_method(std::string_view name);
std::string_view method_name(Method m);

struct Options {
  Command command = Command::solve;
  Method method = Method::direct;
  bool verify = false;
  bool json = false;
  std::uint64_t seed = 0;
  std::uint64_t brute_bound = kDefaultBruteForceBound;
};

/// DIOPH_BRUTE_BOUND when set to a positive integer, the default otherwise.
std::uint64_t brute_bound_from_env();

struct Verification {
  bool solves = false;
  bool full_rank = false;
  bool matches_oracle = false;
  bool s_over_m = false;
  bool u_over_s = false;
  bool ok() const { return solves && full_rank && matches_oracle && s_over_m && u_over_s; }
};

/// Checks a claimed basis of the nullspace of A against the Smith-form oracle.
Verification verify_basis(const Matrix<Integer>& a, const LatticeBasis<Integer>& basis);

/// The report as JSON; `code` receives the exit status.
nlohmann::json build_report(const Options& opts, const Matrix<Integer>& a, int& code);

int run(const Options& opts, const Matrix<Integer>& a, std::ostream& out, std::ostream& err);
int run_file(const Options& opts, const std::string& path, std::ostream& out, std::ostream& err);

} // namespace dioph::cli
