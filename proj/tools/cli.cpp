#include "cli.hpp"

#include "dioph/lift.hpp"
#include "dioph/solve.hpp"

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace dioph::cli {
namespace {

using nlohmann::json;
using IMatrix = Matrix<Integer>;

constexpr std::pair<Method, std::string_view> kMethods[] = {
    {Method::direct, "direct"},         {Method::snf, "snf"},
    {Method::lift_inv, "lift-inv"},     {Method::lift_elem, "lift-elem"},
    {Method::lift_prime, "lift-prime"}, {Method::prime_d, "prime-d"},
};

json factors_json(const QuotientStructure<Integer>& q) {
  auto out = json::array();
  for (const auto& g : q.invariant_factors)
    out.push_back(to_json(g));
  return out;
}

json divisors_json(const QuotientStructure<Integer>& q) {
  auto out = json::array();
  for (const auto& pp : elementary_divisors(q))
    out.push_back({{"prime", to_json(pp.prime)}, {"exponent", pp.exponent}});
  return out;
}

json sigma_json(const std::vector<Index>& sigma) {
  auto out = json::array();
  for (Index s : sigma)
    out.push_back(s + 1);
  return out;
}

json empty_report(const Options& opts) {
  json r;
  for (const char* key : {"rank", "f", "d", "K", "sigma", "snf_K", "inv_factors_S_over_M",
                          "inv_factors_U_over_S", "elementary_divisors", "basis", "method",
                          "verified"})
    r[key] = nullptr;
  r["command"] = opts.command == Command::reduce      ? "reduce"
                 : opts.command == Command::structure ? "structure"
                                                      : "solve";
  return r;
}

void add_reduction(json& r, const ReducedSystem<Integer>& rs) {
  r["rank"] = rs.rank;
  r["f"] = rs.nullity;
  r["d"] = to_json(rs.d);
  r["K"] = matrix_to_json(rs.K);
  r["sigma"] = sigma_json(rs.sigma);
  r["Z"] = matrix_to_json(rs.Z);
}

void add_structure(json& r, const ReducedSystem<Integer>& rs) {
  const auto snf = smith_normal_form(rs.K);
  const auto sm = quotient_S_over_M(rs);
  const auto us = quotient_U_over_S(rs);
  const auto flags = classify(rs);
  r["snf_K"] = json::array();
  for (Index i = 0; i < std::min(snf.D.rows(), snf.D.cols()); ++i)
    r["snf_K"].push_back(to_json(snf.D(i, i)));
  r["inv_factors_S_over_M"] = factors_json(sm);
  r["inv_factors_U_over_S"] = factors_json(us);
  r["elementary_divisors"] = {{"S_over_M", divisors_json(sm)}, {"U_over_S", divisors_json(us)}};
  r["index_S_over_M"] = to_json(index(sm));
  r["index_U_over_S"] = to_json(index(us));
  r["U_equals_S"] = flags.U_equals_S;
  r["S_equals_M"] = flags.S_equals_M;
}

// Agreement of the closed forms with the oracle and, when small enough, with
// the brute-force census of the congruence kernel.
bool check_structure(json& r, const IMatrix& a, const ReducedSystem<Integer>& rs,
                     std::uint64_t bound) {
  const auto sm = quotient_S_over_M(rs);
  const auto us = quotient_U_over_S(rs);
  const auto s = nullspace_basis_snf(a);
  const bool sm_ok = quotient_invariants_oracle(m_basis(rs), s) == sm;
  const bool us_ok = quotient_invariants_oracle(s, u_basis(rs)) == us;
  const bool dual_ok = complementary_structure(sm, rs.d, rs.nullity) == us;
  bool census_ok = true;
  try {
    const auto census = brute_force_kernel_structure(rs.K, rs.d, bound);
    census_ok = census.structure == sm && census.cardinality == index(sm);
    r["brute_force"] = {{"cardinality", to_json(census.cardinality)},
                        {"inv_factors", factors_json(census.structure)},
                        {"agrees", census_ok}};
  } catch (const BruteForceBoundExceeded&) {
    r["brute_force"] = {{"skipped", "d^f exceeds " + std::to_string(bound)}};
  }
  r["structure_checks"] = {
      {"S_over_M_oracle", sm_ok}, {"U_over_S_oracle", us_ok}, {"duality", dual_ok}};
  return sm_ok && us_ok && dual_ok && census_ok;
}

json steps_json(const LiftResult<Integer>& res) {
  auto out = json::array();
  for (const auto& step : res.steps) {
    json s;
    s["modulus"] = to_json(step.modulus);
    s["coefficients"] = json::array();
    for (const auto& c : step.coefficients)
      s["coefficients"].push_back(to_json(c));
    s["kind"] = step.method == LiftMethod::unimodular_completion ? "unimodular_completion"
                : step.method == LiftMethod::euclidean_reduction ? "euclidean_reduction"
                                                                 : "intro_prime";
    out.push_back(std::move(s));
  }
  return out;
}

LatticeBasis<Integer> solve_with(const IMatrix& a, const ReducedSystem<Integer>& rs, Method m,
                                 std::uint64_t seed, json& r) {
  LiftOptions lo;
  lo.seed = seed;
  switch (m) {
  case Method::direct:
    return nullspace_basis_direct(a).basis;
  case Method::snf:
    return nullspace_basis_snf(a);
  case Method::prime_d:
    return prime_case_basis(rs);
  case Method::lift_inv: {
    auto res = lift_by_invariant_factors(m_basis(rs), quotient_S_over_M(rs), RelationWay::unimodular, lo);
    r["steps"] = steps_json(res);
    return res.basis;
  }
  case Method::lift_elem: {
    auto res = lift_by_elementary_divisors(m_basis(rs), elementary_divisors(quotient_S_over_M(rs)), lo);
    r["steps"] = steps_json(res);
    return res.basis;
  }
  case Method::lift_prime: {
    auto res = lift_prime_at_a_time(m_basis(rs), index(quotient_S_over_M(rs)), lo);
    r["steps"] = steps_json(res);
    return res.basis;
  }
  }
  throw std::logic_error("unknown method");
}

json trivial_report(const Options& opts, const IMatrix& a, const RankOutOfScope& e, int& code) {
  json r = empty_report(opts);
  const Index n = a.cols();
  r["rank"] = e.rank();
  r["f"] = n - e.rank();
  r["trivial"] = true;
  r["message"] = e.nullspace_is_everything() ? "A = 0: the nullspace is all of R^n"
                                             : "rank A = n: the nullspace is zero";
  if (opts.command == Command::solve) {
    const IMatrix basis = e.nullspace_is_everything() ? IMatrix(IMatrix::Identity(n, n))
                                                      : IMatrix(n, 0);
    r["basis"] = columns_to_json(basis);
    r["method"] = "trivial";
    if (opts.verify)
      r["verified"] = is_solution(a, basis);
  }
  code = r["verified"] == false ? kExitVerification : kExitOk;
  return r;
}

std::string cell(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void print_table(std::ostream& out, const json& rows, const std::string& indent) {
  std::size_t width = 1;
  for (const auto& row : rows)
    for (const auto& v : row)
      width = std::max(width, cell(v).size());
  for (const auto& row : rows) {
    out << indent;
    for (std::size_t j = 0; j < row.size(); ++j)
      out << (j ? " " : "") << std::right << std::setw(static_cast<int>(width)) << cell(row[j]);
    out << '\n';
  }
}

std::string list(const json& v) {
  if (v.empty())
    return "(none)";
  std::string s;
  for (const auto& x : v)
    s += (s.empty() ? "" : " ") + cell(x);
  return s;
}

std::string divisor_list(const json& v) {
  if (v.empty())
    return "(none)";
  std::string s;
  for (const auto& pp : v) {
    s += s.empty() ? "" : " ";
    s += cell(pp["prime"]);
    if (pp["exponent"].get<unsigned>() > 1)
      s += "^" + cell(pp["exponent"]);
  }
  return s;
}

void print_human(std::ostream& out, const json& r) {
  auto line = [&](const char* label, const std::string& value) {
    out << std::left << std::setw(14) << label << value << '\n';
  };
  line("rank", cell(r["rank"]));
  line("f", cell(r["f"]));
  if (r.contains("trivial")) {
    out << r["message"].get<std::string>() << '\n';
  } else {
    line("d", cell(r["d"]));
    line("sigma", list(r["sigma"]));
    out << "K\n";
    print_table(out, r["K"], "  ");
    if (r["command"] == "reduce") {
      out << "Z\n";
      print_table(out, r["Z"], "  ");
    }
  }
  if (!r["inv_factors_S_over_M"].is_null()) {
    line("snf(K)", list(r["snf_K"]));
    line("S/M", list(r["inv_factors_S_over_M"]) + "   [" +
                    divisor_list(r["elementary_divisors"]["S_over_M"]) + "]   index " +
                    cell(r["index_S_over_M"]));
    line("U/S", list(r["inv_factors_U_over_S"]) + "   [" +
                    divisor_list(r["elementary_divisors"]["U_over_S"]) + "]   index " +
                    cell(r["index_U_over_S"]));
    line("U = S", r["U_equals_S"].get<bool>() ? "yes" : "no");
    line("S = M", r["S_equals_M"].get<bool>() ? "yes" : "no");
  }
  if (r.contains("brute_force")) {
    const auto& bf = r["brute_force"];
    line("brute force", bf.contains("skipped")
                            ? "skipped (" + bf["skipped"].get<std::string>() + ")"
                            : list(bf["inv_factors"]) + ", " + cell(bf["cardinality"]) +
                                  " classes, " + (bf["agrees"].get<bool>() ? "agrees" : "DISAGREES"));
  }
  if (r.contains("steps")) {
    out << "lift steps\n";
    for (const auto& s : r["steps"])
      out << "  g = " << cell(s["modulus"]) << "  a = (" << list(s["coefficients"]) << ")  "
          << s["kind"].get<std::string>() << '\n';
  }
  if (!r["basis"].is_null()) {
    line("method", cell(r["method"]));
    out << "basis (columns)\n";
    json rows = json::array();
    const auto& cols = r["basis"];
    const std::size_t n = cols.empty() ? 0 : cols[0].size();
    for (std::size_t i = 0; i < n; ++i) {
      json row = json::array();
      for (const auto& c : cols)
        row.push_back(c[i]);
      rows.push_back(std::move(row));
    }
    print_table(out, rows, "  ");
  }
  if (!r["verified"].is_null())
    line("verified", r["verified"].get<bool>() ? "yes" : "NO");
}

} // namespace

std::optional<Method> parse_method(std::string_view name) {
  for (const auto& [m, s] : kMethods)
    if (s == name)
      return m;
  return std::nullopt;
}

std::string_view method_name(Method m) {
  for (const auto& [k, s] : kMethods)
    if (k == m)
      return s;
  return "?";
}

std::uint64_t brute_bound_from_env() {
  const char* v = std::getenv("DIOPH_BRUTE_BOUND");
  if (!v || !*v)
    return kDefaultBruteForceBound;
  char* end = nullptr;
  const unsigned long long n = std::strtoull(v, &end, 10);
  if (*end != '\0' || n == 0)
    throw ParseError("DIOPH_BRUTE_BOUND must be a positive integer");
  return n;
}

Verification verify_basis(const IMatrix& a, const LatticeBasis<Integer>& basis) {
  Verification v;
  const auto rs = reduce_matrix(a);
  v.solves = basis.ambient() == a.cols() && is_solution(a, basis.columns);
  v.full_rank = basis.rank() == rs.nullity && rank(basis.columns) == rs.nullity;
  if (!v.solves || !v.full_rank)
    return v;
  v.matches_oracle = same_lattice(basis, nullspace_basis_snf(a));
  try {
    v.s_over_m = quotient_invariants_oracle(m_basis(rs), basis) == quotient_S_over_M(rs);
    v.u_over_s = quotient_invariants_oracle(basis, u_basis(rs)) == quotient_U_over_S(rs);
  } catch (const NotIncluded&) {
  }
  return v;
}

json build_report(const Options& opts, const IMatrix& a, int& code) {
  code = kExitOk;
  ReducedSystem<Integer> rs;
  try {
    rs = reduce_matrix(a);
  } catch (const RankOutOfScope& e) {
    return trivial_report(opts, a, e, code);
  }
  json r = empty_report(opts);
  add_reduction(r, rs);
  if (opts.command == Command::reduce)
    return r;

  add_structure(r, rs);
  if (opts.command == Command::structure) {
    if (opts.verify) {
      r["verified"] = check_structure(r, a, rs, opts.brute_bound);
    } else {
      try {
        const auto census = brute_force_kernel_structure(rs.K, rs.d, opts.brute_bound);
        r["brute_force"] = {{"cardinality", to_json(census.cardinality)},
                            {"inv_factors", factors_json(census.structure)},
                            {"agrees", census.structure == quotient_S_over_M(rs)}};
      } catch (const BruteForceBoundExceeded&) {
        r["brute_force"] = {{"skipped", "d^f exceeds " + std::to_string(opts.brute_bound)}};
      }
    }
  } else {
    const auto basis = solve_with(a, rs, opts.method, opts.seed, r);
    r["basis"] = columns_to_json(basis.columns);
    r["method"] = method_name(opts.method);
    if (opts.verify) {
      const auto v = verify_basis(a, basis);
      r["verified"] = v.ok();
      r["checks"] = {{"solves", v.solves},
                     {"full_rank", v.full_rank},
                     {"same_lattice_as_oracle", v.matches_oracle},
                     {"S_over_M_oracle", v.s_over_m},
                     {"U_over_S_oracle", v.u_over_s}};
    }
  }
  if (r["verified"] == false)
    code = kExitVerification;
  return r;
}

int run(const Options& opts, const IMatrix& a, std::ostream& out, std::ostream& err) {
  int code = kExitOk;
  json r;
  try {
    r = build_report(opts, a, code);
  } catch (const NotPrime& e) {
    const auto rs = reduce_matrix(a);
    json msg = {{"error", "d_not_prime"},
                {"message", "the prime-d method needs d prime; use the general method (--method direct)"},
                {"d", to_json(rs.d)},
                {"suggested_method", "direct"}};
    if (opts.json)
      out << msg.dump() << '\n';
    else
      err << "error: d = " << rs.d << " is not prime; use the general method (--method direct)\n";
    return kExitInput;
  } catch (const InternalConsistencyError& e) {
    err << "verification failure: " << e.what() << '\n';
    return kExitVerification;
  } catch (const NotLargestFactor& e) {
    err << "verification failure: " << e.what() << '\n';
    return kExitVerification;
  }
  if (opts.json)
    out << r.dump() << '\n';
  else
    print_human(out, r);
  if (code == kExitVerification)
    err << "verification failed\n";
  return code;
}

int run_file(const Options& opts, const std::string& path, std::ostream& out, std::ostream& err) {
  IMatrix a;
  try {
    a = read_matrix_file(path);
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  }
  return run(opts, a, out, err);
}

} // namespace dioph::cli
