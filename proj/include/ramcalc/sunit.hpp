#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace ramcalc {

/// The positive integers up to `height` whose prime divisors all lie in `primes`.
struct SmoothSet {
  std::vector<std::uint64_t> primes;  // ascending, distinct
  std::uint64_t height = 0;
  std::vector<std::uint64_t> values;  // ascending, starts with 1

  bool contains(std::uint64_t n) const;
};

/// Throws std::invalid_argument on an empty prime list, an entry below 2,
/// or height 0.
SmoothSet smooth_enum(std::vector<std::uint64_t> primes, std::uint64_t height);

/// Smoothness of |n|; 0 is never smooth.
bool is_smooth_value(std::int64_t n, const std::vector<std::uint64_t>& primes);

struct UnitTriple {
  std::uint64_t a, b, c;  // a + b = c, a <= b, gcd(a, b) = 1
  auto operator<=>(const UnitTriple&) const = default;
};

/// All coprime smooth a + b = c with c <= height, in lexicographic order.
std::vector<UnitTriple> unit_equation_solutions(const std::vector<std::uint64_t>& primes, std::uint64_t height);
std::vector<UnitTriple> unit_equation_solutions_serial(const std::vector<std::uint64_t>& primes,
                                                       std::uint64_t height);

/// Sets {0, n2, n3} with n2 > n3 > 0, gcd(n2, n3) = 1 and n2, n3, n2 - n3 all
/// smooth. Of the two such orderings of one set, (n2, n3) and (n2, n2 - n3),
/// only the one with n3 <= n2 - n3 is listed. The primes must include 2.
struct Prop24Pair {
  std::uint64_t n2, n3;
  auto operator<=>(const Prop24Pair&) const = default;
};
std::vector<Prop24Pair> prop24_pairs(const std::vector<std::uint64_t>& primes, std::uint64_t height);
std::vector<Prop24Pair> prop24_pairs_serial(const std::vector<std::uint64_t>& primes, std::uint64_t height);

/// (0, 2 r3, r1 + r3, r3 - r1) for coprime smooth |r1| and r3 > 0 with
/// distinct entries of absolute value at most `height`.
struct FamilyTuple {
  std::int64_t r1, r3;
  std::array<std::int64_t, 4> n;
  bool exceptional;  // some pairwise difference is not smooth

  auto operator<=>(const FamilyTuple&) const = default;
};
std::vector<FamilyTuple> thm26_family(const std::vector<std::uint64_t>& primes, std::uint64_t height);

std::string to_string(const UnitTriple& t);
std::string to_string(const Prop24Pair& p);
std::string to_string(const FamilyTuple& t);

}  // namespace ramcalc
