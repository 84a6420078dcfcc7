#include "ramcalc/sunit.hpp"

#include "ramcalc/parallel.hpp"

#include <omp.h>

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ramcalc {

namespace {

void check_primes(const std::vector<std::uint64_t>& primes) {
  if (primes.empty()) throw std::invalid_argument("prime set is empty");
  for (auto p : primes)
    if (p < 2) throw std::invalid_argument("prime set entry below 2: " + std::to_string(p));
}

void generate(const std::vector<std::uint64_t>& primes, std::size_t from, std::uint64_t acc, std::uint64_t height,
              std::vector<std::uint64_t>& out) {
  out.push_back(acc);
  for (std::size_t i = from; i < primes.size(); ++i) {
    if (acc > height / primes[i]) continue;
    generate(primes, i, acc * primes[i], height, out);
  }
}

template <class T>
void merge_sorted(std::vector<std::vector<T>>& parts, std::vector<T>& out) {
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  std::sort(out.begin(), out.end());
}

}  // namespace

bool SmoothSet::contains(std::uint64_t n) const { return std::binary_search(values.begin(), values.end(), n); }

SmoothSet smooth_enum(std::vector<std::uint64_t> primes, std::uint64_t height) {
  check_primes(primes);
  if (height < 1) throw std::invalid_argument("height must be at least 1");
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  SmoothSet s;
  s.primes = primes;
  s.height = height;
  generate(primes, 0, 1, height, s.values);
  std::sort(s.values.begin(), s.values.end());
  s.values.erase(std::unique(s.values.begin(), s.values.end()), s.values.end());
  return s;
}

bool is_smooth_value(std::int64_t n, const std::vector<std::uint64_t>& primes) {
  if (n == 0) return false;
  std::uint64_t m = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
  for (auto p : primes)
    while (m % p == 0) m /= p;
  return m == 1;
}

namespace {

// Triples whose smallest entry is values[i].
void unit_row(const SmoothSet& s, std::size_t i, std::vector<UnitTriple>& out) {
  const std::uint64_t a = s.values[i];
  for (std::size_t j = i; j < s.values.size(); ++j) {
    const std::uint64_t b = s.values[j];
    if (b > s.height - a) break;
    if (std::gcd(a, b) != 1) continue;
    if (s.contains(a + b)) out.push_back({a, b, a + b});
  }
}

void prop24_row(const SmoothSet& s, std::size_t i, std::vector<Prop24Pair>& out) {
  const std::uint64_t n2 = s.values[i];
  for (std::size_t j = 0; j < i; ++j) {
    const std::uint64_t n3 = s.values[j];
    if (n3 > n2 - n3) break;
    if (std::gcd(n2, n3) != 1) continue;
    if (s.contains(n2 - n3)) out.push_back({n2, n3});
  }
}

void check_prop24_primes(const std::vector<std::uint64_t>& primes) {
  check_primes(primes);
  if (std::find(primes.begin(), primes.end(), 2) == primes.end())
    throw std::invalid_argument("prop24 pairs need 2 in the prime set");
}

}  // namespace

std::vector<UnitTriple> unit_equation_solutions_serial(const std::vector<std::uint64_t>& primes,
                                                       std::uint64_t height) {
  const SmoothSet s = smooth_enum(primes, height);
  std::vector<UnitTriple> out;
  for (std::size_t i = 0; i < s.values.size(); ++i) unit_row(s, i, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<UnitTriple> unit_equation_solutions(const std::vector<std::uint64_t>& primes, std::uint64_t height) {
  const SmoothSet s = smooth_enum(primes, height);
  const int threads = worker_count();
  std::vector<std::vector<UnitTriple>> parts(static_cast<std::size_t>(threads));
  const long n = static_cast<long>(s.values.size());
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (long i = 0; i < n; ++i) {
    const int t = omp_get_thread_num();
    unit_row(s, static_cast<std::size_t>(i), parts[static_cast<std::size_t>(t)]);
  }
  std::vector<UnitTriple> out;
  merge_sorted(parts, out);
  return out;
}

std::vector<Prop24Pair> prop24_pairs_serial(const std::vector<std::uint64_t>& primes, std::uint64_t height) {
  check_prop24_primes(primes);
  const SmoothSet s = smooth_enum(primes, height);
  std::vector<Prop24Pair> out;
  for (std::size_t i = 0; i < s.values.size(); ++i) prop24_row(s, i, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Prop24Pair> prop24_pairs(const std::vector<std::uint64_t>& primes, std::uint64_t height) {
  check_prop24_primes(primes);
  const SmoothSet s = smooth_enum(primes, height);
  const int threads = worker_count();
  std::vector<std::vector<Prop24Pair>> parts(static_cast<std::size_t>(threads));
  const long n = static_cast<long>(s.values.size());
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (long i = 0; i < n; ++i) {
    const int t = omp_get_thread_num();
    prop24_row(s, static_cast<std::size_t>(i), parts[static_cast<std::size_t>(t)]);
  }
  std::vector<Prop24Pair> out;
  merge_sorted(parts, out);
  return out;
}

std::vector<FamilyTuple> thm26_family(const std::vector<std::uint64_t>& primes, std::uint64_t height) {
  const SmoothSet s = smooth_enum(primes, height);
  const auto h = static_cast<std::int64_t>(height);
  std::vector<FamilyTuple> out;
  for (auto u3 : s.values) {
    const auto r3 = static_cast<std::int64_t>(u3);
    if (2 * r3 > h) break;
    for (auto u1 : s.values) {
      if (std::gcd(u1, u3) != 1) continue;
      for (std::int64_t sign : {1, -1}) {
        const std::int64_t r1 = sign * static_cast<std::int64_t>(u1);
        std::array<std::int64_t, 4> n{0, 2 * r3, r1 + r3, r3 - r1};
        bool fits = true;
        for (auto v : n) fits = fits && (v <= h && v >= -h);
        if (!fits) continue;
        bool distinct = true;
        for (int i = 0; i < 4; ++i)
          for (int j = i + 1; j < 4; ++j) distinct = distinct && n[i] != n[j];
        if (!distinct) continue;
        bool smooth = true;
        for (int i = 0; i < 4; ++i)
          for (int j = i + 1; j < 4; ++j) smooth = smooth && is_smooth_value(n[i] - n[j], s.primes);
        out.push_back({r1, r3, n, !smooth});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const FamilyTuple& a, const FamilyTuple& b) { return a.n < b.n; });
  return out;
}

std::string to_string(const UnitTriple& t) {
  return std::to_string(t.a) + " + " + std::to_string(t.b) + " = " + std::to_string(t.c);
}

std::string to_string(const Prop24Pair& p) { return "(" + std::to_string(p.n2) + ", " + std::to_string(p.n3) + ")"; }

std::string to_string(const FamilyTuple& t) {
  std::string s = "(";
  for (int i = 0; i < 4; ++i) s += (i ? ", " : "") + std::to_string(t.n[static_cast<std::size_t>(i)]);
  s += ") r1=" + std::to_string(t.r1) + " r3=" + std::to_string(t.r3);
  s += t.exceptional ? " exceptional" : "";
  return s;
}

}  // namespace ramcalc
