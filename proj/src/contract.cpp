#include "ramcalc/contract.hpp"

#include "ramcalc/rmap.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ramcalc {

namespace {

bool class_less(const PointClass& a, const PointClass& b) {
  if (a.degree() != b.degree()) return a.degree() > b.degree();
  return to_string(a.poly) < to_string(b.poly);
}

// Rational roots split off when the divisor enumeration is affordable.
void split_rational_roots(PointClass c, std::vector<PointClass>& out) {
  if (c.degree() >= 2) {
    std::vector<Rational> roots;
    try {
      roots = rational_roots(c.poly);
    } catch (const std::runtime_error&) {
      out.push_back(c);
      return;
    }
    for (const Rational& x : roots) {
      out.push_back({linear_factor(x), true});
      c.poly = exact_div(c.poly, linear_factor(x));
    }
    // without rational roots, degrees 2 and 3 are irreducible
    if (c.degree() >= 1 && c.degree() <= 3) c.factored = true;
  }
  if (c.degree() == 1) c.factored = true;
  if (c.degree() >= 1) out.push_back(c);
}

}  // namespace

AlgebraicPointSet AlgebraicPointSet::normalized(std::vector<PointClass> classes, bool infinity) {
  std::vector<PointClass> work;
  for (auto& c : classes) {
    if (c.poly.is_zero()) throw std::invalid_argument("point set: zero polynomial");
    if (c.degree() < 1) continue;
    work.push_back({squarefree_part(c.poly), c.factored});
  }
  // gcd refinement to pairwise coprime pieces
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < work.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < work.size() && !changed; ++j) {
        QPoly g = gcd(work[i].poly, work[j].poly);
        if (g.degree() < 1) continue;
        PointClass a{exact_div(work[i].poly, g).monic(), work[i].factored};
        PointClass b{exact_div(work[j].poly, g).monic(), work[j].factored};
        PointClass common{g, work[i].factored || work[j].factored};
        work.erase(work.begin() + static_cast<long>(j));
        work.erase(work.begin() + static_cast<long>(i));
        for (auto* p : {&a, &b, &common})
          if (p->degree() >= 1) work.push_back(*p);
        changed = true;
      }
    }
  }
  AlgebraicPointSet out;
  out.infinity = infinity;
  for (auto& c : work) split_rational_roots(c, out.classes);
  std::sort(out.classes.begin(), out.classes.end(), class_less);
  return out;
}

AlgebraicPointSet AlgebraicPointSet::from_polynomials(const std::vector<QPoly>& polys, bool infinity) {
  std::vector<PointClass> cs;
  for (const auto& p : polys) cs.push_back({p, false});
  return normalized(std::move(cs), infinity);
}

int AlgebraicPointSet::max_degree() const {
  int m = infinity ? 1 : 0;
  for (const auto& c : classes) m = std::max(m, c.degree());
  return m;
}

int AlgebraicPointSet::count_at(int degree) const {
  int n = (infinity && degree == 1) ? 1 : 0;
  for (const auto& c : classes) n += c.degree() == degree ? 1 : 0;
  return n;
}

std::vector<int> AlgebraicPointSet::degree_multiset() const {
  std::vector<int> d;
  for (const auto& c : classes) d.push_back(c.degree());
  if (infinity) d.push_back(1);
  std::sort(d.rbegin(), d.rend());
  return d;
}

std::string AlgebraicPointSet::str() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& c : classes) {
    os << (first ? "" : ", ") << to_string(c.poly) << (c.factored ? "" : " (unfactored)");
    first = false;
  }
  if (infinity) os << (first ? "" : ", ") << "inf";
  os << "}";
  return os.str();
}

std::pair<int, long> split_degree(long m) {
  if (m < 2) throw std::invalid_argument("split_degree: m must be at least 2");
  int k = 0;
  while ((1L << k) <= m) ++k;
  return {k, (1L << k) - m};
}

QPoly build_cofactor(const QPoly& f, const std::vector<Rational>& targets) {
  const std::size_t r = targets.size();
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 1; j < r; ++j)
      if (targets[i] == targets[j]) throw TargetCollision("repeated target " + targets[i].get_str());
    if (sgn(f.eval(targets[i])) == 0) throw TargetCollision("target " + targets[i].get_str() + " is a root of f");
  }
  const QPoly df = f.derivative();
  // row i: sum_j c_j (f'(x) x^j + f(x) j x^(j-1)) = -(f'(x) x^r + f(x) r x^(r-1))
  std::vector<std::vector<Rational>> a(r, std::vector<Rational>(r + 1));
  for (std::size_t i = 0; i < r; ++i) {
    const Rational& x = targets[i];
    const Rational fx = f.eval(x);
    const Rational dfx = df.eval(x);
    std::vector<Rational> pw(r + 1);
    pw[0] = 1;
    for (std::size_t j = 1; j <= r; ++j) pw[j] = pw[j - 1] * x;
    for (std::size_t j = 0; j <= r; ++j) {
      Rational v = dfx * pw[j];
      if (j > 0) v += fx * Rational(static_cast<long>(j)) * pw[j - 1];
      if (j < r)
        a[i][j] = v;
      else
        a[i][r] = -v;
    }
  }
  for (std::size_t col = 0; col < r; ++col) {
    std::size_t piv = col;
    while (piv < r && sgn(a[piv][col]) == 0) ++piv;
    if (piv == r) throw SingularSystem("cofactor system is singular");
    std::swap(a[piv], a[col]);
    for (std::size_t i = 0; i < r; ++i) {
      if (i == col || sgn(a[i][col]) == 0) continue;
      const Rational t = a[i][col] / a[col][col];
      for (std::size_t j = col; j <= r; ++j) a[i][j] -= t * a[col][j];
    }
  }
  std::vector<Rational> c(r + 1);
  for (std::size_t i = 0; i < r; ++i) c[i] = a[i][r] / a[i][i];
  c[r] = 1;
  return QPoly(std::move(c));
}

Rational spiral_value(long index) {
  static const std::vector<Rational> values = [] {
    std::vector<Rational> v{Rational(0)};
    for (long h = 1; v.size() < 4096; ++h) {
      for (long q = 1; q <= h; ++q) {
        std::vector<long> ps;
        if (q < h)
          ps.push_back(h);
        else
          for (long p = 1; p <= h; ++p) ps.push_back(p);
        for (long p : ps) {
          if (std::gcd(p, q) != 1) continue;
          v.push_back(make_rational(Integer(p), Integer(q)));
          v.push_back(make_rational(Integer(-p), Integer(q)));
        }
      }
    }
    return v;
  }();
  if (index < 0 || static_cast<std::size_t>(index) >= values.size())
    throw std::out_of_range("spiral_value: index out of range");
  return values[static_cast<std::size_t>(index)];
}

namespace {

Integer binomial(long n, long k) {
  if (k < 0 || n < k) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

// The attempt-th r-subset of the naturals in colexicographic order.
std::vector<long> colex_unrank(Integer n, long r) {
  std::vector<long> out(static_cast<std::size_t>(r));
  for (long i = r; i >= 1; --i) {
    long c = i - 1;
    while (binomial(c + 1, i) <= n) ++c;
    out[static_cast<std::size_t>(i - 1)] = c;
    n -= binomial(c, i);
  }
  return out;
}

}  // namespace

TargetStrategy spiral_strategy() {
  return [](const QPoly& f, long r, int attempt) {
    std::vector<long> idx = colex_unrank(Integer(attempt), r);
    std::vector<Rational> allowed;
    const long need = idx.empty() ? 0 : idx.back() + 1;
    for (long i = 0; static_cast<long>(allowed.size()) < need; ++i) {
      Rational x = spiral_value(i);
      if (sgn(f.eval(x)) != 0) allowed.push_back(x);
    }
    std::vector<Rational> out;
    for (long i : idx) out.push_back(allowed[static_cast<std::size_t>(i)]);
    return out;
  };
}

std::vector<long> ReductionStep::index_values() const { return {1, 2, 1L << k}; }

bool is_power_of_two(long v) { return v > 0 && (v & (v - 1)) == 0; }

std::size_t coefficient_bits(const QPoly& p) {
  std::size_t bits = 0;
  for (const auto& c : p.coeffs()) {
    bits = std::max(bits, mpz_sizeinbase(c.get_num_mpz_t(), 2));
    bits = std::max(bits, mpz_sizeinbase(c.get_den_mpz_t(), 2));
  }
  return bits;
}

namespace {

bool measure_less(const AlgebraicPointSet& after, const AlgebraicPointSet& before) {
  const int ma = after.max_degree();
  const int mb = before.max_degree();
  if (ma != mb) return ma < mb;
  return after.count_at(ma) < before.count_at(mb);
}

}  // namespace

StepResult reduction_step(const AlgebraicPointSet& s, const TargetStrategy& strategy, int max_attempts,
                          bool carry_ramification) {
  const int m = s.max_degree();
  if (m < 2) throw std::invalid_argument("reduction_step: all points are rational");
  // among the classes of top degree, the one of smallest height
  const PointClass* pick = nullptr;
  for (const auto& c : s.classes)
    if (c.degree() == m && (!pick || coefficient_bits(c.poly) < coefficient_bits(pick->poly))) pick = &c;
  const QPoly& f = pick->poly;

  StepResult res;
  ReductionStep& st = res.step;
  st.f = f;
  st.m = m;
  std::tie(st.k, st.r) = split_degree(m);
  st.degrees_before = s.degree_multiset();

  bool accepted = false;
  for (int attempt = 0; attempt < max_attempts && !accepted; ++attempt) {
    std::vector<Rational> targets = strategy(f, st.r, attempt);
    st.attempts = attempt + 1;
    if (targets.empty()) break;
    if (static_cast<long>(targets.size()) != st.r) continue;
    QPoly g;
    try {
      g = build_cofactor(f, targets);
    } catch (const SingularSystem&) {
      continue;
    } catch (const TargetCollision&) {
      continue;
    }
    QPoly F = f * g;
    if (!is_squarefree(F.derivative())) continue;
    st.targets = std::move(targets);
    st.g = std::move(g);
    st.F = std::move(F);
    accepted = true;
  }
  if (!accepted)
    throw StrategyExhausted("no admissible targets for " + to_string(f) + " after " + std::to_string(st.attempts) +
                            " attempts");

  const QPoly dF = st.F.derivative();
  const QPoly target_part = product_of_linear(st.targets).scaled(dF.lead());
  st.ram_cofactor = exact_div(dF, target_part).monic();

  const RationalMap map = RationalMap::polynomial(st.F);
  std::vector<PointClass> next;
  auto image_of = [&](const QPoly& p) { return image_set(map, PointSet::from_polynomial(p)).finite; };
  for (const auto& c : s.classes) next.push_back({image_of(c.poly), c.factored});
  for (const auto& x : st.targets) {
    if (carry_ramification) next.push_back({linear_factor(x), true});
    next.push_back({linear_factor(st.F.eval(x)), true});
  }
  if (st.ram_cofactor.degree() >= 1) {
    if (carry_ramification) next.push_back({st.ram_cofactor, false});
    next.push_back({image_of(st.ram_cofactor), false});
  }
  res.next = AlgebraicPointSet::normalized(std::move(next), s.infinity);
  st.degrees_after = res.next.degree_multiset();

  st.max_coeff_bits = coefficient_bits(st.F);
  for (const auto& c : res.next.classes) st.max_coeff_bits = std::max(st.max_coeff_bits, coefficient_bits(c.poly));

  StepChecks& ck = st.checks;
  ck.derivative_vanishes = std::all_of(st.targets.begin(), st.targets.end(),
                                       [&](const Rational& x) { return sgn(dF.eval(x)) == 0; });
  ck.squarefree_derivative = is_squarefree(dF);
  ck.degree_power_of_two = st.F.degree() == (1 << st.k);
  const FieldPtr q = NumberField::rationals();
  ck.finite_indices_two = std::all_of(st.targets.begin(), st.targets.end(), [&](const Rational& x) {
    return local_index(map, P1Point::rational(x, q)) == 2;
  });
  ck.infinity_index = local_index(map, P1Point::infinity()) == (1 << st.k);
  ck.measure_drops = measure_less(res.next, s);
  return res;
}

bool ContractionResult::passed() const {
  if (!index_certificate || !final_set.all_rational()) return false;
  return std::all_of(steps.begin(), steps.end(), [](const ReductionStep& s) { return s.checks.all(); });
}

ContractionResult contract_to_rational(const AlgebraicPointSet& s, const ContractOptions& options) {
  ContractionResult out;
  out.initial = s;
  AlgebraicPointSet cur = s;
  while (!cur.all_rational()) {
    if (static_cast<int>(out.steps.size()) >= options.max_steps)
      throw StrategyExhausted("step limit " + std::to_string(options.max_steps) + " reached");
    StepResult r = reduction_step(cur, options.strategy, options.max_attempts, options.carry_ramification);
    if (options.height_cap && r.step.max_coeff_bits > *options.height_cap)
      throw HeightCapExceeded("step " + std::to_string(out.steps.size() + 1) + ": coefficients reach " +
                              std::to_string(r.step.max_coeff_bits) + " bits, cap " +
                              std::to_string(*options.height_cap));
    out.steps.push_back(std::move(r.step));
    cur = std::move(r.next);
  }
  out.final_set = cur;
  // composite indices are products of per-step indices, each a power of two
  out.index_exponent = 0;
  bool ok = true;
  for (const auto& st : out.steps) {
    for (long e : st.index_values()) ok = ok && is_power_of_two(e);
    ok = ok && st.checks.all();
    out.index_exponent += st.k;
  }
  out.index_certificate = ok;
  return out;
}

}  // namespace ramcalc
