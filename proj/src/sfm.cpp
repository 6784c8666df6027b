#include <algorithm>
#include <numeric>

#include "partseq/errors.hpp"
#include "partseq/solver.hpp"

namespace partseq {
namespace detail {

namespace {

AtomMinimum exhaustive(const SetEval& F, const std::vector<ElementSet>& atoms, ElementSet base,
                       const std::vector<Value>* weights) {
  const int k = static_cast<int>(atoms.size());
  AtomMinimum best{0, base, F(base)};
  // Gray-code walk: one atom toggles per step.
  ElementSet cur = base;
  Value wsum;
  std::uint64_t code = 0;
  const std::uint64_t total = std::uint64_t{1} << k;
  for (std::uint64_t i = 1; i < total; ++i) {
    int j = std::countr_zero(i);
    code ^= std::uint64_t{1} << j;
    cur ^= atoms[j];
    if (weights) {
      if ((code >> j) & 1U)
        wsum += (*weights)[j];
      else
        wsum -= (*weights)[j];
    }
    Value v = F(cur) - wsum;
    if (v < best.value || (v == best.value && code < best.chosen)) best = {code, cur, std::move(v)};
  }
  return best;
}

using Vec = std::vector<Rational>;

Rational dot(const Vec& a, const Vec& b) {
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  return s;
}

// Solves A z = rhs exactly (A square). Returns false when singular.
bool solve(std::vector<Vec> a, Vec rhs, Vec& z) {
  const int m = static_cast<int>(a.size());
  for (int c = 0; c < m; ++c) {
    int piv = -1;
    for (int r = c; r < m; ++r)
      if (!a[r][c].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) return false;
    std::swap(a[c], a[piv]);
    std::swap(rhs[c], rhs[piv]);
    for (int r = 0; r < m; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      Rational factor = a[r][c] / a[c][c];
      for (int cc = c; cc < m; ++cc)
        if (!a[c][cc].is_zero()) a[r][cc] -= factor * a[c][cc];
      rhs[r] -= factor * rhs[c];
    }
  }
  z.assign(m, Rational());
  for (int i = 0; i < m; ++i) z[i] = rhs[i] / a[i][i];
  return true;
}

// Fujishige–Wolfe minimum-norm-point over the base polytope of the normalized function,
// in exact arithmetic.
AtomMinimum min_norm_point(const SetEval& F, const std::vector<ElementSet>& atoms, ElementSet base,
                           const std::vector<Value>* weights) {
  const int k = static_cast<int>(atoms.size());
  Value f0 = F(base);
  auto evalJ = [&](std::uint64_t chosen) -> Rational {
    ElementSet u = base;
    Value w;
    for (int j = 0; j < k; ++j)
      if ((chosen >> j) & 1U) {
        u |= atoms[j];
        if (weights) w += (*weights)[j];
      }
    Value v = F(u) - w - f0;
    if (v.has_tier()) throw InvalidInput("min-norm-point backend cannot handle tier-carrying values");
    return v.base;
  };
  if (f0.has_tier()) throw InvalidInput("min-norm-point backend cannot handle tier-carrying values");

  auto greedy = [&](const Vec& w) {
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return w[a] < w[b]; });
    Vec q(k);
    std::uint64_t prefix = 0;
    Rational prev;
    for (int j : order) {
      prefix |= std::uint64_t{1} << j;
      Rational cur = evalJ(prefix);
      q[j] = cur - prev;
      prev = cur;
    }
    return q;
  };

  std::vector<Vec> pts{greedy(Vec(k))};
  Vec coef{Rational(1)};
  Vec x = pts[0];
  auto combine = [&]() {
    Vec r(k);
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (int j = 0; j < k; ++j) r[j] += coef[i] * pts[i][j];
    return r;
  };

  for (int major = 0; major < 100000; ++major) {
    Vec q = greedy(x);
    if (dot(x, x) <= dot(x, q)) break;
    if (std::find(pts.begin(), pts.end(), q) != pts.end()) break;
    pts.push_back(q);
    coef.push_back(Rational());
    while (true) {
      const int m = static_cast<int>(pts.size());
      std::vector<Vec> a(m + 1, Vec(m + 1));
      for (int i = 0; i < m; ++i) {
        for (int j = i; j < m; ++j) a[i][j] = a[j][i] = dot(pts[i], pts[j]);
        a[i][m] = a[m][i] = Rational(1);
      }
      Vec rhs(m + 1);
      rhs[m] = Rational(1);
      Vec z;
      if (!solve(a, rhs, z)) throw InternalInconsistency("min-norm-point corral became affinely dependent");
      z.resize(m);
      if (std::all_of(z.begin(), z.end(), [](const Rational& r) { return r.sign() > 0; })) {
        coef = z;
        x = combine();
        break;
      }
      std::optional<Rational> theta;
      for (int i = 0; i < m; ++i) {
        if (z[i].sign() > 0) continue;
        Rational th = coef[i] / (coef[i] - z[i]);
        if (!theta || th < *theta) theta = th;
      }
      for (int i = 0; i < m; ++i) coef[i] = (Rational(1) - *theta) * coef[i] + *theta * z[i];
      std::vector<Vec> keep_p;
      Vec keep_c;
      for (int i = 0; i < m; ++i)
        if (coef[i].sign() > 0) {
          keep_p.push_back(pts[i]);
          keep_c.push_back(coef[i]);
        }
      pts = std::move(keep_p);
      coef = std::move(keep_c);
      x = combine();
    }
  }

  std::uint64_t neg = 0, nonpos = 0;
  for (int j = 0; j < k; ++j) {
    if (x[j].sign() < 0) neg |= std::uint64_t{1} << j;
    if (x[j].sign() <= 0) nonpos |= std::uint64_t{1} << j;
  }
  AtomMinimum best;
  bool first = true;
  for (std::uint64_t c : {neg, nonpos}) {
    ElementSet u = base;
    Value w;
    for (int j = 0; j < k; ++j)
      if ((c >> j) & 1U) {
        u |= atoms[j];
        if (weights) w += (*weights)[j];
      }
    Value v = F(u) - w;
    if (first || v < best.value || (v == best.value && c < best.chosen)) best = {c, u, v};
    first = false;
  }
  return best;
}

}  // namespace

AtomMinimum minimize_over_atoms(const SetEval& F, const std::vector<ElementSet>& atoms, ElementSet base,
                                const std::vector<Value>* weights, SfmBackend backend, std::string* backend_used) {
  if (atoms.size() > 63) throw InvalidInput("too many atoms");
  if (backend == SfmBackend::automatic)
    backend = atoms.size() <= kExhaustiveAtomLimit ? SfmBackend::exhaustive : SfmBackend::min_norm_point;
  if (backend == SfmBackend::exhaustive && atoms.size() > 30)
    throw BudgetExceeded("exhaustive SFM refused above 30 atoms");
  if (backend_used) *backend_used = backend == SfmBackend::exhaustive ? "exhaustive" : "min_norm_point";
  if (backend == SfmBackend::exhaustive) return exhaustive(F, atoms, base, weights);
  return min_norm_point(F, atoms, base, weights);
}

}  // namespace detail

namespace {

detail::SetEval evaluator(const SetFunction& f) {
  if (const auto* t = f.table()) return [t](ElementSet u) { return (*t)[u]; };
  return [&f](ElementSet u) { return f.eval(u); };
}

}  // namespace

SetMinimum sfm_constrained(const SetFunction& f, ElementSet include, ElementSet exclude, SfmBackend backend) {
  if ((include & exclude) != 0) throw InvalidInput("include and exclude overlap");
  ElementSet all = f.ground().all();
  if (!is_subset(include | exclude, all)) throw InvalidInput("constraint outside ground set");
  std::vector<ElementSet> atoms;
  for (int v : elements_of(all & ~(include | exclude))) atoms.push_back(bit(v));
  std::uint64_t before = f.calls();
  SetMinimum out;
  auto r = detail::minimize_over_atoms(evaluator(f), atoms, include, nullptr, backend, &out.stats.backend);
  out.minimizer = r.set;
  out.value = r.value;
  out.stats.oracle_calls = f.calls() - before;
  return out;
}

SetMinimum sfm(const SetFunction& f, SfmBackend backend) { return sfm_constrained(f, 0, 0, backend); }

}  // namespace partseq
