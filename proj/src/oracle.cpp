#include "partseq/oracle.hpp"

#include <algorithm>

#include "partseq/errors.hpp"

namespace partseq {

namespace {

constexpr int kTableLimit = 20;

class GraphCut final : public SetFunction {
 public:
  GraphCut(GroundSet g, std::vector<WeightedEdge> edges, std::optional<Rational> gran)
      : SetFunction(std::move(g), {true, false, true, true}, std::move(gran)), edges_(std::move(edges)) {}

 protected:
  Value evaluate(ElementSet u) const override {
    Rational sum;
    for (const auto& e : edges_)
      if (contains(u, e.u) != contains(u, e.v)) sum += e.weight;
    return sum;
  }

 private:
  std::vector<WeightedEdge> edges_;
};

class HypergraphCut final : public SetFunction {
 public:
  HypergraphCut(GroundSet g, std::vector<WeightedHyperedge> edges, std::optional<Rational> gran)
      : SetFunction(std::move(g), {true, false, true, true}, std::move(gran)), edges_(std::move(edges)) {}

 protected:
  Value evaluate(ElementSet u) const override {
    Rational sum;
    for (const auto& e : edges_)
      if ((e.members & u) != 0 && (e.members & ~u) != 0) sum += e.weight;
    return sum;
  }

 private:
  std::vector<WeightedHyperedge> edges_;
};

class Coverage final : public SetFunction {
 public:
  Coverage(GroundSet g, std::vector<std::vector<int>> covering, std::vector<Rational> weights,
           std::optional<Rational> gran)
      : SetFunction(std::move(g), {false, true, true, true}, std::move(gran)),
        covering_(std::move(covering)),
        weights_(std::move(weights)) {}

 protected:
  Value evaluate(ElementSet u) const override {
    std::vector<char> hit(weights_.size(), 0);
    Rational sum;
    for (int v : elements_of(u & full_set(n()))) {
      for (int item : covering_[v]) {
        if (!hit[item]) {
          hit[item] = 1;
          sum += weights_[item];
        }
      }
    }
    return sum;
  }

 private:
  std::vector<std::vector<int>> covering_;
  std::vector<Rational> weights_;
};

class Indegree final : public SetFunction {
 public:
  Indegree(GroundSet g, std::vector<DirectedHyperarc> arcs)
      : SetFunction(std::move(g), {false, false, false, true}, Rational(1)), arcs_(std::move(arcs)) {}

 protected:
  Value evaluate(ElementSet u) const override {
    long long sum = 0;
    for (const auto& a : arcs_)
      if (contains(u, a.head) && (a.members & ~u) != 0) sum += a.copies;
    return Rational(sum);
  }

 private:
  std::vector<DirectedHyperarc> arcs_;
};

class Table final : public SetFunction {
 public:
  Table(GroundSet g, std::vector<Value> values, OracleFlags flags, std::optional<Rational> gran, bool tier)
      : SetFunction(std::move(g), flags, std::move(gran)), values_(std::move(values)), tier_(tier) {}
  bool uses_tier() const override { return tier_; }
  const std::vector<Value>* table() const override { return &values_; }

 protected:
  Value evaluate(ElementSet u) const override { return values_[u]; }

 private:
  std::vector<Value> values_;
  bool tier_;
};

class Lambda final : public SetFunction {
 public:
  Lambda(GroundSet g, std::function<Value(ElementSet)> fn, OracleFlags flags, std::optional<Rational> gran)
      : SetFunction(std::move(g), flags, std::move(gran)), fn_(std::move(fn)) {}

 protected:
  Value evaluate(ElementSet u) const override { return fn_(u); }

 private:
  std::function<Value(ElementSet)> fn_;
};

class Cardinality final : public SetFunction {
 public:
  Cardinality(Oracle inner, int sign)
      : SetFunction(inner->ground(), inner->flags(), inner->granularity()), inner_(std::move(inner)), sign_(sign) {}
  bool uses_tier() const override { return true; }

 protected:
  Value evaluate(ElementSet u) const override {
    Value v = inner_->eval(u);
    if (u != 0) v.eps_card = Rational(sign_);
    return v;
  }

 private:
  Oracle inner_;
  int sign_;
};

class Strict final : public SetFunction {
 public:
  Strict(Oracle inner, OracleFlags flags, std::optional<Rational> gran, Rational eps, bool monotone)
      : SetFunction(inner->ground(), flags, std::move(gran)),
        inner_(std::move(inner)),
        eps_(std::move(eps)),
        monotone_(monotone) {}
  bool uses_tier() const override { return inner_->uses_tier(); }

 protected:
  Value evaluate(ElementSet u) const override {
    long long k = set_size(u & full_set(n()));
    long long w = k * (n() - k);
    if (monotone_) w += k * (k - 1) / 2;
    Value v = inner_->eval(u);
    v.base += eps_ * Rational(w);
    return v;
  }

 private:
  Oracle inner_;
  Rational eps_;
  bool monotone_;
};

std::optional<Rational> gcd_of(const std::vector<Rational>& ws) {
  Rational g;
  for (const auto& w : ws) g = rational_gcd(g, w);
  if (g.is_zero()) return std::nullopt;
  return g;
}

}  // namespace

SetFunction::SetFunction(GroundSet ground, OracleFlags flags, std::optional<Rational> granularity)
    : ground_(std::move(ground)), flags_(flags), granularity_(std::move(granularity)) {
  if (granularity_ && granularity_->sign() <= 0) throw InvalidInput("granularity must be positive");
}

Value evaluate_partition(const SetFunction& f, const Partition& p) {
  if (p.ground_size() != f.n()) throw InvalidInput("partition is over a different ground set");
  Value sum;
  for (ElementSet b : p.blocks()) sum += f.eval(b);
  return sum;
}

Oracle make_graph_cut(GroundSet g, const std::vector<WeightedEdge>& edges) {
  std::vector<Rational> ws;
  for (const auto& e : edges) {
    if (e.u < 0 || e.u >= g.n || e.v < 0 || e.v >= g.n) throw InvalidInput("edge endpoint out of range");
    if (e.u == e.v) throw InvalidInput("self-loop in graph");
    if (e.weight.sign() < 0) throw InvalidInput("negative edge weight");
    ws.push_back(e.weight);
  }
  return std::make_shared<GraphCut>(std::move(g), edges, gcd_of(ws));
}

Oracle make_hypergraph_cut(GroundSet g, const std::vector<WeightedHyperedge>& edges) {
  std::vector<Rational> ws;
  for (const auto& e : edges) {
    if (e.members == 0) throw InvalidInput("empty hyperedge");
    if (!is_subset(e.members, g.all())) throw InvalidInput("hyperedge outside ground set");
    if (e.weight.sign() < 0) throw InvalidInput("negative hyperedge weight");
    ws.push_back(e.weight);
  }
  return std::make_shared<HypergraphCut>(std::move(g), edges, gcd_of(ws));
}

Oracle make_coverage(GroundSet g, const std::vector<std::vector<int>>& covering,
                     const std::vector<Rational>& item_weights) {
  if (static_cast<int>(covering.size()) != g.n) throw InvalidInput("coverage needs one item list per element");
  for (const auto& items : covering)
    for (int i : items)
      if (i < 0 || i >= static_cast<int>(item_weights.size())) throw InvalidInput("coverage item out of range");
  for (const auto& w : item_weights)
    if (w.sign() < 0) throw InvalidInput("negative item weight");
  return std::make_shared<Coverage>(std::move(g), covering, item_weights, gcd_of(item_weights));
}

Oracle make_indegree(GroundSet g, const std::vector<DirectedHyperarc>& arcs) {
  for (const auto& a : arcs) {
    if (!contains(a.members, a.head)) throw InvalidInput("arc head outside its hyperedge");
    if (!is_subset(a.members, g.all())) throw InvalidInput("hyperarc outside ground set");
    if (a.copies < 1) throw InvalidInput("arc multiplicity must be positive");
  }
  return std::make_shared<Indegree>(std::move(g), arcs);
}

Oracle make_table(GroundSet g, std::vector<Value> values, OracleFlags flags, std::optional<Rational> granularity) {
  if (g.n > kTableLimit) throw InvalidInput("explicit tables are limited to n <= 20");
  if (values.size() != (std::size_t{1} << g.n)) throw InvalidInput("table needs exactly 2^n values");
  bool tier = std::any_of(values.begin(), values.end(), [](const Value& v) { return v.has_tier(); });
  return std::make_shared<Table>(std::move(g), std::move(values), flags, std::move(granularity), tier);
}

Oracle make_function(GroundSet g, std::function<Value(ElementSet)> fn, OracleFlags flags,
                     std::optional<Rational> granularity) {
  return std::make_shared<Lambda>(std::move(g), std::move(fn), flags, std::move(granularity));
}

Oracle perturb_cardinality(const Oracle& f, int sign) {
  if (sign != 1 && sign != -1) throw InvalidInput("cardinality sign must be +1 or -1");
  if (f->uses_tier()) throw InvalidInput("oracle already carries the cardinality tier");
  return std::make_shared<Cardinality>(f, sign);
}

Oracle perturb_strict(const Oracle& f, StrictMode mode, const Rational& eps) {
  if (eps.sign() <= 0) throw InvalidInput("strictness eps must be positive");
  if (mode == StrictMode::automatic)
    mode = (!f->flags().symmetric && f->flags().monotone) ? StrictMode::monotone : StrictMode::symmetric;
  OracleFlags flags = f->flags();
  if (mode == StrictMode::symmetric) {
    flags.monotone = false;
  } else {
    flags.symmetric = false;
  }
  std::optional<Rational> gran;
  if (f->granularity()) gran = rational_gcd(*f->granularity(), eps);
  return std::make_shared<Strict>(f, flags, std::move(gran), eps, mode == StrictMode::monotone);
}

Oracle materialize(const Oracle& f) {
  if (f->table() != nullptr) return f;
  if (f->n() > kTableLimit) throw InvalidInput("cannot tabulate an oracle with n > 20");
  std::vector<Value> values(std::size_t{1} << f->n());
  for (std::size_t m = 0; m < values.size(); ++m) values[m] = f->eval(static_cast<ElementSet>(m));
  return std::make_shared<Table>(f->ground(), std::move(values), f->flags(), f->granularity(), f->uses_tier());
}

std::optional<Rational> effective_granularity(const SetFunction& f) {
  if (f.granularity()) return f.granularity();
  if (f.n() > kTableLimit) return std::nullopt;
  Rational g;
  for (ElementSet m = 0; m <= full_set(f.n()); ++m) g = rational_gcd(g, f.eval(m).base);
  if (g.is_zero()) return Rational(1);  // f ≡ 0: any positive gap bound works
  return g;
}

Rational strict_perturbation_eps(int n, const Rational& gamma) {
  long long m = static_cast<long long>(n) * (n - 1) / 2;
  return gamma / Rational(2 * m * n + 1);
}

namespace {

void require_bound(const SetFunction& f, int max_n) {
  if (f.n() > max_n) throw BudgetExceeded("exhaustive property check refused for n > " + std::to_string(max_n));
}

}  // namespace

PropertyCheck check_submodular(const SetFunction& f, bool strict_on_intersecting, int max_n) {
  require_bound(f, max_n);
  Oracle t = materialize(std::shared_ptr<const SetFunction>(&f, [](const SetFunction*) {}));
  const auto& v = *t->table();
  ElementSet all = f.ground().all();
  for (ElementSet a = 0; a <= all; ++a) {
    for (ElementSet b = a + 1; b <= all; ++b) {
      Value lhs = v[a] + v[b];
      Value rhs = v[a & b] + v[a | b];
      if (lhs < rhs) return {false, std::make_pair(a, b)};
      if (strict_on_intersecting && is_intersecting(a, b) && lhs == rhs) return {false, std::make_pair(a, b)};
    }
  }
  return {};
}

PropertyCheck check_posimodular(const SetFunction& f, int max_n) {
  require_bound(f, max_n);
  Oracle t = materialize(std::shared_ptr<const SetFunction>(&f, [](const SetFunction*) {}));
  const auto& v = *t->table();
  ElementSet all = f.ground().all();
  for (ElementSet a = 0; a <= all; ++a)
    for (ElementSet b = a + 1; b <= all; ++b)
      if (v[a] + v[b] < v[a & ~b] + v[b & ~a]) return {false, std::make_pair(a, b)};
  return {};
}

PropertyCheck check_monotone(const SetFunction& f, int max_n) {
  require_bound(f, max_n);
  Oracle t = materialize(std::shared_ptr<const SetFunction>(&f, [](const SetFunction*) {}));
  const auto& v = *t->table();
  ElementSet all = f.ground().all();
  // checking single-element extensions suffices
  for (ElementSet a = 0; a <= all; ++a)
    for (int i = 0; i < f.n(); ++i)
      if (!contains(a, i) && v[a] > v[a | bit(i)]) return {false, std::make_pair(a, a | bit(i))};
  return {};
}

PropertyCheck check_symmetric(const SetFunction& f, int max_n) {
  require_bound(f, max_n);
  ElementSet all = f.ground().all();
  for (ElementSet a = 0; a <= all; ++a)
    if (f.eval(a) != f.eval(all & ~a)) return {false, std::make_pair(a, all & ~a)};
  return {};
}

}  // namespace partseq
