#include <algorithm>
#include <sstream>

#include "partseq/errors.hpp"
#include "partseq/pps.hpp"

namespace partseq {

namespace {

Rational fvalue(const SetFunction& f, const Partition& p) {
  Value v = evaluate_partition(f, p);
  if (v.has_tier()) throw InvalidInput("partition value carries a tier");
  return v.base;
}

Rational line(const SetFunction& f, const Partition& p, const Rational& lambda) {
  return fvalue(f, p) - lambda * Rational(p.size());
}

struct Terminals {
  int s = -1;
  int t = -1;
};

Terminals resolve_terminals(const SetFunction& f, std::optional<int> s, std::optional<int> t) {
  Terminals out;
  out.s = s ? *s : f.ground().s_index.value_or(-1);
  out.t = t ? *t : f.ground().t_index.value_or(-1);
  if (out.s < 0 || out.t < 0) throw InvalidInput("st mode requires terminals s and t");
  if (out.s >= f.n() || out.t >= f.n()) throw InvalidInput("terminal out of range");
  if (out.s == out.t) throw InvalidInput("s and t must differ");
  return out;
}

}  // namespace

Rational PiecewiseLinearCurve::evaluate(const Rational& lambda) const {
  if (segments.empty()) throw InvalidInput("empty curve");
  std::optional<Rational> best;
  for (const auto& seg : segments) {
    Rational v = seg.value - lambda * Rational(seg.attainer.size());
    if (!best || v < *best) best = v;
  }
  return *best;
}

PiecewiseLinearCurve curve(const Oracle& f, CurveMode mode, std::optional<int> s, std::optional<int> t,
                           const CurveOptions& options) {
  const int n = f->n();
  Terminals term;
  if (mode == CurveMode::st) term = resolve_terminals(*f, s, t);
  Oracle tab = (f->table() == nullptr && n <= 16) ? materialize(f) : f;
  auto solve = [&](const Rational& lambda, Extremal which) {
    if (mode == CurveMode::st)
      return min_st_partition_extremal(tab, lambda, term.s, term.t, which, options.backend);
    return min_partition_extremal(tab, lambda, which, options.backend);
  };
  const int coarsest = mode == CurveMode::st ? 2 : 1;

  Rational lo = Rational(-1) - tab->eval(0).base.abs() - tab->eval(tab->ground().all()).base.abs();
  for (int v = 0; v < n; ++v) lo -= tab->eval(bit(v)).base.abs();
  Partition cur = solve(lo, Extremal::min_card).partition;
  for (int guard = 0; cur.size() > coarsest; ++guard) {
    if (guard == 64) throw InternalInconsistency("no coarsest attainer found left of all breakpoints");
    lo = Rational(2) * lo - Rational(1);
    cur = solve(lo, Extremal::min_card).partition;
  }

  PiecewiseLinearCurve out;
  out.mode = mode;
  out.segments.push_back({cur, fvalue(*tab, cur)});
  const Partition finest = Partition::singletons(n);
  const Rational f_finest = fvalue(*tab, finest);
  while (cur.size() < n) {
    Rational f_cur = fvalue(*tab, cur);
    Rational lambda = (f_finest - f_cur) / Rational(n - cur.size());
    Partition q;
    for (int iter = 0;; ++iter) {
      if (iter > n + 1) throw InternalInconsistency("Newton iteration did not converge");
      auto r = solve(lambda, Extremal::max_card);
      q = r.partition;
      if (r.value.base == f_cur - lambda * Rational(cur.size())) break;
      if (q.size() <= cur.size()) throw InternalInconsistency("Newton step without cardinality increase");
      lambda = (fvalue(*tab, q) - f_cur) / Rational(q.size() - cur.size());
    }
    if (q.size() <= cur.size()) throw InternalInconsistency("breakpoint attainer is not finer");
    out.breakpoints.push_back(lambda);
    out.segments.push_back({q, fvalue(*tab, q)});
    cur = q;
  }
  return out;
}

std::vector<Partition> refinement_chain(const SetFunction& f, const Partition& p, const Partition& q,
                                        const Rational& lambda, std::optional<std::pair<int, int>> st) {
  if (p.ground_size() != f.n() || q.ground_size() != f.n()) throw InvalidInput("partition size mismatch");
  if (line(f, p, lambda) != line(f, q, lambda))
    throw InvalidInput("refinement_chain inputs do not attain the same value");
  if (p == q) return {p};
  if (st) {
    if (!p.is_st_separating(st->first, st->second) || !q.is_st_separating(st->first, st->second))
      throw InvalidInput("refinement_chain inputs must be st-separating");
  }

  ElementSet U = 0;
  int pairs = 0;
  for (ElementSet x : p.blocks())
    for (ElementSet y : q.blocks())
      if (is_intersecting(x, y)) {
        ++pairs;
        U = x | y;
      }
  if (pairs > 1) throw InvalidInput("attainers contain several intersecting pairs; oracle is not strict");
  if (pairs == 1 && !st) throw InvalidInput("attainers cross; oracle is not strict");

  const ElementSet outside = f.ground().all() & ~U;
  auto count_in = [](const Partition& r, ElementSet region) {
    int c = 0;
    for (ElementSet b : r.blocks()) c += is_subset(b, region) ? 1 : 0;
    return c;
  };
  auto blocks_in = [](const Partition& r, ElementSet region) {
    std::vector<ElementSet> out;
    for (ElementSet b : r.blocks())
      if (is_subset(b, region)) out.push_back(b);
    return out;
  };

  std::vector<Partition> chain;
  if (U != 0 && count_in(p, outside) == count_in(q, outside)) {
    chain = {p, q};
  } else {
    std::vector<ElementSet> parts;
    for (ElementSet a : p.blocks())
      if (is_subset(a, outside) && count_in(q, a) >= 2) parts.push_back(a);
    if (parts.empty()) throw InvalidInput("q does not refine p outside the crossing pair");
    const int r1 = static_cast<int>(parts.size());
    auto build = [&](const Partition& inner, const Partition& done, const Partition& rest, int i) {
      ElementSet covered = 0;
      for (int j = 0; j < i; ++j) covered |= parts[j];
      std::vector<ElementSet> blocks = blocks_in(inner, U);
      for (ElementSet b : blocks_in(done, covered)) blocks.push_back(b);
      for (ElementSet b : blocks_in(rest, outside & ~covered)) blocks.push_back(b);
      return Partition(f.n(), std::move(blocks));
    };
    auto R = [&](int i) { return build(q, q, p, i); };
    auto S = [&](int i) { return build(p, p, q, i); };
    if (U == 0) {
      for (int i = 0; i <= r1; ++i) chain.push_back(R(i));
    } else if (count_in(p, U) < count_in(q, U)) {
      chain.push_back(p);
      for (int i = 0; i <= r1; ++i) chain.push_back(R(i));
    } else {
      for (int i = r1; i >= 0; --i) chain.push_back(S(i));
    }
  }
  const Rational target = line(f, p, lambda);
  for (const auto& member : chain)
    if (line(f, member, lambda) != target) throw InvalidInput("chain member does not attain the minimum");
  for (std::size_t i = 1; i < chain.size(); ++i)
    if (chain[i].size() <= chain[i - 1].size()) throw InternalInconsistency("chain sizes not increasing");
  return chain;
}

std::vector<SequenceStep> classify_steps(const PartitionSequence& seq) {
  std::vector<SequenceStep> steps;
  for (std::size_t j = 0; j + 1 < seq.partitions.size(); ++j) {
    const auto& p = seq.partitions[j];
    const auto& q = seq.partitions[j + 1];
    if (p == q) throw InvalidInput("consecutive partitions are equal");
    if (auto x = is_refinement_up_to_one_set(q, p)) {
      steps.push_back({StepKind::refinement_up_to_one_set, *x, 0});
      continue;
    }
    if (seq.kind == SequenceKind::st && p.is_st_separating(seq.s, seq.t) && q.is_st_separating(seq.s, seq.t)) {
      if (auto xy = is_st_refinement_up_to_two_sets(q, p, seq.s, seq.t)) {
        steps.push_back({StepKind::st_refinement_up_to_two_sets, xy->first, xy->second});
        continue;
      }
    }
    throw InvalidInput("step " + std::to_string(j + 1) + " is neither kind of refinement");
  }
  return steps;
}

namespace {

Oracle prepare_strict(const Oracle& f, const PpsOptions& options) {
  if (!options.perturb) return f;
  Rational eps;
  if (options.eps) {
    eps = *options.eps;
  } else {
    auto gamma = effective_granularity(*f);
    if (!gamma) throw InvalidInput("oracle has no granularity; pass eps or disable perturbation");
    eps = strict_perturbation_eps(f->n(), *gamma);
  }
  Oracle h = perturb_strict(f, StrictMode::automatic, eps);
  return f->n() <= 20 ? materialize(h) : h;
}

PartitionSequence build_sequence(const Oracle& f, SequenceKind kind, int s, int t, const PpsOptions& options) {
  const int n = f->n();
  PartitionSequence seq;
  seq.kind = kind;
  seq.s = s;
  seq.t = t;
  Oracle h = prepare_strict(f, options);
  CurveOptions co{options.backend};
  PiecewiseLinearCurve c = kind == SequenceKind::st ? curve(h, CurveMode::st, s, t, co) : curve(h, CurveMode::all, {}, {}, co);
  std::optional<std::pair<int, int>> st;
  if (kind == SequenceKind::st) st = std::make_pair(s, t);
  Partition cur = c.segments.front().attainer;
  seq.partitions.push_back(cur);
  for (std::size_t i = 0; i < c.breakpoints.size(); ++i) {
    auto chain = refinement_chain(*h, cur, c.segments[i + 1].attainer, c.breakpoints[i], st);
    for (std::size_t j = 1; j < chain.size(); ++j) seq.partitions.push_back(chain[j]);
    cur = seq.partitions.back();
  }
  if (cur != Partition::singletons(n)) throw InternalInconsistency("sequence does not end at singletons");
  for (std::size_t j = 0; j + 1 < seq.partitions.size(); ++j) {
    const auto& a = seq.partitions[j];
    const auto& b = seq.partitions[j + 1];
    seq.critical_values.push_back((fvalue(*f, b) - fvalue(*f, a)) / Rational(b.size() - a.size()));
  }
  seq.steps = classify_steps(seq);
  return seq;
}

}  // namespace

PartitionSequence compute_pps(const Oracle& f, const PpsOptions& options) {
  return build_sequence(f, SequenceKind::plain, -1, -1, options);
}

PartitionSequence compute_st_pps(const Oracle& f, int s, int t, const PpsOptions& options) {
  if (s == t) throw InvalidInput("s and t must differ");
  if (s < 0 || t < 0 || s >= f->n() || t >= f->n()) throw InvalidInput("terminal out of range");
  return build_sequence(f, SequenceKind::st, s, t, options);
}

ValidationReport validate_sequence(const PartitionSequence& seq, const SetFunction& f, SfmBackend backend) {
  ValidationReport rep;
  auto fail = [&](std::string prop, std::string detail) { rep.violations.push_back({std::move(prop), std::move(detail)}); };
  const int n = f.n();
  const bool st = seq.kind == SequenceKind::st;
  const auto& P = seq.partitions;
  if (P.empty()) {
    fail("structure", "empty sequence");
    return rep;
  }
  if (seq.critical_values.size() + 1 != P.size()) {
    fail("structure", "expected " + std::to_string(P.size() - 1) + " critical values");
    return rep;
  }
  for (const auto& p : P)
    if (p.ground_size() != n) {
      fail("structure", "partition over a different ground set");
      return rep;
    }
  if (st) {
    if (seq.s < 0 || seq.t < 0 || seq.s >= n || seq.t >= n || seq.s == seq.t) {
      fail("structure", "invalid terminals");
      return rep;
    }
    for (std::size_t j = 0; j < P.size(); ++j)
      if (!P[j].is_st_separating(seq.s, seq.t)) fail("structure", "partition " + std::to_string(j + 1) + " is not st-separating");
  }

  const auto& cv = seq.critical_values;
  for (std::size_t j = 0; j + 1 < cv.size(); ++j)
    if (cv[j + 1] < cv[j]) fail("1", "critical values decrease at index " + std::to_string(j + 1));

  // (3) boundary partitions
  if (st) {
    if (P.front().size() != 2) {
      fail("3", "first partition does not have two parts");
    } else {
      Rational best = fvalue(f, P.front());
      const ElementSet all = f.ground().all();
      auto sm = sfm_constrained(*make_function(f.ground(), [&](ElementSet a) { return f.eval(a) + f.eval(all & ~a); }),
                                bit(seq.s), bit(seq.t), backend);
      if (sm.value.base < best) fail("3", "first partition is not a minimum st-separating 2-partition");
    }
  } else if (P.front() != Partition::whole(n)) {
    fail("3", "first partition is not {V}");
  }
  if (P.back() != Partition::singletons(n)) fail("3", "last partition is not the singleton partition");

  // (4) step predicates and sizes
  for (std::size_t j = 0; j + 1 < P.size(); ++j) {
    const auto& a = P[j];
    const auto& b = P[j + 1];
    if (b.size() <= a.size()) fail("4", "sizes not strictly increasing at step " + std::to_string(j + 1));
    if (a == b) continue;
    bool ok = is_refinement_up_to_one_set(b, a).has_value();
    if (!ok && st && a.is_st_separating(seq.s, seq.t) && b.is_st_separating(seq.s, seq.t))
      ok = is_st_refinement_up_to_two_sets(b, a, seq.s, seq.t).has_value();
    if (!ok) fail("4", "step " + std::to_string(j + 1) + " is not a refinement of the allowed kind");
  }

  // (2) curve coverage: the envelope must agree with the stated attainers.
  auto envelope = [&](const Rational& lambda) {
    return st ? min_st_partition(f, lambda, seq.s, seq.t, backend).value.base : min_partition(f, lambda, backend).value.base;
  };
  auto check_at = [&](const Rational& lambda, std::size_t idx) {
    Rational g = envelope(lambda);
    if (line(f, P[idx], lambda) != g)
      fail("2", "partition " + std::to_string(idx + 1) + " misses the envelope at lambda=" + lambda.to_string());
  };
  if (cv.empty()) {
    check_at(Rational(0), 0);
  } else {
    check_at(cv.front() - Rational(1), 0);
    for (std::size_t j = 0; j < cv.size(); ++j) {
      check_at(cv[j], j);
      check_at(cv[j], j + 1);
      if (j + 1 < cv.size() && cv[j] < cv[j + 1]) check_at((cv[j] + cv[j + 1]) / Rational(2), j + 1);
    }
    check_at(cv.back() + Rational(1), P.size() - 1);
  }
  return rep;
}

nlohmann::json sequence_to_json(const PartitionSequence& seq, const GroundSet& g) {
  nlohmann::json j;
  j["kind"] = seq.kind == SequenceKind::st ? "st" : "plain";
  if (seq.kind == SequenceKind::st) {
    j["s"] = g.labels.at(seq.s);
    j["t"] = g.labels.at(seq.t);
  }
  j["partitions"] = nlohmann::json::array();
  for (const auto& p : seq.partitions) j["partitions"].push_back(format_partition(p, g));
  j["critical_values"] = nlohmann::json::array();
  for (const auto& v : seq.critical_values) j["critical_values"].push_back(v.to_string());
  j["steps"] = nlohmann::json::array();
  for (const auto& st : seq.steps) {
    nlohmann::json s;
    s["kind"] = st.kind == StepKind::refinement_up_to_one_set ? "refinement_up_to_one_set" : "st_refinement_up_to_two_sets";
    s["X"] = g.format_set(st.x);
    if (st.kind == StepKind::st_refinement_up_to_two_sets) s["Y"] = g.format_set(st.y);
    j["steps"].push_back(s);
  }
  return j;
}

PartitionSequence sequence_from_json(const nlohmann::json& j, const GroundSet& g) {
  try {
    PartitionSequence seq;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "st") {
      seq.kind = SequenceKind::st;
      seq.s = g.index_of(j.at("s").get<std::string>());
      seq.t = g.index_of(j.at("t").get<std::string>());
    } else if (kind != "plain") {
      throw InvalidInput("unknown sequence kind '" + kind + "'");
    }
    for (const auto& p : j.at("partitions")) seq.partitions.push_back(parse_partition(p.get<std::string>(), g));
    for (const auto& v : j.at("critical_values"))
      seq.critical_values.push_back(v.is_string() ? Rational::parse(v.get<std::string>()) : Rational(v.get<long long>()));
    return seq;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed sequence JSON: ") + e.what());
  }
}

nlohmann::json curve_to_json(const PiecewiseLinearCurve& c, const GroundSet& g) {
  nlohmann::json j;
  j["mode"] = c.mode == CurveMode::st ? "st" : "all";
  j["breakpoints"] = nlohmann::json::array();
  for (const auto& b : c.breakpoints) j["breakpoints"].push_back(b.to_string());
  j["segments"] = nlohmann::json::array();
  for (const auto& s : c.segments)
    j["segments"].push_back({{"partition", format_partition(s.attainer, g)},
                             {"value", s.value.to_string()},
                             {"slope", -s.attainer.size()}});
  return j;
}

std::string curve_to_csv(const PiecewiseLinearCurve& c, const GroundSet& g) {
  std::ostringstream os;
  os << "lambda_breakpoint,value,left_slope,right_slope,left_partition,right_partition\n";
  for (std::size_t i = 0; i < c.breakpoints.size(); ++i) {
    const auto& l = c.segments[i];
    const auto& r = c.segments[i + 1];
    const Rational& lam = c.breakpoints[i];
    os << lam << ',' << (l.value - lam * Rational(l.attainer.size())) << ',' << -l.attainer.size() << ','
       << -r.attainer.size() << ",\"" << format_partition(l.attainer, g) << "\",\""
       << format_partition(r.attainer, g) << "\"\n";
  }
  return os.str();
}

}  // namespace partseq
