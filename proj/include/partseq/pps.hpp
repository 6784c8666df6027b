#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "partseq/oracle.hpp"
#include "partseq/solver.hpp"

namespace partseq {

enum class CurveMode { all, st };

struct CurveSegment {
  Partition attainer;
  Rational value;  // f(attainer); the segment line is value − λ·|attainer|
};

// Lower envelope g or g^{s,t}. segments[i] is the attainer left of breakpoints[i].
struct PiecewiseLinearCurve {
  CurveMode mode = CurveMode::all;
  std::vector<Rational> breakpoints;
  std::vector<CurveSegment> segments;

  Rational evaluate(const Rational& lambda) const;
  int slope(std::size_t segment) const { return -segments[segment].attainer.size(); }
};

struct CurveOptions {
  SfmBackend backend = SfmBackend::automatic;
};

PiecewiseLinearCurve curve(const Oracle& f, CurveMode mode, std::optional<int> s = {}, std::optional<int> t = {},
                           const CurveOptions& options = {});

enum class SequenceKind { plain, st };
enum class StepKind { refinement_up_to_one_set, st_refinement_up_to_two_sets };

struct SequenceStep {
  StepKind kind = StepKind::refinement_up_to_one_set;
  ElementSet x = 0;
  ElementSet y = 0;  // only for {s,t}-refinements
};

struct PartitionSequence {
  SequenceKind kind = SequenceKind::plain;
  int s = -1;
  int t = -1;
  std::vector<Partition> partitions;
  std::vector<Rational> critical_values;
  std::vector<SequenceStep> steps;
};

struct PpsOptions {
  // Apply the strictness perturbation before chain construction.
  bool perturb = true;
  // Override the perturbation size; default from strict_perturbation_eps.
  std::optional<Rational> eps;
  SfmBackend backend = SfmBackend::automatic;
};

PartitionSequence compute_pps(const Oracle& f, const PpsOptions& options = {});
PartitionSequence compute_st_pps(const Oracle& f, int s, int t, const PpsOptions& options = {});

// Chain from the min-card attainer p to the max-card attainer q at λ. Terminals absent for the
// plain case.
std::vector<Partition> refinement_chain(const SetFunction& f, const Partition& p, const Partition& q,
                                        const Rational& lambda, std::optional<std::pair<int, int>> st = {});

struct Violation {
  std::string property;  // "1".."4" or "structure"
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate_sequence(const PartitionSequence& seq, const SetFunction& f,
                                   SfmBackend backend = SfmBackend::automatic);

// Fills steps from consecutive partitions; throws InvalidInput when a step has neither shape.
std::vector<SequenceStep> classify_steps(const PartitionSequence& seq);

nlohmann::json sequence_to_json(const PartitionSequence& seq, const GroundSet& g);
PartitionSequence sequence_from_json(const nlohmann::json& j, const GroundSet& g);
nlohmann::json curve_to_json(const PiecewiseLinearCurve& c, const GroundSet& g);
// Rows: lambda_breakpoint,value,left_slope,right_slope,left_partition,right_partition
std::string curve_to_csv(const PiecewiseLinearCurve& c, const GroundSet& g);

}  // namespace partseq
