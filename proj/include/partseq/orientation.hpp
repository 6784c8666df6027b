#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "partseq/errors.hpp"
#include "partseq/oracle.hpp"
#include "partseq/solver.hpp"

namespace partseq {

struct Hyperedge {
  ElementSet members = 0;
  long long multiplicity = 1;
};

class Hypergraph {
 public:
  Hypergraph() = default;
  // Rejects edges with fewer than two members and multiplicities below one.
  Hypergraph(GroundSet ground, std::vector<Hyperedge> edges);

  const GroundSet& ground() const { return ground_; }
  int n() const { return ground_.n; }
  const std::vector<Hyperedge>& edges() const { return edges_; }
  long long total_copies() const;
  // copies of edges meeting at least two blocks
  long long delta(const Partition& p) const;
  // copies of edges meeting both U and V∖U
  long long crossing(ElementSet u) const;
  // copies of edges inside U
  long long inside(ElementSet u) const;
  long long degree(int v) const { return crossing(bit(v)); }

 private:
  GroundSet ground_;
  std::vector<Hyperedge> edges_;
};

// heads[e][c] is the head of copy c of edge e.
struct Orientation {
  Hypergraph graph;
  std::vector<std::vector<int>> heads;

  void validate() const;
  std::vector<long long> indegrees() const;
  // copies with head in U and some member outside U
  long long in_degree(ElementSet u) const;
};

Orientation arbitrary_orientation(const Hypergraph& g);
Oracle make_indegree(const Orientation& o);
Oracle make_cut(const Hypergraph& g);

long long delta_partition(const Hypergraph& g, const Partition& p);
// 0 on ∅ and V; max{k,l} when t ∈ X ⊆ V−s; k otherwise.
long long p_stkl(ElementSet x, ElementSet all, int s, int t, long long k, long long l);
long long p_stkl_partition(const Partition& p, int s, int t, long long k, long long l);

struct FeasibilityResult {
  bool feasible = true;
  std::optional<Partition> witness;
  // min over nontrivial partitions of |δ(P)| − k|P| (absent for n = 1)
  std::optional<long long> nontrivial_min;
  // min over st-separating partitions of |δ(P)| − k(|P|−1) − max{k,l}
  long long st_min = 0;
};

FeasibilityResult check_feasibility(const Hypergraph& g, int s, int t, long long k, long long l,
                                    SfmBackend backend = SfmBackend::automatic);

// How x_v is formed in the orientation algorithm. Only sequential_tightening is correct in general;
// the other two are kept for comparison.
enum class XvVariant { sequential_tightening, verbatim, offset };

std::vector<long long> compute_x(const Hypergraph& g, int s, int t, long long k, long long l,
                                 XvVariant variant = XvVariant::sequential_tightening,
                                 SfmBackend backend = SfmBackend::automatic);

struct OrientationCertificate {
  bool feasible = false;
  std::optional<Orientation> orientation;
  std::optional<Partition> witness;
  std::vector<long long> x;
  std::vector<std::string> checked;
};

struct OrientationOptions {
  XvVariant variant = XvVariant::sequential_tightening;
  SfmBackend backend = SfmBackend::automatic;
};

OrientationCertificate find_orientation(const Hypergraph& g, int s, int t, long long k, long long l,
                                        const OrientationOptions& options = {});

// Thrown when no orientation has the requested indegrees; carries Y with x(Y) < i_G(Y), or
// Y = V when the sum is wrong.
class IndegreeInfeasible : public InvalidInput {
 public:
  IndegreeInfeasible(const std::string& what, ElementSet deficient)
      : InvalidInput(what), deficient_(deficient) {}
  ElementSet deficient() const { return deficient_; }

 private:
  ElementSet deficient_;
};

// A (k,(s,t),l) requirement that cannot be met; the partition violates the partition condition.
class InfeasibleError : public InvalidInput {
 public:
  InfeasibleError(const std::string& what, Partition witness) : InvalidInput(what), witness_(std::move(witness)) {}
  const Partition& witness() const { return witness_; }

 private:
  Partition witness_;
};

Orientation realize_indegree(const Hypergraph& g, const std::vector<long long>& x);

struct VerifyResult {
  bool ok = true;
  std::optional<ElementSet> violating;
  std::string condition;  // "k", "l", "k1", "k2"
};

VerifyResult verify_orientation(const Orientation& o, int s, int t, long long k, long long l);
// k-hyperarc-connectivity plus k1 paths s→t and k2 paths t→s.
VerifyResult verify_thresholds(const Orientation& o, int s, int t, long long k, long long k1, long long k2);

struct PathStep {
  int edge = 0;
  int copy = 0;
  int from = 0;  // a member of the edge other than its head
  int to = 0;    // the head
};

struct PathPacking {
  long long count = 0;
  std::vector<std::vector<PathStep>> paths;
};

PathPacking st_path_packing(const Orientation& o, int s, int t);

struct EllResult {
  long long ell = 0;
  Partition certificate;
};

EllResult max_ell_given_k(const Hypergraph& g, int s, int t, long long k, SfmBackend backend = SfmBackend::automatic);

struct KResult {
  long long k = 0;
  long long alpha = 0;
  long long beta = 0;
  Partition alpha_certificate;
  Partition beta_certificate;
};

KResult max_k_given_ell(const Hypergraph& g, int s, int t, long long l, SfmBackend backend = SfmBackend::automatic);

Orientation reorient_k1_k2(const Hypergraph& g, int s, int t, long long k, long long l, long long k1, long long k2,
                           const OrientationOptions& options = {});

// "n m", optional "labels a b ...", then per edge "mult v1 v2 ..." (labels or indices),
// orientations append one "head=v" per copy.
Hypergraph parse_hypergraph_text(const std::string& text);
std::string format_hypergraph_text(const Hypergraph& g);
Orientation parse_orientation_text(const std::string& text);
std::string format_orientation_text(const Orientation& o);

nlohmann::json hypergraph_to_json(const Hypergraph& g);
Hypergraph hypergraph_from_json(const nlohmann::json& j);
nlohmann::json orientation_to_json(const Orientation& o);
Orientation orientation_from_json(const nlohmann::json& j);

}  // namespace partseq
