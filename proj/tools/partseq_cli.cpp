#include <openssl/evp.h>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "partseq/instance.hpp"
#include "partseq/kpartition.hpp"
#include "partseq/orientation.hpp"
#include "partseq/pps.hpp"

using nlohmann::json;
using namespace partseq;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 2;
constexpr int kExitInvalid = 3;
constexpr int kExitInternal = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw InternalInconsistency("sha256 failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return os.str();
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

struct Report {
  json command = json::array();
  std::string digest;
  json result;
  std::optional<std::uint64_t> oracle_calls;
  int exit_status = kExitOk;

  json to_json() const {
    json j;
    j["command"] = command;
    j["instance_digest"] = digest.empty() ? json(nullptr) : json("sha256:" + digest);
    j["result"] = result;
    j["oracle_calls"] = oracle_calls ? json(*oracle_calls) : json(nullptr);
    j["exit_status"] = exit_status;
    return j;
  }
};

struct Loaded {
  Instance inst;
  std::string digest;
};

Loaded load(const std::string& path) {
  std::string bytes = read_file(path);
  json j;
  try {
    j = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw InvalidInput(path + ": " + e.what());
  }
  return {instance_from_json(j), sha256_hex(bytes)};
}

struct LoadedGraph {
  Hypergraph g;
  std::string digest;
};

LoadedGraph load_graph(const std::string& path) {
  std::string bytes = read_file(path);
  if (ends_with(path, ".json")) {
    json j;
    try {
      j = json::parse(bytes);
    } catch (const json::parse_error& e) {
      throw InvalidInput(path + ": " + e.what());
    }
    return {hypergraph_from_json(j), sha256_hex(bytes)};
  }
  try {
    return {parse_hypergraph_text(bytes), sha256_hex(bytes)};
  } catch (const InvalidInput& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

std::pair<int, int> terminals(const GroundSet& g, const std::string& s, const std::string& t) {
  std::optional<int> si = g.s_index, ti = g.t_index;
  if (!s.empty()) si = g.index_of(s);
  if (!t.empty()) ti = g.index_of(t);
  if (!si || !ti) throw InvalidInput("terminals s and t are required (instance or --s/--t)");
  if (*si == *ti) throw InvalidInput("s and t must differ");
  return {*si, *ti};
}

json value_json(const Value& v) {
  json j = v.base.to_string();
  return j;
}

json kpart_json(const KPartitionResult& r, const GroundSet& g) {
  json j;
  j["partition"] = format_partition(r.partition, g);
  j["value"] = value_json(r.value);
  j["mode"] = r.mode;
  j["candidates"] = json::array();
  for (const auto& c : r.candidates) j["candidates"].push_back({{"name", c.name}, {"value", value_json(c.value)}});
  j["bounds"] = json::array();
  for (const auto& b : r.bounds) {
    json bj = {{"name", b.name}, {"bound", b.bound.to_string()}, {"kind", b.lower ? "lower" : "upper"}};
    if (!b.lower) bj["holds"] = b.holds;
    j["bounds"].push_back(bj);
  }
  return j;
}

json x_json(const std::vector<long long>& x, const GroundSet& g) {
  json j = json::object();
  for (int v = 0; v < g.n; ++v) j[g.labels[v]] = x[v];
  return j;
}

json witness_json(const Hypergraph& g, const Partition& w, int s, int t, long long k, long long l) {
  return {{"partition", format_partition(w, g.ground())},
          {"delta", g.delta(w)},
          {"requirement", p_stkl_partition(w, s, t, k, l)}};
}

XvVariant parse_variant(const std::string& v) {
  if (v == "sequential") return XvVariant::sequential_tightening;
  if (v == "verbatim") return XvVariant::verbatim;
  if (v == "offset") return XvVariant::offset;
  throw InvalidInput("unknown variant '" + v + "'");
}

json random_instance(const std::string& kind, int n, unsigned seed) {
  if (n < 2 || n > 64) throw InvalidInput("--n must lie in [2, 64]");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> w(1, 4);
  json j;
  j["n"] = n;
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i));
  labels.front() = "s";
  labels.back() = "t";
  j["labels"] = labels;
  j["s"] = "s";
  j["t"] = "t";
  json fj;
  fj["kind"] = kind;
  if (kind == "graph_cut") {
    fj["edges"] = json::array();
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng() % 2 == 0) fj["edges"].push_back({labels[u], labels[v], w(rng)});
  } else if (kind == "hypergraph_cut") {
    fj["edges"] = json::array();
    const int m = n + static_cast<int>(rng() % n);
    for (int i = 0; i < m; ++i) {
      json mem = json::array();
      for (int v = 0; v < n; ++v)
        if (rng() % 3 == 0) mem.push_back(labels[v]);
      if (mem.size() < 2) continue;
      fj["edges"].push_back({{"members", mem}, {"weight", w(rng)}});
    }
  } else if (kind == "coverage") {
    const int items = n + 2;
    json cov = json::array();
    for (int v = 0; v < n; ++v) {
      json c = json::array();
      for (int x = 0; x < items; ++x)
        if (rng() % 3 == 0) c.push_back(x);
      cov.push_back(c);
    }
    fj["covering"] = cov;
    json iw = json::array();
    for (int x = 0; x < items; ++x) iw.push_back(w(rng));
    fj["item_weights"] = iw;
  } else {
    throw InvalidInput("--kind must be graph_cut, hypergraph_cut or coverage");
  }
  j["function"] = fj;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Principal partition sequences, st-separating k-partition and hypergraph orientation"};
  app.require_subcommand(1);

  int jobs = 1;
  int budget_n = kExactKPartitionBound;
  app.add_option("--jobs", jobs, "worker threads for independent sub-solves")->check(CLI::PositiveNumber);
  app.add_option("--budget-n", budget_n, "largest n for exhaustive enumeration")->check(CLI::Range(1, 20));

  std::string instance_path, out_format = "json", seq_path;
  bool st = false, exact = false;
  int k_parts = 0;

  auto* pps = app.add_subcommand("pps", "compute a principal partition sequence");
  pps->add_option("instance", instance_path)->required();
  pps->add_flag("--st", st, "st-separating sequence");
  pps->add_option("--out", out_format)->check(CLI::IsMember({"json", "csv"}));

  std::string curve_format = "csv";
  auto* crv = app.add_subcommand("curve", "breakpoints of g or g^{s,t}");
  crv->add_option("instance", instance_path)->required();
  crv->add_flag("--st", st, "st-separating partitions only");
  crv->add_option("--out", curve_format)->check(CLI::IsMember({"json", "csv"}));

  auto* kp = app.add_subcommand("kpart", "st-separating k-partition");
  kp->add_option("instance", instance_path)->required();
  kp->add_option("k", k_parts)->required();
  kp->add_flag("--exact", exact, "exhaustive optimum instead of the approximation");

  auto* val = app.add_subcommand("validate", "check a sequence file against an instance");
  val->add_option("sequence", seq_path)->required();
  val->add_option("instance", instance_path)->required();

  std::string action, graph_path, s_label, t_label, variant = "sequential";
  long long k = 0, l = 0, k1 = -1, k2 = -1;
  auto* ori = app.add_subcommand("orient", "hypergraph orientation");
  ori->add_option("action", action)->required()->check(CLI::IsMember({"check", "find", "maxell", "maxk", "reorient"}));
  ori->add_option("hypergraph", graph_path)->required();
  ori->add_option("--k", k);
  ori->add_option("--l", l);
  ori->add_option("--k1", k1);
  ori->add_option("--k2", k2);
  ori->add_option("--s", s_label);
  ori->add_option("--t", t_label);
  ori->add_option("--variant", variant)->check(CLI::IsMember({"sequential", "verbatim", "offset"}));

  std::string gen_kind = "graph_cut";
  int gen_n = 6;
  unsigned seed = 1;
  auto* gen = app.add_subcommand("gen", "emit a random instance");
  gen->add_option("--kind", gen_kind);
  gen->add_option("--n", gen_n);
  gen->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  Report rep;
  for (int i = 1; i < argc; ++i) rep.command.push_back(argv[i]);
  const auto start = std::chrono::steady_clock::now();
  std::string raw;  // non-JSON output (CSV)
  std::optional<Hypergraph> graph;

  try {
    if (gen->parsed()) {
      std::cout << random_instance(gen_kind, gen_n, seed).dump(2) << '\n';
      return kExitOk;
    }
    if (pps->parsed() || crv->parsed() || kp->parsed() || val->parsed()) {
      Loaded L = load(instance_path);
      rep.digest = L.digest;
      const GroundSet& g = L.inst.ground;
      const Oracle& f = L.inst.f;
      if (pps->parsed()) {
        PartitionSequence seq;
        if (st) {
          auto [s, t] = terminals(g, "", "");
          seq = compute_st_pps(f, s, t);
        } else {
          seq = compute_pps(f);
        }
        if (out_format == "csv") {
          std::ostringstream os;
          os << "index,size,critical_value,partition\n";
          for (std::size_t i = 0; i < seq.partitions.size(); ++i) {
            os << i + 1 << ',' << seq.partitions[i].size() << ',';
            if (i < seq.critical_values.size()) os << seq.critical_values[i].to_string();
            os << ",\"" << format_partition(seq.partitions[i], g) << "\"\n";
          }
          raw = os.str();
        }
        rep.result = sequence_to_json(seq, g);
      } else if (crv->parsed()) {
        PiecewiseLinearCurve c;
        if (st) {
          auto [s, t] = terminals(g, "", "");
          c = curve(f, CurveMode::st, s, t);
        } else {
          c = curve(f, CurveMode::all);
        }
        if (curve_format == "csv") raw = curve_to_csv(c, g);
        rep.result = curve_to_json(c, g);
      } else if (kp->parsed()) {
        auto [s, t] = terminals(g, "", "");
        if (k_parts < 2 || k_parts > g.n) throw InvalidInput("k must lie in [2, n]");
        auto r = exact ? exact_st_k_partition(*f, s, t, k_parts, budget_n) : approx_st_k_partition(f, s, t, k_parts);
        rep.result = kpart_json(r, g);
      } else {
        std::string bytes = read_file(seq_path);
        json sj;
        try {
          sj = json::parse(bytes);
        } catch (const json::parse_error& e) {
          throw InvalidInput(seq_path + ": " + e.what());
        }
        // accept a bare sequence or a report wrapping one
        if (sj.contains("result") && sj["result"].is_object()) sj = sj["result"];
        auto seq = sequence_from_json(sj, g);
        auto report = validate_sequence(seq, *f);
        json v = json::array();
        for (const auto& x : report.violations) v.push_back({{"property", x.property}, {"detail", x.detail}});
        rep.result = {{"ok", report.ok()}, {"violations", v}};
        if (!report.ok()) rep.exit_status = kExitInfeasible;
      }
      rep.oracle_calls = f->calls();
    } else if (ori->parsed()) {
      LoadedGraph L = load_graph(graph_path);
      rep.digest = L.digest;
      graph = L.g;
      const Hypergraph& G = *graph;
      auto [s, t] = terminals(G.ground(), s_label, t_label);
      OrientationOptions opts;
      opts.variant = parse_variant(variant);
      json r;
      r["s"] = G.ground().labels[s];
      r["t"] = G.ground().labels[t];
      if (action == "check") {
        auto fr = check_feasibility(G, s, t, k, l);
        r["feasible"] = fr.feasible;
        if (fr.nontrivial_min) r["nontrivial_min"] = *fr.nontrivial_min;
        r["st_min"] = fr.st_min;
        if (fr.witness) {
          r["witness"] = witness_json(G, *fr.witness, s, t, k, l);
          rep.exit_status = kExitInfeasible;
        }
      } else if (action == "find") {
        auto cert = find_orientation(G, s, t, k, l, opts);
        r["feasible"] = cert.feasible;
        r["checked"] = cert.checked;
        if (cert.feasible) {
          r["x"] = x_json(cert.x, G.ground());
          r["orientation"] = orientation_to_json(*cert.orientation);
          r["orientation_text"] = format_orientation_text(*cert.orientation);
        } else {
          r["witness"] = witness_json(G, *cert.witness, s, t, k, l);
          rep.exit_status = kExitInfeasible;
        }
      } else if (action == "maxell") {
        auto e = max_ell_given_k(G, s, t, k);
        r["k"] = k;
        r["ell"] = e.ell;
        r["certificate"] = {{"partition", format_partition(e.certificate, G.ground())},
                            {"delta", G.delta(e.certificate)}};
      } else if (action == "maxk") {
        auto kr = max_k_given_ell(G, s, t, l);
        r["l"] = l;
        r["k"] = kr.k;
        r["alpha"] = kr.alpha;
        r["beta"] = kr.beta;
        r["alpha_certificate"] = format_partition(kr.alpha_certificate, G.ground());
        r["beta_certificate"] = format_partition(kr.beta_certificate, G.ground());
      } else {
        if (k1 < 0 || k2 < 0) throw InvalidInput("reorient needs --k1 and --k2");
        auto o = reorient_k1_k2(G, s, t, k, l, k1, k2, opts);
        r["k"] = k;
        r["k1"] = k1;
        r["k2"] = k2;
        r["orientation"] = orientation_to_json(o);
        r["orientation_text"] = format_orientation_text(o);
      }
      rep.result = r;
    }
  } catch (const InfeasibleError& e) {
    rep.exit_status = kExitInfeasible;
    rep.result = {{"feasible", false}, {"error", e.what()}};
    if (graph)
      rep.result["witness"] = {{"partition", format_partition(e.witness(), graph->ground())},
                               {"delta", graph->delta(e.witness())}};
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    rep.exit_status = kExitInvalid;
    rep.result = {{"error", e.what()}};
  } catch (const InternalInconsistency& e) {
    std::cerr << "internal inconsistency: " << e.what() << '\n';
    rep.exit_status = kExitInternal;
    rep.result = {{"error", e.what()}};
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    rep.exit_status = kExitInternal;
    rep.result = {{"error", e.what()}};
  }

  const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  std::cerr << "elapsed_ms " << std::fixed << std::setprecision(1) << ms << " jobs " << jobs << '\n';
  if (!raw.empty() && rep.exit_status == kExitOk)
    std::cout << raw;
  else
    std::cout << rep.to_json().dump(2) << '\n';
  return rep.exit_status;
}
