#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pathpair/error.hpp"
#include "pathpair/graph.hpp"
#include "pathpair/pairing.hpp"

namespace pathpair {

// Classes of K_{m,m}□K_{m,m} in clockwise order. Each step flips one factor:
// out of A11 and A22 the second factor changes, out of A12 and A21 the first.
enum class ClassId : std::uint8_t { kA11 = 0, kA12 = 1, kA22 = 2, kA21 = 3 };

const char* to_string(ClassId c);
inline ClassId next(ClassId c) { return static_cast<ClassId>((static_cast<int>(c) + 1) % 4); }

struct BVertex {
  ClassId cls = ClassId::kA11;
  std::uint32_t u = 0;  // index within the first factor's class
  std::uint32_t v = 0;  // index within the second factor's class
  friend bool operator==(const BVertex&, const BVertex&) = default;
};

// Index arithmetic for cartesian_product(complete_bipartite(m,m),
// complete_bipartite(m,m)): factor vertex x is A1 for x < m, A2 otherwise, and
// product vertex (x,y) has index x*2m + y.
class KmmLayout {
 public:
  explicit KmmLayout(std::size_t m) : m_(m) {}
  std::size_t m() const { return m_; }
  Vertex vertex(BVertex b) const;
  BVertex coords(Vertex p) const;
  ClassId class_of(Vertex p) const { return coords(p).cls; }

 private:
  std::size_t m_;
};

// Route of one shipped terminal during swarming: `from` moved into class `to`
// by the +1 / +2 rule, clockwise for diagonal classes.
std::vector<Vertex> swarm_path(const KmmLayout& layout, Vertex from, ClassId to);

struct KmmOptions {
  bool strict = true;  // m >= 104, even, full pairing; explore mode: any even m >= 6
};

// Three-phase router. The phase methods must be called in order; route_full
// runs all of them. Errors carry the failing phase in what().
class KmmRouter {
 public:
  KmmRouter(const Graph& product, std::size_t m, const Pairing& pairing, KmmOptions opts = {});

  // Picks the class hosting every pair so that no class exceeds m^2/2
  // (exactly m^2/2 for a full pairing). Throws Error(kBalancingFailed).
  void choose_destinations();
  // Ships one terminal of every cross-class pair. Throws Error(kEdgeConflict).
  void swarm();
  // Assigns pairs to columns/rows of the next class and ships both terminals
  // there. Throws Error(kMatchingFailed) or Error(kRepairStalled).
  void lineup();
  // Joins each pair through one common neighbour in the class after that.
  void final_match();

  PathSystem system() const;
  const nlohmann::json& metrics() const { return metrics_; }
  const std::string& phase() const { return phase_; }

  // Per-class hosted pair counts after choose_destinations.
  std::vector<std::size_t> class_loads() const;
  ClassId host_class(std::size_t pair) const { return host_[pair]; }
  // -1: no terminal shipped, 0: first, 1: second
  int shipped_terminal(std::size_t pair) const { return shipped_[pair]; }
  // Line-up column (line index in the next class), -1 if unassigned.
  int column(std::size_t pair) const { return column_[pair]; }
  // Current host vertex of a terminal (side 0 or 1) after swarming.
  Vertex host(std::size_t pair, int side) const { return head_[2 * pair + side].back(); }

 private:
  void check(bool ok, ErrorCode code, const std::string& what) const;
  // head of the first terminal, `middle`, then the second head reversed
  Path through(std::size_t p, std::span<const Vertex> middle) const;

  const Graph& g_;
  KmmLayout layout_;
  std::size_t m_;
  std::vector<TerminalPair> pairs_;
  KmmOptions opts_;
  EdgeLedger ledger_;
  std::vector<ClassId> host_;
  std::vector<int> shipped_;
  std::vector<std::vector<Vertex>> head_;  // per terminal: original .. current host
  std::vector<char> joined_;
  std::vector<Path> finished_;
  std::vector<int> column_;
  std::vector<Vertex> landing_;  // per terminal, after line-up
  std::vector<std::uint8_t> hosted_;
  std::vector<std::uint32_t> swarm_edges_;
  std::string phase_ = "init";
  nlohmann::json metrics_;
};

struct KmmOutcome {
  bool ok = false;
  std::string failed_phase;
  std::optional<ErrorCode> error;
  std::string message;
  PathSystem system;
  VerifyReport report;
  nlohmann::json metrics;
};

// End-to-end router for K_{m,m}□K_{m,m}. Invalid inputs (wrong graph, odd m,
// strict-mode thresholds) throw Error(kPreconditionViolated); a phase failure
// is returned with ok == false. ok is only set after verify accepted the
// system.
KmmOutcome route_full(const Graph& product, std::size_t m, const Pairing& pairing,
                      KmmOptions opts = {});

// The product graph itself.
Graph kmm_product(std::size_t m);

}  // namespace pathpair
