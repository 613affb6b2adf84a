#pragma once

// Verdicts on (VRC) and (LR) with machine-checkable certificates.

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "vrc/euclid_witness.hpp"
#include "vrc/families.hpp"
#include "vrc/graph_model.hpp"
#include "vrc/matgrp.hpp"

namespace vrc {

enum class Status { VRC, NOT_VRC, UNKNOWN, LR, NOT_LR };
std::string to_string(Status s);
std::optional<Status> status_from_string(const std::string& s);

struct TreeCriterion {};

struct BalancedCycle {
  std::vector<std::string> tree;
  std::string edge;
  AbElement a;  // image of omega_e(c) in A
  AbElement b;  // image of alpha_e(c) in A
  bool trivial_intersection = false;
  std::optional<PowerConjugacy> power;
};

struct NotBalanced {
  std::vector<std::string> tree;
  std::string edge;
  AbElement a;
  AbElement b;
};

struct NLICertificate {
  std::vector<std::string> tree;
  std::vector<std::string> edges;         // off-tree edges, in vector order
  std::vector<RationalVector> vectors;    // omega then alpha image per edge
  std::vector<std::size_t> J;
  std::size_t extended_rank = 0;          // rank of [J lifts | tree and torsion relations]
  std::size_t relation_rank = 0;
};

struct GramInfeasible {
  std::vector<std::string> tree;
  std::size_t d = 0;
  IntegerMatrix constraints;  // rows over the unknowns s_ij, i <= j, row-major
  std::string reason;
};

struct WitnessVerified {
  std::vector<std::string> tree;
  std::string source;  // "user" or a catalogue name
  EuclideanWitness witness;
};

struct FamilyClosedForm {
  FamilyVerdicts facts;
};

struct MatrixGroupFiniteness {
  MatGroupGens gens;
  FinitenessResult result;
};

struct AutomorphismOrder {
  IntegerMatrix matrix;        // xi on N in canonical coordinates of N
  FgAbGroup n_group;
  Order order;
};

struct Attempted {
  std::vector<std::string> criteria;
};

using Certificate = std::variant<TreeCriterion, BalancedCycle, NotBalanced, NLICertificate,
                                 GramInfeasible, WitnessVerified, FamilyClosedForm,
                                 MatrixGroupFiniteness, AutomorphismOrder, Attempted>;

std::string certificate_type(const Certificate& c);

struct Verdict {
  Status status = Status::UNKNOWN;
  Certificate certificate = Attempted{};
  std::vector<std::string> notes;
};

/// Invalid input for a decider: graph violations or an unmet precondition.
class PreconditionError : public std::runtime_error {
 public:
  PreconditionError(const std::string& msg, std::vector<Violation> v = {})
      : std::runtime_error(msg), violations(std::move(v)) {}
  std::vector<Violation> violations;
};

// ------------------------------------------------------------------ NLI

/// Greedy by first occurrence; absent if some vector is zero or the class
/// representatives are dependent.
std::optional<std::vector<std::size_t>> near_lin_indep(const std::vector<RationalVector>& vs);

/// For each vector, the position in J of the member it equals up to sign, and
/// the sign; absent if J does not certify near linear independence of vs.
std::optional<std::vector<std::pair<std::size_t, int>>> nli_assignment(
    const std::vector<RationalVector>& vs, const std::vector<std::size_t>& J);

// ------------------------------------------------------------ balancedness

struct BalanceResult {
  bool balanced = false;
  Certificate certificate;
};

/// Requires chi = 0, e the unique positive off-tree edge, G_e cyclic.
BalanceResult balanced_offtree_cycle(const GraphOfGroups& g, const SpanningTree& t,
                                     std::size_t e);

// ---------------------------------------------------------------- Gram test

struct GramAnalysis {
  std::optional<GramInfeasible> obstruction;
  bool exact = false;
  std::string note;
};

GramAnalysis gram_obstruction(const GraphOfGroups& g, const SpanningTree& t);

// --------------------------------------------------------------- pipelines

struct VrcOptions {
  enum class TreeMode { Exhaust, Canonical, Explicit };
  TreeMode tree_mode = TreeMode::Exhaust;
  std::vector<std::string> tree_edges;  // Explicit mode
  std::size_t tree_cap = 256;
  std::vector<EuclideanWitness> witnesses;
  bool builtin_witnesses = true;
};

/// Throws PreconditionError for an invalid graph or an explicit non-tree.
Verdict decide_vrc(const GraphOfGroups& g, const VrcOptions& options = {});

/// x, y of finite order in GL(n, Z); throws PreconditionError otherwise.
Verdict decide_lr_amalgam_virtZn(std::size_t n, const IntegerMatrix& x, const IntegerMatrix& y);

/// N = <n_gens> in A; xi sends n_gens[i] to xi_images[i]. Throws
/// PreconditionError unless xi is a well-defined automorphism of N.
Verdict decide_lr_hnn_abelian(const FgAbGroup& A, const std::vector<AbElement>& n_gens,
                              const std::vector<AbElement>& xi_images);

/// One vertex with one loop: (LR) through the automorphism criterion when
/// alpha and omega have the same image, NOT_LR when the group is not balanced.
Verdict decide_lr_single_hnn(const GraphOfGroups& g);

/// Re-validates a certificate without consulting the decider. Empty on
/// success, else the reason.
std::optional<std::string> replay(const Verdict& v, const GraphOfGroups* g);

}  // namespace vrc
