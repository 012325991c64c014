#pragma once

// The degeneration pipeline: read the blow-up parameters off the gluing data
// at every persistent node, replace those nodes by chains of stacky P^1s, and
// contract the components on which the bundle became torsion.

#include "stackydeg/blowup.hpp"
#include "stackydeg/curve.hpp"
#include "stackydeg/dvrlinalg.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace stackydeg {

/// Malformed or inconsistent input. `pointer` is a JSON pointer to the
/// offending field when one is known.
class InputError : public std::invalid_argument {
 public:
  InputError(std::string pointer, const std::string& message)
      : std::invalid_argument(pointer.empty() ? message : pointer + ": " + message),
        pointer_(std::move(pointer)) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

class EngineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DegenerationInput {
  TwistedCurve curve;
  MultiDegree multidegree;
  GradingSpec grading;
  /// Torsor gluing over the generic point of each persistent node, n x n.
  std::map<NodeId, Mat> gluing;
  /// Cyclic group mu_k acting on the branches at a node (Theta-type data).
  std::map<NodeId, int> extra_mu;
  AmpleDegrees ample;
};

struct FactorParams {
  std::size_t factor = 0;
  int m = 0;
  int d = 1;
  GradingSpec::Source d_source = GradingSpec::Source::Supplied;
};

struct BlowupParameters {
  SnfResult snf;
  std::vector<FactorParams> params;
};

/// Smith normal form of the gluing; the sorted diagonal valuations are
/// paired with the generation bounds factor by factor.
BlowupParameters compute_blowup_parameters(const Mat& gluing, const GradingSpec& grading);

struct GluingShift {
  std::int64_t m1 = 0;  ///< normalized valuation at the mu_k node
  std::int64_t m2 = 0;  ///< always 0
  std::int64_t global_shift = 0;
  std::int64_t delta = 0;  ///< one-sided shift is k * delta
};

/// Applies a global shift (c, c) and a one-sided shift (k*delta, 0) to reach
/// (m1 - m2 + k*delta, 0) with delta the least non-negative value making the
/// first entry >= 0.
GluingShift normalize_gluing_valuations(std::int64_t m1, std::int64_t m2, int k);

/// Curve-level wrapper: the component must be genus 0 with exactly two nodes.
GluingShift normalize_destabilizing_gluing(const TwistedCurve& curve, ComponentId comp,
                                           std::int64_t m1, std::int64_t m2, int k);

struct InsertResult {
  TwistedCurve curve;
  MultiDegree multidegree;
  std::vector<ComponentId> inserted;  ///< in factor order
  std::vector<NodeId> new_nodes;      ///< the smoothing node of each inserted component
};

/// Replaces a persistent node by a chain with one genus-0 component per
/// factor with m_k > 0. The persistent node stays attached to the first
/// endpoint; each new component is inserted between it and the previous
/// exceptional (the original second endpoint for the first factor).
InsertResult insert_exceptional_chain(const TwistedCurve& curve, const MultiDegree& md,
                                      NodeId node, const std::vector<FactorParams>& params,
                                      std::optional<int> extra_mu = {});

struct ContractStep {
  ComponentId removed = 0;
  std::array<NodeId, 2> merged{};
  NodeId result_node = 0;
  int k = 1;
  AnSing p_stack;  ///< stack-level types of the two merged points
  AnSing q_stack;
  AnSing result;   ///< coarse type at the image point
};

struct ContractResult {
  TwistedCurve curve;
  MultiDegree multidegree;
  std::vector<ContractStep> steps;
};

/// Repeatedly removes destabilizing genus-0 components with two distinct
/// nodes and zero degree in every factor, merging their nodes. Unequal
/// stabilizers at the two nodes raise EngineError.
ContractResult contract_torsion_components(const TwistedCurve& curve, const MultiDegree& md,
                                           const AmpleDegrees& ample = {});

// --- step log ---------------------------------------------------------------

struct NormalizeRecord {
  ComponentId comp = 0;
  NodeId shifted_node = 0;  ///< carries the one-sided shift
  NodeId other_node = 0;
  int k = 1;
  std::int64_t m1_before = 0, m2_before = 0;
  GluingShift shift;
  std::vector<NodeId> reoriented;  ///< nodes whose endpoints were swapped
  std::vector<Rat> degree_totals;
};

struct SnfRecord {
  NodeId node = 0;
  bool inverted = false;  ///< gluing replaced by its inverse to make val(det) >= 0
  SnfResult snf;
  std::vector<FactorParams> params;
  std::vector<Rat> degree_totals;
};

struct InsertRecord {
  NodeId node = 0;
  std::optional<int> extra_mu;
  std::vector<FactorParams> params;
  std::vector<ComponentId> inserted;
  std::vector<NodeId> new_nodes;
  std::vector<Rat> degree_totals;
};

struct ContractRecord {
  ContractStep step;
  std::vector<Rat> degree_totals;
};

using LogEntry = std::variant<NormalizeRecord, SnfRecord, InsertRecord, ContractRecord>;

struct DegenerationOutput {
  TwistedCurve limit_curve;
  MultiDegree limit_multidegree;
  AmpleDegrees limit_ample;
  std::vector<LogEntry> log;
  ValidationReport validation;
  std::vector<std::string> notes;
};

/// Raised when the pipeline cannot finish or the limit fails validation;
/// carries everything produced up to that point.
class DegenerationFailure : public EngineError {
 public:
  DegenerationFailure(const std::string& what, DegenerationOutput partial)
      : EngineError(what), partial_(std::move(partial)) {}
  const DegenerationOutput& partial() const { return partial_; }

 private:
  DegenerationOutput partial_;
};

/// Checks the input invariants; throws InputError with a JSON pointer.
void check_input(const DegenerationInput& input);

DegenerationOutput degenerate(const DegenerationInput& input);

}  // namespace stackydeg
