#ifndef DOFAM_FAMILY_HPP
#define DOFAM_FAMILY_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dofam/graph.hpp"
#include "dofam/separation.hpp"
#include "dofam/table.hpp"

namespace dofam {

/// Something that answers conditional-independence queries over a roster.
/// Answers must be symmetric in A and B and stable across repeated calls.
class CiSource {
 public:
  virtual ~CiSource() = default;
  virtual std::size_t size() const = 0;
  virtual bool independent(NodeSet a, NodeSet b, NodeSet c) const = 0;
  /// Whether any conditioning set may be asked about (needed by the every-C arc rule).
  virtual bool supports_arbitrary_conditioning() const { return true; }
  /// The underlying table, when there is one.
  virtual const JointTable* table() const { return nullptr; }
};

/// Exact answers from a joint table; results are memoized behind a mutex.
class TableSource : public CiSource {
 public:
  explicit TableSource(JointTable t) : table_(std::move(t)) {}
  std::size_t size() const override { return table_.var_count(); }
  bool independent(NodeSet a, NodeSet b, NodeSet c) const override;
  const JointTable* table() const override { return &table_; }

 private:
  JointTable table_;
  mutable std::mutex mu_;
  mutable std::unordered_map<std::uint64_t, std::unordered_map<std::uint32_t, bool>> cache_;
};

/// Sigma-separation in a fixed graph.
class SeparationSource : public CiSource {
 public:
  explicit SeparationSource(const Bdmg& g) : graph_(g), sep_(g) {}
  std::size_t size() const override { return graph_.size(); }
  bool independent(NodeSet a, NodeSet b, NodeSet c) const override { return sep_(a, b, c); }
  const Bdmg& graph() const { return graph_; }

 private:
  Bdmg graph_;
  SigmaSeparator sep_;
};

/// One CI source per node i, read as the law after intervening on i.
class InterventionalFamily {
 public:
  InterventionalFamily(std::vector<std::string> roster, std::vector<std::shared_ptr<const CiSource>> sources);

  /// tables[i] is the law under intervention on roster node i; the roster is taken from
  /// tables[0] and the others are reordered to match.
  static InterventionalFamily from_tables(std::vector<JointTable> tables);
  /// Sources answer by sigma-separation in the ground truth with node i intervened.
  static InterventionalFamily oracle(const Bdmg& ground_truth);

  std::size_t size() const { return roster_.size(); }
  const std::vector<std::string>& roster() const { return roster_; }
  const std::string& name(NodeId i) const { return roster_.at(i); }
  NodeId index(const std::string& label) const;

  const CiSource& source(NodeId i) const { return *sources_.at(i); }
  bool independent(NodeId i, NodeSet a, NodeSet b, NodeSet c) const { return sources_.at(i)->independent(a, b, c); }
  bool independent(NodeId i, NodeId a, NodeId b, NodeSet c) const {
    return independent(i, NodeSet::single(a), NodeSet::single(b), c);
  }

  bool table_backed() const;
  /// Throws UnsupportedCapability when source i has no table.
  const JointTable& table(NodeId i) const;
  const std::optional<Bdmg>& ground_truth() const { return ground_truth_; }

 private:
  std::vector<std::string> roster_;
  std::vector<std::shared_ptr<const CiSource>> sources_;
  std::optional<Bdmg> ground_truth_;
};

}  // namespace dofam

#endif
