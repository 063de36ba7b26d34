#include "dofam/family.hpp"

#include "dofam/errors.hpp"

namespace dofam {

bool TableSource::independent(NodeSet a, NodeSet b, NodeSet c) const {
  if (b.bits() < a.bits()) std::swap(a, b);
  const std::uint64_t ab = (std::uint64_t{a.bits()} << 32) | b.bits();
  {
    std::lock_guard lock(mu_);
    auto it = cache_.find(ab);
    if (it != cache_.end()) {
      auto jt = it->second.find(c.bits());
      if (jt != it->second.end()) return jt->second;
    }
  }
  const bool r = table_.independent(a, b, c);
  std::lock_guard lock(mu_);
  cache_[ab][c.bits()] = r;
  return r;
}

InterventionalFamily::InterventionalFamily(std::vector<std::string> roster,
                                           std::vector<std::shared_ptr<const CiSource>> sources)
    : roster_(std::move(roster)), sources_(std::move(sources)) {
  if (roster_.size() != sources_.size()) {
    throw RosterMismatch("family needs exactly one source per node (" + std::to_string(roster_.size()) +
                         " nodes, " + std::to_string(sources_.size()) + " sources)");
  }
  if (roster_.size() > kMaxNodes) throw RosterMismatch("family roster too large");
  for (const auto& s : sources_) {
    if (!s || s->size() != roster_.size()) throw RosterMismatch("source roster size differs from family roster");
  }
}

InterventionalFamily InterventionalFamily::from_tables(std::vector<JointTable> tables) {
  if (tables.empty()) throw RosterMismatch("empty family");
  const std::vector<std::string> roster = tables.front().names();
  std::vector<std::shared_ptr<const CiSource>> sources;
  for (std::size_t i = 0; i < tables.size(); ++i) {
    const auto& t = tables[i];
    if (t.var_count() != roster.size()) throw RosterMismatch("table " + std::to_string(i) + " has a different roster");
    JointTable r = t.reordered(roster);
    if (r.variables() != tables.front().variables()) {
      throw RosterMismatch("table " + std::to_string(i) + " disagrees on variable cardinalities");
    }
    sources.push_back(std::make_shared<TableSource>(std::move(r)));
  }
  return InterventionalFamily(roster, std::move(sources));
}

InterventionalFamily InterventionalFamily::oracle(const Bdmg& ground_truth) {
  std::vector<std::shared_ptr<const CiSource>> sources;
  for (NodeId i = 0; i < ground_truth.size(); ++i) {
    sources.push_back(std::make_shared<SeparationSource>(ground_truth.intervened(i)));
  }
  InterventionalFamily fam(ground_truth.names(), std::move(sources));
  fam.ground_truth_ = ground_truth;
  return fam;
}

NodeId InterventionalFamily::index(const std::string& label) const {
  for (std::size_t i = 0; i < roster_.size(); ++i) {
    if (roster_[i] == label) return static_cast<NodeId>(i);
  }
  throw UnknownLabel(label);
}

bool InterventionalFamily::table_backed() const {
  for (const auto& s : sources_) {
    if (!s->table()) return false;
  }
  return true;
}

const JointTable& InterventionalFamily::table(NodeId i) const {
  const JointTable* t = sources_.at(i)->table();
  if (!t) throw UnsupportedCapability("source for " + roster_.at(i) + " has no probability table");
  return *t;
}

}  // namespace dofam
