#include "hierprobe/taxonomy.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace hierprobe {

std::string_view to_string(RelationKind kind) {
  switch (kind) {
    case RelationKind::Parent: return "Parent";
    case RelationKind::Ancestor: return "Ancestor";
    case RelationKind::Sibling: return "Sibling";
    case RelationKind::FarRelative: return "FarRelative";
  }
  return "Unknown";
}

std::vector<Violation> validate(const TaxonomyRecord& record) {
  std::vector<Violation> out;
  std::map<std::string, std::size_t, std::less<>> index;

  for (std::size_t i = 0; i < record.nodes.size(); ++i) {
    const auto& node = record.nodes[i];
    if (node.id.empty()) {
      out.push_back({TaxonomyErrorKind::EmptyId, ""});
      continue;
    }
    if (!index.emplace(node.id, i).second) {
      out.push_back({TaxonomyErrorKind::DuplicateNodeId, node.id});
    }
    if (node.name.empty()) out.push_back({TaxonomyErrorKind::EmptyName, node.id});
  }

  const std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> parent(record.nodes.size(), none);
  for (const auto& [child, par] : record.edges) {
    auto c = index.find(child);
    auto p = index.find(par);
    if (c == index.end()) {
      out.push_back({TaxonomyErrorKind::UnknownNodeInEdge, child});
      continue;
    }
    if (p == index.end()) {
      out.push_back({TaxonomyErrorKind::UnknownNodeInEdge, par});
      continue;
    }
    if (parent[c->second] != none) {
      out.push_back({TaxonomyErrorKind::ChildHasTwoParents, child});
      continue;
    }
    parent[c->second] = p->second;
  }

  // Walk each parent chain; 0 = unvisited, 1 = on current chain, 2 = done.
  std::vector<int> state(parent.size(), 0);
  std::vector<bool> on_cycle(parent.size(), false);
  std::set<std::string> cycle_reps;
  for (std::size_t start = 0; start < parent.size(); ++start) {
    std::vector<std::size_t> chain;
    std::size_t cur = start;
    while (cur != none && state[cur] == 0) {
      state[cur] = 1;
      chain.push_back(cur);
      cur = parent[cur];
    }
    if (cur != none && state[cur] == 1) {
      auto it = std::find(chain.begin(), chain.end(), cur);
      std::string rep = record.nodes[*it].id;
      for (; it != chain.end(); ++it) {
        on_cycle[*it] = true;
        rep = std::min(rep, record.nodes[*it].id);
      }
      cycle_reps.insert(rep);
    }
    for (auto i : chain) state[i] = 2;
  }
  for (const auto& rep : cycle_reps) out.push_back({TaxonomyErrorKind::CycleDetected, rep});

  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < parent.size(); ++i) {
    if (parent[i] == none) roots.push_back(i);
  }
  if (roots.empty()) {
    out.push_back({TaxonomyErrorKind::NoRoot, ""});
    return out;
  }
  if (roots.size() > 1) {
    for (std::size_t k = 1; k < roots.size(); ++k) {
      out.push_back({TaxonomyErrorKind::MultipleRoots, record.nodes[roots[k]].id});
    }
    return out;
  }

  // Single root: anything whose chain does not end at it is unreachable.
  for (std::size_t i = 0; i < parent.size(); ++i) {
    std::size_t cur = i;
    std::size_t steps = 0;
    while (cur != none && parent[cur] != none && steps <= parent.size()) {
      cur = parent[cur];
      ++steps;
    }
    if (cur != roots.front()) out.push_back({TaxonomyErrorKind::Disconnected, record.nodes[i].id});
  }
  return out;
}

Taxonomy Taxonomy::build(TaxonomyRecord record) {
  auto violations = validate(record);
  if (!violations.empty()) {
    const auto& v = violations.front();
    throw TaxonomyError(v.kind, record.taxonomy_id, v.node_id);
  }

  Taxonomy tax;
  tax.id_ = std::move(record.taxonomy_id);
  tax.nodes_ = std::move(record.nodes);
  const std::size_t n = tax.nodes_.size();
  for (std::size_t i = 0; i < n; ++i) tax.index_.emplace(tax.nodes_[i].id, i);

  tax.parent_.assign(n, kNone);
  tax.children_.assign(n, {});
  for (const auto& [child, par] : record.edges) {
    const auto c = tax.index_.find(child)->second;
    const auto p = tax.index_.find(par)->second;
    tax.parent_[c] = p;
    tax.children_[p].push_back(c);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (tax.parent_[i] == kNone) tax.root_ = i;
    auto& kids = tax.children_[i];
    std::sort(kids.begin(), kids.end(),
              [&](std::size_t a, std::size_t b) { return tax.nodes_[a].id < tax.nodes_[b].id; });
  }

  tax.depth_.assign(n, 0);
  std::deque<std::size_t> queue{tax.root_};
  while (!queue.empty()) {
    const auto cur = queue.front();
    queue.pop_front();
    tax.height_ = std::max(tax.height_, tax.depth_[cur]);
    for (auto child : tax.children_[cur]) {
      tax.depth_[child] = tax.depth_[cur] + 1;
      queue.push_back(child);
    }
  }
  return tax;
}

std::size_t Taxonomy::index_of(std::string_view node_id) const {
  auto it = index_.find(node_id);
  if (it == index_.end()) {
    throw TaxonomyError(TaxonomyErrorKind::UnknownNode, id_, std::string(node_id));
  }
  return it->second;
}

bool Taxonomy::contains(std::string_view node_id) const { return index_.contains(node_id); }

const ConceptNode& Taxonomy::node(std::string_view node_id) const {
  return nodes_[index_of(node_id)];
}

std::optional<std::string> Taxonomy::parent_of(std::string_view node_id) const {
  const auto p = parent_[index_of(node_id)];
  if (p == kNone) return std::nullopt;
  return nodes_[p].id;
}

std::vector<std::string> Taxonomy::children_of(std::string_view node_id) const {
  return sorted_ids(children_[index_of(node_id)]);
}

std::size_t Taxonomy::depth(std::string_view node_id) const { return depth_[index_of(node_id)]; }

std::size_t Taxonomy::edge_distance(std::string_view a, std::string_view b) const {
  auto x = index_of(a);
  auto y = index_of(b);
  std::size_t dist = 0;
  while (depth_[x] > depth_[y]) x = parent_[x], ++dist;
  while (depth_[y] > depth_[x]) y = parent_[y], ++dist;
  while (x != y) {
    x = parent_[x];
    y = parent_[y];
    dist += 2;
  }
  return dist;
}

std::vector<std::string> Taxonomy::sorted_ids(const std::vector<std::size_t>& indices) const {
  std::vector<std::string> ids;
  ids.reserve(indices.size());
  for (auto i : indices) ids.push_back(nodes_[i].id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

RelationSet Taxonomy::relations_of(std::string_view node_id) const {
  const auto n = index_of(node_id);
  RelationSet rel;
  rel.node = nodes_[n].id;

  const auto p = parent_[n];
  if (p == kNone) return rel;
  rel.parent = nodes_[p].id;

  std::vector<std::size_t> siblings;
  for (auto c : children_[p]) {
    if (c != n) siblings.push_back(c);
  }
  rel.siblings = sorted_ids(siblings);

  const auto a = parent_[p];
  if (a == kNone) return rel;
  rel.ancestor = nodes_[a].id;

  std::vector<std::size_t> far;
  for (auto uncle : children_[a]) {
    if (uncle == p) continue;
    far.push_back(uncle);
    for (auto cousin : children_[uncle]) far.push_back(cousin);
  }
  rel.far_relatives = sorted_ids(far);
  return rel;
}

std::vector<std::string> Taxonomy::related(std::string_view node_id, RelationKind kind) const {
  auto rel = relations_of(node_id);
  switch (kind) {
    case RelationKind::Parent:
      return rel.parent ? std::vector<std::string>{*rel.parent} : std::vector<std::string>{};
    case RelationKind::Ancestor:
      return rel.ancestor ? std::vector<std::string>{*rel.ancestor} : std::vector<std::string>{};
    case RelationKind::Sibling: return std::move(rel.siblings);
    case RelationKind::FarRelative: return std::move(rel.far_relatives);
  }
  return {};
}

TaxonomyRecord Taxonomy::to_record() const {
  TaxonomyRecord record;
  record.taxonomy_id = id_;
  record.nodes = nodes_;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (parent_[i] != kNone) record.edges.emplace_back(nodes_[i].id, nodes_[parent_[i]].id);
  }
  return record;
}

}  // namespace hierprobe
