#include "tantra/graph.hpp"

#include <algorithm>
#include <cmath>

#include "tantra/error.hpp"

namespace tantra {

namespace {

const std::set<ElementId>& empty_set() {
  static const std::set<ElementId> kEmpty;
  return kEmpty;
}

template <typename Map, typename Key>
void erase_from(Map& map, const Key& key, const ElementId& id) {
  auto it = map.find(key);
  if (it == map.end()) return;
  it->second.erase(id);
  if (it->second.empty()) map.erase(it);
}

const ElementId& id_of(const Element& e) { return e.id(); }
template <typename T>
const ElementId& id_of(const T& v) { return v.id; }

template <typename Map>
auto sorted_values(const Map& map) {
  std::vector<const typename Map::mapped_type*> out;
  out.reserve(map.size());
  for (const auto& [id, v] : map) out.push_back(&v);
  std::sort(out.begin(), out.end(), [](auto* a, auto* b) { return id_of(*a) < id_of(*b); });
  return out;
}

}  // namespace

Element TantraGraph::new_element(Aspect aspect, std::string_view name, std::string_view scope) {
  return tantra::new_element(ids_, aspect, name, scope);
}

void TantraGraph::check_new_id(const ElementId& id) const {
  if (id.empty()) throw Error(ErrorCode::InvalidArgument, "empty id");
  if (contains(id)) throw Error(ErrorCode::DuplicateId, "id already in use: " + id.str());
}

bool TantraGraph::contains(const ElementId& id) const {
  return elements_.count(id) || relationships_.count(id) || measures_.count(id);
}

ElementId TantraGraph::insert_element(Element e) {
  check_new_id(e.id());
  ids_.observe(e.id());
  ElementId id = e.id();
  index_element(e);
  elements_.emplace(id, std::move(e));
  return id;
}

void TantraGraph::replace_element(Element e) {
  auto it = elements_.find(e.id());
  if (it == elements_.end()) throw Error(ErrorCode::UnknownId, "unknown element " + e.id().str());
  if (it->second.aspect() != e.aspect()) {
    throw Error(ErrorCode::AspectChanged, "aspect of " + e.id().str() + " is immutable");
  }
  if (e.perspective() < it->second.perspective()) {
    throw Error(ErrorCode::PerspectiveRegressed,
                "perspective of " + e.id().str() + " cannot decrease");
  }
  unindex_element(it->second);
  it->second = std::move(e);
  index_element(it->second);
}

const Element& TantraGraph::promote_element(const ElementId& id, Perspective to,
                                            const PromotionPayload& payload) {
  replace_element(promote(element(id), to, payload));
  return element(id);
}

ElementId TantraGraph::insert_relationship(Relationship r) {
  if (!elements_.count(r.source)) {
    throw Error(ErrorCode::DanglingEndpoint, "unknown source " + r.source.str());
  }
  if (!elements_.count(r.target)) {
    throw Error(ErrorCode::DanglingEndpoint, "unknown target " + r.target.str());
  }
  if (r.relator) {
    auto it = elements_.find(*r.relator);
    if (it == elements_.end()) {
      throw Error(ErrorCode::DanglingEndpoint, "unknown relator " + r.relator->str());
    }
    if (it->second.aspect() != Aspect::Relators) {
      throw Error(ErrorCode::RelatorNotARelator,
                  r.relator->str() + " has aspect " + std::string(to_string(it->second.aspect())));
    }
  }
  if (r.id.empty()) r.id = ids_.issue(IdIssuer::kEdgePrefix);
  check_new_id(r.id);
  ids_.observe(r.id);
  ElementId id = r.id;
  index_relationship(r);
  relationships_.emplace(id, std::move(r));
  return id;
}

void TantraGraph::check_measure(const Measure& m) const {
  if (!elements_.count(m.subject)) {
    throw Error(ErrorCode::UnknownSubject, "unknown measure subject " + m.subject.str());
  }
  if (!std::isfinite(m.value)) {
    throw Error(ErrorCode::NonFiniteValue, "measure '" + m.metric_name + "' is not finite");
  }
  if (m.at_event) {
    const Element* ev = find_element(*m.at_event);
    if (!ev || ev->aspect() != Aspect::When) {
      throw Error(ErrorCode::UnknownEvent, "unknown event " + m.at_event->str());
    }
  }
}

const Measure& TantraGraph::attach_measure(const ElementId& subject, std::string metric_name,
                                           double value, std::string unit,
                                           std::optional<ElementId> at_event) {
  Measure m;
  m.metric_name = std::move(metric_name);
  m.value = value;
  m.unit = std::move(unit);
  m.subject = subject;
  m.at_event = std::move(at_event);
  ElementId id = insert_measure(std::move(m));
  return measures_.at(id);
}

ElementId TantraGraph::insert_measure(Measure m) {
  check_measure(m);
  if (m.id.empty()) m.id = ids_.issue(Aspect::Why);
  check_new_id(m.id);
  ids_.observe(m.id);
  ElementId id = m.id;
  index_measure(m);
  measures_.emplace(id, std::move(m));
  return id;
}

bool TantraGraph::remove_relationship(const ElementId& id) {
  auto it = relationships_.find(id);
  if (it == relationships_.end()) return false;
  unindex_relationship(it->second);
  relationships_.erase(it);
  return true;
}

bool TantraGraph::remove_measure(const ElementId& id) {
  auto it = measures_.find(id);
  if (it == measures_.end()) return false;
  unindex_measure(it->second);
  measures_.erase(it);
  return true;
}

std::size_t TantraGraph::remove_element(const ElementId& id) {
  auto it = elements_.find(id);
  if (it == elements_.end()) throw Error(ErrorCode::UnknownId, "unknown element " + id.str());

  std::set<ElementId> edges;
  if (auto adj = idx_.adjacency.find(id); adj != idx_.adjacency.end()) {
    edges.insert(adj->second.out.begin(), adj->second.out.end());
    edges.insert(adj->second.in.begin(), adj->second.in.end());
  }
  const auto& mediated = mediated_by(id);
  edges.insert(mediated.begin(), mediated.end());

  std::set<ElementId> measures = measures_of(id);
  const auto& at = measures_at(id);
  measures.insert(at.begin(), at.end());

  for (const auto& e : edges) remove_relationship(e);
  for (const auto& m : measures) remove_measure(m);
  unindex_element(it->second);
  elements_.erase(it);
  return 1 + edges.size() + measures.size();
}

const Element& TantraGraph::element(const ElementId& id) const {
  const Element* e = find_element(id);
  if (!e) throw Error(ErrorCode::UnknownId, "unknown element " + id.str());
  return *e;
}

const Element* TantraGraph::find_element(const ElementId& id) const {
  auto it = elements_.find(id);
  return it == elements_.end() ? nullptr : &it->second;
}

const Relationship* TantraGraph::find_relationship(const ElementId& id) const {
  auto it = relationships_.find(id);
  return it == relationships_.end() ? nullptr : &it->second;
}

const Measure* TantraGraph::find_measure(const ElementId& id) const {
  auto it = measures_.find(id);
  return it == measures_.end() ? nullptr : &it->second;
}

const std::set<ElementId>& TantraGraph::by_name(std::string_view name) const {
  auto it = idx_.by_name.find(name_key(name));
  return it == idx_.by_name.end() ? empty_set() : it->second;
}

const Adjacency& TantraGraph::adjacency(const ElementId& id) const {
  static const Adjacency kEmpty;
  auto it = idx_.adjacency.find(id);
  return it == idx_.adjacency.end() ? kEmpty : it->second;
}

const std::set<ElementId>& TantraGraph::mediated_by(const ElementId& relator) const {
  auto it = idx_.mediated.find(relator);
  return it == idx_.mediated.end() ? empty_set() : it->second;
}

const std::set<ElementId>& TantraGraph::measures_of(const ElementId& subject) const {
  auto it = idx_.measures_of.find(subject);
  return it == idx_.measures_of.end() ? empty_set() : it->second;
}

const std::set<ElementId>& TantraGraph::measures_at(const ElementId& event) const {
  auto it = idx_.measures_at.find(event);
  return it == idx_.measures_at.end() ? empty_set() : it->second;
}

std::vector<const Element*> TantraGraph::sorted_elements() const { return sorted_values(elements_); }
std::vector<const Relationship*> TantraGraph::sorted_relationships() const {
  return sorted_values(relationships_);
}
std::vector<const Measure*> TantraGraph::sorted_measures() const { return sorted_values(measures_); }

const Element* TantraGraph::find_by_name(Aspect aspect, std::string_view name) const {
  const Element* found = nullptr;
  for (const auto& id : by_name(name)) {
    const Element& e = elements_.at(id);
    if (e.aspect() != aspect) continue;
    if (found) return nullptr;
    found = &e;
  }
  return found;
}

void TantraGraph::index_element(const Element& e) {
  idx_.by_aspect[index_of(e.aspect())].insert(e.id());
  idx_.by_perspective[index_of(e.perspective())].insert(e.id());
  idx_.by_name[name_key(e.name())].insert(e.id());
}

void TantraGraph::unindex_element(const Element& e) {
  idx_.by_aspect[index_of(e.aspect())].erase(e.id());
  idx_.by_perspective[index_of(e.perspective())].erase(e.id());
  erase_from(idx_.by_name, name_key(e.name()), e.id());
}

void TantraGraph::index_relationship(const Relationship& r) {
  idx_.adjacency[r.source].out.insert(r.id);
  idx_.adjacency[r.target].in.insert(r.id);
  if (r.relator) idx_.mediated[*r.relator].insert(r.id);
}

void TantraGraph::unindex_relationship(const Relationship& r) {
  for (const auto& [node, outgoing] : {std::pair{r.source, true}, std::pair{r.target, false}}) {
    auto it = idx_.adjacency.find(node);
    if (it == idx_.adjacency.end()) continue;
    (outgoing ? it->second.out : it->second.in).erase(r.id);
    if (it->second.out.empty() && it->second.in.empty()) idx_.adjacency.erase(it);
  }
  if (r.relator) erase_from(idx_.mediated, *r.relator, r.id);
}

void TantraGraph::index_measure(const Measure& m) {
  idx_.measures_of[m.subject].insert(m.id);
  if (m.at_event) idx_.measures_at[*m.at_event].insert(m.id);
}

void TantraGraph::unindex_measure(const Measure& m) {
  erase_from(idx_.measures_of, m.subject, m.id);
  if (m.at_event) erase_from(idx_.measures_at, *m.at_event, m.id);
}

TantraGraph::Indices TantraGraph::rebuild_indices() const {
  Indices idx;
  for (const auto& [id, e] : elements_) {
    idx.by_aspect[index_of(e.aspect())].insert(id);
    idx.by_perspective[index_of(e.perspective())].insert(id);
    idx.by_name[name_key(e.name())].insert(id);
  }
  for (const auto& [id, r] : relationships_) {
    idx.adjacency[r.source].out.insert(id);
    idx.adjacency[r.target].in.insert(id);
    if (r.relator) idx.mediated[*r.relator].insert(id);
  }
  for (const auto& [id, m] : measures_) {
    idx.measures_of[m.subject].insert(id);
    if (m.at_event) idx.measures_at[*m.at_event].insert(id);
  }
  return idx;
}

bool TantraGraph::indices_consistent() const { return rebuild_indices() == idx_; }

bool TantraGraph::operator==(const TantraGraph& other) const {
  return ids_.next() == other.ids_.next() && elements_ == other.elements_ &&
         relationships_ == other.relationships_ && measures_ == other.measures_;
}

}  // namespace tantra
