#pragma once
// In-memory property graph of Elements, Relationships and Measures.
//
// Concurrency: single writer, many readers. Const member functions may run
// concurrently with each other; any non-const call needs exclusive access.

#include <array>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tantra/model.hpp"

namespace tantra {

struct Adjacency {
  std::set<ElementId> out;
  std::set<ElementId> in;

  bool operator==(const Adjacency&) const = default;
};

class TantraGraph {
 public:
  // Issues a Contextual element from this graph's id space. Not inserted.
  Element new_element(Aspect aspect, std::string_view name, std::string_view scope);
  ElementId issue_id(Aspect aspect) { return ids_.issue(aspect); }

  // Throws DuplicateId when the id is used by any element, edge or measure.
  ElementId insert_element(Element e);

  // Swaps in a new version of a stored element (typically a promotion).
  // Throws UnknownId, AspectChanged or PerspectiveRegressed.
  void replace_element(Element e);

  // Convenience: promote the stored element one level in place.
  const Element& promote_element(const ElementId& id, Perspective to,
                                 const PromotionPayload& payload);

  // An empty r.id is filled from the edge id space.
  // Throws DanglingEndpoint, RelatorNotARelator or DuplicateId.
  ElementId insert_relationship(Relationship r);

  // Throws UnknownSubject, NonFiniteValue, UnknownEvent.
  const Measure& attach_measure(const ElementId& subject, std::string metric_name,
                                double value, std::string unit,
                                std::optional<ElementId> at_event = std::nullopt);
  // Same checks as attach_measure; an empty m.id is issued.
  ElementId insert_measure(Measure m);

  // Removes the element, every incident or mediated relationship, and every
  // measure whose subject or event is the element. Returns the total count.
  std::size_t remove_element(const ElementId& id);
  bool remove_relationship(const ElementId& id);
  bool remove_measure(const ElementId& id);

  const Element& element(const ElementId& id) const;  // throws UnknownId
  const Element* find_element(const ElementId& id) const;
  const Relationship* find_relationship(const ElementId& id) const;
  const Measure* find_measure(const ElementId& id) const;
  bool contains(const ElementId& id) const;

  const std::unordered_map<ElementId, Element>& elements() const noexcept { return elements_; }
  const std::unordered_map<ElementId, Relationship>& relationships() const noexcept {
    return relationships_;
  }
  const std::unordered_map<ElementId, Measure>& measures() const noexcept { return measures_; }

  std::size_t element_count() const noexcept { return elements_.size(); }
  std::size_t relationship_count() const noexcept { return relationships_.size(); }
  std::size_t measure_count() const noexcept { return measures_.size(); }

  const std::set<ElementId>& by_aspect(Aspect a) const { return idx_.by_aspect[index_of(a)]; }
  const std::set<ElementId>& by_perspective(Perspective p) const {
    return idx_.by_perspective[index_of(p)];
  }
  // Lookup by any spelling of the name; matching is on name_key().
  const std::set<ElementId>& by_name(std::string_view name) const;
  const Adjacency& adjacency(const ElementId& id) const;
  const std::set<ElementId>& mediated_by(const ElementId& relator) const;
  const std::set<ElementId>& measures_of(const ElementId& subject) const;
  const std::set<ElementId>& measures_at(const ElementId& event) const;

  // Sorted by id.
  std::vector<const Element*> sorted_elements() const;
  std::vector<const Relationship*> sorted_relationships() const;
  std::vector<const Measure*> sorted_measures() const;

  // Finds the unique element of an aspect with this name, or null.
  const Element* find_by_name(Aspect aspect, std::string_view name) const;

  IdIssuer& ids() noexcept { return ids_; }
  const IdIssuer& ids() const noexcept { return ids_; }

  // Rebuilds every index from the primary maps and compares.
  bool indices_consistent() const;

  // Structural equality: primary maps and id counter.
  bool operator==(const TantraGraph& other) const;

 private:
  struct Indices {
    std::array<std::set<ElementId>, kAspectCount> by_aspect;
    std::array<std::set<ElementId>, kPerspectiveCount> by_perspective;
    std::unordered_map<std::string, std::set<ElementId>> by_name;
    std::unordered_map<ElementId, Adjacency> adjacency;
    std::unordered_map<ElementId, std::set<ElementId>> mediated;
    std::unordered_map<ElementId, std::set<ElementId>> measures_of;
    std::unordered_map<ElementId, std::set<ElementId>> measures_at;

    bool operator==(const Indices&) const = default;
  };

  Indices rebuild_indices() const;
  void index_element(const Element& e);
  void unindex_element(const Element& e);
  void index_relationship(const Relationship& r);
  void unindex_relationship(const Relationship& r);
  void index_measure(const Measure& m);
  void unindex_measure(const Measure& m);
  void check_new_id(const ElementId& id) const;
  void check_measure(const Measure& m) const;

  std::unordered_map<ElementId, Element> elements_;
  std::unordered_map<ElementId, Relationship> relationships_;
  std::unordered_map<ElementId, Measure> measures_;
  Indices idx_;
  IdIssuer ids_;
};

}  // namespace tantra
