#pragma once
// Seeded random inputs for property tests. Every generator is a pure
// function of the Rng state, so a failing seed reproduces.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tantra/graph.hpp"

namespace tantra::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t seed_hint() { return eng_(); }
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(eng_);
  }
  bool chance(double p) { return std::bernoulli_distribution(p)(eng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[index(v.size())];
  }

  std::string word();
  // Words plus awkward characters: quotes, backslashes, tabs, newlines, UTF-8.
  std::string text();
  Date date();
  Literal literal(bool allow_number = true);
  Aspect aspect() { return static_cast<Aspect>(uniform(0, kAspectCount - 1)); }
  Perspective perspective() { return static_cast<Perspective>(uniform(0, kPerspectiveCount - 1)); }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

// A fully specified element promoted level by level up to `to`.
Element make_element(TantraGraph& g, Aspect aspect, const std::string& name,
                     Perspective to = Perspective::Instantiated);
ElementId add_element(TantraGraph& g, Aspect aspect, const std::string& name,
                      Perspective to = Perspective::Instantiated);
ElementId add_edge(TantraGraph& g, const ElementId& from, const std::string& rel_type,
                   const ElementId& to, std::optional<ElementId> relator = std::nullopt);
ElementId add_event(TantraGraph& g, const std::string& name, const char* start,
                    const char* end = nullptr);

struct GraphShape {
  std::size_t elements = 20;
  std::size_t relationships = 30;
  std::size_t measures = 8;
  bool random_perspectives = true;
  bool numeric_properties = true;
  std::vector<std::string> rel_types = {"IS_A",        "SELLS_TO",  "FINANCED_BY",
                                        "INFORMED_BY", "MEMBER_OF", "RECEIVES_BENEFIT"};
};

TantraGraph random_graph(Rng& rng, const GraphShape& shape = {});

}  // namespace tantra::testing
