#pragma once
// The bundled Indian agricultural-ecosystem corpus.

#include <string>
#include <vector>

#include "tantra/graph.hpp"
#include "tantra/toc.hpp"

namespace tantra {

// Deterministic: two builds are structurally equal and save to identical bytes.
// Every element is Instantiated and the default policy reports no violation.
TantraGraph build_agri_dataset();

inline constexpr const char* kDatasetScope = "indian-agriculture";
inline constexpr const char* kBudgetMetric = "Budget Outlay";
inline constexpr const char* kBudgetUnit = "crore-INR";

// The Farm Law 1 theory-of-change record with actors and the linked APMC
// process resolved against `g` (normally build_agri_dataset()).
// Throws UnknownId when a named actor is missing.
InterventionRecord farm_law_one_record(const TantraGraph& g);

// Queries selecting the four knowledge-graph views of the corpus.
struct DatasetView {
  std::string name;
  std::string query;
};
const std::vector<DatasetView>& dataset_views();

}  // namespace tantra
