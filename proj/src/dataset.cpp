#include "tantra/dataset.hpp"

#include <map>
#include <utility>

#include "tantra/error.hpp"

namespace tantra {

namespace {

using Eco = SubEcosystem;

struct Item {
  std::string name;
  std::optional<Eco> eco;
};

// Builds every element straight to Instantiated.
class Builder {
 public:
  explicit Builder(TantraGraph& g) : g_(g) {}

  ElementId add(Aspect aspect, const std::string& name, const std::string& group,
                const std::string& label, std::optional<Eco> eco,
                std::map<std::string, Literal> props = {},
                std::optional<EventSpan> span = std::nullopt) {
    Element e = g_.new_element(aspect, name, kDatasetScope);
    for (auto& [k, v] : props) e.set_property(k, v);
    e.set_sub_ecosystem(eco);
    e.set_span(span);

    PromotionPayload p;
    p.definition = name + " (" + group + ", " + std::string(to_string(aspect)) + ")";
    e = promote(e, Perspective::Conceptual, p);
    p.logical_attrs = {{"group", Literal{group}}};
    if (eco) p.logical_attrs["sub_ecosystem"] = Literal{std::string(to_string(*eco))};
    e = promote(e, Perspective::Logical, p);
    SchemaConfig schema;
    schema.labels = {label};
    for (const auto& [k, v] : e.properties()) schema.property_keys.insert(k);
    p.schema_config = schema;
    e = promote(e, Perspective::Physical, p);
    p.final_id = e.id();
    e = promote(e, Perspective::Instantiated, p);

    const ElementId id = g_.insert_element(std::move(e));
    ids_[{aspect, name}] = id;
    return id;
  }

  void add_all(Aspect aspect, const std::vector<Item>& items, const std::string& group,
               const std::string& label) {
    for (const auto& it : items) add(aspect, it.name, group, label, it.eco);
  }

  const ElementId& id(Aspect aspect, const std::string& name) const {
    auto it = ids_.find({aspect, name});
    if (it == ids_.end()) {
      throw Error(ErrorCode::UnknownId, "dataset has no " + std::string(to_string(aspect)) +
                                            " element '" + name + "'");
    }
    return it->second;
  }

  void link(Aspect sa, const std::string& source, const std::string& rel_type, Aspect ta,
            const std::string& target, const std::optional<std::string>& relator = std::nullopt) {
    Relationship r;
    r.rel_type = rel_type;
    r.source = id(sa, source);
    r.target = id(ta, target);
    if (relator) r.relator = id(Aspect::Relators, *relator);
    g_.insert_relationship(std::move(r));
  }

  void measure(const ElementId& subject, const std::string& metric, double value,
               const std::string& unit, std::optional<ElementId> event = std::nullopt) {
    g_.attach_measure(subject, metric, value, unit, std::move(event));
  }

 private:
  TantraGraph& g_;
  std::map<std::pair<Aspect, std::string>, ElementId> ids_;
};

EventSpan span(const char* from, const char* to) {
  return {*Date::parse(from), Date::parse(to)};
}

constexpr Aspect Who = Aspect::Who;
constexpr Aspect Where = Aspect::Where;
constexpr Aspect What = Aspect::What;
constexpr Aspect When = Aspect::When;
constexpr Aspect How = Aspect::How;
constexpr Aspect Why = Aspect::Why;
constexpr Aspect Rel = Aspect::Relationships;
constexpr Aspect Rtr = Aspect::Relators;
constexpr Aspect Sep = Aspect::Separations;

void add_people(Builder& b) {
  const std::vector<Item> roles = {
      {"Farm-owners", Eco::Social},
      {"Farmers", Eco::Social},
      {"Tenant Farmers", Eco::Social},
      {"Farm-workers", Eco::Social},
      {"Small-Holdings Farmers", Eco::Social},
      {"Medium Farmers", Eco::Social},
      {"Large Farmers", Eco::Social},
      {"Rich Farmers", Eco::Social},
      {"Aggregators", Eco::Business},
      {"Traders", Eco::Business},
      {"Retailers", Eco::Business},
      {"Consumers", Eco::Business},
      {"PDS Beneficiaries", Eco::Welfare},
      {"Money Lenders", Eco::Business},
      {"Households", Eco::Social},
      {"Buyers", Eco::Business},
      {"Sellers", Eco::Business},
      {"MSP Beneficiary", Eco::Welfare},
      {"APMC Farmer", Eco::Business},
      {"Contract Farmer", Eco::Industrial},
      {"Commission Agent", Eco::Business},
      {"APMC Trader", Eco::Business},
  };
  b.add_all(Who, roles, "People", "Role");
  b.add(Who, "APL/BPL beneficiaries", "People", "Role", Eco::Welfare,
        {{"includes_apl", true}, {"includes_bpl", true}});

  const std::vector<Item> relators = {
      {"Banks", Eco::Business},
      {"Government Agencies", Eco::Economic},
      {"PDS", Eco::Welfare},
      {"Insurance Firms", Eco::Business},
      {"Seed Providers", Eco::BiologicalNaturalResource},
      {"Fertilizer Firms", Eco::BiologicalNaturalResource},
      {"Agricultural Input Providers", Eco::BiologicalNaturalResource},
      {"Research Institutions & Extensions", Eco::BiologicalNaturalResource},
      {"Regulators", Eco::Economic},
      {"Mandi", Eco::Business},
      {"Intermediaries", Eco::Business},
      {"Arthiya", Eco::Business},
      {"NABARD", Eco::Business},
      {"Investors", Eco::Business},
      {"Transporters", Eco::Business},
      {"Importers", Eco::Business},
      {"Exporters", Eco::Business},
      {"FCI", Eco::Economic},
      {"E-NAM", Eco::Business},
      {"Food Processors", Eco::Industrial},
      {"Supermarket chains", Eco::Industrial},
  };
  b.add_all(Rtr, relators, "Relator", "Relator");
}

void add_places_and_events(Builder& b) {
  b.add_all(Where,
            {{"Geo-tags", {}},
             {"Address and Locations", {}},
             {"Farm Plots", {}},
             {"Localities", {}},
             {"Villages", {}},
             {"Districts", {}},
             {"States", {}},
             {"Regions", {}},
             {"Mandi", Eco::Business}},
            "Plots", "Place");

  b.add_all(When,
            {{"Scheme Announcement", Eco::Economic},
             {"Benefit Payment", Eco::Welfare},
             {"Procurement", Eco::Economic},
             {"Transfer of Land Ownership", Eco::Social},
             {"Death", Eco::Social},
             {"Migration", Eco::Social}},
            "Events", "Event");
  b.add(When, "FY 2018-19", "Events", "FiscalYear", {}, {}, span("2018-04-01", "2019-03-31"));
  b.add(When, "FY 2019-20", "Events", "FiscalYear", {}, {}, span("2019-04-01", "2020-03-31"));
  b.add(When, "Kharif Season 2019", "Events", "Season", Eco::BiologicalNaturalResource, {},
        span("2019-06-01", "2019-10-31"));
  b.add(When, "Rabi Season 2019-20", "Events", "Season", Eco::BiologicalNaturalResource, {},
        span("2019-11-01", "2020-03-31"));
  b.add(When, "Kharif Harvest Sales 2019", "Events", "SaleWindow", Eco::Business, {},
        span("2019-10-01", "2019-11-15"));
  b.add(When, "Early Sales 2019", "Events", "SaleWindow", Eco::Business, {},
        span("2019-09-01", "2019-09-20"));
  b.add(When, "Kharif Procurement Window 2019", "Events", "ProcurementWindow", Eco::Economic,
        {}, span("2019-10-15", "2019-12-31"));
}

void add_things(Builder& b) {
  const auto bio = Eco::BiologicalNaturalResource;
  b.add_all(What,
            {{"Own house", Eco::Social},
             {"Vehicle", Eco::Social},
             {"Tractor", bio},
             {"Solar Pump", bio},
             {"Land Holding", Eco::Social},
             {"Dairy", bio},
             {"Business Owned", Eco::Business},
             {"Equity", Eco::Business},
             {"Gold", Eco::Social},
             {"Farm", bio},
             {"Conventional Farm", bio},
             {"Organic Farm", bio},
             {"Leisure Farm", Eco::Industrial},
             {"Solar Farm", Eco::Industrial},
             {"Wind Farm", Eco::Industrial}},
            "Assets", "Asset");

  b.add(What, "Crops", "Crops", "Crop", bio);
  b.add_all(What,
            {{"Rice", bio},
             {"Wheat", bio},
             {"Sugarcane", bio},
             {"Pulses", bio},
             {"Vegetables", bio},
             {"Cereals", bio},
             {"Coarse Cereals", bio},
             {"Oilseeds", bio},
             {"Commercial Crops", bio},
             {"Crops under MSP", Eco::Economic}},
            "Crops", "Crop");

  b.add_all(What,
            {{"Input Support", Eco::Economic},
             {"Price Support", Eco::Business},
             {"Income Support", Eco::Welfare},
             {"Insurance Support", Eco::Business},
             {"Interest Subvention", Eco::Business},
             {"Support", Eco::Welfare},
             {"Compensation", Eco::Welfare},
             {"Loan Waived (In case of farmers)", Eco::Business},
             {"Fertilizer Subsidy", Eco::Economic},
             {"Electricity Subsidy", Eco::Economic},
             {"Water Subsidy", Eco::Economic},
             {"PDS", Eco::Welfare},
             {"MGNREGA", Eco::Welfare},
             {"Subsidies related to health, education, electricity, water, LPG", Eco::Welfare}},
            "Benefits", "Benefit");

  b.add_all(What,
            {{"Income through Farming", Eco::Economic},
             {"Income through Farm Lease", Eco::Economic},
             {"Farm Labour Income", Eco::Economic},
             {"Cottage Industry", Eco::Industrial},
             {"Animal Husbandry", bio},
             {"Non-Farm Income", Eco::Economic},
             {"Money Lending", Eco::Business}},
            "Incomes", "Income");

  b.add_all(What,
            {{"Credit/Debt from Commission Agent", Eco::Business},
             {"Credit/Debt from Trader", Eco::Business},
             {"Credit/Debt from Banks", Eco::Business},
             {"Credit/Debt from Money Lenders", Eco::Business},
             {"Other forms of credit", Eco::Business}},
            "Credit/Debt", "Credit");

  b.add_all(What,
            {{"Traditional Farming Knowledge", Eco::Information},
             {"Natural Farming Knowledge", Eco::Information},
             {"Innovation Affinity", Eco::Information},
             {"Water Conservation Knowhow", Eco::Information}},
            "Knowhow", "Knowhow");
}

struct Scheme {
  std::string name;
  std::string short_name;
  Eco eco;
  double outlay_2018_19;
  double outlay_2019_20;
  std::string provides;  // What benefit
};

const std::vector<Scheme>& schemes() {
  static const std::vector<Scheme> s = {
      {"Pradhan Mantri Kisan Samman Yojana (PM-KISAN)", "PM-KISAN", Eco::Welfare, 20000, 75000,
       "Income Support"},
      {"Interest Subsidy for short-term credit to Farmers", "Interest Subsidy", Eco::Business,
       14987, 18000, "Interest Subvention"},
      {"Pradhan Mantri Fasal Bima Yojana", "PMFBY", Eco::Business, 12976, 14000,
       "Insurance Support"},
      {"Rastriya Krishi Vikas Yojana", "RKVY", Eco::Economic, 3600, 3745, "Support"},
      {"Pradhan Mantri Krishi Sinchai Yojana", "PMKSY", Eco::BiologicalNaturalResource, 2955,
       3500, "Water Subsidy"},
      {"Market Intervention Scheme and Price Support Scheme", "MIS-PSS", Eco::Business, 2000,
       3000, "Price Support"},
      {"National Mission for Horticulture", "NMH", Eco::BiologicalNaturalResource, 2100, 2226,
       "Input Support"},
      {"National Food Security Mission", "NFSM", Eco::Welfare, 1510, 2000, "PDS"},
      {"Pradhan Mantri Annadata Aay SanraksHan Yojana", "PM-AASHA", Eco::Business, 1400, 1500,
       "Price Support"},
      {"Integrated Scheme on Agricultural Marketing", "ISAM", Eco::Business, 500, 600,
       "Support"},
  };
  return s;
}

void add_processes(Builder& b) {
  b.add_all(How,
            {{"Input Support", Eco::Economic},
             {"Price Support", Eco::Business},
             {"Income Support", Eco::Welfare},
             {"Insurance Support", Eco::Business},
             {"Interest Subvention", Eco::Business},
             {"Support", Eco::Welfare},
             {"Compensation", Eco::Welfare},
             {"Loan Waived (In case of farmers)", Eco::Business},
             {"Fertilizer Subsidy", Eco::Economic},
             {"Electricity Subsidy", Eco::Economic},
             {"Water Subsidy", Eco::Economic}},
            "Processes", "Process");

  b.add_all(How,
            {{"Modern Farming", Eco::BiologicalNaturalResource},
             {"Organic Farming", Eco::BiologicalNaturalResource},
             {"Natural Farming", Eco::BiologicalNaturalResource},
             {"Contract Farming", Eco::Industrial},
             {"APMC", Eco::Business},
             {"MSP", Eco::Business},
             {"Cooperative Farming", Eco::Social}},
            "Farming Process", "FarmingProcess");

  b.add_all(How,
            {{"Coevolution", {}}, {"Self-organization", {}}, {"Adaption", {}}, {"Emergence", {}}},
            "Ecosystem Phenomena", "Phenomenon");

  for (const auto& s : schemes()) {
    b.add(How, s.name, "Schemes", "Scheme", s.eco, {{"short_name", s.short_name}});
  }

  b.add_all(How,
            {{"Zero-Budget Natural Farming", Eco::BiologicalNaturalResource},
             {"Reforming Agricultural Practices", Eco::BiologicalNaturalResource},
             {"Use of Science and Technology", Eco::BiologicalNaturalResource},
             {"Cooperative Sector", Eco::Social},
             {"Reducing Centralized procurement", Eco::Economic},
             {"Supporting Rural Economy", Eco::Economic},
             {"Doing away with an income tax exemption for Agricultural income", Eco::Economic},
             {"Electronic Nationwide Agricultural Market (ENAM)", Eco::Business},
             {"Imaginative solutions to financial distress", Eco::Welfare},
             {"Reform PDS and Food Security regime", Eco::Welfare}},
            "Reforms", "Reform");
}

void add_goals_and_structure(Builder& b) {
  b.add(Why, "Measures", "Measures", "Measure", Eco::Economic);
  b.add_all(Why,
            {{"Yield", Eco::BiologicalNaturalResource},
             {"Productivity", Eco::Economic},
             {"Incomes", Eco::Welfare},
             {"Production", Eco::Economic},
             {"Procurement", Eco::Economic},
             {"Acreage", Eco::BiologicalNaturalResource}},
            "Measures", "Measure");
  b.add(Why, "Ecological Measures", "Ecological Measures", "EcologicalMeasure",
        Eco::BiologicalNaturalResource);
  b.add_all(Why,
            {{"Soil quality", Eco::BiologicalNaturalResource},
             {"water quality", Eco::BiologicalNaturalResource},
             {"air pollution", Eco::BiologicalNaturalResource},
             {"emissions", Eco::BiologicalNaturalResource}},
            "Ecological Measures", "EcologicalMeasure");
  b.add(Why, "Metrics", "Metrics", "Metric", Eco::Economic);
  b.add_all(Why,
            {{"GDP (Agriculture)", Eco::Economic},
             {"GDP (per-Capita Farmer)", Eco::Economic},
             {"% Export", Eco::Business},
             {"debt level", Eco::Economic},
             {"poverty level", Eco::Welfare},
             {"unemployment level", Eco::Welfare},
             {"profitability level", Eco::Business},
             {"Carbon-Footprint", Eco::BiologicalNaturalResource},
             {"Energy-related metrics", Eco::BiologicalNaturalResource}},
            "Metrics", "Metric");

  b.add_all(Rel,
            {{"Tenancy", Eco::Social},
             {"Under Organic Farming", Eco::BiologicalNaturalResource},
             {"Natural Farming", Eco::BiologicalNaturalResource},
             {"Farmer Co-operatives", Eco::Social},
             {"Communes", Eco::Social},
             {"Trader Associations", Eco::Business},
             {"Consumer Groups", Eco::Business}},
            "Relationships & Networks", "Network");

  b.add_all(Sep,
            {{"Informational", {}},
             {"Spatial", {}},
             {"Temporal", {}},
             {"Financial", {}},
             {"Capability", {}},
             {"Intellectual", {}},
             {"Socio-Political", {}}},
            "Separations", "Separation");
}

void add_hierarchies(Builder& b) {
  for (const char* f : {"Tenant Farmers", "Small-Holdings Farmers", "Medium Farmers",
                        "Large Farmers", "Rich Farmers", "MSP Beneficiary", "APMC Farmer",
                        "Contract Farmer"}) {
    b.link(Who, f, "IS_A", Who, "Farmers");
  }
  b.link(Who, "Farmers", "IS_A", Who, "Sellers");
  b.link(Who, "Consumers", "IS_A", Who, "Buyers");
  b.link(Who, "Traders", "IS_A", Who, "Buyers");
  b.link(Who, "APMC Trader", "IS_A", Who, "Traders");
  b.link(Who, "PDS Beneficiaries", "IS_A", Who, "Consumers");
  b.link(Who, "APL/BPL beneficiaries", "IS_A", Who, "PDS Beneficiaries");

  for (const char* f :
       {"Conventional Farm", "Organic Farm", "Leisure Farm", "Solar Farm", "Wind Farm"}) {
    b.link(What, f, "IS_A", What, "Farm");
  }
  for (const char* c : {"Rice", "Wheat", "Sugarcane", "Pulses", "Vegetables", "Cereals",
                        "Coarse Cereals", "Oilseeds", "Commercial Crops", "Crops under MSP"}) {
    b.link(What, c, "IS_A", What, "Crops");
  }
  for (const char* c :
       {"Rice", "Wheat", "Pulses", "Coarse Cereals", "Oilseeds", "Commercial Crops"}) {
    b.link(What, c, "UNDER_MSP", What, "Crops under MSP");
  }
  for (const char* c : {"Rice", "Wheat", "Coarse Cereals"}) {
    b.link(What, c, "PART_OF", What, "Cereals");
  }

  for (const char* m : {"Yield", "Productivity", "Incomes", "Production", "Procurement",
                        "Acreage"}) {
    b.link(Why, m, "IS_A", Why, "Measures");
  }
  for (const char* m : {"Soil quality", "water quality", "air pollution", "emissions"}) {
    b.link(Why, m, "IS_A", Why, "Ecological Measures");
  }
  for (const char* m : {"GDP (Agriculture)", "GDP (per-Capita Farmer)", "% Export", "debt level",
                        "poverty level", "unemployment level", "profitability level",
                        "Carbon-Footprint", "Energy-related metrics"}) {
    b.link(Why, m, "IS_A", Why, "Metrics");
  }

  b.link(Where, "Villages", "PART_OF", Where, "Districts");
  b.link(Where, "Localities", "PART_OF", Where, "Districts");
  b.link(Where, "Districts", "PART_OF", Where, "States");
  b.link(Where, "States", "PART_OF", Where, "Regions");
  b.link(Where, "Farm Plots", "LOCATED_IN", Where, "Villages");
  b.link(Where, "Mandi", "LOCATED_IN", Where, "Districts");
  b.link(Where, "Geo-tags", "IDENTIFIES", Where, "Farm Plots");
  b.link(Where, "Address and Locations", "DESCRIBES", Where, "Farm Plots");
}

void add_flows(Builder& b) {
  // Produce: farmer -> Mandi -> trader -> retailer -> consumer.
  b.link(Who, "Farmers", "SELLS_AT", Where, "Mandi", "Mandi");
  b.link(Who, "APMC Farmer", "SELLS_AT", Where, "Mandi", "Mandi");
  b.link(Who, "Farmers", "SELLS_TO", Who, "Traders", "Mandi");
  b.link(Who, "APMC Farmer", "SELLS_TO", Who, "APMC Trader", "Mandi");
  b.link(Who, "Traders", "SELLS_TO", Who, "Retailers");
  b.link(Who, "Retailers", "SELLS_TO", Who, "Consumers");
  b.link(Who, "Sellers", "SELLS_TO", Who, "Buyers");
  b.link(Rtr, "Intermediaries", "AGGREGATES_FROM", Who, "Farmers", "Arthiya");
  b.link(Rtr, "Intermediaries", "SELLS_TO", Rtr, "Government Agencies");
  b.link(Rtr, "Intermediaries", "LENDS_TO", Who, "Farmers", "Arthiya");
  b.link(Who, "Aggregators", "AGGREGATES_FROM", Who, "Small-Holdings Farmers", "Arthiya");
  b.link(Who, "Commission Agent", "ACTS_FOR", Rtr, "Intermediaries");
  b.link(Who, "Rich Farmers", "SELLS_TO", Rtr, "Government Agencies", "FCI");
  b.link(Rtr, "FCI", "PROCURES_FROM", Who, "MSP Beneficiary");
  b.link(Rtr, "PDS", "DISTRIBUTES_TO", Who, "PDS Beneficiaries");
  b.link(Rtr, "Supermarket chains", "BUYS_FROM", Who, "Farmers");
  b.link(Rtr, "Food Processors", "CONTRACTS_WITH", Who, "Contract Farmer");
  b.link(Rtr, "Exporters", "BUYS_FROM", Who, "Traders");
  b.link(Rtr, "Importers", "SELLS_TO", Who, "Traders");
  b.link(Rtr, "Transporters", "SERVES", Who, "Farmers");
  b.link(Rtr, "Seed Providers", "SUPPLIES", Who, "Farmers");
  b.link(Rtr, "Fertilizer Firms", "SUPPLIES", Who, "Farmers");
  b.link(Rtr, "Agricultural Input Providers", "SUPPLIES", Who, "Farmers");
  b.link(Rtr, "Research Institutions & Extensions", "ADVISES", Who, "Farmers");
  b.link(Rtr, "Investors", "INVESTS_IN", How, "Contract Farming");
  b.link(Rtr, "Regulators", "REGULATES", Where, "Mandi");
  b.link(Rtr, "Regulators", "REGULATES", Rtr, "E-NAM");

  // Land, labour and households.
  b.link(Who, "Farm-owners", "LEASES_TO", Who, "Tenant Farmers");
  b.link(Who, "Farm-owners", "EMPLOYS", Who, "Farm-workers");
  b.link(Who, "Farm-owners", "OWNS", What, "Land Holding");
  b.link(Who, "Farmers", "OWNS", What, "Farm");
  b.link(Who, "Households", "OWNS", What, "Own house");
  b.link(Who, "Households", "WORKS_ON", What, "Farm");
  b.link(Who, "Farmers", "CULTIVATES", Where, "Farm Plots");
  b.link(Who, "Money Lenders", "EARNS", What, "Money Lending");
  b.link(Rel, "Tenancy", "INVOLVES", Who, "Farm-owners");
  b.link(Rel, "Tenancy", "INVOLVES", Who, "Tenant Farmers");
  b.link(Rel, "Under Organic Farming", "INVOLVES", What, "Organic Farm");
  b.link(Rel, "Natural Farming", "FOLLOWS", How, "Natural Farming");
  b.link(What, "Organic Farm", "PRACTISES", How, "Organic Farming");
  b.link(Rel, "Communes", "INVOLVES", Who, "Households");

  // Finance and insurance.
  for (const char* f : {"Farmers", "Medium Farmers", "Large Farmers", "Rich Farmers"}) {
    b.link(Who, f, "FINANCED_BY", Rtr, "Banks", "NABARD");
  }
  b.link(Who, "Small-Holdings Farmers", "FINANCED_BY", Who, "Money Lenders", "Arthiya");
  b.link(Who, "Tenant Farmers", "FINANCED_BY", Who, "Commission Agent", "Arthiya");
  b.link(Who, "Farmers", "INSURED_BY", Rtr, "Insurance Firms", "Government Agencies");
  b.link(Who, "Traders", "INSURED_BY", Rtr, "Insurance Firms", "Government Agencies");

  // Benefits.
  b.link(Who, "Farmers", "RECEIVES_BENEFIT", What, "Income Support", "Government Agencies");
  b.link(Who, "Farmers", "RECEIVES_BENEFIT", What, "Fertilizer Subsidy", "Fertilizer Firms");
  b.link(Who, "MSP Beneficiary", "RECEIVES_BENEFIT", What, "Price Support", "FCI");
  b.link(Who, "PDS Beneficiaries", "RECEIVES_BENEFIT", What, "PDS", "PDS");
  b.link(Who, "APL/BPL beneficiaries", "RECEIVES_BENEFIT", What, "PDS", "PDS");
  b.link(Who, "Farm-workers", "RECEIVES_BENEFIT", What, "MGNREGA", "Government Agencies");
  b.link(Who, "Small-Holdings Farmers", "RECEIVES_BENEFIT", What, "Interest Subvention",
         "Banks");
  b.link(Who, "Households", "RECEIVES_BENEFIT", What,
         "Subsidies related to health, education, electricity, water, LPG",
         "Government Agencies");

  for (const auto& s : schemes()) {
    b.link(How, s.name, "PROVIDES", What, s.provides);
    b.link(Rtr, "Government Agencies", "ADMINISTERS", How, s.name);
  }
  b.link(How, "MSP", "SUPPORTS", What, "Crops under MSP");
  b.link(How, "Electronic Nationwide Agricultural Market (ENAM)", "ESTABLISHES", Rtr, "E-NAM");
  b.link(How, "Zero-Budget Natural Farming", "PROMOTES", How, "Natural Farming");
  b.link(How, "Cooperative Sector", "PROMOTES", How, "Cooperative Farming");

  // Separation-bearing links.
  b.link(Who, "Large Farmers", "INFORMED_BY", Rtr, "E-NAM");
  b.link(Who, "APMC Farmer", "INFORMED_BY", Who, "APMC Trader");
  b.link(Who, "APMC Trader", "INFORMED_BY", Rtr, "E-NAM");
  b.link(Who, "Contract Farmer", "INFORMED_BY", Rtr, "Food Processors");
  b.link(Who, "Large Farmers", "SERVED_BY", Where, "Mandi");
  b.link(Who, "APMC Farmer", "SERVED_BY", Where, "Mandi");
  b.link(Who, "Medium Farmers", "LOCATED_NEAR", Where, "Villages");
  b.link(Who, "Farmers", "SELLS_DURING", When, "Kharif Harvest Sales 2019");
  b.link(Who, "Tenant Farmers", "SELLS_DURING", When, "Early Sales 2019");
  b.link(Rtr, "FCI", "BUYS_DURING", When, "Kharif Procurement Window 2019");
  b.link(Who, "Rich Farmers", "HAS_CAPABILITY", What, "Tractor");
  b.link(Who, "Large Farmers", "HAS_CAPABILITY", What, "Solar Pump");
  b.link(Who, "Farmers", "HAS_KNOWHOW", What, "Traditional Farming Knowledge");
  b.link(Who, "Small-Holdings Farmers", "HAS_KNOWHOW", What, "Natural Farming Knowledge");
  b.link(Who, "Large Farmers", "HAS_KNOWHOW", What, "Water Conservation Knowhow");
  b.link(Who, "Rich Farmers", "HAS_KNOWHOW", What, "Innovation Affinity");
  b.link(Who, "Farmers", "MEMBER_OF", Rel, "Farmer Co-operatives");
  b.link(Who, "Small-Holdings Farmers", "MEMBER_OF", Rel, "Farmer Co-operatives");
  b.link(Who, "Traders", "MEMBER_OF", Rel, "Trader Associations");
  b.link(Who, "Consumers", "MEMBER_OF", Rel, "Consumer Groups");
  b.link(Who, "Farmers", "AFFILIATED_WITH", Rel, "Farmer Co-operatives");
  b.link(Who, "Traders", "AFFILIATED_WITH", Rel, "Trader Associations");
  for (const char* s : {"Informational", "Spatial", "Temporal", "Financial", "Capability",
                        "Intellectual", "Socio-Political"}) {
    b.link(Sep, s, "AFFECTS", Who, "Farmers");
  }

  // Lifecycle events.
  b.link(Who, "Farmers", "EXPERIENCES", When, "Death");
  b.link(Who, "Farm-workers", "EXPERIENCES", When, "Migration");
  b.link(Where, "Farm Plots", "SUBJECT_OF", When, "Transfer of Land Ownership");
  b.link(How, "Income Support", "OCCURS_AT", When, "Benefit Payment");
  b.link(How, "MSP", "OCCURS_AT", When, "Procurement");
  b.link(How, "Pradhan Mantri Kisan Samman Yojana (PM-KISAN)", "OCCURS_AT", When,
         "Scheme Announcement");
}

void add_measures(Builder& b) {
  const ElementId& fy1 = b.id(When, "FY 2018-19");
  const ElementId& fy2 = b.id(When, "FY 2019-20");
  for (const auto& s : schemes()) {
    const ElementId& subject = b.id(How, s.name);
    b.measure(subject, kBudgetMetric, s.outlay_2018_19, kBudgetUnit, fy1);
    b.measure(subject, kBudgetMetric, s.outlay_2019_20, kBudgetUnit, fy2);
  }
  const ElementId& kisan = b.id(How, schemes()[0].name);
  b.measure(kisan, "Annual Payout per Farmer", 6000, "INR");
  b.measure(kisan, "Beneficiary Farmers", 14.5, "crore");
  const ElementId& interest = b.id(How, schemes()[1].name);
  b.measure(interest, "Interest Subvention on Grant", 2, "percent");
  b.measure(interest, "Additional Subvention on Repayment", 3, "percent");
  b.measure(interest, "Loan Limit", 300000, "INR");
}

}  // namespace

TantraGraph build_agri_dataset() {
  TantraGraph g;
  Builder b(g);
  add_people(b);
  add_places_and_events(b);
  add_things(b);
  add_processes(b);
  add_goals_and_structure(b);
  add_hierarchies(b);
  add_flows(b);
  add_measures(b);
  return g;
}

InterventionRecord farm_law_one_record(const TantraGraph& g) {
  auto find = [&](Aspect a, const char* name) {
    const Element* e = g.find_by_name(a, name);
    if (!e) {
      throw Error(ErrorCode::UnknownId,
                  "no " + std::string(to_string(a)) + " element '" + name + "'");
    }
    return e->id();
  };

  InterventionRecord r;
  r.summary =
      "Giving Freedom to farmers by removing the regulation that they have to sell only in APMC "
      "Mandis enabling them to sell to any trader where they do not have to pay any APMC fees.";
  r.problem =
      "When Farmers are required to sell only at APMC Mandis then they may get into a monopsony "
      "situation with traders that have a license. In cases when they sell through commission "
      "agents, they may get into monopsony with them, thus reducing the bargaining power. The "
      "restriction reduces farmers' profit and raises the prices consumers have to pay.";
  r.overall_goal =
      "Enabling farmers to sell to whoever they want and whenever they want, thus enabling both "
      "spatial and temporal arbitrage";
  r.change_process =
      "Encouraging farmers to sell directly instead of at Mandis or to the local aggregator or "
      "commission agent.";
  r.change_markers = {
      {"% of farmers selling outside APMC system", GroupSelector::parse("Farmers"),
       Aggregation::Mean},
      {"Volume of trade", GroupSelector::parse("*"), Aggregation::Sum},
      {"Value of Trade", GroupSelector::parse("*"), Aggregation::Sum},
      {"Diversity of crops sold directly", GroupSelector::parse("Farmers"), Aggregation::Mean},
      {"Crop-wise change", GroupSelector::parse("label:Crop"), Aggregation::Sum},
  };
  r.meta_theory =
      "When farmers get the freedom to sell without restrictions, they can discover the best "
      "possible prices and may be able to sell in less time. Even when they end up selling at "
      "Mandis their bargaining power improves because of wider choice.";
  r.inputs = {
      "Appropriate communication to farmers and traders using a variety of media.",
      "Spreading the news through communities about the process they can adopt.",
      "Platforms/Forums to discover traders and farmers.",
      "Mutual Trust/referral/recommendation mechanism.",
      "Demand and Supply information.",
      "Payment Assurance and Delivery Assurance.",
  };
  r.actors = {find(Who, "Traders"), find(Who, "Farmers"), find(Rtr, "Government Agencies"),
              find(Rtr, "Regulators")};
  r.domains_of_change = {"Agricultural Trading and Commerce"};
  r.internal_risks = {
      "Traders accepting goods and not making payments.",
      "Farmers accepting payment and not doing timely deliveries.",
      "Usual losses in transit.",
      "Quality issues.",
  };
  r.assumptions = {
      "The whole change relies on the assumption that farmers are not satisfied with the current "
      "APMC system and would like to explore avenues that are not as reliable and well-known as "
      "APMC.",
  };
  r.external_risks = {
      "The vested interests may spread misinformation and cause fear, uncertainty, and doubt in "
      "farmers.",
      "Some trades outside APMC may go bad.",
  };
  r.obstacles = {
      "Farmers are dependent on credit on large farmers and commission agents.",
      "This may cause them to continue to live with monopsony.",
  };
  r.knock_on_effects = {
      "Overall efficiency in the market may mean lower prices and better choices to consumers and "
      "better returns for farmers.",
      "Intermediaries may be forced to add value in terms of logistics, quality assurance, "
      "delivery assurance, and payment assurance.",
      "Better bargaining power to farmers at APMC and revision of APMC fees to make the Mandis "
      "competitive.",
  };
  r.linked_process = find(How, "APMC");
  return r;
}

const std::vector<DatasetView>& dataset_views() {
  static const std::vector<DatasetView> v = {
      {"people", "MATCH (x:Who) RETURN x"},
      {"farms", "MATCH (f:What)-[:IS_A]->(p:What {name: \"Farm\"}) RETURN f, p"},
      {"crops", "MATCH (c:What)-[:IS_A]->(p:What {name: \"Crops\"}) RETURN c, p"},
      {"measures", "MATCH (m:Why)-[:IS_A]->(p:Why {name: \"Measures\"}) RETURN m, p"},
  };
  return v;
}

}  // namespace tantra
