#include "fblow/catalog.hpp"

#include "fblow/errors.hpp"
#include "fblow/parse.hpp"

namespace fblow {

QRingPtr RingSpec::make() const {
  auto ring = PolyRing::make(characteristic, vars);
  return QuotientRing::make(ring, relations);
}

PresentedModule NamedMatrix::presented(const QRingPtr& ring) const {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  PolyMatrix m(ring->ambient(), rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw RingError("ragged matrix " + name);
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = parse(rows[i][j], ring->ambient());
  }
  return PresentedModule(ring, m);
}

namespace {

RingSpec xyz(std::string name, uint32_t p, std::string relation) {
  return RingSpec{std::move(name), p, {"x", "y", "z"}, {std::move(relation)}};
}

std::vector<CatalogEntry> build() {
  std::vector<CatalogEntry> out;
  out.push_back(d2n0_entry(2));
  out.push_back(d2n0_entry(3));
  out.push_back({xyz("D4_1", 2, "z^2+x^2*y+x*y^2+x*y*z"), "D4^1 rational double point, p=2", std::nullopt,
                 {{"B1", {{"z", "x+y+z"}, {"x*y", "z"}}},
                  {"B2", {{"z", "y"}, {"x*(x+y+z)", "z"}}},
                  {"B3", {{"z", "y*(x+y+z)"}, {"x", "z"}}}}});
  out.push_back({xyz("E6_0", 2, "z^2+x^3+y^2*z"), "E6^0 rational double point, p=2", std::nullopt,
                 {{"A1", {{"z", "y", "x", "0"}, {"y*z", "z", "0", "x"}, {"x^2", "0", "z", "y"}, {"0", "x^2", "y*z", "z"}}},
                  {"A2", {{"x", "y^2+z", "y", "0"}, {"z", "x^2", "0", "x*y"}, {"0", "0", "x", "y^2+z"}, {"0", "0", "z", "x^2"}}},
                  {"A3", {{"x", "z", "0", "0"}, {"y^2+z", "x^2", "0", "0"}, {"y", "0", "x", "z"}, {"0", "x*y", "y^2+z", "x^2"}}}}});
  out.push_back({xyz("E6_1", 2, "z^2+x^2*y+x*y^2+x*y*z"), "E6^1 rational double point, p=2 (equation as printed)",
                 std::string("D4_1"),
                 {{"A", {{"z", "0", "0", "0", "x", "z"},
                         {"0", "z", "y", "0", "y", "x"},
                         {"x*y", "y*z", "z", "x^2+y*z", "0", "0"},
                         {"0", "0", "x", "x", "y", "0"},
                         {"x^2", "x*z", "0", "y*z", "z", "0"},
                         {"x*y+y^2", "x^2", "0", "x*y", "0", "z"}}}}});
  out.push_back({xyz("E8_3", 2, "z^2+x^3+y^5+y^3*z"), "E8^3 rational double point, p=2", std::nullopt, {}});
  out.push_back({xyz("E8t_fpure_p2", 2, "y^2+x^3+x*y*z+z^6"), "simple elliptic E8~, F-pure, p=2", std::nullopt, {}});
  out.push_back({xyz("E7t_fpure_p2", 2, "y^2+x*y*z+x^3*z+x*z^3"), "simple elliptic E7~, F-pure, p=2", std::nullopt, {}});
  out.push_back({xyz("E6t_fpure_p2", 2, "y^2*z+x*y*z+x^3+z^3"), "simple elliptic E6~, F-pure, p=2", std::nullopt, {}});
  out.push_back({xyz("E8t_nonfpure_p3", 3, "x*(x-z^2)*(x-2*z^2)-y^2"), "simple elliptic E8~, not F-pure, p=3",
                 std::nullopt, {}});
  out.push_back({xyz("E8t_nonfpure_p2", 2, "y^2+y*z^3+x^3"), "simple elliptic E8~, not F-pure, p=2", std::nullopt, {}});
  out.push_back({xyz("E6t_nonfpure_p2", 2, "y^2*z+y*z^2+x^3"), "simple elliptic E6~, not F-pure, p=2", std::nullopt, {}});
  return out;
}

}  // namespace

CatalogEntry d2n0_entry(unsigned n) {
  if (n < 2) throw RingError("D_2n^0 needs n >= 2");
  std::string name = "D" + std::to_string(2 * n) + "_0";
  return {xyz(name, 2, "z^2+x^2*y+x*y^" + std::to_string(n)), "D" + std::to_string(2 * n) + "^0 rational double point, p=2",
          std::nullopt, {}};
}

std::vector<FixtureCheck> fixture_checks(const CatalogEntry& entry, const FBlowupReport& rep) {
  std::vector<FixtureCheck> out;
  if (rep.status != "complete") return out;
  const std::string& name = entry.duplicate_of ? *entry.duplicate_of : entry.ring.name;
  uint64_t expected_rank = 1;
  const std::size_t dim = entry.ring.vars.size() - entry.ring.relations.size();
  for (std::size_t i = 0; i < dim * rep.e; ++i) expected_rank *= entry.ring.characteristic;
  out.push_back({"rank", rep.rank == expected_rank});
  out.push_back({"kunz_locus", rep.kunz.value_or(false)});

  auto all_distinct = [](const std::vector<std::string>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::size_t j = i + 1; j < v.size(); ++j) {
        if (v[i] == v[j]) return false;
      }
    }
    return true;
  };
  if (rep.e == 1 && name == "D4_1") {
    std::size_t free_blocks = 0;
    std::vector<std::string> sigs;
    bool ranks = true;
    for (const auto& b : rep.blocks) {
      ranks = ranks && b.rank == 1;
      if (b.cols == 0) {
        ++free_blocks;
      } else {
        sigs.push_back(b.signature);
      }
    }
    out.push_back({"four_rank_one_blocks", rep.blocks.size() == 4 && ranks && free_blocks == 1});
    out.push_back({"distinct_signatures", sigs.size() == 3 && all_distinct(sigs)});
    bool singular = false;
    for (const auto& c : rep.charts) singular = singular || (c.smooth && !*c.smooth);
    out.push_back({"singular_chart", singular});
  }
  if (rep.e == 1 && name == "E6_0") {
    auto ring = entry.ring.make();
    const std::string a1 = signature(entry.companions.at(0).presented(ring)).hash_hex();
    bool match = rep.blocks.size() == 2;
    for (const auto& b : rep.blocks) match = match && b.signature == a1;
    out.push_back({"two_A1_blocks", match});
  }
  if (rep.e == 1 && name == "E8_3") {
    std::vector<std::string> sigs;
    bool ranks = rep.blocks.size() == 2;
    for (const auto& b : rep.blocks) {
      ranks = ranks && b.rank == 2;
      sigs.push_back(b.signature);
    }
    out.push_back({"two_rank_two_blocks", ranks});
    out.push_back({"distinct_signatures", all_distinct(sigs)});
  }
  if (rep.e == 1 && name == "E6t_nonfpure_p2") {
    bool smooth = !rep.charts.empty();
    for (const auto& c : rep.charts) smooth = smooth && c.smooth.value_or(false);
    out.push_back({"all_charts_smooth", smooth});
  }
  return out;
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build();
  return entries;
}

const CatalogEntry* find_entry(const std::string& name) {
  for (const auto& e : catalog()) {
    if (e.ring.name == name) return &e;
  }
  return nullptr;
}

}  // namespace fblow
