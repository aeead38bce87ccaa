#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fblow/blowup.hpp"
#include "fblow/modpres.hpp"

namespace fblow {

/// A ring S/I given by text: characteristic, variables, relations.
struct RingSpec {
  std::string name;
  uint32_t characteristic = 2;
  std::vector<std::string> vars;
  std::vector<std::string> relations;

  QRingPtr make() const;
};

/// Matrix stored as row-major polynomial strings.
struct NamedMatrix {
  std::string name;
  std::vector<std::vector<std::string>> rows;

  PresentedModule presented(const QRingPtr& ring) const;
};

struct CatalogEntry {
  RingSpec ring;
  std::string description;
  /// Another entry with the same equation.
  std::optional<std::string> duplicate_of;
  std::vector<NamedMatrix> companions;
};

/// z^2 + x^2 y + x y^n over F_2, n >= 2.
CatalogEntry d2n0_entry(unsigned n);

/// Built-in fixtures, in a fixed order.
const std::vector<CatalogEntry>& catalog();
const CatalogEntry* find_entry(const std::string& name);

struct FixtureCheck {
  std::string name;
  bool pass = false;
};

/// Known facts about an entry checked against a completed fblowup report.
std::vector<FixtureCheck> fixture_checks(const CatalogEntry& entry, const FBlowupReport& rep);

}  // namespace fblow
