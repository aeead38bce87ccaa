// Rings, matrices and random elementary operations shared by the tests and
// the acceptance runner.
#pragma once

#include <string>
#include <vector>

#include "fblow/catalog.hpp"
#include "fblow/modpres.hpp"
#include "fblow/parse.hpp"
#include "gen.hpp"

namespace fblow::testing {

inline QRingPtr qring(uint32_t p, std::vector<std::string> vars, std::vector<std::string> relations) {
  return QuotientRing::make(PolyRing::make(p, std::move(vars)), relations);
}

inline QRingPtr catalog_ring(const std::string& name) { return find_entry(name)->ring.make(); }

inline PresentedModule module(const QRingPtr& r, const std::vector<std::vector<std::string>>& rows) {
  return NamedMatrix{"", rows}.presented(r);
}

inline PresentedModule companion(const std::string& entry, const std::string& name) {
  const CatalogEntry* e = find_entry(entry);
  for (const auto& m : e->companions) {
    if (m.name == name) return m.presented(e->ring.make());
  }
  throw std::out_of_range("no companion " + name);
}

/// Row-major copy of the entries.
inline std::vector<std::vector<Polynomial>> entries(const PresentedModule& m) {
  std::vector<std::vector<Polynomial>> a;
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(m.matrix().matrix().row(i));
  return a;
}

inline PresentedModule from_entries(const QRingPtr& r, const std::vector<std::vector<Polynomial>>& a, std::size_t cols) {
  PolyMatrix m(r->ambient(), a.size(), cols);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = a[i][j];
  }
  return PresentedModule(r, m);
}

/// A small multiplier: a constant, a variable, or a variable plus a constant.
inline Polynomial multiplier(Gen& g, const QRingPtr& r) {
  const auto& S = r->ambient();
  const uint32_t p = S->characteristic();
  Polynomial c = Polynomial::constant(S, static_cast<int64_t>(g.uniform(1, p - 1)));
  switch (g.uniform(0, 2)) {
    case 0:
      return c;
    case 1:
      return Polynomial::variable(S, g.uniform(0, S->nvars() - 1));
    default:
      return Polynomial::variable(S, g.uniform(0, S->nvars() - 1)) + c;
  }
}

/// One random operation that keeps the module: a row or column swap, a row
/// or column scaled by a unit, an R-multiple of one row or column added to
/// another, or a zero column appended.
inline PresentedModule elementary_op(Gen& g, const PresentedModule& m) {
  const QRingPtr& r = m.ring();
  auto a = entries(m);
  std::size_t t = m.rows(), s = m.cols();
  const uint32_t p = r->ambient()->characteristic();
  // even kinds act on rows, odd kinds on columns, 6 pads
  std::vector<int> kinds{6};
  if (t > 0) kinds.insert(kinds.end(), {0, 2, 4});
  if (s > 0) kinds.insert(kinds.end(), {1, 3, 5});
  auto row = [&] { return g.uniform(0, t - 1); };
  auto col = [&] { return g.uniform(0, s - 1); };
  switch (kinds[g.uniform(0, kinds.size() - 1)]) {
    case 0:
      std::swap(a[row()], a[row()]);
      break;
    case 1: {
      std::size_t j = col(), k = col();
      for (auto& x : a) std::swap(x[j], x[k]);
      break;
    }
    case 2: {
      std::size_t i = row();
      uint32_t c = static_cast<uint32_t>(g.uniform(1, p - 1));
      for (auto& x : a[i]) x = x.scaled(c);
      break;
    }
    case 3: {
      std::size_t j = col();
      uint32_t c = static_cast<uint32_t>(g.uniform(1, p - 1));
      for (auto& x : a) x[j] = x[j].scaled(c);
      break;
    }
    case 4: {
      std::size_t i = row(), k = row();
      if (i == k) break;
      Polynomial f = multiplier(g, r);
      for (std::size_t j = 0; j < s; ++j) a[i][j] = r->reduce(a[i][j] + f * a[k][j]);
      break;
    }
    case 5: {
      std::size_t j = col(), k = col();
      if (j == k) break;
      Polynomial f = multiplier(g, r);
      for (auto& x : a) x[j] = r->reduce(x[j] + f * x[k]);
      break;
    }
    default:
      for (auto& x : a) x.push_back(r->zero());
      ++s;
      break;
  }
  return from_entries(r, a, s);
}

inline PresentedModule scramble(Gen& g, PresentedModule m, int ops) {
  for (int k = 0; k < ops; ++k) m = elementary_op(g, m);
  return m;
}

/// Presentations with small matrices from the catalog and the D4^1 blocks.
struct NamedModule {
  std::string name;
  PresentedModule module;
};

inline std::vector<NamedModule> small_fixtures() {
  std::vector<NamedModule> out;
  for (const char* n : {"B1", "B2", "B3"}) out.push_back({std::string("D4_1/") + n, companion("D4_1", n)});
  for (const char* n : {"A1", "A2", "A3"}) out.push_back({std::string("E6_0/") + n, companion("E6_0", n)});
  out.push_back({"E6_1/A", companion("E6_1", "A")});
  return out;
}

}  // namespace fblow::testing
