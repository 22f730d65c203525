#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace pkgopt {

/// The ordered set of package types for a run.
///
/// Index 0 is the least robust type and index n-1 the most robust; the index
/// doubles as the robustness rank. The order is total and fixed for a run.
/// All in-memory package indices in this library are 0-based; file formats
/// use 1-based indices (see io.hpp).
struct PackageCatalog {
  std::vector<std::string> names;

  /// Eight-type catalogs get the standard labels, in ascending robustness:
  /// NAP, PL, PS, JM, CP, T, V, C. Other sizes get generic labels P1..Pn.
  static PackageCatalog canonical(std::size_t type_count);

  std::size_t size() const { return names.size(); }

  std::optional<std::size_t> index_of(const std::string& name) const;

  /// Throws DomainError unless there are >= 2 uniquely named types.
  void validate() const;
};

/// Per-type shipping cost components for one product. A type the product
/// physically cannot fit marks `oversize` instead of carrying an infinite
/// cost; infinities never enter arithmetic, the mask is the single source of
/// truth for feasibility.
struct ShipCost {
  double material = 0.0;
  double transport = 0.0;
  bool oversize = false;

  double total() const { return material + transport; }
};

struct ProductRecord {
  std::string id;
  std::vector<double> features;
  bool fragile = false;
  bool liquid = false;
  bool hazardous = false;
  std::size_t current_type = 0;  // 0-based robustness index
  double sales_velocity = 0.0;   // units per period, >= 0
  double damage_cost = 0.0;      // cost of one damaged shipment, >= 0
  std::vector<ShipCost> ship_costs;  // exactly one entry per package type
};

}  // namespace pkgopt
