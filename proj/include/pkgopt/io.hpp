#pragma once

#include <map>
#include <string>
#include <vector>

#include "pkgopt/calibration.hpp"
#include "pkgopt/catalog.hpp"
#include "pkgopt/cost_matrices.hpp"
#include "pkgopt/damage_model.hpp"
#include "pkgopt/matrix.hpp"
#include "pkgopt/tikhonov.hpp"

namespace pkgopt {

/// File schemas. All package indices in files are 1-based; in-memory indices
/// are 0-based throughout the library, readers and writers convert.
///
/// products:  product_id,feature_1..feature_F,fragile,liquid,hazardous,
///            current_type,sales_velocity,damage_cost,
///            ship_cost_type1..ship_cost_typeN
///            ("inf" allowed only in ship-cost columns and marks the type as
///             oversize for that product; the file carries the combined
///             material + transport cost)
/// shipments: product_id,feature_1..feature_F,package_index,label
/// probabilities: product_id,p_type1..p_typeN

struct ProductsFile {
  std::vector<ProductRecord> records;
  std::size_t type_count = 0;
  std::size_t feature_dim = 0;
};

ProductsFile read_products_csv(const std::string& path);
void write_products_csv(const std::string& path,
                        const std::vector<ProductRecord>& records);

struct ShipmentsFile {
  std::vector<ShipmentRecord> shipments;
  std::size_t feature_dim = 0;
};

ShipmentsFile read_shipments_csv(const std::string& path);
void write_shipments_csv(const std::string& path,
                         const std::vector<ShipmentRecord>& shipments);

struct ProbabilitiesFile {
  std::vector<std::string> product_ids;
  Matrix probabilities;
};

ProbabilitiesFile read_probabilities_csv(const std::string& path);
void write_probabilities_csv(const std::string& path,
                             const std::vector<std::string>& product_ids,
                             const Matrix& probabilities);

/// Versioned flat text model format; doubles round-trip bit-exactly.
void write_model(const std::string& path, const MonotoneLogisticModel& model);
MonotoneLogisticModel read_model(const std::string& path);

void write_calibration(const std::string& path, const CalibrationMap& map);
CalibrationMap read_calibration(const std::string& path);

/// Recommendation table:
/// product_id,current_type,recommended_type,S_cur,S_new,D_cur,D_new
/// plus a TOTAL footer row carrying the four cost totals.
void write_recommendations_csv(const std::string& path,
                               const std::vector<ProductRecord>& records,
                               const CostMatrices& costs,
                               const Assignment& assignment);

/// Flat "key = value" config with '#' comments.
std::map<std::string, std::string> read_kv_config(const std::string& path);

MaskRuleSet mask_rules_from_config(
    const std::map<std::string, std::string>& kv,
    const PackageCatalog& catalog);

void write_reliability_csv(const std::string& path,
                           const std::vector<TypeReliability>& report);

}  // namespace pkgopt
