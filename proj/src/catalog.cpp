#include "pkgopt/catalog.hpp"

#include <unordered_set>

#include "pkgopt/errors.hpp"

namespace pkgopt {

PackageCatalog PackageCatalog::canonical(std::size_t type_count) {
  PackageCatalog catalog;
  if (type_count == 8) {
    catalog.names = {"NAP", "PL", "PS", "JM", "CP", "T", "V", "C"};
  } else {
    catalog.names.reserve(type_count);
    for (std::size_t j = 0; j < type_count; ++j) {
      catalog.names.push_back("P" + std::to_string(j + 1));
    }
  }
  catalog.validate();
  return catalog;
}

std::optional<std::size_t> PackageCatalog::index_of(
    const std::string& name) const {
  for (std::size_t j = 0; j < names.size(); ++j) {
    if (names[j] == name) return j;
  }
  return std::nullopt;
}

void PackageCatalog::validate() const {
  if (names.size() < 2) {
    throw DomainError("package catalog needs at least two types");
  }
  std::unordered_set<std::string> seen;
  for (const auto& name : names) {
    if (!seen.insert(name).second) {
      throw DomainError("duplicate package type name: " + name);
    }
  }
}

}  // namespace pkgopt
