#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bollobas/operators.hpp"

namespace bl {

struct GalleryParams {
  int dim = 8;
  double p = 0.0;       // G-BLOCK inner exponent (default 2), G-CORNER outer exponent (default 1)
  double alpha = 1.0;   // G-SKEW diagonal value on the trailing block
  int ell = 2;          // G-SKEW trailing block size
  std::uint64_t seed = 0;
};

struct ClaimResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Claim {
  std::string name;
  std::function<ClaimResult()> check;
};

struct GalleryEntry {
  std::string id;
  GalleryParams params;
  Operator op;
  std::string description;
  std::vector<Claim> claims;
};

const std::vector<std::string>& gallery_ids();
int gallery_min_dim(const std::string& id);
GalleryEntry gallery(const std::string& id, const GalleryParams& params = {});
// "gallery:G-BLOCK?dim=8&p=2"
GalleryEntry gallery_from_uri(const std::string& uri);
std::vector<ClaimResult> run_claims(const GalleryEntry& e);

// (1/2, 1/4, ..., 1/2^(k-1), 1/2^(k-1)): geometric weights with the last one doubled so they sum to 1
Vec folded_weights(int k);

}  // namespace bl
