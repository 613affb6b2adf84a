#pragma once

// Closed-form verdicts for BS(k,l), G_k, G_{k,l}, H_k and canonical
// graph-of-groups encodings of these families and of a few fixed examples.

#include <optional>
#include <stdexcept>
#include <string>

#include "vrc/graph_model.hpp"

namespace vrc {

enum class Family { BS, GK, GKL, HK };
std::string to_string(Family f);
std::optional<Family> family_from_string(const std::string& s);

struct FamilyVerdicts {
  Family family = Family::BS;
  long k = 0;
  long l = 0;  // unused for GK and HK
  bool vrc = false;
  std::optional<bool> lr;    // BS only
  std::optional<bool> vfbc;  // GK and GKL: virtually free-by-cyclic
  std::optional<GraphOfGroups> encoding;  // none for HK
};

/// Throws std::invalid_argument on out-of-range parameters.
FamilyVerdicts family_verdicts(Family f, long k, long l = 0);

/// Loop "t" on vertex "v" = Z with t a^k t^-1 = a^l.
GraphOfGroups bs_encoding(long k, long l);
/// Vertex "v" = Z^2 = <a,b>, loops s (s a s^-1 = b) and t (t b t^-1 = b^k a^l).
GraphOfGroups gkl_encoding(long k, long l);
GraphOfGroups gk_encoding(long k);
/// s a s^-1 = a b, t b t^-1 = a^2 b.
GraphOfGroups gersten_encoding();
/// t a t^-1 = b on Z^2.
GraphOfGroups bks_encoding();

/// Unwraps GraphOfGroups::build, throwing std::invalid_argument on violations.
GraphOfGroups build_or_throw(std::vector<VertexSpec> vertices, std::vector<EdgeSpec> edges);

}  // namespace vrc
