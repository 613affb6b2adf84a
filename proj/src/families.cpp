#include "vrc/families.hpp"

#include <cstdlib>

namespace vrc {

namespace {

IntegerMatrix col(std::initializer_list<long> v) {
  IntegerMatrix m(v.size(), 1);
  std::size_t i = 0;
  for (long x : v) m(i++, 0) = x;
  return m;
}

EdgeSpec loop(const std::string& id, IntegerMatrix alpha, IntegerMatrix omega) {
  return {id, "v", "v", FgAbGroup::free(1), std::move(alpha), std::move(omega)};
}

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::BS: return "bs";
    case Family::GK: return "gk";
    case Family::GKL: return "gkl";
    case Family::HK: return "hk";
  }
  return "?";
}

std::optional<Family> family_from_string(const std::string& s) {
  if (s == "bs") return Family::BS;
  if (s == "gk") return Family::GK;
  if (s == "gkl") return Family::GKL;
  if (s == "hk") return Family::HK;
  return std::nullopt;
}

GraphOfGroups build_or_throw(std::vector<VertexSpec> vertices, std::vector<EdgeSpec> edges) {
  auto built = GraphOfGroups::build(std::move(vertices), std::move(edges));
  if (auto* v = std::get_if<std::vector<Violation>>(&built))
    throw std::invalid_argument(v->front().where + ": " + v->front().what);
  GraphOfGroups g = std::get<GraphOfGroups>(std::move(built));
  if (auto v = validate(g); !v.empty())
    throw std::invalid_argument(v.front().where + ": " + v.front().what);
  return g;
}

GraphOfGroups bs_encoding(long k, long l) {
  return build_or_throw({{"v", FgAbGroup::free(1)}}, {loop("t", col({l}), col({k}))});
}

GraphOfGroups gkl_encoding(long k, long l) {
  return build_or_throw({{"v", FgAbGroup::free(2)}},
                        {loop("s", col({0, 1}), col({1, 0})), loop("t", col({l, k}), col({0, 1}))});
}

GraphOfGroups gk_encoding(long k) { return gkl_encoding(k, 1); }

GraphOfGroups gersten_encoding() {
  return build_or_throw({{"v", FgAbGroup::free(2)}},
                        {loop("s", col({1, 1}), col({1, 0})), loop("t", col({2, 1}), col({0, 1}))});
}

GraphOfGroups bks_encoding() {
  return build_or_throw({{"v", FgAbGroup::free(2)}}, {loop("t", col({0, 1}), col({1, 0}))});
}

FamilyVerdicts family_verdicts(Family f, long k, long l) {
  FamilyVerdicts out;
  out.family = f;
  out.k = k;
  const long ak = std::labs(k), al = std::labs(l);
  switch (f) {
    case Family::BS:
      if (k == 0 || l == 0) throw std::invalid_argument("BS(k,l) requires k, l nonzero");
      out.l = l;
      out.vrc = ak == al;
      out.lr = ak == al;
      out.encoding = bs_encoding(k, l);
      break;
    case Family::GK:
      out.vrc = ak <= 1;
      out.vfbc = ak <= 2;
      out.encoding = gk_encoding(k);
      break;
    case Family::GKL:
      if (k == 0 && l == 0) throw std::invalid_argument("G_{k,l} requires (k,l) != (0,0)");
      out.l = l;
      out.vrc = ak <= 1 && al <= 1;
      out.vfbc = (ak == 1 && al == 1) || std::labs(k + l) == 1 || std::labs(k - l) == 1;
      out.encoding = gkl_encoding(k, l);
      break;
    case Family::HK:
      out.vrc = ak <= 1;
      break;
  }
  return out;
}

}  // namespace vrc
