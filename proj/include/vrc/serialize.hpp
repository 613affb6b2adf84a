#pragma once

// JSON documents for groups, graphs of groups, words, witnesses and verdicts.
// Integers are JSON numbers when they fit in 64 bits and decimal strings
// otherwise; both forms are accepted on input.

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "vrc/britton.hpp"
#include "vrc/deciders.hpp"
#include "vrc/euclid_witness.hpp"
#include "vrc/families.hpp"
#include "vrc/graph_model.hpp"

namespace vrc {

using Json = nlohmann::ordered_json;

/// Malformed or invalid input; each violation carries a JSON pointer.
class InputError : public std::runtime_error {
 public:
  explicit InputError(std::vector<Violation> v)
      : std::runtime_error(v.empty() ? "invalid input" : v.front().where + ": " + v.front().what),
        violations(std::move(v)) {}
  InputError(const std::string& where, const std::string& what) : InputError({{where, what}}) {}
  std::vector<Violation> violations;
};

std::string pointer_append(const std::string& ptr, const std::string& key);
std::string pointer_append(const std::string& ptr, std::size_t index);

Json to_json(const Integer& x);
Integer integer_from_json(const Json& j, const std::string& ptr);
Json to_json(const Rational& x);
Rational rational_from_json(const Json& j, const std::string& ptr);

Json to_json(const IntVector& v);
IntVector int_vector_from_json(const Json& j, const std::string& ptr);

Json to_json(const IntegerMatrix& m);
/// A matrix with `cols` columns; an empty array gives a 0 x cols matrix.
IntegerMatrix matrix_from_json(const Json& j, const std::string& ptr, std::size_t cols);
/// Column count taken from the first row.
IntegerMatrix matrix_from_json(const Json& j, const std::string& ptr);

Json to_json(const FgAbGroup& g);
FgAbGroup group_from_json(const Json& j, const std::string& ptr);

Json to_json(const GraphOfGroups& g);
/// Structural problems and build violations are thrown as InputError; the
/// graph-of-groups axioms are left to validate().
GraphOfGroups graph_from_json(const Json& j);

Json to_json(const GraphOfGroups& g, const Word& w);
Word word_from_json(const GraphOfGroups& g, const Json& j);

Json to_json(const AffineElement& x);
AffineElement affine_from_json(const Json& j, const std::string& ptr, std::size_t n);
Json to_json(const EuclideanWitness& w);
EuclideanWitness witness_from_json(const Json& j);

Json to_json(const VerificationReport& r);
Json to_json(const FinitenessResult& r);
Json to_json(const FamilyVerdicts& f);
Json to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j, const std::string& ptr);
Json to_json(const Verdict& v);
Verdict verdict_from_json(const Json& j);

Json to_json(const std::vector<Violation>& v);

}  // namespace vrc
