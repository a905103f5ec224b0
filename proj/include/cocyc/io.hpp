#pragma once

#include "cocyc/cochain.hpp"
#include "cocyc/group.hpp"
#include "cocyc/homology.hpp"
#include "cocyc/regularity.hpp"
#include "cocyc/simplex.hpp"
#include "cocyc/step_kernel.hpp"

#include "json.hpp"

#include <string>

namespace cocyc {

using Json = nlohmann::ordered_json;

/// Raised for malformed or invariant-violating input documents.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

Json read_json_file(const std::string& path);

Json to_json(const GroupSpec& group);
GroupSpec group_from_json(const Json& j);

/// {"0": 0.5, "1": 0.5}, keys as in GroupSpec::key. Rational strings such as
/// "1/3" are kept exact.
Json to_json(const SymmetricDistribution& nu);
SymmetricDistribution distribution_from_json(const GroupSpec& group, const Json& j);

/// {n, group, edges: [{u, v, g}]} with g a residue list; every edge of K_n
/// must appear exactly once.
Json to_json(const Cochain& f);
Cochain cochain_from_json(const Json& j);

/// {group, part_measures, values[i][j][g]}. The reader checks shape, part
/// measures, symmetry, and (when require_graphon) the range [0,1].
Json to_json(const StepKernel& w);
StepKernel kernel_from_json(const Json& j, bool require_graphon = true);
ExactStepKernel exact_kernel_from_json(const Json& j, bool require_graphon = true);

/// {n, triangles: [[u,v,w], ...]}.
Json to_json(const TwoComplex& x);
TwoComplex complex_from_json(const Json& j);

Json to_json(const HomologyReport& r);
Json to_json(const FkResult& r);

/// Shortest round-trip decimal form of a double; "inf", "-inf", "nan" for
/// non-finite values.
std::string format_double(double x);

/// A double as JSON, with non-finite values as the strings above.
Json json_number(double x);

}  // namespace cocyc
