#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "postselect/channel.hpp"
#include "postselect/montecarlo.hpp"
#include "postselect/realize.hpp"
#include "postselect/suites.hpp"

namespace postselect::io {

using json = nlohmann::json;

// Malformed input (as opposed to a mathematically invalid one).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Complex: [re, im] or a bare real number.
cplx complex_from_json(const json& j);
json complex_to_json(cplx z);

// {"rows": r, "cols": c, "data": [[re, im], ...]} row-major; a nested array
// of rows is accepted on input as well.
ComplexMatrix matrix_from_json(const json& j);
json matrix_to_json(const ComplexMatrix& m);

// {"coords": [[re, im], ...]} or a bare coordinate array.
ProjectivePoint point_from_json(const json& j);
json point_to_json(const ProjectivePoint& p);

// Riemann-sphere point: a real number, "inf", {"a": z, "b": z}, or a
// two-coordinate point.
RiemannPoint riemann_from_json(const json& j);
json riemann_to_json(const RiemannPoint& z);

// {"n", "ell", "domain", "range"}; for n = 2 the entries may use the Riemann
// shorthand above.
Suite suite_from_json(const json& j);
json suite_to_json(const Suite& s);

json dilation_to_json(const DilationResult& d);
json channel_to_json(const KrausChannel& ch);
json fit_to_json(const FitResult& f);
json report_to_json(const ScalingReport& r);

json parse(const std::string& text);
json read_file(const std::string& path);

// Serializer that prints every floating-point number with 17 significant
// digits, so doubles survive a round trip.
std::string dump(const json& j);
void write_file(const std::string& path, const std::string& text);

}  // namespace postselect::io
