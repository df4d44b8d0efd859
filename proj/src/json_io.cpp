#include "postselect/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "postselect/error.hpp"

namespace postselect::io {

namespace {

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::size_t require_size(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw ParseError(std::string("field \"") + key + "\" must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

double number(const json& j) {
  if (!j.is_number()) throw ParseError("expected a number, got " + j.dump());
  return j.get<double>();
}

std::vector<cplx> complex_list(const json& j) {
  if (!j.is_array()) throw ParseError("expected an array of complex numbers");
  std::vector<cplx> out;
  for (const auto& e : j) out.push_back(complex_from_json(e));
  return out;
}

ProjectivePoint suite_entry(const json& j, std::size_t n) {
  if (n == 2 && (j.is_number() || j.is_string() || (j.is_object() && j.contains("a")))) {
    return from_riemann(riemann_from_json(j));
  }
  return point_from_json(j);
}

void dump_into(const json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case json::value_t::number_float: {
      const double x = j.get<double>();
      if (!std::isfinite(x)) {
        out += "null";
        break;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      out += buf;
      break;
    }
    case json::value_t::array: {
      const bool flat = std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
      if (j.empty()) {
        out += "[]";
      } else if (flat) {
        out += '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          dump_into(j[i], out, indent + 1);
        }
        out += ']';
      } else {
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
          out += inner;
          dump_into(j[i], out, indent + 1);
          out += i + 1 < j.size() ? ",\n" : "\n";
        }
        out += pad + ']';
      }
      break;
    }
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        break;
      }
      out += "{\n";
      std::size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        out += inner + json(it.key()).dump() + ": ";
        dump_into(it.value(), out, indent + 1);
        out += i + 1 < j.size() ? ",\n" : "\n";
      }
      out += pad + '}';
      break;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {number(j[0]), number(j[1])};
  throw ParseError("expected a complex number [re, im], got " + j.dump());
}

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

ComplexMatrix matrix_from_json(const json& j) {
  if (j.is_object()) {
    const std::size_t rows = require_size(j, "rows"), cols = require_size(j, "cols");
    std::vector<cplx> data = complex_list(require(j, "data"));
    if (data.size() != rows * cols) throw ParseError("matrix data length does not match rows*cols");
    return ComplexMatrix(rows, cols, std::move(data));
  }
  if (j.is_array() && !j.empty() && j[0].is_array()) {
    std::vector<cplx> data;
    const std::size_t cols = j[0].size();
    for (const auto& row : j) {
      auto r = complex_list(row);
      if (r.size() != cols) throw ParseError("ragged matrix rows");
      data.insert(data.end(), r.begin(), r.end());
    }
    return ComplexMatrix(j.size(), cols, std::move(data));
  }
  throw ParseError("expected a matrix object {rows, cols, data} or an array of rows");
}

json matrix_to_json(const ComplexMatrix& m) {
  json data = json::array();
  for (const auto& z : m.data()) data.push_back(complex_to_json(z));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

ProjectivePoint point_from_json(const json& j) {
  const json& c = j.is_object() ? require(j, "coords") : j;
  try {
    return ProjectivePoint(complex_list(c));
  } catch (const Error& e) {
    throw ParseError(std::string("invalid point: ") + e.what());
  }
}

json point_to_json(const ProjectivePoint& p) {
  json c = json::array();
  for (const auto& z : p.coords()) c.push_back(complex_to_json(z));
  return {{"coords", std::move(c)}};
}

RiemannPoint riemann_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return RiemannPoint::infinity();
    throw ParseError("unknown Riemann point " + j.dump());
  }
  if (j.is_number()) return RiemannPoint::from_value(j.get<double>());
  if (j.is_object() && j.contains("a")) {
    try {
      return {complex_from_json(j.at("a")), complex_from_json(require(j, "b"))};
    } catch (const Error& e) {
      throw ParseError(std::string("invalid Riemann point: ") + e.what());
    }
  }
  const ProjectivePoint p = point_from_json(j);
  if (p.dim() != 2) throw ParseError("Riemann point needs two coordinates");
  return to_riemann(p);
}

json riemann_to_json(const RiemannPoint& z) {
  return {{"a", complex_to_json(z.a())}, {"b", complex_to_json(z.b())}};
}

Suite suite_from_json(const json& j) {
  const std::size_t n = require_size(j, "n");
  const json& d = require(j, "domain");
  const json& r = require(j, "range");
  if (!d.is_array() || !r.is_array()) throw ParseError("domain and range must be arrays");
  if (j.contains("ell") && require_size(j, "ell") != d.size()) {
    throw ParseError("ell does not match the number of domain points");
  }
  std::vector<ProjectivePoint> dom, ran;
  for (const auto& e : d) dom.push_back(suite_entry(e, n));
  for (const auto& e : r) ran.push_back(suite_entry(e, n));
  for (const auto* half : {&dom, &ran}) {
    for (const auto& p : *half) {
      if (p.dim() != n) throw ParseError("suite point dimension differs from n");
    }
  }
  return Suite(std::move(dom), std::move(ran));
}

json suite_to_json(const Suite& s) {
  json d = json::array(), r = json::array();
  for (const auto& p : s.domain()) d.push_back(point_to_json(p));
  for (const auto& p : s.range()) r.push_back(point_to_json(p));
  return {{"n", s.n()}, {"ell", s.ell()}, {"domain", std::move(d)}, {"range", std::move(r)}};
}

json dilation_to_json(const DilationResult& d) {
  return {{"U", matrix_to_json(d.u)},
          {"scale_c", complex_to_json(d.scale_c)},
          {"lambda_min", d.lambda_min},
          {"lambda_max", d.lambda_max},
          {"gsp", d.gsp}};
}

json channel_to_json(const KrausChannel& ch) {
  json k = json::array();
  for (const auto& m : ch.kraus()) k.push_back(matrix_to_json(m));
  return {{"n_in", ch.n_in()}, {"n_out", ch.n_out()}, {"kraus", std::move(k)}};
}

json fit_to_json(const FitResult& f) {
  return {{"tau", suite_to_json(f.tau)},
          {"L", matrix_to_json(f.l)},
          {"max_fs", f.max_fs},
          {"converged", f.converged}};
}

json report_to_json(const ScalingReport& r) {
  return {{"n", r.n},
          {"ell", r.ell},
          {"eps_grid", r.eps_grid},
          {"fractions", r.fractions},
          {"slope", r.slope},
          {"intercept", r.intercept},
          {"predicted_exponent", r.predicted_exponent},
          {"samples_per_eps", r.samples_per_eps},
          {"seed", r.seed},
          {"notes", r.notes}};
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string dump(const json& j) {
  std::string out;
  dump_into(j, out, 0);
  out += '\n';
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out || !(out << text)) throw ParseError("cannot write " + path);
}

}  // namespace postselect::io
