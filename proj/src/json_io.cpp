#include "polyspec/json_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace polyspec {

namespace {

double number_at(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw ParseError(std::string("expected numeric field \"") + key + "\"");
  return j.at(key).get<double>();
}

int int_at(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer())
    throw ParseError(std::string("expected integer field \"") + key + "\"");
  return j.at(key).get<int>();
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& a) {
  Json j;
  j["rows"] = a.rows();
  j["cols"] = a.cols();
  Json data = Json::array();
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c)
      data.push_back(Json::array({a(r, c).real(), a(r, c).imag()}));
  j["data"] = data;
  return j;
}

ComplexMatrix matrix_from_json(const Json& j) {
  const int rows = int_at(j, "rows");
  const int cols = int_at(j, "cols");
  if (rows < 0 || cols < 0) throw ParseError("matrix dimensions must be nonnegative");
  if (!j.contains("data") || !j.at("data").is_array())
    throw ParseError("expected array field \"data\"");
  const Json& data = j.at("data");
  if (data.size() != static_cast<size_t>(rows) * cols)
    throw ParseError("matrix data length does not match rows * cols");
  std::vector<Complex> entries;
  entries.reserve(data.size());
  for (const Json& cell : data) {
    if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() ||
        !cell[1].is_number())
      throw ParseError("matrix entries must be [re, im] pairs");
    entries.emplace_back(cell[0].get<double>(), cell[1].get<double>());
  }
  try {
    return ComplexMatrix(rows, cols, std::move(entries));
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

Json polynomial_to_json(const MatrixPolynomial& p) {
  Json j;
  j["n"] = p.order();
  j["m"] = p.degree();
  Json coeffs = Json::array();
  for (const ComplexMatrix& c : p.coeffs) coeffs.push_back(matrix_to_json(c));
  j["coeffs"] = coeffs;
  return j;
}

MatrixPolynomial polynomial_from_json(const Json& j) {
  const int n = int_at(j, "n");
  const int m = int_at(j, "m");
  if (!j.contains("coeffs") || !j.at("coeffs").is_array())
    throw ParseError("expected array field \"coeffs\"");
  const Json& coeffs = j.at("coeffs");
  if (coeffs.size() != static_cast<size_t>(m) + 1)
    throw ParseError("coefficient count does not match degree m");
  std::vector<ComplexMatrix> mats;
  mats.reserve(coeffs.size());
  for (const Json& c : coeffs) {
    ComplexMatrix mat = matrix_from_json(c);
    if (mat.rows() != n || mat.cols() != n)
      throw ParseError("every coefficient must be n x n");
    mats.push_back(std::move(mat));
  }
  try {
    return MatrixPolynomial(std::move(mats));
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

MatrixPolynomial pencil_from_json(const Json& j) {
  if (j.contains("coeffs")) return polynomial_from_json(j);
  ComplexMatrix a = matrix_from_json(j);
  if (!a.is_square()) throw ParseError("pencil input must be square");
  std::vector<ComplexMatrix> coeffs;
  coeffs.push_back(a * -1.0);
  coeffs.push_back(ComplexMatrix::identity(a.rows()));
  return MatrixPolynomial(std::move(coeffs));
}

Json report_to_json(const BoundReport& r) {
  Json j;
  j["bound_id"] = r.bound_id;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["holds"] = r.holds;
  j["slack_ratio"] = r.slack_ratio;
  Json constants = Json::object();
  for (const auto& [key, value] : r.constants) constants[key] = value;
  j["constants"] = constants;
  j["hypotheses_met"] = r.hypotheses_met;
  j["failed_hypotheses"] = r.failed_hypotheses;
  return j;
}

Json genspec_to_json(const GenSpec& spec) {
  Json j;
  j["family"] = spec.family;
  j["n"] = spec.n;
  j["m"] = spec.m;
  j["seed"] = spec.seed;
  j["scale"] = spec.scale;
  j["a"] = spec.interval_max;
  j["b"] = spec.interval_min;
  j["radius"] = spec.radius_fraction;
  return j;
}

GenSpec genspec_from_json(const Json& j) {
  GenSpec spec;
  if (!j.contains("family") || !j.at("family").is_string())
    throw ParseError("expected string field \"family\"");
  spec.family = j.at("family").get<std::string>();
  spec.n = int_at(j, "n");
  if (j.contains("m")) spec.m = int_at(j, "m");
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_integer())
      throw ParseError("expected integer field \"seed\"");
    spec.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("scale")) spec.scale = number_at(j, "scale");
  if (j.contains("a")) spec.interval_max = number_at(j, "a");
  if (j.contains("b")) spec.interval_min = number_at(j, "b");
  if (j.contains("radius")) spec.radius_fraction = number_at(j, "radius");
  return spec;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON in ") + path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open file for writing: " + path);
  out << text;
  if (!out) throw ConfigError("failed writing file: " + path);
}

std::string fmt_double(double v) {
  // shortest digit string that parses back to the same double (never more
  // than 17 significant digits)
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string fmt_complex(Complex z) {
  std::string out = fmt_double(z.real());
  out += (z.imag() >= 0.0 || std::isnan(z.imag())) ? "+" : "-";
  out += fmt_double(std::abs(z.imag()));
  out += "i";
  return out;
}

}  // namespace polyspec
