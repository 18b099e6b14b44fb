#include "itrace/serialization.hpp"

#include "itrace/errors.hpp"

#include <fstream>
#include <sstream>

namespace itrace {

namespace {

int require_int(const json& doc, const char* field)
{
  if (!doc.is_object())
    throw InputError("expected a JSON object at the top level");
  if (!doc.contains(field))
    throw InputError(std::string("missing field \"") + field + "\"");
  const json& value = doc.at(field);
  if (!value.is_number_integer())
    throw InputError(std::string("field \"") + field + "\" must be an integer");
  return value.get<int>();
}

const json& require_array(const json& doc, const char* field)
{
  if (!doc.contains(field))
    throw InputError(std::string("missing field \"") + field + "\"");
  const json& value = doc.at(field);
  if (!value.is_array())
    throw InputError(std::string("field \"") + field + "\" must be an array");
  return value;
}

double require_number(const json& value, const std::string& where)
{
  if (!value.is_number())
    throw InputError(where + ": expected a number");
  return value.get<double>();
}

} // namespace

Simplex simplex_from_json(const json& doc)
{
  const int d = require_int(doc, "dim");
  if (d < 1)
    throw InputError("field \"dim\" must be >= 1");
  const json& verts = require_array(doc, "vertices");
  if (static_cast<int>(verts.size()) != d + 1)
    throw InputError("field \"vertices\" must hold dim+1 = " + std::to_string(d + 1)
                     + " points, found " + std::to_string(verts.size()));
  std::vector<Point> points;
  for (std::size_t k = 0; k < verts.size(); ++k)
  {
    const std::string where = "vertices[" + std::to_string(k) + "]";
    if (!verts[k].is_array() || static_cast<int>(verts[k].size()) != d)
      throw InputError(where + ": expected an array of " + std::to_string(d) + " coordinates");
    Point v(d);
    for (int i = 0; i < d; ++i)
      v(i) = require_number(verts[k][static_cast<std::size_t>(i)],
                            where + "[" + std::to_string(i) + "]");
    points.push_back(std::move(v));
  }
  try
  {
    return Simplex(std::move(points));
  }
  catch (const ParameterError& e)
  {
    throw InputError(std::string("field \"vertices\": ") + e.what());
  }
}

json simplex_to_json(const Simplex& s)
{
  json verts = json::array();
  for (const auto& v : s.vertices())
    verts.push_back(std::vector<double>(v.data(), v.data() + v.size()));
  return {{"dim", s.dim()}, {"vertices", verts}};
}

json poly_to_json(const PolyCoeffs& c)
{
  const auto& v = c.coeffs();
  return {{"dim", c.dim()},
          {"degree", c.degree()},
          {"coeffs", std::vector<double>(v.data(), v.data() + v.size())}};
}

PolyCoeffs poly_from_json(const json& doc, std::optional<Simplex> element)
{
  const int d = require_int(doc, "dim");
  const int p = require_int(doc, "degree");
  if (d < 1)
    throw InputError("field \"dim\" must be >= 1");
  if (p < 0)
    throw InputError("field \"degree\" must be >= 0");
  const json& arr = require_array(doc, "coeffs");
  BasisSpec spec = enumerate_modes(p, d);
  if (arr.size() != spec.size())
    throw InputError("field \"coeffs\" must hold " + std::to_string(spec.size())
                     + " entries for dim=" + std::to_string(d) + ", degree=" + std::to_string(p)
                     + "; found " + std::to_string(arr.size()));
  Eigen::VectorXd coeffs(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t k = 0; k < arr.size(); ++k)
    coeffs(static_cast<Eigen::Index>(k)) = require_number(arr[k], "coeffs[" + std::to_string(k) + "]");
  if (element && element->dim() != d)
    throw InputError("coefficient file dimension does not match the element");
  return PolyCoeffs(std::move(spec), std::move(coeffs), std::move(element));
}

json report_to_json(const SharpConstantReport& report)
{
  return {{"p", report.p},
          {"n", report.n},
          {"d", report.d},
          {"face_id", report.face_id},
          {"closed_form", report.closed_form},
          {"numeric_rho", report.numeric_rho},
          {"wh_bound", report.wh_bound},
          {"extremal_coeffs", poly_to_json(report.extremal_coeffs)},
          {"achieved_ratio", report.achieved_ratio}};
}

json parse_json_text(const std::string& text, const std::string& source_name)
{
  try
  {
    return json::parse(text);
  }
  catch (const json::parse_error& e)
  {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t stop = std::min(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i)
    {
      if (text[i] == '\n')
      {
        ++line;
        column = 1;
      }
      else
      {
        ++column;
      }
    }
    std::ostringstream msg;
    msg << source_name << ":" << line << ":" << column << ": malformed JSON";
    throw InputError(msg.str());
  }
}

json read_json_file(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_json_text(buffer.str(), path.string());
}

Simplex load_simplex(const std::filesystem::path& path)
{
  const json doc = read_json_file(path);
  try
  {
    return simplex_from_json(doc);
  }
  catch (const InputError& e)
  {
    throw InputError(path.string() + ": " + e.what());
  }
}

PolyCoeffs load_poly(const std::filesystem::path& path, std::optional<Simplex> element)
{
  const json doc = read_json_file(path);
  try
  {
    return poly_from_json(doc, std::move(element));
  }
  catch (const InputError& e)
  {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& doc)
{
  std::ofstream out(path);
  if (!out)
    throw InputError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
  if (!out)
    throw InputError("write failed for " + path.string());
}

} // namespace itrace
