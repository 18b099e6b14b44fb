#include "cli.hpp"

#include "itrace/errors.hpp"
#include "itrace/serialization.hpp"
#include "itrace/trace_constants.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <thread>

namespace itrace::cli {

namespace {

struct ElementOptions
{
  int d = 0;
  bool reference = false;
  std::string vertices;
  std::string face = "collapsed";
};

void add_element_options(CLI::App& cmd, ElementOptions& opts)
{
  cmd.add_option("--d", opts.d, "Simplex dimension (required with --reference)");
  auto* ref = cmd.add_flag("--reference", opts.reference, "Use the reference simplex");
  auto* verts = cmd.add_option("--vertices", opts.vertices, "JSON vertex file");
  ref->excludes(verts);
  cmd.add_option("--face", opts.face, "Face: opposite-vertex index, 'collapsed', or 'all'");
}

Simplex resolve_element(const ElementOptions& opts)
{
  if (!opts.vertices.empty())
  {
    Simplex s = load_simplex(opts.vertices);
    if (opts.d != 0 && opts.d != s.dim())
      throw InputError("--d " + std::to_string(opts.d) + " does not match the vertex file (dim "
                       + std::to_string(s.dim()) + ")");
    return s;
  }
  if (opts.d < 1)
    throw InputError("--d must be >= 1 when using the reference simplex");
  return reference_simplex(opts.d);
}

std::vector<int> resolve_faces(const Simplex& s, const std::string& selector, bool allow_all)
{
  if (selector == "all")
  {
    if (!allow_all)
      throw InputError("--face all is not supported by this command");
    std::vector<int> faces(static_cast<std::size_t>(s.dim()) + 1);
    for (int k = 0; k <= s.dim(); ++k)
      faces[static_cast<std::size_t>(k)] = k;
    return faces;
  }
  if (selector == "collapsed")
    return {collapsed_face_index(s.dim())};
  int index = -1;
  std::size_t consumed = 0;
  try
  {
    index = std::stoi(selector, &consumed);
  }
  catch (const std::exception&)
  {
    consumed = 0;
  }
  if (consumed != selector.size() || index < 0 || index > s.dim())
    throw InputError("--face must be an index in 0.." + std::to_string(s.dim())
                     + ", 'collapsed', or 'all' (got '" + selector + "')");
  return {index};
}

std::string fmt(double value, int digits)
{
  std::ostringstream os;
  os << std::setprecision(digits) << value;
  return os.str();
}

double relative_gap(double reference, double value)
{
  const double scale = std::abs(reference);
  return scale > 0.0 ? std::abs(reference - value) / scale : std::abs(value);
}

struct ConstantRow
{
  int p = 0;
  int n = 0;
  int face = 0;
  double closed_form = 0.0;
  double numeric_rho = 0.0;
  double wh_bound = 0.0;
  double ratio_new_over_wh = 0.0;
};

ConstantRow compute_row(int p, int n, const Simplex& s, int face_id)
{
  const Face f = face(s, face_id);
  ConstantRow row{.p = p, .n = n, .face = face_id};
  row.closed_form = sharp_constant(p, n, s, f);
  row.wh_bound = wh_constant(p, s, f);
  row.ratio_new_over_wh = row.closed_form / row.wh_bound;
  if (n < p)
    row.numeric_rho = spectral_radius_numeric(assemble_face_mass(p, n, s, f)).rho;
  return row;
}

json row_to_json(const ConstantRow& row, int d)
{
  return {{"p", row.p},
          {"n", row.n},
          {"d", d},
          {"face_id", row.face},
          {"closed_form", row.closed_form},
          {"numeric_rho", row.numeric_rho},
          {"wh_bound", row.wh_bound},
          {"ratio_new_over_wh", row.ratio_new_over_wh}};
}

// constant ------------------------------------------------------------------

struct ConstantOptions
{
  ElementOptions element;
  int p = 0;
  int n = 0;
  std::string format = "text";
  double tol = 1e-9;
};

int cmd_constant(const ConstantOptions& opts, std::ostream& out)
{
  const Simplex s = resolve_element(opts.element);
  const auto faces = resolve_faces(s, opts.element.face, true);
  if (opts.n < -1 || opts.n > opts.p)
    throw InputError("need -1 <= n <= p");

  bool ok = true;
  json rows = json::array();
  for (int face_id : faces)
  {
    const ConstantRow row = compute_row(opts.p, opts.n, s, face_id);
    const double gap = relative_gap(row.closed_form, row.numeric_rho);
    const bool row_ok = gap <= opts.tol;
    ok = ok && row_ok;
    if (opts.format == "json")
    {
      json j = row_to_json(row, s.dim());
      j["relative_gap"] = gap;
      j["pass"] = row_ok;
      rows.push_back(std::move(j));
      continue;
    }
    const Face f = face(s, face_id);
    out << "d=" << s.dim() << " p=" << opts.p << " n=" << opts.n << " face=" << face_id
        << " |F|/|T|=" << fmt(f.measure / s.volume(), 12) << '\n';
    out << "  sharp constant (closed form): " << fmt(row.closed_form, 12) << '\n';
    out << "  numeric rho:                  " << fmt(row.numeric_rho, 12) << '\n';
    out << "  WH bound:                     " << fmt(row.wh_bound, 12) << '\n';
    out << "  sharp / WH:                   " << fmt(row.ratio_new_over_wh, 12) << '\n';
    out << "  relative gap:                 " << fmt(gap, 12) << (row_ok ? "  ok" : "  FAIL")
        << '\n';
  }
  if (opts.format == "json")
    out << (rows.size() == 1 ? rows.front() : rows).dump(2) << '\n';
  return ok ? kSuccess : kVerificationFailure;
}

// sweep ---------------------------------------------------------------------

struct SweepOptions
{
  ElementOptions element;
  int p_max = 0;
  int n_min = 0;
  std::string format = "csv";
  std::string out_path;
  double tol = 1e-9;
};

int cmd_sweep(const SweepOptions& opts, std::ostream& out)
{
  const Simplex s = resolve_element(opts.element);
  const auto faces = resolve_faces(s, opts.element.face, true);
  const bool all_faces = opts.element.face == "all";
  if (opts.p_max < 0)
    throw InputError("--p-max must be >= 0");
  if (opts.n_min < -1)
    throw InputError("--n-min must be >= -1");

  struct Cell
  {
    int p, n, face;
  };
  std::vector<Cell> cells;
  for (int face_id : faces)
    for (int p = 0; p <= opts.p_max; ++p)
      for (int n = std::min(opts.n_min, p); n <= p; ++n)
        cells.push_back({p, n, face_id});

  // Cells are independent; results land in fixed slots so output order is deterministic.
  std::vector<ConstantRow> rows(cells.size());
  std::vector<std::string> errors(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++)
    {
      try
      {
        rows[i] = compute_row(cells[i].p, cells[i].n, s, cells[i].face);
      }
      catch (const std::exception& e)
      {
        errors[i] = e.what();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back(worker);
  }
  for (const auto& e : errors)
    if (!e.empty())
      throw NumericError(e);

  std::ostringstream table;
  bool ok = true;
  if (opts.format == "json")
  {
    json arr = json::array();
    for (const auto& row : rows)
      arr.push_back(row_to_json(row, s.dim()));
    table << arr.dump(2) << '\n';
  }
  else
  {
    if (all_faces)
      table << "face,";
    table << "p,n,closed_form,numeric_rho,wh_bound,ratio_new_over_wh\n";
    for (const auto& row : rows)
    {
      if (all_faces)
        table << row.face << ',';
      table << row.p << ',' << row.n << ',' << fmt(row.closed_form, 17) << ','
            << fmt(row.numeric_rho, 17) << ',' << fmt(row.wh_bound, 17) << ','
            << fmt(row.ratio_new_over_wh, 17) << '\n';
    }
  }
  for (const auto& row : rows)
    ok = ok && relative_gap(row.closed_form, row.numeric_rho) <= opts.tol;

  if (opts.out_path.empty())
  {
    out << table.str();
  }
  else
  {
    std::ofstream file(opts.out_path);
    if (!file || !(file << table.str()))
      throw InputError("cannot write " + opts.out_path);
  }
  return ok ? kSuccess : kVerificationFailure;
}

// extremal ------------------------------------------------------------------

struct ExtremalOptions
{
  ElementOptions element;
  int p = 0;
  int n = 0;
  std::string out_path;
  double tol = 1e-9;
};

int cmd_extremal(const ExtremalOptions& opts, std::ostream& out, std::ostream& err)
{
  const Simplex s = resolve_element(opts.element);
  const int face_id = resolve_faces(s, opts.element.face, false).front();
  if (opts.n < -1 || opts.n >= opts.p)
    throw InputError("extremal needs -1 <= n < p");
  const Face f = face(s, face_id);

  const SharpConstantReport report = extremal_polynomial(opts.p, opts.n, s, f);
  write_json_file(opts.out_path, poly_to_json(report.extremal_coeffs));

  // Reload what was written and recompute the ratio from the file alone.
  const PolyCoeffs reloaded = load_poly(opts.out_path, s);
  const double reloaded_ratio = face_norm_sq(reloaded, f) / element_norm_sq(reloaded);

  json j = report_to_json(report);
  j["reloaded_ratio"] = reloaded_ratio;
  j["coefficient_file"] = opts.out_path;
  out << j.dump(2) << '\n';

  if (relative_gap(report.achieved_ratio, reloaded_ratio) > 1e-9)
  {
    err << "round trip mismatch: reported ratio " << fmt(report.achieved_ratio, 17)
        << ", reloaded " << fmt(reloaded_ratio, 17) << '\n';
    return kVerificationFailure;
  }
  if (relative_gap(report.closed_form, report.achieved_ratio) > opts.tol)
  {
    err << "achieved ratio " << fmt(report.achieved_ratio, 17)
        << " differs from the sharp constant " << fmt(report.closed_form, 17) << '\n';
    return kVerificationFailure;
  }
  return kSuccess;
}

// check ---------------------------------------------------------------------

struct CheckOptions
{
  ElementOptions element;
  int p = 0;
  int n = 0;
  std::size_t count = 10000;
  std::uint64_t seed = 1;
  std::string format = "text";
  double tol = 1e-9;
};

int cmd_check(const CheckOptions& opts, std::ostream& out)
{
  const Simplex s = resolve_element(opts.element);
  const auto faces = resolve_faces(s, opts.element.face, true);
  if (opts.n < -1 || opts.n > opts.p)
    throw InputError("need -1 <= n <= p");
  if (opts.count < 1)
    throw InputError("--count must be >= 1");

  bool ok = true;
  json results = json::array();
  for (int face_id : faces)
  {
    const Face f = face(s, face_id);
    std::vector<Eigen::VectorXd> extra;
    if (opts.n < opts.p)
      extra.push_back(extremal_polynomial(opts.p, opts.n, s, f).extremal_coeffs.coeffs());
    const RatioScan scan = random_ratio_scan(opts.p, opts.n, s, f, opts.count, opts.seed, extra);
    const double bound = sharp_constant(opts.p, opts.n, s, f);
    const bool violated = scan.max_ratio > bound * (1.0 + opts.tol);
    ok = ok && !violated;

    json j = {{"p", opts.p},
              {"n", opts.n},
              {"d", s.dim()},
              {"face_id", face_id},
              {"samples", scan.samples},
              {"max_ratio", scan.max_ratio},
              {"bound", bound},
              {"margin", bound - scan.max_ratio},
              {"pass", !violated}};
    if (violated)
      j["offending_coeffs"] = poly_to_json(scan.argmax);

    if (opts.format == "json")
    {
      results.push_back(std::move(j));
      continue;
    }
    out << "d=" << s.dim() << " p=" << opts.p << " n=" << opts.n << " face=" << face_id
        << " samples=" << scan.samples << '\n';
    out << "  max ratio: " << fmt(scan.max_ratio, 12) << '\n';
    out << "  bound:     " << fmt(bound, 12) << '\n';
    out << "  margin:    " << fmt(bound - scan.max_ratio, 12) << '\n';
    out << "  result:    " << (violated ? "VIOLATION" : "ok") << '\n';
    if (violated)
      out << "  offending coefficients: " << poly_to_json(scan.argmax).dump() << '\n';
  }
  if (opts.format == "json")
    out << (results.size() == 1 ? results.front() : results).dump(2) << '\n';
  return ok ? kSuccess : kVerificationFailure;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Sharp inverse trace constants for deflated polynomials on simplices",
               "itrace"};
  app.require_subcommand(1);

  ConstantOptions constant_opts;
  auto* constant = app.add_subcommand("constant", "Closed-form vs numeric sharp constant");
  add_element_options(*constant, constant_opts.element);
  constant->add_option("--p", constant_opts.p, "Polynomial degree")->required();
  constant->add_option("--n", constant_opts.n, "Projection degree (-1..p)")->required();
  constant->add_option("--format", constant_opts.format)->check(CLI::IsMember({"text", "json"}));
  constant->add_option("--tol", constant_opts.tol)->check(CLI::PositiveNumber);

  SweepOptions sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "Table of constants over (p, n)");
  add_element_options(*sweep, sweep_opts.element);
  sweep->add_option("--p-max", sweep_opts.p_max, "Largest degree")->required();
  sweep->add_option("--n-min", sweep_opts.n_min, "Smallest projection degree (default 0)");
  sweep->add_option("--format", sweep_opts.format)->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--out", sweep_opts.out_path, "Output path (default stdout)");
  sweep->add_option("--tol", sweep_opts.tol)->check(CLI::PositiveNumber);

  ExtremalOptions extremal_opts;
  auto* extremal = app.add_subcommand("extremal", "Write the extremal polynomial");
  add_element_options(*extremal, extremal_opts.element);
  extremal->add_option("--p", extremal_opts.p)->required();
  extremal->add_option("--n", extremal_opts.n)->required();
  extremal->add_option("--out", extremal_opts.out_path, "Coefficient file")->required();
  extremal->add_option("--tol", extremal_opts.tol)->check(CLI::PositiveNumber);

  CheckOptions check_opts;
  auto* check = app.add_subcommand("check", "Monte Carlo verification of the bound");
  add_element_options(*check, check_opts.element);
  check->add_option("--p", check_opts.p)->required();
  check->add_option("--n", check_opts.n)->required();
  check->add_option("--count", check_opts.count);
  check->add_option("--seed", check_opts.seed);
  check->add_option("--format", check_opts.format)->check(CLI::IsMember({"text", "json"}));
  check->add_option("--tol", check_opts.tol)->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try
  {
    app.parse(reversed);
  }
  catch (const CLI::ParseError& e)
  {
    return app.exit(e, out, err) == 0 ? kSuccess : kInputError;
  }

  try
  {
    if (constant->parsed())
      return cmd_constant(constant_opts, out);
    if (sweep->parsed())
      return cmd_sweep(sweep_opts, out);
    if (extremal->parsed())
      return cmd_extremal(extremal_opts, out, err);
    if (check->parsed())
      return cmd_check(check_opts, out);
  }
  catch (const InputError& e)
  {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  }
  catch (const ParameterError& e)
  {
    err << "usage error: " << e.what() << '\n';
    return kInputError;
  }
  catch (const std::exception& e)
  {
    err << "error: " << e.what() << '\n';
    return kVerificationFailure;
  }
  return kInputError;
}

} // namespace itrace::cli
