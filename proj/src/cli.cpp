#include "spider/cli.hpp"

#include "spider/cells.hpp"
#include "spider/domain.hpp"
#include "spider/kinematics.hpp"
#include "spider/mesh.hpp"
#include "spider/model.hpp"
#include "spider/morse.hpp"
#include "spider/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace spider {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt17(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

double parse_radius(const std::string& text, int n) {
  if (text == "Rn") return critical_radius(n);
  std::size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidParameter, "--r must be a number or the literal Rn");
  }
  if (pos != text.size())
    throw Error(ErrorKind::InvalidParameter, "--r must be a number or the literal Rn");
  return value;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoFailure, "cannot open output file " + path);
  out << content;
  if (!out.good()) throw Error(ErrorKind::IoFailure, "write failed for " + path);
}

const char* parity_name(int n) { return (n % 2 == 0) ? "even" : "odd"; }

void require_format(const std::string& format, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (format == a) return;
  throw Error(ErrorKind::InvalidParameter, "unsupported --format " + format);
}

ordered_json singular_json(const SingularReport& singular, int n) {
  ordered_json j;
  switch (singular.tag) {
    case RegimeTag::Coincident:
      j["circles"] = singular.circles;
      j["torus_dim"] = singular.torus_dim;
      j["gluing_points"] = singular.gluing_points;
      break;
    case RegimeTag::CriticalRn:
      if (n % 2 == 0) {
        j["pinched_handles"] = singular.pinched_handles;
        j["identified_pairs"] = singular.identified_pairs;
        j["base_genus_small"] = singular.base_genus_small;
        j["base_genus_large"] = singular.base_genus_large;
      } else {
        j["stitched_discs"] = singular.stitched_discs;
        j["joining_arcs"] = singular.joining_arcs;
        j["base_genus_large"] = singular.base_genus_large;
      }
      break;
    case RegimeTag::Point:
    case RegimeTag::Empty:
      j["points"] = singular.points;
      break;
    default:
      break;
  }
  return j;
}

std::string run_classify(const SpiderParams& params, const std::string& format) {
  require_format(format, {"json", "csv"});
  const TopologyReport report = classify_topology(params);
  if (format == "json") {
    ordered_json j;
    j["n"] = params.n;
    j["r"] = params.R;
    j["regime"] = regime_name(report.regime.tag);
    j["parity"] = parity_name(params.n);
    if (report.genus) {
      j["orientable"] = true;
      j["genus"] = *report.genus;
      j["chi"] = *report.chi;
    }
    if (report.singular) j["singular"] = singular_json(*report.singular, params.n);
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "key,value\n";
  out << "regime," << regime_name(report.regime.tag) << "\n";
  out << "parity," << parity_name(params.n) << "\n";
  if (report.genus) {
    out << "orientable,true\n";
    out << "genus," << *report.genus << "\n";
    out << "chi," << *report.chi << "\n";
  }
  if (report.singular) {
    const ordered_json j = singular_json(*report.singular, params.n);
    for (const auto& [key, value] : j.items())
      out << key << "," << value.get<long long>() << "\n";
  }
  return out.str();
}

std::string run_cells(const SpiderParams& params, const std::string& format) {
  require_format(format, {"json", "csv"});
  const CellComplex complex = build_complex(params);
  const long long chi = euler_characteristic(complex);
  const long long genus = genus_from_euler(chi);
  if (format == "json") {
    ordered_json j;
    j["n"] = params.n;
    j["r"] = params.R;
    j["regime"] = regime_name(classify_regime(params).tag);
    ordered_json counts;
    counts["faces"] = complex.f_count();
    counts["edges"] = complex.e_count();
    counts["vertices"] = complex.v_count();
    counts["circles"] = static_cast<long long>(complex.circles.size());
    j["counts"] = counts;
    j["chi"] = chi;
    j["genus"] = genus;
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "class,count\n";
  out << "faces," << complex.f_count() << "\n";
  out << "edges," << complex.e_count() << "\n";
  out << "vertices," << complex.v_count() << "\n";
  out << "circles," << complex.circles.size() << "\n";
  out << "chi," << chi << "\n";
  out << "genus," << genus << "\n";
  return out.str();
}

std::string run_morse(const SpiderParams& params, const std::string& format) {
  require_format(format, {"json", "csv"});
  const std::vector<CriticalPoint> points = enumerate_critical_points(params);
  MorseRows rows;
  for (const CriticalPoint& cp : points) {
    if (cp.morse_index == 0) ++rows.index0;
    else if (cp.morse_index == 1) ++rows.index1;
    else ++rows.index2;
  }
  if (format == "json") {
    ordered_json j;
    j["n"] = params.n;
    j["r"] = params.R;
    j["regime"] = regime_name(classify_regime(params).tag);
    ordered_json r;
    r["index0"] = rows.index0;
    r["index1"] = rows.index1;
    r["index2"] = rows.index2;
    j["rows"] = r;
    j["euler"] = rows.euler();
    ordered_json list = ordered_json::array();
    for (const CriticalPoint& cp : points) {
      ordered_json p;
      p["kind"] = critical_kind_name(cp.kind);
      p["morse_index"] = cp.morse_index;
      p["multi_index"] = cp.index.str();
      p["body"] = {cp.config.body.x(), cp.config.body.y()};
      p["psi"] = cp.psi;
      p["det_h"] = cp.hessian.determinant();
      list.push_back(p);
    }
    j["points"] = list;
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "kind,index,body_x,body_y,psi,det_h\n";
  for (const CriticalPoint& cp : points) {
    out << critical_kind_name(cp.kind) << "," << cp.morse_index << ","
        << fmt17(cp.config.body.x()) << "," << fmt17(cp.config.body.y()) << ","
        << fmt17(cp.psi) << "," << fmt17(cp.hessian.determinant()) << "\n";
  }
  return out.str();
}

std::string run_rank(const SpiderParams& params, int samples, std::uint64_t seed,
                     const std::string& format) {
  require_format(format, {"json", "csv"});
  const RankScanReport report = rank_scan(params, samples, seed);
  if (format == "json") {
    ordered_json j;
    j["n"] = params.n;
    j["r"] = params.R;
    j["samples"] = report.samples;
    j["seed"] = seed;
    j["threshold"] = kRankTol;
    j["min_rel_sigma"] = report.min_rel_sigma;
    j["violation_count"] = static_cast<long long>(report.violations.size());
    j["violations"] = report.violations;
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "key,value\n";
  out << "samples," << report.samples << "\n";
  out << "seed," << seed << "\n";
  out << "threshold," << fmt17(kRankTol) << "\n";
  out << "min_rel_sigma," << fmt17(report.min_rel_sigma) << "\n";
  out << "violation_count," << report.violations.size() << "\n";
  return out.str();
}

std::string run_path(const SpiderParams& params, std::uint64_t start_seed,
                     const std::string& format) {
  require_format(format, {"json", "csv"});
  const Configuration start = sample_configuration(params, start_seed, 0);
  const MultiIndex start_index = configuration_index(start);
  const PathPlan plan = connect_path(params, start);
  long long flips = 0;
  for (const PathSegment& seg : plan.segments)
    if (seg.flip_arm) ++flips;
  if (format == "json") {
    ordered_json j;
    j["n"] = params.n;
    j["r"] = params.R;
    j["start_seed"] = start_seed;
    j["start_body"] = {start.body.x(), start.body.y()};
    j["start_index"] = start_index.str();
    j["segment_count"] = static_cast<long long>(plan.segments.size());
    j["waypoint_count"] = static_cast<long long>(plan.waypoints.size());
    j["flip_count"] = flips;
    j["max_residual"] = plan.max_residual;
    j["max_joint_step"] = plan.max_joint_step;
    j["final_index"] = plan.final_index.str();
    ordered_json segs = ordered_json::array();
    for (const PathSegment& seg : plan.segments) {
      ordered_json s;
      s["start"] = {seg.start.x(), seg.start.y()};
      s["end"] = {seg.end.x(), seg.end.y()};
      s["index"] = seg.index.str();
      if (seg.flip_arm) s["flip_arm"] = *seg.flip_arm;
      segs.push_back(s);
    }
    j["segments"] = segs;
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "segment,start_x,start_y,end_x,end_y,index,flip_arm\n";
  for (std::size_t i = 0; i < plan.segments.size(); ++i) {
    const PathSegment& seg = plan.segments[i];
    out << i << "," << fmt17(seg.start.x()) << "," << fmt17(seg.start.y()) << ","
        << fmt17(seg.end.x()) << "," << fmt17(seg.end.y()) << "," << seg.index.str() << ",";
    if (seg.flip_arm) out << *seg.flip_arm;
    out << "\n";
  }
  return out.str();
}

int run_mesh(const SpiderParams& params, int resolution, const std::string& out_path,
             const std::string& format) {
  if (format != "obj" && format != "off")
    throw Error(ErrorKind::InvalidParameter, "mesh supports --format obj or off");
  const SurfaceMesh mesh = build_mesh(params, resolution);
  if (out_path.empty()) {
    std::ostringstream out;
    if (format == "obj") export_obj(mesh, out);
    else export_off(mesh, out);
    std::cout << out.str();
    return 0;
  }
  if (format == "obj") export_obj(mesh, out_path);
  else export_off(mesh, out_path);
  const OrientationReport orientation = check_orientation(mesh);
  ordered_json j;
  j["n"] = params.n;
  j["r"] = params.R;
  j["resolution"] = resolution;
  j["vertices"] = static_cast<long long>(mesh.vertices.size());
  j["triangles"] = static_cast<long long>(mesh.triangles.size());
  j["euler"] = mesh_euler(mesh);
  j["closed"] = orientation.closed;
  j["edge_orientation_consistent"] = orientation.consistent;
  j["chart_signs_match"] = orientation.chart_signs_match;
  j["out"] = out_path;
  std::cout << j.dump(2) << "\n";
  return 0;
}

} // namespace

int cli_run(int argc, const char* const* argv) {
  CLI::App app{"topology of the configuration space of a symmetric planar spider linkage"};
  app.require_subcommand(1);

  struct Common {
    int n = 0;
    std::string r_text;
    std::string out;
    std::string format = "json";
  };
  Common classify_opts, cells_opts, morse_opts, rank_opts, path_opts, mesh_opts;
  int samples = 1000;
  std::uint64_t seed = 0;
  std::uint64_t start_seed = 0;
  int resolution = 8;
  mesh_opts.format = "obj";

  auto add_common = [](CLI::App* sub, Common& opts, const std::string& formats) {
    sub->add_option("--n", opts.n, "number of arms (2..16)")->required();
    sub->add_option("--r", opts.r_text, "anchor circle radius (number, or Rn for the critical radius)")
        ->required();
    sub->add_option("--out", opts.out, "output file (default: stdout)");
    sub->add_option("--format", opts.format, "output format: " + formats);
  };

  CLI::App* classify = app.add_subcommand("classify", "regime and topology of the configuration space");
  add_common(classify, classify_opts, "json|csv");
  CLI::App* cells = app.add_subcommand("cells", "cell decomposition counts and Euler data");
  add_common(cells, cells_opts, "json|csv");
  CLI::App* morse = app.add_subcommand("morse", "critical points of the body height function");
  add_common(morse, morse_opts, "json|csv");
  CLI::App* rank = app.add_subcommand("rank", "random full-rank scan of the constraint Jacobian");
  add_common(rank, rank_opts, "json|csv");
  rank->add_option("--samples", samples, "number of random configurations (default 1000)");
  rank->add_option("--seed", seed, "random seed (default 0)");
  CLI::App* path = app.add_subcommand("path", "drive a random configuration to the canonical one");
  add_common(path, path_opts, "json|csv");
  path->add_option("--start-seed", start_seed, "seed for the random start configuration");
  CLI::App* meshcmd = app.add_subcommand("mesh", "triangulated model of the configuration surface");
  add_common(meshcmd, mesh_opts, "obj|off");
  meshcmd->add_option("--resolution", resolution, "segments per boundary arc (default 8)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (classify->parsed()) {
      const SpiderParams params =
          SpiderParams::make(classify_opts.n, parse_radius(classify_opts.r_text, classify_opts.n));
      write_output(classify_opts.out, run_classify(params, classify_opts.format));
    } else if (cells->parsed()) {
      const SpiderParams params =
          SpiderParams::make(cells_opts.n, parse_radius(cells_opts.r_text, cells_opts.n));
      write_output(cells_opts.out, run_cells(params, cells_opts.format));
    } else if (morse->parsed()) {
      const SpiderParams params =
          SpiderParams::make(morse_opts.n, parse_radius(morse_opts.r_text, morse_opts.n));
      write_output(morse_opts.out, run_morse(params, morse_opts.format));
    } else if (rank->parsed()) {
      const SpiderParams params =
          SpiderParams::make(rank_opts.n, parse_radius(rank_opts.r_text, rank_opts.n));
      write_output(rank_opts.out, run_rank(params, samples, seed, rank_opts.format));
    } else if (path->parsed()) {
      const SpiderParams params =
          SpiderParams::make(path_opts.n, parse_radius(path_opts.r_text, path_opts.n));
      write_output(path_opts.out, run_path(params, start_seed, path_opts.format));
    } else if (meshcmd->parsed()) {
      const SpiderParams params =
          SpiderParams::make(mesh_opts.n, parse_radius(mesh_opts.r_text, mesh_opts.n));
      return run_mesh(params, resolution, mesh_opts.out, mesh_opts.format);
    }
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return err.kind() == ErrorKind::CrossCheckFailure ? 3 : 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  return 0;
}

} // namespace spider
