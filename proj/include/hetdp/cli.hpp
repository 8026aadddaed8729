// Copyright 2026 The hetdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Command line surface. Exit codes by failure class: 0 success, 2 parse
// error (arguments or input files), 3 validation error, 4 no private
// extension exists, 5 a verification or cross-check failed, 10 internal
// error.

#ifndef HETDP_CLI_HPP_
#define HETDP_CLI_HPP_

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "hetdp/edge_bounds.hpp"
#include "hetdp/error.hpp"
#include "hetdp/extension.hpp"
#include "hetdp/graph.hpp"
#include "hetdp/io.hpp"
#include "hetdp/oracle.hpp"
#include "hetdp/path_mechanism.hpp"
#include "hetdp/propagation.hpp"

namespace hetdp {

namespace cli_detail {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitNoExtension = 4;
constexpr int kExitVerification = 5;
constexpr int kExitInternal = 10;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void write_output(const std::string& path, const std::string& text,
                         std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw Error(ErrorKind::ParseError, "cannot write '" + path + "'");
  }
  file << text;
}

inline Instance load_instance(const std::string& path) {
  return parse_instance(read_file(path));
}

inline std::vector<double> parse_eps_list(const std::string& text) {
  std::vector<double> values;
  if (text.empty()) return values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError,
                  "'" + item + "' is not a number in epsilon list");
    }
  }
  return values;
}

// "u,v,eps" -> EdgeInput.
inline EdgeInput parse_override(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) parts.push_back(item);
  if (parts.size() != 3) {
    throw Error(ErrorKind::ParseError,
                "override '" + text + "' must be 'u,v,epsilon'");
  }
  try {
    return EdgeInput{parts[0], parts[1], std::stod(parts[2])};
  } catch (const std::exception&) {
    throw Error(ErrorKind::ParseError,
                "override '" + text + "' has a malformed epsilon");
  }
}

inline int run_extend(const std::string& instance_path,
                      const std::string& output_path, double tolerance,
                      std::ostream& out, std::ostream& err) {
  const Instance instance = load_instance(instance_path);
  if (!instance.partial.has_value()) {
    throw Error(ErrorKind::EmptySeeds,
                "instance has no partial_mechanism to extend");
  }
  const ExtensionResult result = extend_mechanism(
      instance.graph, instance.query, *instance.partial, tolerance);
  if (const auto* failure = std::get_if<NoExtension>(&result)) {
    const IncompatibilityWitness& witness = *failure->witness;
    err << "incompatible seed pair: p(" << witness.target << ") = "
        << detail::format_double(witness.actual.value())
        << " exceeds the bound "
        << detail::format_double(witness.bound.value()) << " induced by "
        << witness.source << "\n";
    err << "no epsilon-DP extension exists\n";
    return kExitNoExtension;
  }
  const Extension& extension = std::get<Extension>(result);
  MechanismFile file;
  file.tolerance = tolerance;
  file.compatible = true;
  for (const auto& [id, value] : extension.mechanism.values) {
    file.mechanism[id] = value.value();
  }
  file.origin = extension.origin;
  write_output(output_path, file.to_text(), out);
  if (!output_path.empty()) {
    out << "wrote mechanism for "
        << extension.mechanism.values.size() << " vertices to "
        << output_path << "\n";
  }
  return kExitOk;
}

inline int run_check(const std::string& instance_path,
                     const std::string& mechanism_path, double tolerance,
                     std::ostream& out) {
  const Instance instance = load_instance(instance_path);
  const MechanismFile file = parse_mechanism_file(read_file(mechanism_path));
  const Mechanism mech = make_mechanism(instance.graph, file);
  const ViolationReport report = verify_dp(instance.graph, mech, tolerance);
  out << "u,v,inequality,lhs,rhs,slack\n";
  for (const DpViolation& violation : report.violations) {
    out << violation.u << "," << violation.v << ","
        << to_string(violation.inequality) << ","
        << detail::format_double(violation.lhs) << ","
        << detail::format_double(violation.rhs) << ","
        << detail::format_double(violation.slack) << "\n";
  }
  return report.ok() ? kExitOk : kExitVerification;
}

inline int run_boundary(const std::string& instance_path, std::ostream& out) {
  const Instance instance = load_instance(instance_path);
  for (const VertexId& id :
       boundary_set(instance.graph, instance.query)) {
    out << id << "\n";
  }
  return kExitOk;
}

inline int run_bounds(const std::string& instance_path,
                      const std::string& source, double alpha, bool naive,
                      std::ostream& out) {
  const Instance instance = load_instance(instance_path);
  const Probability seed(alpha);
  const BoundMap map =
      naive ? strongest_bounds_from_naive(instance.graph, source, seed)
            : strongest_bounds_from(instance.graph, source, seed);
  out << "vertex,bound,predecessor\n";
  for (const auto& [id, bound] : map.bounds) {
    out << id << "," << detail::format_double(bound.value()) << ","
        << map.predecessor.at(id) << "\n";
  }
  return kExitOk;
}

inline int run_path(double alpha, const std::string& eps_text,
                    std::ostream& out) {
  const EpsilonSeq eps_seq = parse_eps_list(eps_text);
  const Probability seed(alpha);
  const PathMechanism closed = optimal_path_closed_form(seed, eps_seq);
  const PathMechanism recurrence = optimal_path_recurrence(seed, eps_seq);
  if (closed.tau.has_value()) {
    out << "tau=" << *closed.tau << "\n";
  } else {
    out << "tau=none\n";
  }
  out << "index,epsilon,closed_form,recurrence,regime\n";
  const std::size_t crossover = closed.tau.value_or(eps_seq.size());
  for (std::size_t i = 0; i < closed.values.size(); ++i) {
    out << i << ",";
    if (i > 0) out << detail::format_double(eps_seq[i - 1]);
    out << "," << detail::format_double(closed.values[i].value()) << ","
        << detail::format_double(recurrence.values[i].value()) << ","
        << (i <= crossover ? "mult" : "affine") << "\n";
  }
  return kExitOk;
}

inline int run_gen_hypercube(int n, double eps_default,
                             const std::vector<std::string>& override_texts,
                             const std::string& coord_eps_text,
                             double seed_boundary,
                             const std::string& output_path,
                             std::ostream& out) {
  std::vector<EdgeInput> overrides;
  for (const std::string& text : override_texts) {
    overrides.push_back(parse_override(text));
  }
  // Personalized pattern: budget of every edge that flips coordinate i is
  // coord_eps[i], expressed as plain overrides.
  if (!coord_eps_text.empty()) {
    const std::vector<double> coord_eps = parse_eps_list(coord_eps_text);
    if (coord_eps.size() != static_cast<std::size_t>(n)) {
      throw Error(ErrorKind::LengthMismatch,
                  "--coord-eps needs exactly " + std::to_string(n) +
                      " values");
    }
    InstanceFile plain = generate_hypercube(n, eps_default, {});
    for (const EdgeInput& edge : plain.edges) {
      std::size_t coordinate = 0;
      for (std::size_t j = 0; j < edge.u.size(); ++j) {
        if (edge.u[j] != edge.v[j]) coordinate = j;
      }
      overrides.push_back({edge.u, edge.v, coord_eps[coordinate]});
    }
  }
  InstanceFile file = generate_hypercube(n, eps_default, overrides);
  if (seed_boundary >= 0.0) {
    const Probability seed(seed_boundary);
    const Instance instance = instantiate(file);
    for (const VertexId& id :
         boundary_set(instance.graph, instance.query)) {
      file.partial_mechanism[id] = seed.value();
    }
  }
  write_output(output_path, file.to_text(), out);
  return kExitOk;
}

inline int run_gen_path(int n, double alpha, const std::string& eps_text,
                        const std::string& output_path, std::ostream& out) {
  const EpsilonSeq eps_seq = parse_eps_list(eps_text);
  const InstanceFile file = generate_path(n, Probability(alpha), eps_seq);
  write_output(output_path, file.to_text(), out);
  return kExitOk;
}

inline int run_oracle(const std::string& instance_path, double tolerance,
                      std::size_t cap, double default_alpha,
                      std::ostream& out) {
  const Instance instance = load_instance(instance_path);
  bool mismatch = false;
  out << "check,status,detail\n";

  if (instance.partial.has_value()) {
    const ExtensionResult fast = extend_mechanism(
        instance.graph, instance.query, *instance.partial, tolerance);
    const FixedPointRun slow = fixed_point_extension(
        instance.graph, instance.query, *instance.partial, tolerance);
    if (fast.index() != slow.result.index()) {
      mismatch = true;
      out << "extension_agreement,mismatch,different verdicts\n";
    } else if (const auto* extension = std::get_if<Extension>(&fast)) {
      const auto& reference = std::get<Extension>(slow.result).mechanism;
      double worst = 0.0;
      VertexId worst_id;
      for (const auto& [id, value] : extension->mechanism.values) {
        const double gap =
            std::abs(value.value() - reference.values.at(id).value());
        if (gap > worst) {
          worst = gap;
          worst_id = id;
        }
      }
      if (worst > tolerance) {
        mismatch = true;
        out << "extension_agreement,mismatch,vertex " << worst_id
            << " differs by " << detail::format_double(worst) << "\n";
      } else {
        out << "extension_agreement,ok,max gap "
            << detail::format_double(worst) << "\n";
      }
    } else {
      out << "extension_agreement,ok,both report no extension\n";
    }
  } else {
    out << "extension_agreement,skipped,no partial mechanism\n";
  }

  if (instance.graph.vertex_count() <= cap) {
    double worst = 0.0;
    std::string worst_pair;
    for (const VertexId& u : instance.graph.ids()) {
      Probability alpha(default_alpha);
      if (instance.partial.has_value()) {
        const auto it = instance.partial->values.find(u);
        if (it != instance.partial->values.end()) alpha = it->second;
      }
      const BoundMap settled =
          strongest_bounds_from(instance.graph, u, alpha);
      for (const VertexId& v : instance.graph.ids()) {
        if (u == v) continue;
        const PathWitness witness =
            enumerate_strongest_bound(instance.graph, u, v, alpha, cap);
        const double gap =
            std::abs(witness.bound.value() - settled.bounds.at(v).value());
        if (gap > worst) {
          worst = gap;
          worst_pair = u + "->" + v;
        }
      }
    }
    if (worst > tolerance) {
      mismatch = true;
      out << "pairwise_bounds,mismatch,pair " << worst_pair
          << " differs by " << detail::format_double(worst) << "\n";
    } else {
      out << "pairwise_bounds,ok,max gap " << detail::format_double(worst)
          << "\n";
    }
  } else {
    out << "pairwise_bounds,skipped,graph exceeds enumeration cap "
        << cap << "\n";
  }
  return mismatch ? kExitVerification : kExitOk;
}

}  // namespace cli_detail

// Runs one CLI invocation. `args` excludes the program name. Streams take
// the place of stdout/stderr so invocations are testable and, for equal
// inputs, byte identical.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
  using namespace cli_detail;

  CLI::App app{"Optimal extension of partially specified binary mechanisms "
               "under per-edge privacy budgets"};
  app.require_subcommand(1);

  std::string instance_path;
  std::string mechanism_path;
  std::string output_path;
  std::string source;
  std::string eps_text;
  std::vector<std::string> override_texts;
  std::string coord_eps_text;
  double tolerance = kDefaultTolerance;
  double alpha = 0.5;
  double seed_boundary = -1.0;
  int dimension = 3;
  int path_length = 0;
  bool naive = false;
  std::size_t cap = kDefaultEnumerationCap;
  double oracle_alpha = 0.25;

  auto* extend = app.add_subcommand(
      "extend", "Extend the instance's partial mechanism optimally");
  extend->add_option("-i,--instance", instance_path, "instance file")
      ->required();
  extend->add_option("-o,--output", output_path,
                     "mechanism file to write (default: stdout)");
  extend->add_option("--tolerance", tolerance, "feasibility tolerance");

  auto* check = app.add_subcommand(
      "check", "Verify a mechanism against the per-edge conditions");
  check->add_option("-i,--instance", instance_path, "instance file")
      ->required();
  check->add_option("-m,--mechanism", mechanism_path, "mechanism file")
      ->required();
  check->add_option("--tolerance", tolerance, "feasibility tolerance");

  auto* boundary =
      app.add_subcommand("boundary", "List the boundary set of the instance");
  boundary->add_option("-i,--instance", instance_path, "instance file")
      ->required();

  auto* bounds = app.add_subcommand(
      "bounds", "Strongest induced bounds from one seed vertex");
  bounds->add_option("-i,--instance", instance_path, "instance file")
      ->required();
  bounds->add_option("--source", source, "seed vertex")->required();
  bounds->add_option("--alpha", alpha, "seed value")->required();
  bounds->add_flag("--naive", naive, "use the linear-scan schedule");

  auto* path = app.add_subcommand(
      "path", "Closed form and recurrence along a path, side by side");
  path->add_option("--alpha", alpha, "seed value at the head vertex")
      ->required();
  path->add_option("--eps", eps_text, "comma separated edge budgets")
      ->required();

  auto* gen = app.add_subcommand("gen", "Instance generators");
  gen->require_subcommand(1);
  auto* gen_hypercube =
      gen->add_subcommand("hypercube", "{1,2}^n votes with majority query");
  gen_hypercube->add_option("--n", dimension, "dimension (odd)")->required();
  gen_hypercube->add_option("--eps", eps_text, "default edge budget")
      ->required();
  gen_hypercube->add_option("--override", override_texts,
                            "edge override 'u,v,epsilon' (repeatable)");
  gen_hypercube->add_option(
      "--coord-eps", coord_eps_text,
      "per-coordinate budgets e1,...,en applied to every edge flipping "
      "that coordinate");
  gen_hypercube->add_option(
      "--seed-boundary", seed_boundary,
      "also seed every boundary vertex with this value");
  gen_hypercube->add_option("-o,--output", output_path,
                            "instance file to write (default: stdout)");
  auto* gen_path = gen->add_subcommand(
      "path", "Path with query 1 everywhere and a seed at the head");
  gen_path->add_option("--n", path_length, "number of edges")->required();
  gen_path->add_option("--alpha", alpha, "seed value at the head")
      ->required();
  gen_path->add_option("--eps", eps_text, "comma separated edge budgets")
      ->required();
  gen_path->add_option("-o,--output", output_path,
                       "instance file to write (default: stdout)");

  auto* oracle = app.add_subcommand(
      "oracle", "Cross-check the fast algorithms against brute force");
  oracle->add_option("-i,--instance", instance_path, "instance file")
      ->required();
  oracle->add_option("--tolerance", tolerance, "comparison tolerance");
  oracle->add_option("--cap", cap, "path enumeration vertex cap");
  oracle->add_option("--alpha", oracle_alpha,
                     "seed value for unseeded vertices in pairwise checks");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitParse;
  }

  try {
    if (app.got_subcommand(extend)) {
      return run_extend(instance_path, output_path, tolerance, out, err);
    }
    if (app.got_subcommand(check)) {
      return run_check(instance_path, mechanism_path, tolerance, out);
    }
    if (app.got_subcommand(boundary)) {
      return run_boundary(instance_path, out);
    }
    if (app.got_subcommand(bounds)) {
      return run_bounds(instance_path, source, alpha, naive, out);
    }
    if (app.got_subcommand(path)) {
      return run_path(alpha, eps_text, out);
    }
    if (app.got_subcommand(gen)) {
      if (gen->got_subcommand(gen_hypercube)) {
        double eps_default = 0.0;
        try {
          eps_default = std::stod(eps_text);
        } catch (const std::exception&) {
          throw Error(ErrorKind::ParseError,
                      "--eps must be a single number for gen hypercube");
        }
        return run_gen_hypercube(dimension, eps_default, override_texts,
                                 coord_eps_text, seed_boundary, output_path,
                                 out);
      }
      return run_gen_path(path_length, alpha, eps_text, output_path, out);
    }
    return run_oracle(instance_path, tolerance, cap, oracle_alpha, out);
  } catch (const Error& e) {
    err << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::ParseError:
        return kExitParse;
      case ErrorKind::NonConvergence:
        return kExitInternal;
      default:
        return kExitValidation;
    }
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace hetdp

#endif  // HETDP_CLI_HPP_
