#pragma once

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spinoptics/coupled_label.hpp"
#include "spinoptics/optical_setup.hpp"
#include "spinoptics/postselect.hpp"
#include "spinoptics/setup_compiler.hpp"
#include "spinoptics/verification.hpp"

namespace spinoptics::cli {

// Exit codes: 0 success, 1 verification failure, 2 invalid input or label,
// 3 I/O error.
inline constexpr int exit_ok = 0;
inline constexpr int exit_verification_failure = 1;
inline constexpr int exit_invalid_input = 2;
inline constexpr int exit_io_error = 3;

namespace detail {

inline double default_tolerance() {
  if (const char* env = std::getenv("SPINOPTICS_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0) return v;
    throw std::invalid_argument("SPINOPTICS_TOL is not a positive number: '" +
                                std::string(env) + "'");
  }
  return 1e-10;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw std::ios_base::failure("error while reading '" + path + "'");
  return buffer.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw std::ios_base::failure("error while writing '" + path + "'");
}

inline void print_simulation(const OpticalSetup& setup, const SimulationResult& sim,
                             double efficiency, bool as_json, std::ostream& out) {
  const double probability = success_probability(setup, efficiency);
  if (as_json) {
    nlohmann::ordered_json doc;
    auto& projection = doc["projection"] = nlohmann::ordered_json::array();
    for (const auto& [bits, c] : sim.projection.coefficients) {
      nlohmann::ordered_json entry;
      entry["bitstring"] = bitstring_to_string(bits, sim.projection.n_qubits);
      if (sim.projection.exact) {
        const auto& e = sim.projection.exact_coefficients.at(bits);
        entry["re"] = e.re;
        entry["im"] = e.im;
      } else {
        entry["re"] = c.real();
        entry["im"] = c.imag();
      }
      projection.push_back(entry);
    }
    doc["exact_arithmetic"] = sim.projection.exact;
    doc["null_postselection"] = sim.projection.null_postselection;
    auto& state = doc["state"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < sim.state.dim(); ++i) {
      if (std::abs(sim.state[i]) <= 1e-14) continue;
      state.push_back({{"bitstring", bitstring_to_string(static_cast<std::uint32_t>(i),
                                                         sim.state.n_qubits())},
                       {"re", sim.state[i].real()},
                       {"im", sim.state[i].imag()}});
    }
    doc["success_probability_model_convention"] = probability;
    out << doc.dump(2) << '\n';
    return;
  }
  out << "projection (unnormalized):\n" << sim.projection.to_text();
  if (sim.projection.null_postselection) {
    out << "null post-selection: the event has zero amplitude\n";
  } else {
    out << "state (normalized):\n" << sim.state.to_text();
  }
  out << "success probability (model convention): " << spinoptics::detail::fmt_g(probability)
      << '\n';
}

inline void print_report(const VerificationReport& report, bool as_json, std::ostream& out) {
  if (as_json) {
    out << report_to_json(report).dump(2) << '\n';
    return;
  }
  out << "label: " << format_label(report.label) << '\n'
      << "fidelity: " << spinoptics::detail::fmt_g(report.fidelity, 12) << '\n'
      << "exact match: " << (report.exact_match ? "yes" : "no") << '\n'
      << "success probability (model convention): "
      << spinoptics::detail::fmt_g(report.success_prob, 12) << '\n'
      << "null projection: " << (report.null_projection ? "yes" : "no") << '\n';
}

}  // namespace detail

/// Runs one CLI invocation. `args` excludes the program name. All commands
/// are deterministic: identical inputs give byte-identical outputs.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compiles N-qubit angular momentum eigenstate labels into post-selected "
               "linear-optics setups, simulates them, and verifies the projected states "
               "against Clebsch-Gordan references"};
  app.name("spinoptics");
  app.require_subcommand(1);

  int basis_n = 0;
  auto* basis = app.add_subcommand("basis", "List the 2^N coupled-basis labels");
  basis->add_option("n", basis_n, "number of qubits")->required();
  bool basis_json = false;
  basis->add_flag("--json", basis_json, "machine-readable output");

  std::string compile_label;
  std::string compile_out_path;
  bool compile_trace = false;
  auto* compile = app.add_subcommand("compile", "Compile a label into an optical setup");
  compile->add_option("label", compile_label, "label, e.g. '1/2,1,1/2;1/2' or 'd:1,2,1;1'")
      ->required();
  compile->add_option("-o,--output", compile_out_path, "write the setup document to a file");
  compile->add_flag("--trace", compile_trace, "also print the per-emitter compiler trace");

  std::string simulate_path;
  double simulate_eta = 1.0;
  bool simulate_json = false;
  auto* simulate_cmd = app.add_subcommand("simulate", "Post-select a setup document");
  simulate_cmd->add_option("file", simulate_path, "setup document")->required();
  simulate_cmd->add_option("--eta", simulate_eta, "per-photon efficiency in (0, 1]");
  simulate_cmd->add_flag("--json", simulate_json, "machine-readable output");

  std::string verify_label_text;
  double verify_eta = 1.0;
  double verify_tol = -1.0;
  bool verify_json = false;
  auto* verify = app.add_subcommand("verify", "Compile, simulate and check one label");
  verify->add_option("label", verify_label_text, "label to verify")->required();
  verify->add_option("--eta", verify_eta, "per-photon efficiency in (0, 1]");
  verify->add_option("--tol", verify_tol, "per-amplitude tolerance (default 1e-10, or SPINOPTICS_TOL)");
  verify->add_flag("--json", verify_json, "machine-readable output");

  int sweep_n = 0;
  std::string sweep_csv_path;
  double sweep_eta = 1.0;
  double sweep_tol = -1.0;
  bool sweep_json = false;
  auto* sweep = app.add_subcommand("sweep", "Verify the full 2^N coupled basis");
  sweep->add_option("n", sweep_n, "number of qubits (1..8)")->required();
  sweep->add_option("--csv", sweep_csv_path, "write the report as CSV to a file");
  sweep->add_option("--eta", sweep_eta, "per-photon efficiency in (0, 1]");
  sweep->add_option("--tol", sweep_tol, "per-amplitude tolerance (default 1e-10, or SPINOPTICS_TOL)");
  sweep->add_flag("--json", sweep_json, "machine-readable output");

  std::string graph_arg;
  auto* graph = app.add_subcommand("graph", "Render a setup as a DOT graph");
  graph->add_option("label_or_file", graph_arg, "label to compile, or a setup document file")
      ->required();

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_invalid_input;
  }

  try {
    if (*basis) {
      const auto labels = enumerate_coupled_basis(basis_n);
      if (basis_json) {
        nlohmann::ordered_json doc;
        doc["n"] = basis_n;
        auto& list = doc["labels"] = nlohmann::ordered_json::array();
        for (const auto& label : labels) list.push_back(format_label(label));
        out << doc.dump(2) << '\n';
      } else {
        for (const auto& label : labels) out << format_label(label) << '\n';
      }
      return exit_ok;
    }

    if (*compile) {
      const auto result = compile_setup(parse_label(compile_label));
      const std::string doc = serialize_setup(result.setup);
      if (compile_out_path.empty())
        out << doc;
      else
        detail::write_file(compile_out_path, doc);
      if (compile_trace) out << result.trace.to_json();
      return exit_ok;
    }

    if (*simulate_cmd) {
      const OpticalSetup setup = parse_setup(detail::read_file(simulate_path));
      if (const auto diagnostics = validate_setup(setup); !diagnostics.empty()) {
        for (const auto& d : diagnostics) err << "error: " << d.message << '\n';
        return exit_invalid_input;
      }
      detail::print_simulation(setup, simulate(setup), simulate_eta, simulate_json, out);
      return exit_ok;
    }

    if (*verify) {
      VerifyOptions options;
      options.tolerance = verify_tol > 0 ? verify_tol : detail::default_tolerance();
      options.efficiency = verify_eta;
      const auto report = verify_label(parse_label(verify_label_text), options);
      detail::print_report(report, verify_json, out);
      return report.exact_match ? exit_ok : exit_verification_failure;
    }

    if (*sweep) {
      VerifyOptions options;
      options.tolerance = sweep_tol > 0 ? sweep_tol : detail::default_tolerance();
      options.efficiency = sweep_eta;
      const auto result = sweep_basis(sweep_n, options);
      if (!sweep_csv_path.empty()) {
        std::ostringstream csv;
        write_reports_csv(result.reports, csv);
        detail::write_file(sweep_csv_path, csv.str());
      }
      if (sweep_json) {
        out << sweep_to_json(result);
      } else {
        out << "label                              fidelity        success_prob    exact\n";
        for (const auto& r : result.reports) {
          std::ostringstream line;
          line << std::left << std::setw(35) << format_label(r.label) << std::setw(16)
               << spinoptics::detail::fmt_g(r.fidelity, 12) << std::setw(16)
               << spinoptics::detail::fmt_g(r.success_prob, 12)
               << (r.exact_match ? "yes" : "NO");
          out << line.str() << '\n';
        }
        out << "exact: " << result.summary.exact_count << "/" << result.reports.size()
            << ", min fidelity: " << spinoptics::detail::fmt_g(result.summary.min_fidelity, 12)
            << ", success probability range (model convention): ["
            << spinoptics::detail::fmt_g(result.summary.min_success_prob, 12) << ", "
            << spinoptics::detail::fmt_g(result.summary.max_success_prob, 12) << "]\n";
      }
      return result.all_exact() ? exit_ok : exit_verification_failure;
    }

    if (*graph) {
      OpticalSetup setup;
      try {
        setup = compile_setup(parse_label(graph_arg)).setup;
      } catch (const std::invalid_argument&) {
        setup = parse_setup(detail::read_file(graph_arg));
      }
      out << export_dot(setup);
      return exit_ok;
    }
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << '\n';
    return exit_io_error;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_invalid_input;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_invalid_input;
  }
  return exit_ok;
}

}  // namespace spinoptics::cli
