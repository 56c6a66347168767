// Compiles the three-qubit label (1/2, 1, 1/2; +1/2) into its optical setup,
// simulates the post-selected detection, and prints the projected state next
// to the Clebsch-Gordan reference.

#include <iostream>

#include "spinoptics/spinoptics.hpp"

int main() {
  using namespace spinoptics;

  const CoupledLabel label = parse_label("1/2,1,1/2;+1/2");
  std::cout << "label: " << format_label(label) << "\n\n";

  const CompileResult compiled = compile_setup(label);
  std::cout << "setup document:\n" << serialize_setup(compiled.setup) << '\n';
  std::cout << "compiler trace:\n" << compiled.trace.to_json() << '\n';

  const SimulationResult sim = simulate(compiled.setup);
  std::cout << "projection coefficients:\n" << sim.projection.to_text() << '\n';
  std::cout << "projected state:\n" << sim.state.to_text() << '\n';

  const StateVector reference = build_reference_state(label);
  std::cout << "reference state:\n" << reference.to_text() << '\n';
  std::cout << "fidelity: " << fidelity(reference, sim.state) << '\n';
  std::cout << "success probability (model convention): "
            << success_probability(compiled.setup) << '\n';
  return 0;
}
