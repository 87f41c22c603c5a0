// Builds P_2 and J_2 of V(x^2 - s) over Q(s), evaluates the canonical section at
// x = s on V(x - s), and runs the theta relations on the first variety.
#include <hsjet/document.hpp>
#include <hsjet/iso_theorems.hpp>
#include <hsjet/presentations.hpp>

#include <iostream>

using namespace hsjet;

int main() {
  const InputDocument square = parse_document("char 0; params s; derivations 1; vars x; gens x^2 - s;");
  for (auto mode : {DerivationMode::Prolongation, DerivationMode::Jet})
    std::cout << presentation_text(prolong_presentation(square.variety, 2, mode)) << "\n";

  const InputDocument line = parse_document("char 0; params s; derivations 1; vars x; gens x - s; point x = s;");
  const JetPoint jp = nabla(line.variety, 3, *line.point);
  std::cout << point_string(jp, line.variety.names()) << "\n";

  std::cout << check_theta_relations(2, 2, square.variety).line() << "\n";
  return 0;
}
