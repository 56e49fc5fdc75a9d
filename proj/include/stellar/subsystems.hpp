#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stellar/bits.hpp"
#include "stellar/weyl.hpp"

namespace stellar {

// A root subsystem: the intersection of the ambient system with a linear
// subspace, with its induced simple roots in canonical (Bourbaki) node
// order and a canonical type label ("B2", "A3", reducible ones like
// "A1xA1").  For irreducible types of rank <= 4 the positive roots are
// identified with those of the catalog system of the same label, which is
// what pattern tables are keyed on.
struct Subsystem {
  const RootSystem* ambient = nullptr;
  Bits delta_plus;                 // ambient positive-root indices
  std::vector<int> simples;        // ambient positive indices, node order
  std::string type_label;
  bool irreducible = false;
  int rank = 0;

  // For irreducible rank <= 4 subsystems: the catalog system of the same
  // label and the ambient index of each of its positive roots.
  const RootSystem* abstract_rs = nullptr;
  std::vector<int> abs_to_ambient;

  // Inversion-set signature of w restricted to this subsystem, as a bit
  // mask over the abstract system's positive-root indices.
  std::uint32_t signature(const Bits& inv_w) const;
};

// Classification of a set of simple roots by Cartan matrix.  Returns the
// label plus the permutation into canonical node order.
struct TypeClassification {
  std::string label;
  bool irreducible;
  std::vector<int> canonical_order;  // canonical node k (0-based) -> input position
};

TypeClassification classify_simples(const RootSystem& ambient, const std::vector<int>& simple_pos);

// Span-intersection closure of a seed set of positive roots.
Subsystem span_closure(const RootSystem& rs, const std::vector<int>& seed_pos);

// Every subsystem of rank <= max_rank, each exactly once, from span
// closures of k-subsets of positive roots (k <= max_rank).
std::vector<Subsystem> enumerate_subsystems(const RootSystem& rs, int max_rank,
                                            std::uint64_t budget = 50'000'000);

bool is_stellar(const Subsystem& s);

// Stellar subsystems only, cached per root system.
const std::vector<Subsystem>& stellar_subsystems(const RootSystem& rs);

// The unique element of the subsystem's Weyl group whose inversion set is
// I(w) intersected with the subsystem, as an element of the catalog system.
Element flatten(const Element& w, const Subsystem& delta);

// A witness that some test flagged w, carrying the subsystem (or
// embedding) data and the flattened element.
struct PatternWitness {
  std::string criterion;                  // e.g. "stellar-pattern"
  std::string delta_type;
  std::vector<Vec> delta_simples;         // ambient coordinates
  std::vector<int> flattened_word;
  // Embedded-pattern extras:
  std::string embedding_kind;             // "B2"/"A3"/"D4", empty for subsystems
  std::vector<Vec> images;
  bool dual = false;
  bool proper = true;
};

// Scan stellar subsystems of the given type for a flattening whose
// signature lies in bad_set.
std::optional<PatternWitness> contains_pattern(const Element& w, const std::string& stellar_type,
                                               const std::vector<std::uint32_t>& bad_set);

// Conjugation data for a subsystem: a standard parabolic J and v1 in W^J
// with v1(Delta) = Phi^J, found by searching W for an element mapping the
// subsystem's simples onto the parabolic's simples.
struct ParabolicConjugation {
  std::uint32_t j_mask;
  Element v1;
};

std::optional<ParabolicConjugation> conjugate_to_parabolic(const WeylGroup& g,
                                                           const Subsystem& delta);

}  // namespace stellar
