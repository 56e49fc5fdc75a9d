#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stellar/subsystems.hpp"
#include "stellar/weyl.hpp"

namespace stellar {

enum class EmbeddingKind { B2, A3, D4 };

std::string kind_name(EmbeddingKind k);

// An embedding of B2, A3 or D4 into the ambient system, recorded by the
// images of the simple roots (node order; node 2 is the A3/D4 center).
// Every positive root of the small system maps to an ambient positive
// root; image_pos[m] is the ambient index of the image of the m-th
// positive root of the small system.
struct Embedding {
  EmbeddingKind kind = EmbeddingKind::B2;
  std::vector<int> images;      // ambient positive indices of the simple images
  std::vector<int> image_pos;   // by small-system positive index
  std::string span_type;        // label of the subsystem spanned by the images
  bool proper = true;
};

// All tuples of positive roots satisfying the kind's sum conditions.
// Tuples are ordered; diagram symmetries are enumerated redundantly.
std::vector<Embedding> enumerate_embeddings(const RootSystem& rs, EmbeddingKind kind);

// Cached per system, with properness precomputed.
const std::vector<Embedding>& embeddings(const RootSystem& rs, EmbeddingKind kind);

// Properness: automatic unless the span has type B3 or C3, in which case a
// B2-embedding into the span must hit a simple image with its long-middle
// root and meet the image in exactly the three roots of the B2 singular
// inversion set.
bool is_proper(const RootSystem& rs, const Embedding& e);

// Pull the inversion set of w back along the embedding: the unique small-
// group element whose inversion set is e^{-1}(I(w)).
Element flatten_embedding(const Element& w, const Embedding& e);

// Forbidden flattenings per kind (the rank-correct singular cores):
// B2: s2 s1 s2; A3: s2 s1 s3 s2 and s1 s2 s3 s2 s1; D4: s2 s1 s3 s4 s2.
// Scans proper embeddings of the requested kinds; half-plane shortcut used
// as the pre-filter, cross-checked against the full flattening.
std::optional<PatternWitness> has_embedded_pattern(const Element& w,
                                                   const std::vector<EmbeddingKind>& kinds,
                                                   bool require_proper = true);

// Same test in the dual system: w transported by its reduced word through
// the generator correspondence s_i <-> s_{a_i dual}.
std::optional<PatternWitness> has_dual_embedded_pattern(const Element& w,
                                                        const std::vector<EmbeddingKind>& kinds,
                                                        bool require_proper = true);

}  // namespace stellar
