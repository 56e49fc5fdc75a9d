#include "stellar/embeddings.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace stellar {

std::string kind_name(EmbeddingKind k) {
  switch (k) {
    case EmbeddingKind::B2: return "B2";
    case EmbeddingKind::A3: return "A3";
    case EmbeddingKind::D4: return "D4";
  }
  return "?";
}

namespace {

struct KindTable {
  const RootSystem* small;                 // catalog B2 / A3 / D4
  int nsimple;
  // Shortcut half-plane conditions and the forbidden flattenings they pin
  // down, as small-system positive indices / inversion masks.
  struct Case {
    std::vector<int> must_in;
    std::vector<int> must_out;
    std::uint32_t forbidden_mask;
    std::vector<int> forbidden_word;
  };
  std::vector<Case> cases;
};

int small_index(const RootSystem& rs, std::initializer_list<int> coeff) {
  for (int m = 0; m < rs.num_positive(); ++m) {
    bool ok = true;
    int i = 0;
    for (int c : coeff) {
      if (rs.coeff[m][i] != c) {
        ok = false;
        break;
      }
      ++i;
    }
    for (; ok && i < rs.rank; ++i) ok = (rs.coeff[m][i] == 0);
    if (ok) return m;
  }
  throw InternalError("small system root not found");
}

std::uint32_t word_mask(const RootSystem& rs, const std::vector<int>& word) {
  Bits b = inversion_set(from_word(rs, word));
  std::uint32_t m = 0;
  b.for_each([&](int i) { m |= (1u << i); });
  return m;
}

const KindTable& kind_table(EmbeddingKind k) {
  static std::map<EmbeddingKind, KindTable> tables;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = tables.find(k);
  if (it != tables.end()) return it->second;

  KindTable t;
  switch (k) {
    case EmbeddingKind::B2: {
      const RootSystem& rs = root_system(Type::B, 2);
      t.small = &rs;
      t.nsimple = 2;
      KindTable::Case c;
      c.must_out = {small_index(rs, {1, 0})};
      c.must_in = {small_index(rs, {1, 1})};
      c.forbidden_word = {2, 1, 2};
      c.forbidden_mask = word_mask(rs, c.forbidden_word);
      t.cases.push_back(std::move(c));
      break;
    }
    case EmbeddingKind::A3: {
      const RootSystem& rs = root_system(Type::A, 3);
      t.small = &rs;
      t.nsimple = 3;
      KindTable::Case c1;  // flattening s2 s1 s3 s2
      c1.must_out = {small_index(rs, {1, 0, 0}), small_index(rs, {0, 0, 1})};
      c1.must_in = {small_index(rs, {1, 1, 1})};
      c1.forbidden_word = {2, 1, 3, 2};
      c1.forbidden_mask = word_mask(rs, c1.forbidden_word);
      t.cases.push_back(std::move(c1));
      KindTable::Case c2;  // flattening s1 s2 s3 s2 s1
      c2.must_out = {small_index(rs, {0, 1, 0})};
      c2.must_in = {small_index(rs, {1, 1, 0}), small_index(rs, {0, 1, 1})};
      c2.forbidden_word = {1, 2, 3, 2, 1};
      c2.forbidden_mask = word_mask(rs, c2.forbidden_word);
      t.cases.push_back(std::move(c2));
      break;
    }
    case EmbeddingKind::D4: {
      const RootSystem& rs = root_system(Type::D, 4);
      t.small = &rs;
      t.nsimple = 4;
      KindTable::Case c;
      c.must_in = {small_index(rs, {1, 2, 1, 1})};
      c.must_out = {small_index(rs, {1, 1, 1, 0}), small_index(rs, {1, 1, 0, 1}),
                    small_index(rs, {0, 1, 1, 1})};
      c.forbidden_word = {2, 1, 3, 4, 2};
      c.forbidden_mask = word_mask(rs, c.forbidden_word);
      t.cases.push_back(std::move(c));
      break;
    }
  }
  return tables.emplace(k, std::move(t)).first->second;
}

// Ambient index of the image of the m-th small positive root, or -1.
int image_index(const RootSystem& rs, const RootSystem& small,
                const std::vector<int>& images, int m) {
  Vec v{};
  for (int i = 0; i < small.rank; ++i) v = add(v, scale(rs.pos[images[i]], small.coeff[m][i]));
  int idx = rs.signed_index(v);
  return idx > 0 ? idx - 1 : -1;
}

bool independent(const RootSystem& rs, const std::vector<int>& images) {
  std::vector<Vec> rows;
  for (int i : images) rows.push_back(rs.pos[i]);
  return rank_of(rows, rs.dim) == static_cast<int>(images.size());
}

std::optional<Embedding> make_embedding(const RootSystem& rs, EmbeddingKind k,
                                        std::vector<int> images) {
  const KindTable& t = kind_table(k);
  Embedding e;
  e.kind = k;
  e.images = std::move(images);
  e.image_pos.resize(t.small->num_positive());
  for (int m = 0; m < t.small->num_positive(); ++m) {
    int idx = image_index(rs, *t.small, e.images, m);
    if (idx < 0) return std::nullopt;
    e.image_pos[m] = idx;
  }
  if (!independent(rs, e.images)) return std::nullopt;
  return e;
}

}  // namespace

std::vector<Embedding> enumerate_embeddings(const RootSystem& rs, EmbeddingKind kind) {
  std::vector<Embedding> out;
  int P = rs.num_positive();
  switch (kind) {
    case EmbeddingKind::B2: {
      for (int b1 = 0; b1 < P; ++b1)
        for (int b2 = 0; b2 < P; ++b2) {
          if (b1 == b2) continue;
          int s = rs.sum_index(b1, b2);
          if (s < 0 || rs.sum_index(s, b2) < 0) continue;
          if (auto e = make_embedding(rs, kind, {b1, b2})) out.push_back(std::move(*e));
        }
      break;
    }
    case EmbeddingKind::A3: {
      for (int b2 = 0; b2 < P; ++b2)
        for (int b1 = 0; b1 < P; ++b1) {
          if (b1 == b2 || rs.sum_index(b1, b2) < 0) continue;
          for (int b3 = 0; b3 < P; ++b3) {
            if (b3 == b2 || b3 == b1) continue;
            if (rs.sum_index(b2, b3) < 0) continue;
            if (rs.sum_index(rs.sum_index(b1, b2), b3) < 0) continue;
            if (auto e = make_embedding(rs, kind, {b1, b2, b3})) out.push_back(std::move(*e));
          }
        }
      break;
    }
    case EmbeddingKind::D4: {
      for (int b2 = 0; b2 < P; ++b2) {
        std::vector<int> nb;
        for (int g = 0; g < P; ++g)
          if (g != b2 && rs.sum_index(g, b2) >= 0) nb.push_back(g);
        for (int b1 : nb)
          for (int b3 : nb)
            for (int b4 : nb) {
              if (b1 == b3 || b1 == b4 || b3 == b4) continue;
              int p13 = rs.sum_index(rs.sum_index(b1, b2), b3);
              if (p13 < 0) continue;
              if (rs.sum_index(rs.sum_index(b1, b2), b4) < 0) continue;
              if (rs.sum_index(rs.sum_index(b3, b2), b4) < 0) continue;
              int q = rs.sum_index(p13, b4);
              if (q < 0 || rs.sum_index(q, b2) < 0) continue;
              if (auto e = make_embedding(rs, kind, {b1, b2, b3, b4}))
                out.push_back(std::move(*e));
            }
      }
      break;
    }
  }
  for (auto& e : out) {
    Subsystem span = span_closure(rs, e.images);
    e.span_type = span.type_label;
    e.proper = is_proper(rs, e);
  }
  return out;
}

bool is_proper(const RootSystem& rs, const Embedding& e) {
  Subsystem span = span_closure(rs, e.images);
  if (span.type_label != "B3" && span.type_label != "C3") return true;

  std::vector<int> members;
  span.delta_plus.for_each([&](int i) { members.push_back(i); });

  Bits image6;
  for (int m : e.image_pos) image6.set(m);
  Bits simple_images;
  for (int i : e.images) simple_images.set(i);

  // Search for a B2-embedding (g1, g2) into the span whose long middle root
  // g1+g2 is the image of a simple root and whose four image roots meet the
  // six embedding images in exactly {g2, g1+g2, g1+2g2}.
  for (int g1 : members)
    for (int g2 : members) {
      if (g1 == g2) continue;
      int s = rs.sum_index(g1, g2);
      if (s < 0 || !span.delta_plus.test(s)) continue;
      int s2 = rs.sum_index(s, g2);
      if (s2 < 0 || !span.delta_plus.test(s2)) continue;
      if (!simple_images.test(s)) continue;
      if (image6.test(g1)) continue;
      if (image6.test(g2) && image6.test(s) && image6.test(s2)) return true;
    }
  return false;
}

const std::vector<Embedding>& embeddings(const RootSystem& rs, EmbeddingKind kind) {
  static std::map<std::pair<const RootSystem*, EmbeddingKind>, std::vector<Embedding>> reg;
  static std::mutex m;
  std::lock_guard<std::mutex> lock(m);
  auto key = std::make_pair(&rs, kind);
  auto it = reg.find(key);
  if (it == reg.end()) it = reg.emplace(key, enumerate_embeddings(rs, kind)).first;
  return it->second;
}

Element flatten_embedding(const Element& w, const Embedding& e) {
  const KindTable& t = kind_table(e.kind);
  Bits inv = inversion_set(w);
  Bits small_bits;
  for (std::size_t m = 0; m < e.image_pos.size(); ++m)
    if (inv.test(e.image_pos[m])) small_bits.set(static_cast<int>(m));
  try {
    return element_from_inversion_set(*t.small, small_bits);
  } catch (const std::domain_error&) {
    throw InternalError("flatten_embedding: pulled-back set is not an inversion set");
  }
}

namespace {

std::optional<PatternWitness> scan_embeddings(const Element& w,
                                              const std::vector<EmbeddingKind>& kinds,
                                              bool require_proper, bool dual) {
  const RootSystem& rs = *w.rs;
  Bits inv = inversion_set(w);
  for (EmbeddingKind k : kinds) {
    const KindTable& t = kind_table(k);
    for (const Embedding& e : embeddings(rs, k)) {
      if (require_proper && !e.proper) continue;
      for (const auto& c : t.cases) {
        bool fire = true;
        for (int m : c.must_in)
          if (!inv.test(e.image_pos[m])) {
            fire = false;
            break;
          }
        if (fire)
          for (int m : c.must_out)
            if (inv.test(e.image_pos[m])) {
              fire = false;
              break;
            }
        if (!fire) continue;
        // The shortcut must agree with the full flattening.
        Element f = flatten_embedding(w, e);
        std::uint32_t mask = 0;
        inversion_set(f).for_each([&](int i) { mask |= (1u << i); });
        if (mask != c.forbidden_mask)
          throw InternalError("half-plane shortcut disagrees with flattening");
        PatternWitness pw;
        pw.criterion = "embedded-pattern";
        pw.delta_type = e.span_type;
        pw.embedding_kind = kind_name(k);
        for (int i : e.images) pw.images.push_back(rs.pos[i]);
        pw.flattened_word = c.forbidden_word;
        pw.dual = dual;
        pw.proper = e.proper;
        return pw;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<PatternWitness> has_embedded_pattern(const Element& w,
                                                   const std::vector<EmbeddingKind>& kinds,
                                                   bool require_proper) {
  return scan_embeddings(w, kinds, require_proper, false);
}

std::optional<PatternWitness> has_dual_embedded_pattern(const Element& w,
                                                        const std::vector<EmbeddingKind>& kinds,
                                                        bool require_proper) {
  const RootSystem& dual = dual_system(*w.rs);
  Element wd = from_word(dual, lex_min_word(w));
  return scan_embeddings(wd, kinds, require_proper, true);
}

}  // namespace stellar
