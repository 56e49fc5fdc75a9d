// Command-line front end: classification, counting, cross-validation,
// Poincare polynomials and table regeneration for the pattern criteria.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>

#include "stellar/bruhat_poincare.hpp"
#include "stellar/classical.hpp"
#include "stellar/criteria.hpp"
#include "stellar/json_io.hpp"
#include "stellar/parallel.hpp"
#include "stellar/verify.hpp"

using namespace stellar;
using nlohmann::json;

namespace {

struct Options {
  std::string type_str;
  int rank = 0;
  std::string word, one_line;
  std::string method;  // resolved per subcommand; pattern scan by default
  std::string predicate = "smooth";
  bool rational = false;
  bool want_json = false;
  bool factor = false;
  bool stellar_only = false;
  int max_rank = 4;
  int threads = 0;
  std::uint64_t cap = kDefaultCap;
  std::string cache_dir;
  std::uint64_t samples = 1000;
  std::uint64_t seed = 20030728;
  bool full_e8 = false;
};

constexpr std::uint64_t kOracleLimit = 20000;  // dense Bruhat memo bound

Type parse_type_or_throw(const std::string& s) {
  if (s.size() == 1) {
    char c = static_cast<char>(std::toupper(s[0]));
    if (c >= 'A' && c <= 'G') return static_cast<Type>(c);
  }
  throw std::invalid_argument("unknown type letter: " + s);
}

std::string cache_path(const Options& opt, const RootSystem& rs) {
  return opt.cache_dir + "/bruhat-" + rs.label + "-v1.bin";
}

std::vector<std::pair<const WeylGroup*, std::string>> g_cached_groups;

const WeylGroup& group_with_cache(const Options& opt, const RootSystem& rs) {
  const WeylGroup& g = weyl_group(rs, opt.cap);
  if (!opt.cache_dir.empty()) {
    std::string path = cache_path(opt, rs);
    g.load_bruhat_cache(path);
    g_cached_groups.emplace_back(&g, path);
  }
  return g;
}

void save_caches() {
  for (auto& [g, path] : g_cached_groups) g->save_bruhat_cache(path);
}

Element parse_element(const Options& opt, const RootSystem& rs) {
  if (!opt.word.empty()) return from_word(rs, parse_word(opt.word));
  if (!opt.one_line.empty()) {
    SignedPerm p;
    for (int x : parse_word(opt.one_line)) p.push_back(x);
    return signed_to_element(rs, p);
  }
  throw std::invalid_argument("an element is required: --word or --one-line");
}

int run_check(const Options& opt) {
  Type t = parse_type_or_throw(opt.type_str);
  const RootSystem& rs = root_system(t, opt.rank);
  Element w = parse_element(opt, rs);

  // The stellar-subsystem scan enumerates 4-subsets of the positive roots;
  // for E8-sized systems run it only on explicit request.
  std::string method = opt.method;
  bool want_pattern = rs.num_positive() <= 63 || method == "pattern";
  if (method.empty()) method = want_pattern ? "pattern" : "embedded";

  auto emb_s = embedded_smooth(w);
  auto emb_r = embedded_rationally_smooth(w);
  std::optional<PatternWitness> pat_s = emb_s, pat_r = emb_r;
  bool agreed = true;
  if (want_pattern) {
    pat_s = pattern_smooth(w);
    pat_r = pattern_rationally_smooth(w);
    agreed = pat_s.has_value() == emb_s.has_value() &&
             pat_r.has_value() == emb_r.has_value();
  }

  std::optional<bool> cls_s, cls_r;
  if (t == Type::A || t == Type::B || t == Type::C || t == Type::D) {
    SignedPerm p = element_to_signed(w);
    cls_s = !classical_pattern_test(p, t, false).has_value();
    cls_r = !classical_pattern_test(p, t, true).has_value();
    agreed = agreed && *cls_s == !pat_s.has_value() && *cls_r == !pat_r.has_value();
  }
  std::optional<bool> orc_s, orc_r;
  if (weyl_order(t, opt.rank) <= std::min<std::uint64_t>(opt.cap, kOracleLimit)) {
    const WeylGroup& g = group_with_cache(opt, rs);
    int id = g.id_of(w);
    orc_s = is_smooth_oracle(g, id);
    orc_r = is_rationally_smooth_oracle(g, id);
    agreed = agreed && *orc_s == !pat_s.has_value() && *orc_r == !pat_r.has_value();
  }

  bool smooth, rational;
  std::optional<PatternWitness> witness;
  if (method == "pattern") {
    smooth = !pat_s;
    rational = !pat_r;
    witness = pat_s ? pat_s : pat_r;
  } else if (method == "embedded") {
    smooth = !emb_s;
    rational = !emb_r;
    witness = emb_s ? emb_s : emb_r;
  } else if (method == "classical") {
    if (!cls_s) throw std::invalid_argument("classical method needs a classical type");
    smooth = *cls_s;
    rational = *cls_r;
    witness = pat_s ? pat_s : pat_r;  // subsequence witnesses map back to subsystems
  } else if (method == "kumar" || method == "poincare") {
    if (!orc_s) throw CapExceeded("oracle method needs the group enumerated under the cap");
    smooth = *orc_s;
    rational = *orc_r;
  } else {
    throw std::invalid_argument("unknown method " + method);
  }

  std::vector<int> canonical = lex_min_word(w);
  if (opt.want_json) {
    json j;
    j["element"] = word_to_string(canonical);
    j["type"] = rs.label;
    j["length"] = w.len;
    j["smooth"] = smooth;
    j["rationally_smooth"] = rational;
    j["witness"] = witness ? witness_to_json(*witness, rs.dim) : json(nullptr);
    j["methods_agreed"] = agreed;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "element: " << word_to_string(canonical) << " (length " << w.len << ")\n";
    std::cout << "type: " << rs.label << "\n";
    std::cout << "smooth: " << (smooth ? "true" : "false") << "\n";
    std::cout << "rationally_smooth: " << (rational ? "true" : "false") << "\n";
    if (witness) {
      std::cout << "witness: " << witness->criterion << " " << witness->delta_type;
      if (!witness->embedding_kind.empty())
        std::cout << " kind=" << witness->embedding_kind
                  << (witness->dual ? " (dual)" : "");
      std::cout << " flattened=" << word_to_string(witness->flattened_word) << "\n";
    }
    std::cout << "methods_agreed: " << (agreed ? "true" : "false") << "\n";
  }
  return agreed ? 0 : 3;
}

int run_count(const Options& opt_in) {
  Options opt = opt_in;
  if (opt.method.empty()) opt.method = "pattern";
  Type t = parse_type_or_throw(opt.type_str);
  std::uint64_t count = 0, total = 0;

  bool classical_type =
      (t == Type::A || t == Type::B || t == Type::C || t == Type::D);
  if (opt.method == "classical") {
    if (!classical_type) throw std::invalid_argument("classical method needs type A/B/C/D");
    int n = one_line_size(t, opt.rank);
    bool rat = opt.predicate == "rationally-smooth" || opt.predicate == "rationally-singular";
    ClassicalSweep sweep = classical_sweep(t, n, rat, false);
    total = sweep.total;
    if (opt.predicate == "smooth" || opt.predicate == "rationally-smooth")
      count = sweep.smooth;
    else if (opt.predicate == "singular" || opt.predicate == "rationally-singular")
      count = sweep.total - sweep.smooth;
    else
      throw std::invalid_argument("classical method counts smoothness predicates only");
  } else {
    static const std::vector<std::string> known = {
        "smooth",          "singular", "rationally-smooth", "rationally-singular",
        "fully-commutative", "abelian"};
    if (std::find(known.begin(), known.end(), opt.predicate) == known.end())
      throw std::invalid_argument("unknown predicate " + opt.predicate);
    if (opt.method != "pattern" && opt.method != "embedded")
      throw std::invalid_argument("unknown method " + opt.method);

    const RootSystem& rs = root_system(t, opt.rank);
    std::vector<Element> elems = enumerate_elements(rs, opt.cap);
    total = elems.size();
    build_bad_tables();
    stellar_subsystems(rs);
    if (!rs.simply_laced()) dual_system(rs);

    std::vector<std::uint8_t> hit(elems.size(), 0);
    parallel_for(elems.size(), [&](std::size_t i) {
      const Element& w = elems[i];
      bool v = false;
      if (opt.predicate == "smooth")
        v = opt.method == "embedded" ? !embedded_smooth(w) : !pattern_smooth(w);
      else if (opt.predicate == "singular")
        v = opt.method == "embedded" ? embedded_smooth(w).has_value()
                                     : pattern_smooth(w).has_value();
      else if (opt.predicate == "rationally-smooth")
        v = opt.method == "embedded" ? !embedded_rationally_smooth(w)
                                     : !pattern_rationally_smooth(w);
      else if (opt.predicate == "rationally-singular")
        v = opt.method == "embedded" ? embedded_rationally_smooth(w).has_value()
                                     : pattern_rationally_smooth(w).has_value();
      else if (opt.predicate == "fully-commutative")
        v = is_fully_commutative(w);
      else if (opt.predicate == "abelian")
        v = is_abelian(w);
      hit[i] = v;
    });
    for (auto h : hit) count += h;
  }

  if (opt.want_json) {
    json j;
    j["type"] = type_name(t, opt.rank);
    j["predicate"] = opt.predicate;
    j["method"] = opt.method;
    j["count"] = count;
    j["total"] = total;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << count << "\n";
  }
  return 0;
}

int run_poincare(const Options& opt) {
  Type t = parse_type_or_throw(opt.type_str);
  const RootSystem& rs = root_system(t, opt.rank);
  const WeylGroup& g = group_with_cache(opt, rs);
  Element w = parse_element(opt, rs);
  int id = g.id_of(w);
  PoincarePolynomial p = poincare(g, id);

  std::optional<Factorization> f;
  if (opt.factor) f = recursive_factor(g, id);

  if (opt.want_json) {
    json j;
    j["coeffs"] = p.coeffs;
    j["palindromic"] = is_palindromic(p);
    if (auto d = asymmetry_depth(p)) j["asymmetry_depth"] = *d;
    if (opt.factor) {
      if (f) {
        json factors = json::array();
        for (const auto& q : f->factors) factors.push_back(q.coeffs);
        j["factors"] = factors;
        json steps = json::array();
        for (const auto& st : f->steps) {
          json s;
          s["leaf"] = st.leaf_node;
          s["used_inverse"] = st.used_inverse;
          s["quotient"] = st.quotient.coeffs;
          steps.push_back(s);
        }
        j["steps"] = steps;
      } else {
        j["factors"] = json(nullptr);
      }
    }
    std::cout << j.dump() << "\n";
  } else {
    std::cout << p.to_string() << "\n";
    if (opt.factor) {
      if (f) {
        for (const auto& q : f->factors) std::cout << "factor: " << q.to_string() << "\n";
        for (auto it = f->steps.rbegin(); it != f->steps.rend(); ++it)
          std::cout << "peeled leaf " << it->leaf_node
                    << (it->used_inverse ? " (inverse)" : "") << ": quotient "
                    << it->quotient.to_string() << "\n";
      } else {
        std::cout << "no palindromic factorization\n";
      }
    }
  }
  return 0;
}

int run_subsystems(const Options& opt) {
  Type t = parse_type_or_throw(opt.type_str);
  const RootSystem& rs = root_system(t, opt.rank);
  std::vector<Subsystem> subs = enumerate_subsystems(rs, opt.max_rank);
  if (opt.stellar_only) {
    std::erase_if(subs, [](const Subsystem& s) { return !is_stellar(s); });
  }
  if (opt.want_json) {
    json arr = json::array();
    for (const auto& s : subs) {
      json j;
      j["type"] = s.type_label;
      json simples = json::array();
      for (int idx : s.simples) simples.push_back(vec_to_json(rs.pos[idx], rs.dim));
      j["simples"] = simples;
      arr.push_back(j);
    }
    std::cout << arr.dump() << "\n";
  } else {
    for (const auto& s : subs) {
      std::cout << s.type_label << "\n";
      for (int idx : s.simples) {
        for (int i = 0; i < rs.dim; ++i) {
          if (i) std::cout << ' ';
          std::cout << rs.pos[idx][i];
        }
        std::cout << "\n";
      }
      std::cout << "\n";
    }
    std::cout << subs.size() << " subsystems\n";
  }
  return 0;
}

int run_crossval(const Options& opt) {
  Type t = parse_type_or_throw(opt.type_str);
  if (t == Type::E && opt.rank == 8) {
    E8SweepReport rep = e8_sampled_sweep(opt.samples, opt.seed, opt.full_e8);
    if (opt.want_json) {
      json j;
      j["quotient_size"] = rep.quotient_size;
      j["smooth_d7"] = rep.smooth_d7;
      j["samples"] = rep.samples;
      j["singular"] = rep.singular;
      j["max_asymmetry_depth"] = rep.max_asymmetry_depth;
      j["all_consistent"] = rep.all_consistent;
      std::cout << j.dump() << "\n";
    } else {
      std::cout << "D7\\E8 quotient: " << rep.quotient_size
                << " representatives; smooth D7 elements: " << rep.smooth_d7 << "\n";
      std::cout << rep.samples << " sampled products: " << rep.singular
                << " singular, max asymmetry depth " << rep.max_asymmetry_depth << "\n";
      std::cout << (rep.all_consistent ? "all samples consistent"
                                       : "INCONSISTENT: " + rep.note)
                << "\n";
    }
    return rep.all_consistent ? 0 : 3;
  }

  group_with_cache(opt, root_system(t, opt.rank));  // shared instance
  CrossvalResult res = crossval_group(t, opt.rank, opt.cap);
  if (opt.want_json) {
    json j;
    j["type"] = type_name(t, opt.rank);
    j["total"] = res.total;
    j["smooth"] = res.smooth;
    j["rationally_smooth"] = res.rationally_smooth;
    j["all_agree"] = res.all_agree;
    if (!res.all_agree) j["disagreement"] = res.disagreement_note;
    std::cout << j.dump() << "\n";
  } else {
    if (res.all_agree)
      std::cout << res.total << " elements, all methods agree\n";
    else
      std::cout << "DISAGREEMENT at " << res.disagreement_note << "\n";
  }
  return res.all_agree ? 0 : 3;
}

int run_tables(const Options& opt) {
  const BadPatternTable& tbl = build_bad_tables();
  const auto& labels = BadPatternTable::stellar_labels();
  if (opt.want_json) {
    json j;
    for (const auto& label : labels) {
      const auto& t = tbl.types.at(label);
      json e;
      e["non_smooth"] = t.smooth_bad.size();
      e["non_rationally_smooth"] = t.rational_bad.size();
      json sw = json::array();
      for (const auto& w : t.smooth_minimal_words) sw.push_back(w);
      e["smooth_patterns"] = sw;
      json rw = json::array();
      for (const auto& w : t.rational_minimal_words) rw.push_back(w);
      e["rationally_smooth_patterns"] = rw;
      j[label] = e;
    }
    std::cout << j.dump() << "\n";
    return 0;
  }

  std::cout << "stellar type:                  ";
  for (const auto& l : labels) std::printf("%6s", l.c_str());
  std::cout << "\nnon-smooth elements:           ";
  for (const auto& l : labels) std::printf("%6zu", tbl.types.at(l).smooth_bad.size());
  std::cout << "\nnon-rationally-smooth elements:";
  for (const auto& l : labels) std::printf("%6zu", tbl.types.at(l).rational_bad.size());
  std::cout << "\n\nminimal forbidden patterns (smoothness):\n";
  for (const auto& l : labels) {
    std::cout << "  " << l << ": ";
    const auto& words = tbl.types.at(l).smooth_minimal_words;
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (i) std::cout << "  |  ";
      std::cout << word_to_string(words[i]);
    }
    std::cout << "\n";
  }
  std::cout << "\nminimal forbidden patterns (rational smoothness):\n";
  for (const auto& l : labels) {
    const auto& words = tbl.types.at(l).rational_minimal_words;
    std::cout << "  " << l << ": ";
    if (words.empty()) std::cout << "(none)";
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (i) std::cout << "  |  ";
      std::cout << word_to_string(words[i]);
    }
    std::cout << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact pattern criteria for Schubert variety smoothness"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;

  app.add_option("--threads", opt.threads, "worker threads (0 = hardware)");
  app.add_option("--cap", opt.cap, "element budget for enumerations");
  app.add_option("--cache-dir", opt.cache_dir, "directory for Bruhat order caches");
  app.add_flag("--json", opt.want_json, "machine-readable output");

  auto add_type = [&](CLI::App* c, bool need_rank = true) {
    c->add_option("--type", opt.type_str, "root system type A..G")->required();
    auto* r = c->add_option("--rank", opt.rank, "rank");
    if (need_rank) r->required();
  };

  auto* check = app.add_subcommand("check", "classify one element");
  add_type(check);
  check->add_option("--word", opt.word, "reduced word, e.g. 2,1,3,2");
  check->add_option("--one-line", opt.one_line, "signed one-line notation, e.g. 3,-2,1");
  check->add_option("--method", opt.method, "pattern|embedded|classical|kumar|poincare");
  check->add_flag("--rational", opt.rational, "(kept for symmetry; both flavors print)");

  auto* count = app.add_subcommand("count", "count elements matching a predicate");
  add_type(count);
  count->add_option("--predicate", opt.predicate,
                    "smooth|singular|rationally-smooth|rationally-singular|"
                    "fully-commutative|abelian");
  count->add_option("--method", opt.method, "pattern|embedded|classical");

  auto* poin = app.add_subcommand("poincare", "Poincare polynomial of a lower interval");
  add_type(poin);
  poin->add_option("--word", opt.word, "reduced word");
  poin->add_option("--one-line", opt.one_line, "signed one-line notation");
  poin->add_flag("--factor", opt.factor, "recursive palindromic factorization");

  auto* subs = app.add_subcommand("subsystems", "list root subsystems");
  add_type(subs);
  subs->add_flag("--stellar", opt.stellar_only, "stellar subsystems only");
  subs->add_option("--max-rank", opt.max_rank, "maximum subsystem rank (default 4)");

  auto* cross = app.add_subcommand("crossval", "cross-validate all methods over a group");
  add_type(cross);
  cross->add_option("--samples", opt.samples, "sample count for the E8 sweep");
  cross->add_option("--seed", opt.seed, "sample seed for the E8 sweep");
  cross->add_flag("--full-e8", opt.full_e8,
                  "sweep every D7-smooth x representative product (no promised runtime)");

  auto* tables = app.add_subcommand("tables", "regenerate the pattern tables");
  (void)tables;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  set_thread_count(opt.threads);

  try {
    int rc = 1;
    if (check->parsed()) rc = run_check(opt);
    else if (count->parsed()) rc = run_count(opt);
    else if (poin->parsed()) rc = run_poincare(opt);
    else if (subs->parsed()) rc = run_subsystems(opt);
    else if (cross->parsed()) rc = run_crossval(opt);
    else if (tables->parsed()) rc = run_tables(opt);
    save_caches();
    return rc;
  } catch (const CapExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 2;
  } catch (const InternalError& e) {
    std::cerr << "internal self-check failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
