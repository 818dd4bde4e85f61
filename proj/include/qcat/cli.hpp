#pragma once

// Command dispatch for the qcat tool. Exit codes: 0 success / property holds,
// 1 property fails, 2 input or usage error, 3 size cap exceeded.

#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qcat/qcat.hpp"
#include "qcat/text.hpp"

namespace qcat::cli {

enum Exit : int { ok = 0, fails = 1, usage = 2, too_large = 3 };

struct Options {
  std::string builtin;
  bool self = false;
  std::uint64_t cap = kDefaultCap;
  std::size_t sample = 0;
  std::uint64_t seed = 1;
  bool skeletalize = false;
  std::string cat;
  std::vector<std::string> files;
  bool up = false;
  std::string object;
  std::size_t chain = 0;
  std::size_t n = 0;
  std::string what;
};

namespace detail {

class Session {
 public:
  Session(const Options& opt, std::ostream& out) : opt_(opt), out_(out), reg_(Registry::with_builtins()) {
    for (const auto& f : opt.files) {
      std::ifstream in(f);
      if (!in) throw Error(ErrorKind::InvalidInput, "cannot read " + f);
      std::stringstream buf;
      buf << in.rdbuf();
      try {
        for (auto& d : parse(buf.str(), reg_)) docs_.push_back(std::move(d));
      } catch (const Error& e) {
        throw Error(e.kind(), f + ": " + e.message(), e.witness());
      }
    }
  }

  const std::vector<Document>& docs() const { return docs_; }

  template <class T>
  const T* first() const {
    for (const auto& d : docs_)
      if (auto* p = std::get_if<T>(&d)) return p;
    return nullptr;
  }

  QuantalePtr quantale_named(const std::string& name) {
    if (auto it = quantales_.find(name); it != quantales_.end()) return it->second;
    for (const auto& d : docs_)
      if (auto* p = std::get_if<QuantaleDoc>(&d); p && p->name == name)
        return quantales_[name] = std::make_shared<const Quantale>(to_quantale(*p));
    for (const auto& b : builtin_names())
      if (b == name) return quantales_[name] = builtin_ptr(name);
    throw Error(ErrorKind::UnknownBuiltin, "unknown quantale '" + name + "'", {name});
  }

  QuantalePtr quantale() {
    if (!opt_.builtin.empty()) return quantale_named(opt_.builtin);
    if (auto* q = first<QuantaleDoc>()) return quantale_named(q->name);
    if (auto* c = first<VCatDoc>()) return quantale_named(c->over);
    throw Error(ErrorKind::InvalidInput, "no quantale given (use --builtin NAME or a quantale file)");
  }

  /// A vcat document or a quantale name (Ω over itself).
  VCatPtr category_named(const std::string& name) {
    for (const auto& d : docs_)
      if (auto* p = std::get_if<VCatDoc>(&d); p && p->name == name)
        return std::make_shared<const VCat>(to_vcat(*p, quantale_named(p->over)));
    return std::make_shared<const VCat>(omega_self(quantale_named(name)));
  }

  VCatPtr category() {
    VCatPtr a;
    if (opt_.self)
      a = std::make_shared<const VCat>(omega_self(quantale()));
    else if (!opt_.cat.empty())
      a = category_named(opt_.cat);
    else if (auto* c = first<VCatDoc>())
      a = category_named(c->name);
    else
      throw Error(ErrorKind::InvalidInput, "no category given (use --self, --cat NAME or a vcat file)");
    if (opt_.skeletalize && !is_skeletal(*a)) {
      a = std::make_shared<const VCat>(skeletalize(*a).cat);
      out_ << "skeletalized to " << a->size() << " objects\n";
    }
    return a;
  }

  CocompleteStructure structure() {
    auto a = category();
    auto r = check_cocomplete(a);
    if (!r.structure) throw Error(ErrorKind::NotCocomplete, a->name() + " is not cocomplete: " + r.missing_colimit);
    return *r.structure;
  }

 private:
  const Options& opt_;
  std::ostream& out_;
  Registry reg_;
  std::vector<Document> docs_;
  std::map<std::string, QuantalePtr> quantales_;
};

inline std::string tuple(std::initializer_list<std::string> xs) {
  std::string s = "(";
  for (const auto& x : xs) s += (s.size() > 1 ? "," : "") + x;
  return s + ")";
}

inline int cmd_validate(Session& s, const Options& opt, std::ostream& out) {
  bool any = false;
  if (!opt.builtin.empty()) {
    auto q = s.quantale();
    out << "ok quantale " << q->name() << " (" << q->size() << " elements)\n";
    any = true;
  }
  for (const auto& d : s.docs()) {
    any = true;
    if (auto* q = std::get_if<QuantaleDoc>(&d)) {
      auto p = s.quantale_named(q->name);
      out << "ok quantale " << p->name() << " (" << p->size() << " elements)\n";
    } else if (auto* c = std::get_if<VCatDoc>(&d)) {
      auto a = s.category_named(c->name);
      out << "ok vcat " << a->name() << " (" << a->size() << " objects over " << a->quantale().name() << ")\n";
    } else if (auto* f = std::get_if<SubsetDoc>(&d)) {
      to_subset(*f, *s.category_named(f->on));
      out << "ok subset " << f->name << "\n";
    } else if (auto* i = std::get_if<InstanceDoc>(&d)) {
      to_instance(*i, *s.category_named(i->on));
      out << "ok instance " << i->name << " (K = " << i->blocks.size() << ")\n";
    }
  }
  if (!any) throw Error(ErrorKind::InvalidInput, "nothing to validate");
  return ok;
}

inline int cmd_tables(Session& s, std::ostream& out) {
  auto q = s.quantale();
  out << "tensor " << q->name() << "\n" << render_operation(*q, "*", &Quantale::tensor) << "\n";
  out << "residuation [row, column]\n" << render_operation(*q, "[,]", &Quantale::resid);
  return ok;
}

inline int cmd_assumptions(Session& s, std::ostream& out) {
  auto q = s.quantale();
  auto r = check_assumptions(*q);
  auto tok = [&](QElem v) { return q->token(v); };
  out << "lattice completely distributive: " << (r.lattice_cd ? "yes" : "no");
  if (r.lattice_witness) {
    auto [x, y, z] = *r.lattice_witness;
    out << " witness " << tuple({tok(x), tok(y), tok(z)});
  }
  out << "\n[v,-] preserves binary joins: " << (r.powers_ok ? "yes" : "no");
  if (r.powers_witness) {
    auto [v, w1, w2] = *r.powers_witness;
    out << " witness " << tuple({tok(v), tok(w1), tok(w2)});
  }
  out << "\n" << (r.holds() ? "PASS" : "FAIL") << " assumption for " << q->name() << "\n";
  return r.holds() ? ok : fails;
}

inline int cmd_enumerate(Session& s, const Options& opt, std::ostream& out) {
  Lattice l = opt.chain ? Lattice::chain("chain" + std::to_string(opt.chain), numbered_names("c", opt.chain))
                        : s.quantale()->lattice();
  auto qs = enumerate_quantales(l, opt.cap);
  out << qs.size() << " quantale structure" << (qs.size() == 1 ? "" : "s") << " on " << l.name() << "\n";
  for (const auto& q : qs) out << "\n" << print(to_document(q));
  return ok;
}

inline int cmd_order(Session& s, std::ostream& out) {
  auto a = s.category();
  auto o = analyze_order(*a);
  std::vector<std::vector<std::string>> cells;
  for (ObjId x : a->objects()) {
    std::vector<std::string> row;
    for (ObjId y : a->objects()) row.push_back(o.le(x, y) ? "1" : "0");
    cells.push_back(std::move(row));
  }
  out << render_hom(*a) << "\n" << render_grid("<=", a->names(), a->names(), cells);
  out << "skeletal: " << (o.skeletal ? "yes" : "no");
  if (o.witness) out << " witness " << tuple({a->object_name(o.witness->first), a->object_name(o.witness->second)});
  out << "\n";
  return ok;
}

inline int cmd_presheaves(Session& s, const Options& opt, std::ostream& out) {
  auto a = s.category();
  auto pa = enumerate_presheaves(a, opt.up ? Direction::up : Direction::down, opt.cap);
  out << pa.objects.size() << (opt.up ? " copresheaves" : " presheaves") << " on " << a->name() << "\n";
  for (ObjId p : pa.cat.objects()) out << pa.cat.object_name(p) << ": " << render_values(*a, pa.objects[p.index]) << "\n";
  return ok;
}

inline int cmd_downclose(Session& s, std::ostream& out) {
  const auto* f = s.first<SubsetDoc>();
  if (!f) throw Error(ErrorKind::InvalidInput, "downclose needs a subset file");
  auto a = s.category_named(f->on);
  auto phi = down_closure(*a, to_subset(*f, *a));
  out << "f: " << render_values(*a, to_subset(*f, *a).values) << "\n";
  out << "down(f): " << render_values(*a, phi.values) << "\n";
  return ok;
}

inline int cmd_yoneda(Session& s, const Options& opt, std::ostream& out) {
  auto a = s.category();
  std::vector<ObjId> xs = a->objects();
  if (!opt.object.empty()) {
    auto x = a->find(opt.object);
    if (!x) throw Error(ErrorKind::UnknownToken, "unknown object '" + opt.object + "'", {opt.object});
    xs = {*x};
  }
  const auto dir = opt.up ? Direction::up : Direction::down;
  for (ObjId x : xs) out << "y(" << a->object_name(x) << "): " << render_values(*a, yoneda(*a, x, dir)) << "\n";
  return ok;
}

inline int cmd_isbell(Session& s, const Options& opt, std::ostream& out) {
  auto a = s.category();
  auto c = isbell(a, opt.cap);
  out << c.fixed.size() << " of " << c.presheaves.objects.size() << " presheaves are Isbell-closed\n";
  for (std::size_t i = 0; i < c.fixed.size(); ++i)
    out << c.cat.object_name(obj(i)) << ": " << render_values(*a, c.presheaves.objects[c.fixed[i].index]) << "\n";
  out << "embedding:";
  for (ObjId x : a->objects()) out << " " << a->object_name(x) << "->" << c.cat.object_name(c.embedding[x.index]);
  out << "\n";
  return ok;
}

inline void print_cd(const CDAdjointReport& r, const VCat& a, std::ostream& out) {
  const auto& q = a.quantale();
  out << "sup preserves weighted limits: " << (r.cd_adjoint ? "yes" : "no");
  if (r.failure) {
    const auto& f = *r.failure;
    const auto& d = r.presheaves.cat;
    switch (f.kind) {
      case PreservationFailure::Kind::top: out << " (top not preserved)"; break;
      case PreservationFailure::Kind::meet:
        out << " (meet of " << tuple({d.object_name(f.phi1), d.object_name(f.phi2)}) << " not preserved)";
        break;
      case PreservationFailure::Kind::cotensor:
        out << " (cotensor " << q.token(f.v) << " |> " << d.object_name(f.phi1) << " not preserved)";
        break;
    }
  }
  out << "\nleft adjoint verified: " << (r.adjoint_verified ? "yes" : "no") << "\n";
}

inline int cmd_check(Session& s, const Options& opt, std::ostream& out) {
  if (opt.what == "cocomplete") {
    auto a = s.category();
    auto r = check_cocomplete(a);
    out << "cocomplete: " << (r.cocomplete ? "yes" : "no") << (r.cocomplete ? "" : " (" + r.missing_colimit + ")") << "\n";
    out << "complete: " << (r.complete ? "yes" : "no") << (r.complete ? "" : " (" + r.missing_limit + ")") << "\n";
    if (r.structure)
      if (auto bad = r.structure->law_violation()) {
        out << "action law violated: " << *bad << "\n";
        return fails;
      }
    return r.cocomplete ? ok : fails;
  }
  if (opt.what == "cd") {
    auto a = s.category();
    auto c = check_cocomplete(a);
    if (!c.cocomplete) {
      out << "FAIL not cocomplete (" << c.missing_colimit << ")\n";
      return fails;
    }
    auto r = check_cd(a, opt.cap);
    print_cd(r, *a, out);
    const bool pass = r.cd_adjoint && r.adjoint_verified;
    out << (pass ? "PASS" : "FAIL") << " " << a->name() << " is completely distributive\n";
    return pass ? ok : fails;
  }
  auto st = s.structure();
  auto r = check_cd_law(st);
  const auto& q = st.quantale();
  auto nm = [&](ObjId x) { return st.base().object_name(x); };
  out << "lattice distributive: " << (r.lattice_cd ? "yes" : "no");
  if (r.lattice_witness) {
    auto [x, y, z] = *r.lattice_witness;
    out << " witness " << tuple({nm(x), nm(y), nm(z)});
  }
  out << "\ncotensors preserve binary joins: " << (r.cotensor_joins ? "yes" : "no");
  if (r.cotensor_witness) {
    auto [v, a1, a2] = *r.cotensor_witness;
    out << " witness " << tuple({q.token(v), nm(a1), nm(a2)});
  }
  out << "\n" << (r.cd_law ? "PASS" : "FAIL") << " choice-function law on " << st.base().name() << "\n";
  return r.cd_law ? ok : fails;
}

inline void print_eval(const CocompleteStructure& st, const LawEvaluation& e, std::ostream& out) {
  auto nm = [&](ObjId x) { return st.base().object_name(x); };
  out << "lhs = " << nm(e.lhs) << "\nrhs_choice = " << nm(e.rhs_choice) << "\nrhs_constructive = "
      << nm(e.rhs_constructive) << "\nholds_choice: " << (e.holds_choice ? "yes" : "no")
      << "\nholds_constructive: " << (e.holds_constructive ? "yes" : "no")
      << "\nrhs_choice <= lhs: " << (e.trivial_inequality ? "yes" : "no") << "\n";
}

inline int cmd_eval_law(Session& s, const Options& opt, std::ostream& out) {
  const auto* doc = s.first<InstanceDoc>();
  if (doc) {
    auto st = cocomplete_structure(s.category_named(doc->on));
    auto e = eval_law_instance(st, to_instance(*doc, st.base()), opt.cap);
    out << "instance " << doc->name << "\n";
    print_eval(st, e, out);
    return e.holds_choice ? ok : fails;
  }
  if (opt.sample == 0) throw Error(ErrorKind::InvalidInput, "eval-law needs an instance file or --sample N");
  auto st = s.structure();
  auto insts = sample_law_instances(st, opt.sample, opt.seed);
  std::size_t held = 0;
  std::optional<std::size_t> first_bad;
  for (std::size_t i = 0; i < insts.size(); ++i) {
    auto e = eval_law_instance(st, insts[i], opt.cap);
    if (!e.trivial_inequality) throw Error(ErrorKind::InvalidInput, "internal: rhs_choice exceeds lhs");
    if (e.holds_choice)
      ++held;
    else if (!first_bad)
      first_bad = i;
  }
  out << held << " of " << insts.size() << " sampled instances satisfy the law (seed " << opt.seed << ")\n";
  if (!first_bad) return ok;
  out << "first counterexample:\n" << print(to_document("sample" + std::to_string(*first_bad), insts[*first_bad], st.base()));
  print_eval(st, eval_law_instance(st, insts[*first_bad], opt.cap), out);
  return fails;
}

inline int cmd_classical(Session& s, const Options& opt, std::ostream& out) {
  Lattice l = (opt.self || !opt.cat.empty() || s.first<VCatDoc>()) ? s.structure().lattice() : s.quantale()->lattice();
  ClassicalOptions co;
  co.cap = opt.cap;
  auto r = classical_cd_check(l, co);
  out << "distributive: " << (r.distributive ? "yes" : "no");
  if (r.distributivity_witness) {
    auto [x, y, z] = *r.distributivity_witness;
    out << " witness " << tuple({l.token(x), l.token(y), l.token(z)});
  }
  out << "\nchoice law over " << r.families << " families: " << (r.choice_law ? "yes" : "no");
  if (r.family_witness) {
    out << " witness";
    for (const auto& sub : *r.family_witness) {
      std::vector<std::string> toks;
      for (auto i : sub) toks.push_back(l.token(i));
      out << " {" << qcat::detail::join_tokens(toks) << "}";
    }
  }
  out << "\n" << (r.choice_law ? "PASS" : "FAIL") << " " << l.name() << " is completely distributive\n";
  return r.choice_law ? ok : fails;
}

inline int cmd_free_cd(Session& s, const Options& opt, std::ostream& out) {
  auto q = s.quantale();
  auto f = free_cd(q, opt.n, opt.cap);
  const auto& d = f.result;
  out << "free completely distributive object on " << opt.n << " generators over " << q->name() << ": "
      << d.objects.size() << " objects\n";
  for (ObjId p : d.cat.objects()) out << d.cat.object_name(p) << ": " << render_values(*d.base, d.objects[p.index]) << "\n";
  auto r = check_cd(std::make_shared<const VCat>(d.cat), opt.cap);
  const bool pass = r.cd_adjoint && r.adjoint_verified;
  out << (pass ? "PASS" : "FAIL") << " completely distributive\n";
  return pass ? ok : fails;
}

inline int cmd_replay(std::ostream& out) {
  auto r = replay_counterexamples();
  for (const auto& c : r.checks) {
    out << (c.pass ? "PASS " : "FAIL ") << c.name;
    if (!c.pass) out << ": expected '" << c.expected << "' got '" << c.actual << "'";
    out << "\n";
  }
  return r.all_pass() ? ok : fails;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Finite quantales and quantale-enriched categories", "qcat"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  auto common = [&](CLI::App* c) {
    c->add_option("--builtin", opt.builtin, "Builtin quantale")->check(CLI::IsMember(builtin_names()));
    c->add_flag("--self", opt.self, "Use the quantale as a category over itself");
    c->add_option("--cap", opt.cap, "Enumeration size cap")->check(CLI::PositiveNumber);
    c->add_option("--sample", opt.sample, "Number of random instances");
    c->add_option("--seed", opt.seed, "Random seed");
    c->add_flag("--skeletalize", opt.skeletalize, "Quotient a non-skeletal category first");
    c->add_option("--cat", opt.cat, "Category to use when several are loaded");
    c->add_option("files", opt.files, "Input files")->check(CLI::ExistingFile);
    return c;
  };
  std::map<std::string, CLI::App*> sub;
  auto add = [&](const std::string& name, const std::string& help) { return sub[name] = app.add_subcommand(name, help); };

  add("validate", "Parse and validate input files or a builtin");
  add("tables", "Print tensor and residuation tables");
  add("assumptions", "Check the distributivity assumption on a quantale");
  add("enumerate-quantales", "Enumerate quantale structures on a lattice")
      ->add_option("--chain", opt.chain, "Use the n-element chain");
  add("order", "Print the induced order of a category");
  add("presheaves", "Enumerate presheaves")->add_flag("--up", opt.up, "Copresheaves instead");
  add("downclose", "Down-closure of a subset file");
  auto* y = add("yoneda", "Representable presheaves");
  y->add_option("--object", opt.object, "Single object");
  y->add_flag("--up", opt.up, "Representable copresheaves");
  add("isbell", "Isbell completion");
  add("free-cd", "Free completely distributive object on N generators")->add_option("N", opt.n, "Generators")->required();
  add("check", "Check cocomplete, cd or cd-law")
      ->add_option("property", opt.what, "cocomplete | cd | cd-law")
      ->required()
      ->check(CLI::IsMember({"cocomplete", "cd", "cd-law"}));
  add("eval-law", "Evaluate the choice-function law");
  add("classical-cd", "Classical complete distributivity check of a lattice");
  add("replay", "Recompute the worked tables and counterexample");
  for (auto& [name, c] : sub) common(c);  // after the subcommand positionals, so `files` comes last

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage;
  }

  try {
    detail::Session s(opt, out);
    auto chosen = [&](const char* n) { return sub.at(n)->parsed(); };
    if (chosen("validate")) return detail::cmd_validate(s, opt, out);
    if (chosen("tables")) return detail::cmd_tables(s, out);
    if (chosen("assumptions")) return detail::cmd_assumptions(s, out);
    if (chosen("enumerate-quantales")) return detail::cmd_enumerate(s, opt, out);
    if (chosen("order")) return detail::cmd_order(s, out);
    if (chosen("presheaves")) return detail::cmd_presheaves(s, opt, out);
    if (chosen("downclose")) return detail::cmd_downclose(s, out);
    if (chosen("yoneda")) return detail::cmd_yoneda(s, opt, out);
    if (chosen("isbell")) return detail::cmd_isbell(s, opt, out);
    if (chosen("free-cd")) return detail::cmd_free_cd(s, opt, out);
    if (chosen("check")) return detail::cmd_check(s, opt, out);
    if (chosen("eval-law")) return detail::cmd_eval_law(s, opt, out);
    if (chosen("classical-cd")) return detail::cmd_classical(s, opt, out);
    return detail::cmd_replay(out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    if (!e.witness().empty()) err << "witness: " << qcat::detail::join_tokens(e.witness()) << "\n";
    switch (e.kind()) {
      case ErrorKind::SizeLimitExceeded: return too_large;
      case ErrorKind::NotAPoset:
      case ErrorKind::NotALattice:
      case ErrorKind::TensorNotAssociative:
      case ErrorKind::TensorNotCommutative:
      case ErrorKind::UnitLaw:
      case ErrorKind::TensorNotJoinPreserving:
      case ErrorKind::ReflexivityViolation:
      case ErrorKind::TransitivityViolation:
      case ErrorKind::NotCocomplete: return fails;
      default: return usage;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  }
}

}  // namespace qcat::cli
