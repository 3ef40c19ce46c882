// cartlog: command-line entry point wiring the parsers, the proof kernel,
// the word-problem reducers, the model evaluator and the copresheaf lab into
// reproducible batch runs.
//
// Exit codes: 0 proved/true/ok, 1 refuted/false, 2 unknown/budget,
// 3 and above usage or parse errors.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cartlog/cartlog.hpp"

namespace {

using namespace cartlog;

constexpr int kExitOk = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitUsage = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// Artifacts are written whole, then renamed into place.
void write_atomically(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot move " + tmp + " into place");
}

// Inline presentations start with the keyword; anything else is a path.
MonoidPresentation presentation_arg(const std::string& arg) {
  std::string text = arg.rfind("monoid", 0) == 0 ? arg : slurp(arg);
  if (text.find(';') == std::string::npos) text += ";";
  return parse_presentation(text);
}

Word word_arg(const MonoidPresentation& p, const std::string& text) {
  auto w = parse_word(p, text);
  if (!w) throw std::runtime_error("word '" + text + "' uses an undeclared generator");
  return *w;
}

struct BudgetFlags {
  int depth = 12;
  int max_sequents = 20000;
  std::uint64_t seed = 0;

  BudgetFlags() {
    if (const char* env = std::getenv("CARTLOG_BUDGET_DEPTH")) depth = std::atoi(env);
  }
  void attach(CLI::App* cmd) {
    cmd->add_option("--depth", depth, "proof search depth budget");
    cmd->add_option("--max-sequents", max_sequents, "proof search sequent budget");
    cmd->add_option("--seed", seed, "seed for generated randomness");
  }
  ProofBudget budget() const { return ProofBudget{depth, max_sequents, seed}; }
};

Json report_json(const std::string& verdict, const std::vector<std::string>& artifacts) {
  Json j;
  j["verdict"] = verdict;
  j["artifacts"] = artifacts;
  return j;
}

// Parse "[theta] : {x. phi} -> {y. psi}" against a theory; certify it.
std::optional<SynMorphism> morphism_arg(const Theory& th, const std::string& text,
                                        const ProofBudget& budget) {
  auto lb = text.find('[');
  auto rb = text.find(']');
  auto arrow = text.find("->", rb);
  auto colon = text.find(':', rb);
  if (lb == std::string::npos || rb == std::string::npos || arrow == std::string::npos ||
      colon == std::string::npos)
    throw std::runtime_error("morphism must look like [theta] : {x. phi} -> {y. psi}");
  std::string dom_text = text.substr(colon + 1, arrow - colon - 1);
  std::string cod_text = text.substr(arrow + 2);

  FormulaInContext dom_fic = parse_formula_in_context(dom_text, th.signature);
  FormulaInContext cod_fic = parse_formula_in_context(cod_text, th.signature);
  SynObject dom = make_object(th, dom_fic, budget);
  SynObject cod = make_object(th, cod_fic, budget);

  // The representative is parsed over the concatenated blocks, with names
  // drawn from the two object literals in order.
  MorphismShape s = morphism_shape(dom, cod);
  parser::Parser p(text.substr(lb + 1, rb - lb - 1));
  parser::Scope scope;
  scope.sig = &th.signature;
  {
    // Re-parse the object literals for their variable names.
    parser::Parser dp(dom_text);
    dp.expect_punct("{");
    std::size_t i = 0;
    if (!dp.peek_punct(".")) {
      do {
        std::string name = dp.expect_ident("a context variable");
        if (dp.accept_punct(":")) (void)dp.expect_ident("a sort");
        scope.vars.push_back({name, s.dom_ctx.vars[i++]});
      } while (dp.accept_punct(","));
    }
    parser::Parser cp(cod_text);
    cp.expect_punct("{");
    i = 0;
    if (!cp.peek_punct(".")) {
      do {
        std::string name = cp.expect_ident("a context variable");
        if (cp.accept_punct(":")) (void)cp.expect_ident("a sort");
        for (const auto& [n, v] : scope.vars)
          if (n == name)
            throw std::runtime_error("variable '" + name +
                                     "' is used in both contexts; rename one side");
        scope.vars.push_back({name, s.cod_ctx.vars[i++]});
      } while (cp.accept_punct(","));
    }
  }
  Formula rep = parser::parse_formula(p, scope);
  return make_morphism(th, rep, dom, cod, budget);
}

int run(int argc, char** argv) {
  CLI::App app{"cartesian-logic workbench"};
  app.require_subcommand(1);

  // ---- check
  auto* check = app.add_subcommand("check", "parse and validate a file");
  std::string check_file;
  check->add_option("file", check_file)->required();

  // ---- prove
  auto* prove = app.add_subcommand("prove", "search for a proof of a sequent");
  std::string prove_theory, prove_sequent, prove_out;
  BudgetFlags prove_budget;
  prove->add_option("theory", prove_theory)->required();
  prove->add_option("sequent", prove_sequent)->required();
  prove->add_option("--out", prove_out, "proof artifact path");
  prove_budget.attach(prove);

  // ---- check-proof
  auto* checkp = app.add_subcommand("check-proof", "run the checker on a serialized proof");
  std::string checkp_file, checkp_theory;
  checkp->add_option("file", checkp_file)->required();
  checkp->add_option("--theory", checkp_theory, "override the embedded theory");

  // ---- syncat
  auto* syncat = app.add_subcommand("syncat", "syntactic category operations");
  syncat->require_subcommand(1);
  std::string sc_theory;
  BudgetFlags sc_budget;
  auto* sc_compose = syncat->add_subcommand("compose", "compose two morphisms (g after f)");
  std::string sc_g, sc_f;
  sc_compose->add_option("--theory", sc_theory)->required();
  sc_compose->add_option("g", sc_g)->required();
  sc_compose->add_option("f", sc_f)->required();
  sc_budget.attach(sc_compose);
  auto* sc_id = syncat->add_subcommand("id", "identity morphism of an object");
  std::string sc_obj;
  sc_id->add_option("--theory", sc_theory)->required();
  sc_id->add_option("object", sc_obj)->required();
  sc_budget.attach(sc_id);
  auto* sc_leq = syncat->add_subcommand("leq", "subobject order on a shared context");
  std::string sc_phi, sc_psi;
  sc_leq->add_option("--theory", sc_theory)->required();
  sc_leq->add_option("phi", sc_phi)->required();
  sc_leq->add_option("psi", sc_psi)->required();
  sc_budget.attach(sc_leq);

  // ---- wp
  auto* wp = app.add_subcommand("wp", "word problems over presented monoids");
  wp->require_subcommand(1);
  std::string wp_pres, wp_u, wp_v;
  int wp_bound = 16;
  auto* wp_eq = wp->add_subcommand("eq", "decide replacement equivalence");
  wp_eq->add_option("presentation", wp_pres)->required();
  wp_eq->add_option("u", wp_u)->required();
  wp_eq->add_option("v", wp_v)->required();
  wp_eq->add_option("--bound", wp_bound, "maximum word length during search");
  auto* wp_table = wp->add_subcommand("table", "multiplication table of a finite quotient");
  std::string wpt_pres;
  int wpt_bound = 64;
  wp_table->add_option("presentation", wpt_pres)->required();
  wp_table->add_option("--bound", wpt_bound, "element cap");
  auto* wp_encode = wp->add_subcommand("encode", "emit the encoded theory and sequent");
  std::string wpe_pres, wpe_u, wpe_v, wpe_out_theory = "theory.ct", wpe_out_seq = "sequent.ct";
  wp_encode->add_option("presentation", wpe_pres)->required();
  wp_encode->add_option("u", wpe_u)->required();
  wp_encode->add_option("v", wpe_v)->required();
  wp_encode->add_option("--out", wpe_out_theory, "theory artifact");
  wp_encode->add_option("--sequent", wpe_out_seq, "sequent artifact");
  auto* wp_refute = wp->add_subcommand("refute", "refute an encoded sequent with a model");
  std::string wpr_pres, wpr_u, wpr_v, wpr_out = "model.ct";
  int wpr_prime = 2, wpr_bound = 64;
  wp_refute->add_option("presentation", wpr_pres)->required();
  wp_refute->add_option("u", wpr_u)->required();
  wp_refute->add_option("v", wpr_v)->required();
  wp_refute->add_option("--prime", wpr_prime, "field order");
  wp_refute->add_option("--bound", wpr_bound, "quotient element cap");
  wp_refute->add_option("--out", wpr_out, "model artifact");
  auto* wp_pipe = wp->add_subcommand("pipeline", "equivalence, proof synthesis, refutation");
  std::string wpp_pres, wpp_u, wpp_v, wpp_outdir = ".";
  int wpp_bound = 16;
  BudgetFlags wpp_budget;
  wp_pipe->add_option("presentation", wpp_pres)->required();
  wp_pipe->add_option("u", wpp_u)->required();
  wp_pipe->add_option("v", wpp_v)->required();
  wp_pipe->add_option("--bound", wpp_bound, "maximum word length during search");
  wp_pipe->add_option("--outdir", wpp_outdir, "artifact directory");
  wpp_budget.attach(wp_pipe);

  // ---- model
  auto* model = app.add_subcommand("model", "finite model evaluation");
  model->require_subcommand(1);
  auto* model_eval = model->add_subcommand("eval", "evaluate a sequent in a model");
  std::string me_model, me_sequent;
  model_eval->add_option("--model", me_model)->required();
  model_eval->add_option("--sequent", me_sequent)->required();
  auto* model_validate = model->add_subcommand("validate", "check a model against a theory");
  std::string mv_model, mv_theory;
  model_validate->add_option("--model", mv_model)->required();
  model_validate->add_option("--theory", mv_theory)->required();

  // ---- lab
  auto* lab = app.add_subcommand("lab", "finite copresheaf laboratory");
  lab->require_subcommand(1);
  auto* lab_yoneda = lab->add_subcommand("yoneda", "representable copresheaf of an object");
  std::string ly_file, ly_obj;
  lab_yoneda->add_option("file", ly_file)->required();
  lab_yoneda->add_option("--object", ly_obj)->required();
  auto* lab_factor = lab->add_subcommand("factor", "epi-mono image factorization");
  std::string lf_file, lf_nat;
  lab_factor->add_option("file", lf_file)->required();
  lab_factor->add_option("--nat", lf_nat)->required();
  auto* lab_proj = lab->add_subcommand("projectives", "the representable characterization");
  std::string lp_file;
  int lp_cap = 3;
  lab_proj->add_option("file", lp_file)->required();
  lab_proj->add_option("--cap", lp_cap, "value size cap");
  auto* lab_embed = lab->add_subcommand("embed-check", "validate a representation embedding");
  std::string le_file, le_target, le_assign;
  lab_embed->add_option("file", le_file)->required();
  lab_embed->add_option("--target", le_target, "target base (defaults to the source file)");
  lab_embed->add_option("--assign", le_assign, "c1:=image,c2:=image,... names or objects")
      ->required();

  // ---- translate
  auto* translate = app.add_subcommand("translate", "theory translations");
  translate->require_subcommand(1);
  auto* tr_verify = translate->add_subcommand("verify", "certify a translation");
  std::string tv_source, tv_target, tv_map;
  BudgetFlags tv_budget;
  tr_verify->add_option("--source", tv_source)->required();
  tr_verify->add_option("--target", tv_target)->required();
  tr_verify->add_option("--map", tv_map, "name:=name,... (defaults to same-name)");
  tv_budget.attach(tr_verify);
  auto* tr_apply = translate->add_subcommand("apply", "translate a proof");
  std::string ta_source, ta_target, ta_map, ta_proof, ta_out = "translated.proof.json";
  BudgetFlags ta_budget;
  tr_apply->add_option("--source", ta_source)->required();
  tr_apply->add_option("--target", ta_target)->required();
  tr_apply->add_option("--map", ta_map, "name:=name,... (defaults to same-name)");
  tr_apply->add_option("--proof", ta_proof)->required();
  tr_apply->add_option("--out", ta_out);
  ta_budget.attach(tr_apply);

  CLI11_PARSE(app, argc, argv);

  auto build_translation = [](const std::string& src_file, const std::string& tgt_file,
                              const std::string& map_text) {
    Translation tr;
    tr.source = parse_theory(slurp(src_file));
    tr.target = parse_theory(slurp(tgt_file));
    std::map<std::string, std::string> given;
    std::stringstream ss(map_text);
    std::string entry;
    while (std::getline(ss, entry, ',')) {
      auto pos = entry.find(":=");
      if (pos == std::string::npos) continue;
      auto trim = [](std::string s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(0, 1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
        return s;
      };
      given[trim(entry.substr(0, pos))] = trim(entry.substr(pos + 2));
    }
    auto mapped = [&](const std::string& name) {
      auto it = given.find(name);
      return it == given.end() ? name : it->second;
    };
    for (const auto& s : tr.source.signature.sorts) tr.sort_map[s.name] = mapped(s.name);
    for (const auto& f : tr.source.signature.functions) tr.fn_map[f.name] = mapped(f.name);
    for (const auto& r : tr.source.signature.relations) tr.rel_map[r.name] = mapped(r.name);
    tr.validate();
    return tr;
  };

  try {
    if (*check) {
      std::string text = slurp(check_file);
      try {
        ParsedFile f = parse_file(text);
        if (f.has_theory) {
          std::cout << "theory: " << f.theory.axioms.size() << " axioms, ";
          int certified = 0;
          for (auto s : f.theory.axiom_status)
            if (s == CartesianStatus::Certified) ++certified;
          std::cout << certified << " axioms cartesian by construction\n";
        }
        if (f.presentation)
          std::cout << "presentation: " << print_presentation(*f.presentation) << "\n";
        for (const auto& s : f.sequents)
          std::cout << "sequent: "
                    << print_sequent(s, namer_for(f.theory.signature)) << "\n";
        std::cout << "ok\n";
        return kExitOk;
      } catch (const ParseError&) {
        // fall through to the other formats
      }
      try {
        FiniteModel m = parse_model(text);
        std::cout << "model: " << m.signature.functions.size() << " tables\nok\n";
        return kExitOk;
      } catch (const ParseError&) {
      }
      LabFile lf = parse_lab_file(text);
      std::cout << "lab file: " << lf.category.n_objects() << " objects, "
                << lf.copresheaves.size() << " copresheaves, " << lf.nats.size()
                << " transformations\nok\n";
      return kExitOk;
    }

    if (*prove) {
      Theory th = parse_theory(slurp(prove_theory));
      Sequent goal = parse_sequent(slurp(prove_sequent), th.signature);
      auto p = search(th, goal, prove_budget.budget());
      if (!p) {
        std::cout << "unknown\n";
        return kExitUnknown;
      }
      std::string out = prove_out.empty() ? prove_sequent + ".proof.json" : prove_out;
      write_atomically(out, save_proof_document(th, *p));
      std::cout << "proved; artifact " << out << "\n";
      return kExitOk;
    }

    if (*checkp) {
      ProofDocument doc = load_proof_document(slurp(checkp_file));
      Theory th = checkp_theory.empty() ? doc.theory : parse_theory(slurp(checkp_theory));
      if (auto err = check_proof(th, doc.proof)) {
        std::cout << "invalid: " << err->to_string() << "\n";
        return kExitRefuted;
      }
      std::cout << "ok: " << print_sequent(doc.proof->conclusion, namer_for(th.signature))
                << "\n";
      return kExitOk;
    }

    if (*syncat) {
      Theory th = parse_theory(slurp(sc_theory));
      Namer n = namer_for(th.signature);
      ProofBudget budget = sc_budget.budget();
      if (*sc_compose) {
        auto g = morphism_arg(th, sc_g, budget);
        auto f = morphism_arg(th, sc_f, budget);
        if (!g || !f) {
          std::cout << "not_certified\n";
          return kExitUnknown;
        }
        SynMorphism gf = compose(th, *g, *f);
        std::cout << print_morphism(gf, n) << "\n";
        return kExitOk;
      }
      if (*sc_id) {
        SynObject o = make_object(th, parse_formula_in_context(sc_obj, th.signature), budget);
        std::cout << print_morphism(identity_morphism(th, o), n) << "\n";
        return kExitOk;
      }
      if (*sc_leq) {
        auto phi = parse_formula_in_context(sc_phi, th.signature);
        auto psi = parse_formula_in_context(sc_psi, th.signature);
        auto p = subobject_leq(th, phi, psi, budget);
        if (!p) {
          std::cout << "unknown\n";
          return kExitUnknown;
        }
        std::cout << "yes\n";
        return kExitOk;
      }
    }

    if (*wp) {
      if (*wp_eq) {
        MonoidPresentation p = presentation_arg(wp_pres);
        auto res = equivalent(p, word_arg(p, wp_u), word_arg(p, wp_v), wp_bound);
        if (res.verdict == WordVerdict::Equivalent) {
          std::cout << "equivalent; " << res.certificate->steps.size() << " steps\n";
          return kExitOk;
        }
        if (res.verdict == WordVerdict::Inequivalent) {
          std::cout << "inequivalent; normal forms " << p.word_text(*res.nf_left) << " vs "
                    << p.word_text(*res.nf_right) << "\n";
          return kExitRefuted;
        }
        std::cout << "unknown\n";
        return kExitUnknown;
      }
      if (*wp_table) {
        MonoidPresentation p = presentation_arg(wpt_pres);
        auto q = finite_quotient(p, wpt_bound);
        if (!q) {
          std::cout << "not_within_bound\n";
          return kExitUnknown;
        }
        std::cout << q->monoid.size() << " elements:";
        for (const auto& l : q->monoid.labels) std::cout << " " << l;
        std::cout << "\n";
        for (int a = 0; a < q->monoid.size(); ++a) {
          for (int b = 0; b < q->monoid.size(); ++b)
            std::cout << (b ? " " : "") << q->monoid.mult[a][b];
          std::cout << "\n";
        }
        return kExitOk;
      }
      if (*wp_encode) {
        MonoidPresentation p = presentation_arg(wpe_pres);
        EncodedInstance inst = encode(p, word_arg(p, wpe_u), word_arg(p, wpe_v));
        write_atomically(wpe_out_theory, print_theory(inst.theory));
        Namer n = namer_for(inst.theory.signature);
        write_atomically(wpe_out_seq, "sequent " + print_sequent(inst.sequent, n) + ";\n");
        std::cout << "wrote " << wpe_out_theory << " and " << wpe_out_seq << "\n";
        return kExitOk;
      }
      if (*wp_refute) {
        MonoidPresentation p = presentation_arg(wpr_pres);
        Word u = word_arg(p, wpr_u), v = word_arg(p, wpr_v);
        EncodedInstance inst = encode(p, u, v);
        std::optional<FiniteMonoid> m;
        std::optional<FiniteQuotient> q = finite_quotient(p, wpr_bound);
        if (q) {
          auto cu = q->class_of(u), cv = q->class_of(v);
          if (cu && cv && *cu != *cv) m = q->monoid;
        } else if (p.relations.empty() && u != v) {
          int cutoff = static_cast<int>(std::max(u.size(), v.size())) + 1;
          m = rees_quotient(p, cutoff);
        }
        if (!m) {
          std::cout << "unknown (no separating finite quotient)\n";
          return kExitUnknown;
        }
        FiniteModel model = monoid_algebra_model(p, *m, wpr_prime);
        long cap = static_cast<long>(model.carriers.at("A").size());
        bool sat = satisfies(model, inst.sequent, std::max(kDefaultTupleCap, cap));
        write_atomically(wpr_out, print_model(model));
        if (!sat) {
          std::cout << "refuted; model written to " << wpr_out << "\n";
          return kExitRefuted;
        }
        std::cout << "model does not refute the sequent\n";
        return kExitUnknown;
      }
      if (*wp_pipe) {
        MonoidPresentation p = presentation_arg(wpp_pres);
        Word u = word_arg(p, wpp_u), v = word_arg(p, wpp_v);
        EncodedInstance inst = encode(p, u, v);
        Namer n = namer_for(inst.theory.signature);
        std::string seq_path = wpp_outdir + "/encoded.ct";
        write_atomically(seq_path, print_theory(inst.theory) + "sequent " +
                                       print_sequent(inst.sequent, n) + ";\n");
        // Reports carry artifact names relative to the output directory so
        // identical invocations are byte-identical wherever they land.
        std::vector<std::string> artifacts{"encoded.ct"};

        auto res = equivalent(p, u, v, wpp_bound);
        if (res.verdict == WordVerdict::Equivalent) {
          CertifiedReduction red = certificate_to_proof(p, *res.certificate);
          std::string proof_path = wpp_outdir + "/reduction.proof.json";
          write_atomically(proof_path, save_proof_document(red.proof_theory, red.proof));
          artifacts.push_back("reduction.proof.json");
          bool ok = !check_proof(red.proof_theory, red.proof).has_value();
          Json rep = report_json(ok ? "proved" : "error", artifacts);
          rep["steps"] = res.certificate->steps.size();
          write_atomically(wpp_outdir + "/report.json", rep.dump(1) + "\n");
          std::cout << rep.dump(1) << "\n";
          return ok ? kExitOk : kExitUsage;
        }
        if (res.verdict == WordVerdict::Inequivalent) {
          std::optional<FiniteMonoid> m;
          if (auto q = finite_quotient(p, 64)) {
            auto cu = q->class_of(u), cv = q->class_of(v);
            if (cu && cv && *cu != *cv) m = q->monoid;
          }
          if (!m && p.relations.empty() && u != v)
            m = rees_quotient(p, static_cast<int>(std::max(u.size(), v.size())) + 1);
          if (m) {
            FiniteModel model = monoid_algebra_model(p, *m, 2);
            long cap = static_cast<long>(model.carriers.at("A").size());
            bool sat = satisfies(model, inst.sequent, std::max(kDefaultTupleCap, cap));
            std::string model_path = wpp_outdir + "/countermodel.ct";
            write_atomically(model_path, print_model(model));
            artifacts.push_back("countermodel.ct");
            Json rep = report_json(sat ? "error" : "refuted", artifacts);
            write_atomically(wpp_outdir + "/report.json", rep.dump(1) + "\n");
            std::cout << rep.dump(1) << "\n";
            return sat ? kExitUsage : kExitRefuted;
          }
          Json rep = report_json("refuted", artifacts);
          rep["witness"] = "distinct normal forms under a confluent system";
          write_atomically(wpp_outdir + "/report.json", rep.dump(1) + "\n");
          std::cout << rep.dump(1) << "\n";
          return kExitRefuted;
        }
        Json rep = report_json("unknown", artifacts);
        write_atomically(wpp_outdir + "/report.json", rep.dump(1) + "\n");
        std::cout << rep.dump(1) << "\n";
        return kExitUnknown;
      }
    }

    if (*model) {
      if (*model_eval) {
        FiniteModel m = parse_model(slurp(me_model));
        Sequent s = parse_sequent(slurp(me_sequent), m.signature);
        long cap = 1;
        for (const auto& [name, labels] : m.carriers)
          cap = std::max(cap, static_cast<long>(labels.size()));
        bool sat = satisfies(m, s, std::max(kDefaultTupleCap, cap * cap * cap));
        std::cout << (sat ? "true" : "false") << "\n";
        return sat ? kExitOk : kExitRefuted;
      }
      if (*model_validate) {
        FiniteModel m = parse_model(slurp(mv_model));
        Theory th = parse_theory(slurp(mv_theory));
        bool ok = is_model(m, th);
        std::cout << (ok ? "true" : "false") << "\n";
        return ok ? kExitOk : kExitRefuted;
      }
    }

    if (*lab) {
      if (*lab_yoneda) {
        LabFile f = parse_lab_file(slurp(ly_file));
        int obj = f.category.object_index(ly_obj);
        Copresheaf y = yoneda(f.category, obj);
        Json j;
        for (int d = 0; d < f.category.n_objects(); ++d)
          j["sizes"][f.category.objects[d]] = y.sizes[d];
        std::cout << j.dump(1) << "\n";
        return kExitOk;
      }
      if (*lab_factor) {
        LabFile f = parse_lab_file(slurp(lf_file));
        auto it = f.nats.find(lf_nat);
        if (it == f.nats.end()) throw std::runtime_error("unknown transformation " + lf_nat);
        auto fact = image_factorization(f.category, f.copresheaves.at(it->second.from),
                                        f.copresheaves.at(it->second.to), it->second.nat);
        Json j;
        for (int d = 0; d < f.category.n_objects(); ++d)
          j["image_sizes"][f.category.objects[d]] = fact.image.sizes[d];
        j["epi_pointwise_surjective"] = fact.epi.pointwise_surjective(fact.image);
        j["mono_pointwise_injective"] = fact.mono.pointwise_injective();
        std::cout << j.dump(1) << "\n";
        return kExitOk;
      }
      if (*lab_proj) {
        LabFile f = parse_lab_file(slurp(lp_file));
        auto report = verify_representable_characterization(f.category, lp_cap);
        Json j;
        j["cartesian_copresheaves"] = report.n_cartesian;
        j["equivalence_holds"] = report.equivalence_holds;
        Json rows = Json::array();
        for (const auto& r : report.rows) {
          Json row;
          row["sizes"] = r.copresheaf.sizes;
          row["projective"] = r.projective;
          row["retract_of_representable"] = r.retract_of_representable;
          row["representable"] = r.representable;
          rows.push_back(row);
        }
        j["rows"] = rows;
        std::cout << j.dump(1) << "\n";
        return report.equivalence_holds ? kExitOk : kExitRefuted;
      }
      if (*lab_embed) {
        LabFile f = parse_lab_file(slurp(le_file));
        LabFile target = le_target.empty() ? f : parse_lab_file(slurp(le_target));
        std::vector<Copresheaf> images(f.category.n_objects());
        std::vector<bool> seen(f.category.n_objects(), false);
        std::stringstream ss(le_assign);
        std::string entry;
        while (std::getline(ss, entry, ',')) {
          auto pos = entry.find(":=");
          if (pos == std::string::npos) throw std::runtime_error("bad --assign entry");
          auto trim = [](std::string s) {
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
              s.erase(0, 1);
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
              s.pop_back();
            return s;
          };
          std::string from = trim(entry.substr(0, pos));
          std::string to = trim(entry.substr(pos + 2));
          int idx = f.category.object_index(from);
          if (target.copresheaves.count(to))
            images[idx] = target.copresheaves.at(to);
          else
            images[idx] = yoneda(target.category, target.category.object_index(to));
          seen[idx] = true;
        }
        for (int i = 0; i < f.category.n_objects(); ++i)
          if (!seen[i])
            throw std::runtime_error("no image assigned to " + f.category.objects[i]);
        auto result = check_representation_embedding(f.category, target.category, images);
        Json j;
        j["valid"] = result.valid;
        j["reason"] = result.reason;
        if (result.witness) j["witness"] = *result.witness;
        if (result.valid) {
          Json omap;
          for (int i = 0; i < f.category.n_objects(); ++i)
            omap[f.category.objects[i]] = target.category.objects[result.induced_object_map[i]];
          j["induced_object_map"] = omap;
        }
        std::cout << j.dump(1) << "\n";
        return result.valid ? kExitOk : kExitRefuted;
      }
    }

    if (*translate) {
      if (*tr_verify) {
        Translation tr = build_translation(tv_source, tv_target, tv_map);
        auto cert = verify_translation(tr, tv_budget.budget());
        if (!cert) {
          std::cout << "unknown\n";
          return kExitUnknown;
        }
        std::cout << "certified: " << cert->axiom_proofs.size() << " axiom proofs\n";
        return kExitOk;
      }
      if (*tr_apply) {
        Translation tr = build_translation(ta_source, ta_target, ta_map);
        auto cert = verify_translation(tr, ta_budget.budget());
        if (!cert) {
          std::cout << "unknown (translation not certified)\n";
          return kExitUnknown;
        }
        ProofDocument doc = load_proof_document(slurp(ta_proof));
        Proof moved = apply_translation(tr, *cert, doc.proof);
        if (auto err = check_proof(tr.target, moved))
          throw std::runtime_error("translated proof failed the checker: " + err->to_string());
        write_atomically(ta_out, save_proof_document(tr.target, moved));
        std::cout << "translated; artifact " << ta_out << "\n";
        return kExitOk;
      }
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::cerr << "no subcommand executed\n";
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
