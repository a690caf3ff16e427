#include "supamal/cli.hpp"

#include <filesystem>
#include <map>
#include <optional>

#include "CLI11.hpp"
#include "supamal/amalgam.hpp"
#include "supamal/completion.hpp"
#include "supamal/enumerate.hpp"
#include "supamal/extension.hpp"
#include "supamal/fraisse.hpp"
#include "supamal/freealg.hpp"
#include "supamal/io.hpp"
#include "supamal/logic.hpp"

namespace supamal {

using json = nlohmann::ordered_json;

namespace {

std::string witness_names(const OrderedStructure& s, const std::vector<Elem>& w) {
  std::string out;
  for (Elem e : w)
    if (e >= 0 && e < s.size()) out += (out.empty() ? "" : ", ") + s.names[static_cast<std::size_t>(e)];
  return out.empty() ? out : " [" + out + "]";
}

void emit(std::ostream& out, const std::string& path, const json& j) {
  if (path.empty() || path == "-") out << dump(j);
  else write_text(path, dump(j));
}

json embedding_json(const OrderedStructure& src, const OrderedStructure& tgt, const Embedding& e) {
  json j = json::object();
  for (int x = 0; x < src.size(); ++x) j[src.names[static_cast<std::size_t>(x)]] = tgt.names[static_cast<std::size_t>(e(x))];
  return j;
}

json assignment_json(const std::vector<std::string>& vars, const OrderedStructure& m, const Tuple& a) {
  json j = json::object();
  for (std::size_t i = 0; i < vars.size() && i < a.size(); ++i) j[vars[i]] = m.names[static_cast<std::size_t>(a[i])];
  return j;
}

StructureKind parse_kind(const std::string& s) {
  auto k = kind_from_string(s);
  if (!k) throw InputError("unknown kind '" + s + "'");
  return *k;
}

struct Options {
  int threads = 1;
  std::uint64_t seed = 0;

  std::string file, file_b, file_c, output, certificate, countermodel, out_dir, root;
  std::string property, op_name, method = "macneille", kind, s_text, t_text, sentence;
  std::vector<std::string> ops;
  bool extremal = false, expanded = false, prefer_union = false, count_only = false;
  int gens = 1, steps = 1, cap = 2, size = 1, max_size = 5, brute = 0;
};

int cmd_check(const Options& o, std::ostream& out) {
  OrderedStructure s = load_structure(o.file, false);
  auto report = validate(s);
  for (const auto& v : report.violations) out << "invalid: " << v.what << witness_names(s, v.witnesses) << "\n";
  if (!report.ok()) return kInvalid;
  bool ok = true;
  for (const auto& p : s.partial_ops) {
    auto v = check_necessary(p.property, s, p.op);
    out << "partial operation " << p.name << " (" << p.property.to_string() << "): "
        << (v ? std::string("extension condition holds") : "extension condition fails: " + v.reason + witness_names(s, v.witnesses))
        << "\n";
    ok = ok && v.ok;
  }
  for (const auto& c : s.comparabilities) {
    const auto* lo = s.partial_op(c.lower);
    const auto* hi = s.partial_op(c.upper);
    if (!lo || !hi) continue;
    for (const auto& [t, v] : lo->op.values) {
      auto it = hi->op.values.find(t);
      if (it != hi->op.values.end() && !s.leq(v, it->second)) {
        out << "comparability " << c.lower << " <= " << c.upper << " fails" << witness_names(s, t) << "\n";
        ok = false;
      }
    }
  }
  out << (ok ? "ok: " : "not extendable: ") << to_string(s.kind) << ", " << s.size() << " element(s), " << s.ops.size()
      << " operation(s), " << s.partial_ops.size() << " partial operation(s)\n";
  return ok ? kOk : kInvalid;
}

int cmd_complete(const Options& o, std::ostream& out) {
  OrderedStructure s = load_structure(o.file);
  Completion c;
  if (o.method == "macneille") c = macneille_completion(s);
  else if (o.method == "birkhoff") c = birkhoff_embedding(s);
  else throw InputError("unknown completion method '" + o.method + "'");
  json j = to_json(c.lattice);
  j["embedding"] = embedding_json(s, c.lattice, c.embedding);
  emit(out, o.output, j);
  return kOk;
}

int cmd_extend(const Options& o, std::ostream& out, std::ostream& err) {
  OrderedStructure s = load_structure(o.file);
  std::vector<NamedPartialOp> chosen;
  for (auto p : s.partial_ops) {
    if (!o.op_name.empty() && p.name != o.op_name) continue;
    if (!o.property.empty()) p.property = PropertySpec::parse(o.property);
    chosen.push_back(std::move(p));
  }
  if (chosen.empty()) throw InputError(o.op_name.empty() ? "no partial operations to extend" : "no partial operation named " + o.op_name);
  for (const auto& p : chosen) {
    auto v = check_necessary(p.property, s, p.op);
    if (!v) {
      err << "partial operation " << p.name << " cannot be extended: " << v.reason << witness_names(s, v.witnesses) << "\n";
      return kInvalid;
    }
  }
  std::vector<Comparability> comps;
  for (const auto& c : s.comparabilities) {
    auto in = [&](const std::string& n) {
      return std::any_of(chosen.begin(), chosen.end(), [&](const NamedPartialOp& p) { return p.name == n; });
    };
    if (in(c.lower) && in(c.upper)) comps.push_back(c);
  }
  std::vector<Operation> result;
  if (comps.empty()) {
    for (const auto& p : chosen) result.push_back({p.name, p.property, extend(p.property, s, p.op, o.extremal)});
  } else {
    ComparabilitySpec spec;
    std::vector<std::pair<Elem, Elem>> order;
    for (const auto& p : chosen) {
      if (!(p.property == chosen.front().property))
        throw InputError("comparable operations must share one property");
      spec.names.push_back(p.name);
      spec.ops.push_back(p.op);
    }
    auto idx = [&](const std::string& n) {
      return static_cast<Elem>(std::find(spec.names.begin(), spec.names.end(), n) - spec.names.begin());
    };
    for (const auto& c : comps) order.emplace_back(idx(c.lower), idx(c.upper));
    spec.order = FinitePoset::from_pairs(static_cast<int>(spec.names.size()), order);
    for (auto& [name, table] : extend_family(chosen.front().property, s, spec))
      result.push_back({name, chosen.front().property, std::move(table)});
  }
  for (auto& op : result) {
    std::erase_if(s.partial_ops, [&](const NamedPartialOp& p) { return p.name == op.name; });
    s.set_op(std::move(op));
  }
  emit(out, o.output, to_json(s));
  return kOk;
}

int cmd_amalgamate(const Options& o, std::ostream& out) {
  AmalgamationInstance inst{load_structure(o.file), load_structure(o.file_b), load_structure(o.file_c)};
  SuperamalgamResult r;
  if (o.expanded) {
    if (!o.kind.empty() && parse_kind(o.kind) != inst.a.kind)
      throw InputError("--kind disagrees with the kind of the input structures");
    r = amalgamate_expanded(inst, {.prefer_union = o.prefer_union});
  } else {
    r = amalgamate(inst, o.kind.empty() ? inst.a.kind : parse_kind(o.kind));
  }
  auto v = verify_superamalgam(r);
  if (!v) throw Error("amalgam failed verification: " + v.reason);
  json cert;
  cert["embed_a"] = embedding_json(r.instance.a, r.d, r.embed_a);
  cert["embed_b"] = embedding_json(r.instance.b, r.d, r.embed_b);
  json ips = json::array();
  for (const auto& ip : r.interpolants) {
    const auto& n = r.d.names;
    const std::string a = n[static_cast<std::size_t>(ip.a)], b = n[static_cast<std::size_t>(ip.b)], c = n[static_cast<std::size_t>(ip.c)];
    ips.push_back(ip.a_below_b ? json{{"pair", {a, b}}, {"relation", a + " <= " + b}, {"interpolant", c}}
                               : json{{"pair", {a, b}}, {"relation", b + " <= " + a}, {"interpolant", c}});
  }
  cert["interpolants"] = ips;
  std::string output = o.output.empty() ? "D.json" : o.output;
  std::string certificate = o.certificate;
  if (certificate.empty()) {
    std::filesystem::path p(output);
    certificate = (p.parent_path() / (p.stem().string() + ".interpolants.json")).string();
  }
  write_text(output, dump(to_json(r.d)));
  write_text(certificate, dump(cert));
  out << "amalgam: " << r.d.size() << " element(s), " << (r.completed ? "completed" : "union of A and B") << ", "
      << r.interpolants.size() << " interpolant(s)\n";
  out << "wrote " << output << " and " << certificate << "\n";
  return kOk;
}

int cmd_free(const Options& o, std::ostream& out) {
  FreeAlgebra fa = free_algebra(o.gens);
  json j = to_json(fa.algebra);
  json g = json::object();
  for (std::size_t i = 0; i < fa.generators.size(); ++i)
    g[fa.generator_names[i]] = fa.algebra.names[static_cast<std::size_t>(fa.generators[i])];
  j["generators"] = g;
  emit(out, o.output, j);
  return kOk;
}

int cmd_eq(const Options& o, std::ostream& out) {
  std::vector<std::string> gens;
  SLCTerm s = SLCTerm::parse(o.s_text, gens);
  SLCTerm t = SLCTerm::parse(o.t_text, gens);
  const auto ns = normalize(s), nt = normalize(t);
  out << "normal forms: " << ns.to_string(gens) << " | " << nt.to_string(gens) << "\n";
  if (ns == nt) {
    out << "equal\n";
    return kOk;
  }
  out << "distinct\n";
  auto cm = separating_model(s, t, static_cast<int>(gens.size()), o.max_size);
  if (!cm) {
    out << "no separating model up to size " << o.max_size << "\n";
    return kInvalid;
  }
  json j = to_json(cm->model);
  j["assignment"] = assignment_json(gens, cm->model, cm->assignment);
  const auto& k = cm->model.op("K")->table;
  auto join = [&](Elem a, Elem b) { return cm->model.join(a, b); };
  auto kf = [&](Elem a) { return k[static_cast<std::size_t>(a)]; };
  j["values"] = {cm->model.names[static_cast<std::size_t>(s.evaluate(cm->assignment, join, kf))],
                 cm->model.names[static_cast<std::size_t>(t.evaluate(cm->assignment, join, kf))]};
  if (o.countermodel.empty()) out << dump(j);
  else {
    write_text(o.countermodel, dump(j));
    out << "countermodel of size " << cm->model.size() << " written to " << o.countermodel << "\n";
  }
  return kInvalid;
}

std::vector<std::pair<std::string, PropertySpec>> op_decls(const Options& o) {
  TheoryProfile p;
  for (const auto& d : o.ops) p.add_op(d);
  if (!o.property.empty()) {
    if (p.op_index("K") >= 0) throw InputError("--property names the operation K, which --ops already declares");
    p.ops.emplace_back("K", PropertySpec::parse(o.property));
  }
  return p.ops;
}

int cmd_fraisse(const Options& o, std::ostream& out) {
  ClassSpec spec;
  spec.kind = parse_kind(o.kind);
  spec.ops = op_decls(o);
  if (!o.root.empty()) spec.root = load_structure(o.root);
  if (o.steps < 0 || o.cap < 0) throw InputError("--steps and --cap must be non-negative");
  FraisseChain chain = build_chain(spec, o.steps, o.cap);
  if (!o.out_dir.empty()) std::filesystem::create_directories(o.out_dir);
  for (std::size_t i = 0; i < chain.stages.size(); ++i) {
    out << "stage " << i << ": " << chain.stages[i].size() << " element(s)";
    if (i > 0) out << ", " << chain.realized[i - 1] << " task(s) dequeued, " << chain.amalgamated[i - 1] << " amalgamation(s)";
    out << "\n";
    if (!o.out_dir.empty()) {
      json j = to_json(chain.stages[i]);
      if (i > 0) j["inclusion"] = embedding_json(chain.stages[i - 1], chain.stages[i], chain.inclusions[i - 1]);
      write_text((std::filesystem::path(o.out_dir) / ("stage_" + std::to_string(i) + ".json")).string(), dump(j));
    }
  }
  out << "class pairs up to size " << o.cap << ": " << chain.pairs.size() << "\n";
  out << "residual queue: " << chain.residual.size() << " task(s) against stage " << chain.stages.size() - 1 << "\n";
  if (!o.out_dir.empty()) {
    json q = json::array();
    const auto& last = chain.stages.back();
    for (const auto& t : chain.residual) {
      const auto& p = chain.pairs[static_cast<std::size_t>(t.pair)];
      json m = json::object();
      for (int x = 0; x < p.a.size(); ++x)
        m[p.a.names[static_cast<std::size_t>(x)]] = last.names[static_cast<std::size_t>(t.map[static_cast<std::size_t>(x)])];
      q.push_back({{"a", to_json(p.a)}, {"b", to_json(p.b)}, {"map", m}});
    }
    write_text((std::filesystem::path(o.out_dir) / "queue.json").string(), dump(q));
  }
  return kOk;
}

int cmd_decide(const Options& o, std::ostream& out) {
  TheoryProfile profile;
  profile.kind = parse_kind(o.kind);
  for (const auto& d : o.ops) profile.add_op(d);
  Sentence s = parse_sentence(o.sentence, profile);
  DecisionOutcome d = o.brute > 0 ? brute_force_decide(profile, s, o.brute) : decide_universal(profile, s);
  out << to_string(d.verdict) << "\n";
  out << "k = " << d.k << ", models up to size " << d.size_bound << ", " << d.configurations << " configuration(s) searched\n";
  if (d.verdict != Verdict3::invalid) return kOk;
  json j = to_json(*d.countermodel);
  j["assignment"] = assignment_json(s.vars, *d.countermodel, d.assignment);
  if (o.countermodel.empty()) out << dump(j);
  else {
    write_text(o.countermodel, dump(j));
    out << "countermodel of size " << d.countermodel->size() << " written to " << o.countermodel << "\n";
  }
  return kInvalid;
}

int cmd_enumerate(const Options& o, std::ostream& out) {
  const auto& all = enumerate_structures(parse_kind(o.kind), o.size);
  if (o.count_only) {
    out << all.size() << "\n";
    return kOk;
  }
  json arr = json::array();
  for (const auto& s : all) arr.push_back(to_json(s));
  emit(out, o.output, arr);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite ordered structures with added operations: extension, amalgamation, free algebras, decisions.",
               "supamal"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--threads", o.threads, "Upper bound on worker threads (work currently runs on one)")->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "Seed for sampled test generation; never affects verdicts");

  auto* check = app.add_subcommand("check", "Validate a structure file and its partial operations");
  check->add_option("file", o.file)->required();

  auto* complete = app.add_subcommand("complete", "Complete a structure to a lattice");
  complete->add_option("file", o.file)->required();
  complete->add_option("--method", o.method, "macneille or birkhoff")->capture_default_str();
  complete->add_option("-o,--output", o.output);

  auto* ext = app.add_subcommand("extend", "Extend the partial operations of a structure");
  ext->add_option("file", o.file)->required();
  ext->add_option("--property", o.property, "Override the declared property");
  ext->add_option("--op", o.op_name, "Extend only this partial operation");
  ext->add_flag("--extremal", o.extremal, "Largest extension for A1e and A2e");
  ext->add_option("-o,--output", o.output);

  auto* am = app.add_subcommand("amalgamate", "Amalgamate A and B over C");
  am->add_option("a", o.file)->required();
  am->add_option("b", o.file_b)->required();
  am->add_option("c", o.file_c)->required();
  am->add_option("--kind", o.kind);
  am->add_flag("--expanded", o.expanded, "Carry the added operations along");
  am->add_flag("--prefer-union", o.prefer_union, "Posets: skip completion when the union suffices");
  am->add_option("-o,--output", o.output, "Amalgam file (default D.json)");
  am->add_option("--certificate", o.certificate, "Interpolant file (default <output stem>.interpolants.json)");

  auto* fr = app.add_subcommand("free", "Free join-semilattice with closure operation");
  fr->add_option("--gens", o.gens)->required();
  fr->add_option("-o,--output", o.output);

  auto* eq = app.add_subcommand("eq", "Word problem for join-semilattices with closure");
  eq->add_option("s", o.s_text)->required();
  eq->add_option("t", o.t_text)->required();
  eq->add_option("--max-size", o.max_size, "Largest countermodel searched")->capture_default_str();
  eq->add_option("--countermodel", o.countermodel);

  auto* fa = app.add_subcommand("fraisse", "Build finite stages of a Fraisse chain");
  fa->add_option("--kind", o.kind)->required();
  fa->add_option("--property", o.property, "Property of a single operation named K");
  fa->add_option("--ops", o.ops, "NAME:PROPERTY, repeatable")->expected(1)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  fa->add_option("--steps", o.steps)->capture_default_str();
  fa->add_option("--cap", o.cap, "Largest B in the extension tasks")->capture_default_str();
  fa->add_option("--root", o.root, "Structure file of the fixed root");
  fa->add_option("--out-dir", o.out_dir, "Directory for stage files and the queue report");

  auto* de = app.add_subcommand("decide", "Decide a universal sentence");
  de->add_option("--theory", o.kind)->required();
  de->add_option("--ops", o.ops, "NAME:PROPERTY, repeatable")->expected(1)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  de->add_option("sentence", o.sentence)->required();
  de->add_option("--brute", o.brute, "Search all expanded models up to this size instead");
  de->add_option("--countermodel", o.countermodel);

  auto* en = app.add_subcommand("enumerate", "List structures of a kind up to isomorphism");
  en->add_option("--kind", o.kind)->required();
  en->add_option("--size", o.size)->required();
  en->add_flag("--count", o.count_only);
  en->add_option("-o,--output", o.output);

  std::vector<std::string> argv_store{"supamal"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (check->parsed()) return cmd_check(o, out);
    if (complete->parsed()) return cmd_complete(o, out);
    if (ext->parsed()) return cmd_extend(o, out, err);
    if (am->parsed()) return cmd_amalgamate(o, out);
    if (fr->parsed()) return cmd_free(o, out);
    if (eq->parsed()) return cmd_eq(o, out);
    if (fa->parsed()) return cmd_fraisse(o, out);
    if (de->parsed()) return cmd_decide(o, out);
    if (en->parsed()) return cmd_enumerate(o, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const BoundExceeded& e) {
    err << "bound exceeded: " << e.what() << "\n";
    return kBound;
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << "\n";
    return kInvalid;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kUsage;
}

}  // namespace supamal
