// cuntzkit: command-line front end.
//
// Exit codes: 0 success or witness, 1 counterexample or negative answer,
// 2 usage or parse error, 3 inconclusive (search bounds exhausted).

#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cuntzkit/io.hpp"
#include "cuntzkit/verify.hpp"

using namespace cuntzkit;
using io::Json;

namespace {

constexpr int kOk = 0, kNegative = 1, kUsage = 2, kInconclusive = 3;

struct Options {
  std::string space;
  std::string model = "lsc";
  std::string instance;
  std::uint64_t seed = 42;
  std::size_t cases = 100;
  std::optional<int> depth;
  std::vector<std::string> files;
  std::string target, cover, witness, at, eps, property, mutate = "none";
  std::optional<std::size_t> n;
  std::vector<std::string> lemma_ids;
  bool list = false;
};

int emit(const Json& j, int code) {
  std::cout << j.dump(2) << "\n";
  return code;
}

int verdict_code(VerdictKind k) {
  switch (k) {
    case VerdictKind::witness: return kOk;
    case VerdictKind::counterexample: return kNegative;
    default: return kInconclusive;
  }
}

/// --depth, else CUNTZKIT_MAX_DEPTH, else the given default.
int resolve_depth(const Options& o, int fallback) {
  if (o.depth) return *o.depth;
  if (const char* env = std::getenv("CUNTZKIT_MAX_DEPTH")) {
    try {
      int d = std::stoi(env);
      if (d >= 0) return d;
    } catch (const std::exception&) {
    }
    throw MalformedInput("CUNTZKIT_MAX_DEPTH is not a natural number");
  }
  return fallback;
}

SpacePtr load_space(const Options& o) {
  if (o.space.empty()) throw MalformedInput("this command needs -s/--space");
  return make_space(io::space_from_json(io::read_json_file(o.space)));
}

LscElement load_element(const std::string& file, const SpacePtr& sp) { return io::element_from_json(io::read_json_file(file), sp); }

std::vector<LscElement> load_operands(const Options& o, const SpacePtr& sp, std::size_t count) {
  if (o.files.size() != count)
    throw MalformedInput("expected " + std::to_string(count) + " element file(s), got " + std::to_string(o.files.size()));
  std::vector<LscElement> out;
  for (const auto& f : o.files) out.push_back(load_element(f, sp));
  return out;
}

OpenSet load_target(const Options& o, const SpacePtr& sp) {
  return o.target.empty() ? OpenSet::full(sp) : io::open_set_from_json(io::read_json_file(o.target), sp);
}

Json instance(const Options& o) {
  if (o.instance.empty()) throw MalformedInput("this command needs --instance");
  return io::read_json_file(o.instance);
}

// ---------------------------------------------------------------------------
// space, lsc

int space_validate(const Options& o) {
  std::string file = !o.files.empty() ? o.files.front() : o.space;
  if (file.empty()) throw MalformedInput("space validate needs a file");
  Space s = io::space_from_json(io::read_json_file(file));
  return emit({{"valid", true}, {"components", s.size()}, {"has_circle", s.has_circle()}, {"space", io::to_json(s)}}, kOk);
}

int lsc_verb(const std::string& verb, const Options& o) {
  auto sp = load_space(o);
  if (verb == "eval") {
    auto f = load_operands(o, sp, 1)[0];
    auto colon = o.at.find(':');
    if (colon == std::string::npos) throw MalformedInput("--at expects COMPONENT:COORD, e.g. 0:1/2");
    Point p{static_cast<std::size_t>(std::stoul(o.at.substr(0, colon))), io::rational_from_json(Json(o.at.substr(colon + 1)), "--at")};
    return emit({{"value", io::to_json(f.eval(p))}}, kOk);
  }
  if (verb == "add" || verb == "join" || verb == "meet") {
    auto xs = load_operands(o, sp, 2);
    auto r = verb == "add" ? add(xs[0], xs[1]) : verb == "join" ? join(xs[0], xs[1]) : meet(xs[0], xs[1]);
    return emit(io::to_json(r), kOk);
  }
  if (verb == "leq" || verb == "wb") {
    auto xs = load_operands(o, sp, 2);
    bool r = verb == "leq" ? leq(xs[0], xs[1]) : way_below(xs[0], xs[1]);
    return emit({{"result", r}}, r ? kOk : kNegative);
  }
  if (verb == "complement") {
    if (o.files.empty() || o.files.size() > 2) throw MalformedInput("complement expects y [z]; z defaults to the unit");
    auto y = load_element(o.files[0], sp);
    auto z = o.files.size() == 2 ? load_element(o.files[1], sp) : LscElement::unit(sp);
    return emit(io::to_json(almost_complement(y, z)), kOk);
  }
  if (verb == "ordered-sum") {
    std::vector<LscElement> terms;
    if (!o.instance.empty()) {
      Json inst = instance(o);
      LscModel m(sp);
      auto xs = io::elements_from_json(m, io::field(inst, "x", ""), "/x");
      auto ys = io::elements_from_json(m, io::field(inst, "y", ""), "/y");
      terms = ordered_sum_pairwise(xs, ys, sp);
    } else {
      for (const auto& f : o.files) terms.push_back(load_element(f, sp));
      terms = ofs_normalize(terms, sp);
    }
    Json arr = Json::array();
    for (const auto& t : terms) arr.push_back(io::to_json(t));
    return emit({{"terms", arr}, {"sum", io::to_json(sum(terms, sp))}}, kOk);
  }
  if (verb == "decompose") {
    auto y = load_operands(o, sp, 1)[0];
    auto terms = decompose_below_ne(y, o.n.value_or(y.height()));
    Json arr = Json::array();
    for (const auto& t : terms) arr.push_back(io::to_json(t));
    return emit({{"terms", arr}}, kOk);
  }
  throw MalformedInput("unknown lsc verb " + verb);
}

// ---------------------------------------------------------------------------
// chains

int chains_verb(const std::string& verb, const Options& o) {
  auto sp = load_space(o);
  const OpenSet target = load_target(o, sp);
  if (verb == "epsilon-chain") {
    if (o.eps.empty()) throw MalformedInput("epsilon-chain needs --eps");
    Rational eps = io::rational_from_json(Json(o.eps), "--eps");
    try {
      auto w = epsilon_chain(target, eps);
      return emit({{"chainable", true}, {"witness", io::to_json(w)}}, kOk);
    } catch (const NotChainable& e) {
      return emit({{"chainable", false}, {"reason", e.what()}}, kNegative);
    }
  }
  if (verb == "refine") {
    if (o.cover.empty()) throw MalformedInput("refine needs --cover");
    auto cover = io::cover_from_json(io::read_json_file(o.cover), sp);
    auto w = refine_to_almost_chain(cover, target);
    if (!w) return emit({{"almost_chainable", false}, {"reason", "a component of the target is a full circle"}}, kNegative);
    return emit({{"almost_chainable", true}, {"witness", io::to_json(*w)}}, kOk);
  }
  if (verb == "decide") {
    const bool chainable = decide_chainable(target), almost = decide_almost_chainable(target);
    const bool piecewise = o.target.empty() ? decide_piecewise_chainable(*sp) : almost;
    Json j{{"chainable", chainable}, {"almost_chainable", almost}, {"piecewise_chainable", piecewise}};
    // Evidence for full circles: no grid chain of mesh < L/2 exists.
    Json searches = Json::array();
    const int depth = resolve_depth(o, 4);
    for (std::size_t ci = 0; ci < sp->size(); ++ci) {
      if ((*sp)[ci].kind != ComponentKind::circle || !OpenSet::component(sp, ci).subset_of(target)) continue;
      auto r = bounded_chain_search(sp, ci, depth, PiecePredicate::mesh_below, (*sp)[ci].length / 2);
      searches.push_back({{"component", ci}, {"depth", depth}, {"found", r.found}, {"summary", r.summary()}});
    }
    if (!searches.empty()) j["circle_searches"] = searches;
    int code = kOk;
    if (!o.property.empty()) {
      bool v;
      if (o.property == "chainable") v = chainable;
      else if (o.property == "almost-chainable") v = almost;
      else if (o.property == "piecewise-chainable") v = piecewise;
      else throw MalformedInput("--property must be chainable, almost-chainable or piecewise-chainable");
      j["property"] = o.property;
      code = v ? kOk : kNegative;
    }
    return emit(j, code);
  }
  if (verb == "lebesgue") {
    if (o.cover.empty()) throw MalformedInput("lebesgue needs --cover");
    auto cover = io::cover_from_json(io::read_json_file(o.cover), sp);
    return emit({{"lebesgue_number", io::to_json(lebesgue_number(cover, sp))}}, kOk);
  }
  if (verb == "verify") {
    if (o.witness.empty() || o.cover.empty()) throw MalformedInput("verify needs --witness and --cover");
    Json wj = io::read_json_file(o.witness);
    if (wj.is_object() && wj.contains("witness")) wj = wj["witness"];
    auto w = io::witness_from_json(wj, sp);
    auto cover = io::cover_from_json(io::read_json_file(o.cover), sp);
    auto d = witness_defect(w, target, cover);
    Json j{{"valid", !d.has_value()}};
    if (d) j["defect"] = *d;
    return emit(j, d ? kNegative : kOk);
  }
  throw MalformedInput("unknown chains verb " + verb);
}

// ---------------------------------------------------------------------------
// check

template <class M>
int check_in(const M& m, const std::string& prop, const Options& o) {
  SearchBounds b;
  b.depth = resolve_depth(o, b.depth);
  if (prop == "refinable-sums") {
    Json inst = instance(o);
    auto x = io::elements_from_json(m, io::field(inst, "x", ""), "/x");
    auto xp = io::elements_from_json(m, io::field(inst, "x_prime", ""), "/x_prime");
    auto v = check_refinable_sums(m, x, xp, b);
    return emit(io::verdict_to_json(m, v), verdict_code(v.kind));
  }
  if (prop == "almost-ordered") {
    Json inst = instance(o);
    auto xs = io::elements_from_json(m, io::field(inst, "elements", ""), "/elements");
    auto v = check_almost_ordered_sums(m, xs, b);
    return emit(io::verdict_to_json(m, v), verdict_code(v.kind));
  }
  if (prop == "weak-chain") {
    if constexpr (std::is_same_v<M, LscModel>) {
      Json inst = instance(o);
      auto x = io::element_from_json(m, io::field(inst, "x", ""), "/x");
      auto y = io::element_from_json(m, io::field(inst, "y", ""), "/y");
      auto ys = io::elements_from_json(m, io::field(inst, "ys", ""), "/ys");
      auto v = check_weak_chainability(m, x, y, ys);
      return emit(io::verdict_to_json(m, v), verdict_code(v.kind));
    } else {
      throw MalformedInput("weak-chain is decided for --model lsc only");
    }
  }
  if (prop == "axioms") {
    if constexpr (std::is_same_v<M, FiniteCuTable>) {
      auto rs = check_axioms(m);
      Json j = io::to_json(rs);
      j["model"] = m.name();
      bool bad = std::any_of(rs.begin(), rs.end(), [](const AxiomResult& r) { return r.status == "fail"; });
      return emit(j, bad ? kNegative : kOk);
    } else {
      throw MalformedInput("axioms are checked on finite tables only: --model table:FILE");
    }
  }
  throw MalformedInput("unknown check " + prop);
}

int check_verb(const std::string& prop, const Options& o) {
  const std::string& model = o.model;
  if (model == "lsc") return check_in(LscModel(load_space(o)), prop, o);
  if (model == "z") return check_in(ZModel{}, prop, o);
  if (model == "zprime") return check_in(ZPrimeModel{}, prop, o);
  if (model == "nbar") return check_in(NBarModel{}, prop, o);
  if (model.rfind("table:", 0) == 0) return check_in(io::table_from_json(io::read_json_file(model.substr(6))), prop, o);
  throw MalformedInput("unknown model '" + model + "' (lsc, z, zprime, nbar, table:FILE)");
}

// ---------------------------------------------------------------------------
// verify

int verify_lemmas_verb(const Options& o) {
  if (o.list) {
    Json arr = Json::array();
    for (const auto& l : verify::lemmas()) arr.push_back({{"id", l.id}, {"checks", l.checks}});
    return emit({{"lemmas", arr}}, kOk);
  }
  auto mut = verify::parse_mutation(o.mutate);
  if (!mut) throw MalformedInput("unknown mutation '" + o.mutate + "'");
  auto rep = verify::verify_lemmas(o.seed, o.cases, *mut, o.lemma_ids);
  return emit(io::to_json(rep), rep.ok() ? kOk : kNegative);
}

int usage_error(const std::string& kind, const std::string& message, const std::string& path = "") {
  Json j{{"error", kind}, {"message", message}};
  if (!path.empty()) j["path"] = path;
  std::cerr << "cuntzkit: " << message << "\n";
  return emit(j, kUsage);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cuntzkit: exact Cuntz-semigroup computations over finite graphs of arcs, circles and points"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  std::function<int()> action;

  app.add_option("-s,--space", o.space, "space JSON file");
  app.add_option("--model", o.model, "lsc, z, zprime, nbar or table:FILE");
  app.add_option("--instance", o.instance, "instance JSON file");
  app.add_option("--seed", o.seed, "seed of the random generator");
  app.add_option("--cases", o.cases, "cases per lemma");
  app.add_option("--depth", o.depth, "search depth (default: CUNTZKIT_MAX_DEPTH, else built-in)");
  app.add_flag("--json", "JSON output (the default)");

  auto* space = app.add_subcommand("space", "spaces")->require_subcommand(1);
  auto* sv = space->add_subcommand("validate", "parse and validate a space");
  sv->add_option("file", o.files, "space JSON file");
  sv->callback([&] { action = [&] { return space_validate(o); }; });

  auto* lsc = app.add_subcommand("lsc", "elements of Lsc(X, N-bar)")->require_subcommand(1);
  for (const char* v : {"eval", "add", "join", "meet", "leq", "wb", "complement", "ordered-sum", "decompose"}) {
    auto* c = lsc->add_subcommand(v);
    c->add_option("files", o.files, "element JSON files");
    std::string verb = v;
    if (verb == "eval") c->add_option("--at", o.at, "point COMPONENT:COORD")->required();
    if (verb == "decompose") c->add_option("--n", o.n, "bound n with y <= n e (default: height of y)");
    c->callback([&, verb] { action = [&, verb] { return lsc_verb(verb, o); }; });
  }

  auto* chains = app.add_subcommand("chains", "chains and covers")->require_subcommand(1);
  for (const char* v : {"epsilon-chain", "refine", "decide", "lebesgue", "verify"}) {
    auto* c = chains->add_subcommand(v);
    std::string verb = v;
    c->add_option("--target", o.target, "open set JSON file (default: whole space)");
    if (verb == "epsilon-chain") c->add_option("--eps", o.eps, "mesh bound, a rational like 1/3");
    if (verb == "refine" || verb == "lebesgue" || verb == "verify") c->add_option("--cover", o.cover, "cover JSON file");
    if (verb == "verify") c->add_option("--witness", o.witness, "witness JSON file");
    if (verb == "decide") c->add_option("--property", o.property, "chainable, almost-chainable or piecewise-chainable");
    c->callback([&, verb] { action = [&, verb] { return chains_verb(verb, o); }; });
  }

  auto* check = app.add_subcommand("check", "definition checkers")->require_subcommand(1);
  for (const char* v : {"refinable-sums", "almost-ordered", "weak-chain", "axioms"}) {
    std::string prop = v;
    check->add_subcommand(v)->callback([&, prop] { action = [&, prop] { return check_verb(prop, o); }; });
  }

  auto* ver = app.add_subcommand("verify", "randomized lemma suite")->require_subcommand(1);
  auto* vl = ver->add_subcommand("lemmas", "run the lemma suite");
  vl->add_option("--lemma", o.lemma_ids, "only these lemma ids");
  vl->add_flag("--list", o.list, "list lemma ids");
  vl->add_option("--mutate", o.mutate, "inject a mutation (testing only)")->group("");
  vl->callback([&] { action = [&] { return verify_lemmas_verb(o); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return usage_error("usage", e.what());
  }
  try {
    return action();
  } catch (const ParseError& e) {
    return usage_error("parse", e.what(), e.path());
  } catch (const PreconditionViolated& e) {
    return usage_error("precondition", e.what());
  } catch (const Error& e) {
    return usage_error("invalid_input", e.what());
  } catch (const std::exception& e) {
    return usage_error("usage", e.what());
  }
}
