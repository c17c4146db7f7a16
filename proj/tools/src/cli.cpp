#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <ctime>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "lensembed/berge.hpp"
#include "lensembed/changemaker.hpp"
#include "lensembed/contfrac.hpp"
#include "lensembed/embed.hpp"
#include "lensembed/fixtures.hpp"
#include "lensembed/records.hpp"
#include "lensembed/verify.hpp"

namespace lensembed::cli {

namespace {

std::vector<std::int64_t> parse_list(const std::string& text, const std::string& what) {
  std::vector<std::int64_t> out;
  std::string token;
  std::istringstream is(text);
  while (std::getline(is, token, ',')) {
    token.erase(std::remove_if(token.begin(), token.end(),
                               [](unsigned char c) { return std::isspace(c) || c == '[' || c == ']' || c == '(' || c == ')'; }),
                token.end());
    std::size_t used = 0;
    long long x = 0;
    try {
      x = std::stoll(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (token.empty() || used != token.size()) throw UsageError("malformed " + what + " entry '" + token + "'");
    out.push_back(x);
  }
  if (out.empty()) throw UsageError("empty " + what);
  return out;
}

void check_pair(std::int64_t p, std::int64_t q) {
  if (q < 1 || q >= p) throw UsageError("need p > q >= 1");
  if (std::gcd(p, q) != 1) throw UsageError("p and q must be coprime");
}

void check_terms(const std::vector<std::int64_t>& terms) {
  for (auto a : terms)
    if (a < 2) throw UsageError("every term must be at least 2");
}

std::string list_text(const std::vector<std::int64_t>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

Json big_json(const BigInt& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(x);
  return x.str();
}

std::string iso_now() {
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void header(const Command& cmd, std::ostream& out, Json args) {
  out << Json{{"header", {{"command", cmd.name}, {"started", iso_now()}, {"args", std::move(args)}}}}.dump() << '\n';
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int run_expand(const Command& cmd, std::ostream& out) {
  auto s = hj_expand(cmd.p, cmd.q);
  if (cmd.format == Format::human) {
    out << cmd.p << "/" << cmd.q << " = " << s.to_string() << '\n';
  } else {
    out << Json{{"p", cmd.p}, {"q", cmd.q}, {"terms", s}, {"q_reverse", reverse_orbit(cmd.p, cmd.q)}}.dump() << '\n';
  }
  return ok;
}

int run_eval(const Command& cmd, std::ostream& out) {
  auto s = HJString::from_ints(cmd.terms);
  auto [p, q] = hj_eval(s);
  std::vector<std::int64_t> num, den;
  for (std::size_t j = 0; j <= s.length(); ++j) {
    num.push_back(static_cast<std::int64_t>(s.p(static_cast<std::ptrdiff_t>(j))));
    den.push_back(static_cast<std::int64_t>(s.q(static_cast<std::ptrdiff_t>(j))));
  }
  if (cmd.format == Format::human) {
    out << s.to_string() << " = " << p << "/" << q << '\n';
  } else {
    out << Json{{"terms", s}, {"p", big_json(p)}, {"q", big_json(q)}, {"numerators", num}, {"denominators", den}}.dump()
        << '\n';
  }
  return ok;
}

int run_dual(const Command& cmd, std::ostream& out) {
  auto s = HJString::from_ints(cmd.terms);
  auto d = riemenschneider_dual(s);
  auto [p, q] = hj_eval(d);
  if (cmd.format == Format::human) {
    out << s.to_string() << " -> " << d.to_string() << " = " << p << "/" << q << '\n';
  } else {
    out << Json{{"terms", s}, {"dual", d}, {"p", big_json(p)}, {"q", big_json(q)}}.dump() << '\n';
  }
  return ok;
}

int run_changemakers(const Command& cmd, std::ostream& out) {
  EnumerationOptions opts;
  if (cmd.cap > 0) opts.cap = cmd.cap;
  for (const auto& s : enumerate_changemakers(cmd.p, opts)) {
    if (cmd.format == Format::human) {
      out << s.to_string() << '\n';
    } else {
      out << Json{{"p", cmd.p}, {"sigma", s}, {"one_norm", s.one_norm()}}.dump() << '\n';
    }
  }
  return ok;
}

int run_basis(const Command& cmd, std::ostream& out) {
  auto sb = standard_basis(Changemaker(cmd.sigma));
  auto report = intersection_graph_report(sb);
  if (cmd.format == Format::human) {
    out << "sigma " << sb.sigma.to_string() << "  p = " << sb.sigma.norm() << '\n';
    for (std::size_t i = 0; i < sb.vectors.size(); ++i) {
      const auto& v = sb.vectors[i];
      out << "v" << i + 1 << " = " << list_text(v.vec.to_dense(sb.sigma.size())) << "  norm " << v.vec.norm() << "  "
          << to_string(v.cls) << '\n';
    }
    out << "claws " << report.claws.size() << "  heavy triples " << report.heavy_triples.size() << '\n';
  } else {
    Json j = sb;
    j["claws"] = report.claws;
    j["heavy_triples"] = report.heavy_triples;
    out << j.dump() << '\n';
  }
  return ok;
}

int run_recognize(const Command& cmd, std::ostream& out) {
  SearchOptions opts;
  opts.node_budget = cmd.budget;
  Changemaker sigma(cmd.sigma);
  auto v = recognize_linear(sigma, cmd.allow_sum, opts);
  if (cmd.format == Format::human) {
    out << "sigma " << sigma.to_string() << ": " << to_string(v.kind);
    if (v.kind == LinearVerdict::Kind::linear)
      out << "  p=" << v.p << " q=" << v.q << " (orbit " << v.q_orbit << ")  k=" << v.k.k << " raw " << v.k.raw
          << " orbit " << v.k.orbit.representative << "  genus " << v.genus;
    if (v.kind == LinearVerdict::Kind::sum_of_two)
      for (auto [p, q] : v.summands) out << "  (" << p << "," << q << ")";
    out << '\n';
  } else {
    Json j = v;
    j["sigma"] = sigma;
    out << j.dump() << '\n';
  }
  return ok;
}

int run_embed(const Command& cmd, std::ostream& out) {
  SearchOptions opts;
  opts.mode = cmd.all ? SearchMode::all : SearchMode::first;
  opts.node_budget = cmd.budget;
  auto found = find_embeddings(cmd.p, cmd.q, opts);
  if (cmd.format == Format::human) {
    out << "L(" << cmd.p << "," << cmd.q << "): " << found.size() << " embedding(s)\n";
    for (const auto& e : found)
      out << "  sigma " << e.sigma.to_string() << "  k=" << e.k.k << " raw " << e.k.raw << " orbit "
          << e.k.orbit.representative << "  genus " << e.genus << '\n';
  } else {
    out << Json{{"p", cmd.p}, {"q", cmd.q}, {"embeddings", found}}.dump() << '\n';
  }
  return ok;
}

int run_berge_list(const Command& cmd, std::ostream& out) {
  std::set<BergeType> filter;
  for (const auto& t : cmd.types) filter.insert(*parse_berge_type(t));
  auto entries = berge_entries(cmd.max_p, filter);
  if (cmd.format == Format::csv) out << "type,p,k,q,k_orbit\n";
  for (const auto& e : entries) {
    switch (cmd.format) {
      case Format::csv:
        out << e.type_tags() << ',' << e.p << ',' << e.k << ',' << e.q << ',' << e.k_orbit.representative << '\n';
        break;
      case Format::human:
        out << e.type_tags() << "  p=" << e.p << " k=" << e.k << " q=" << e.q << " orbit " << e.k_orbit.representative
            << '\n';
        break;
      case Format::json:
        out << Json(e).dump() << '\n';
        break;
    }
  }
  return ok;
}

VerifyOptions verify_options(const Command& cmd) {
  VerifyOptions opts;
  opts.jobs = cmd.jobs;
  opts.force = cmd.force;
  opts.node_budget = cmd.budget;
  if (cmd.cache_dir && !cmd.cache_dir->empty()) opts.cache_dir = *cmd.cache_dir;
  return opts;
}

int run_verify(const Command& cmd, std::ostream& out) {
  auto t0 = std::chrono::steady_clock::now();
  header(cmd, out, {{"min", cmd.min_p}, {"max", cmd.max_p}, {"jobs", cmd.jobs}, {"cache", cmd.cache_dir.value_or("")},
                    {"force", cmd.force}, {"budget", cmd.budget}});
  auto opts = verify_options(cmd);
  opts.on_p = [&](std::int64_t, const std::vector<RealizationRecord>& records) {
    for (const auto& r : records) {
      if (cmd.all_records || r.status != RealizationStatus::match) {
        if (cmd.format == Format::human) {
          out << to_string(r.status) << " p=" << r.p << " q=" << r.q_orbit << " embed=" << list_text(r.embedding_orbits)
              << " berge=" << list_text(r.berge_orbits) << '\n';
        } else {
          out << Json(r).dump() << '\n';
        }
      }
    }
    out.flush();
  };
  RealizationSummary s;
  verify_realization(cmd.min_p, cmd.max_p, opts, &s);
  Json summary{{"summary",
                {{"records", s.records},
                 {"match", s.matches},
                 {"mismatch", s.mismatches},
                 {"unresolved", s.unresolved},
                 {"realizable", s.realizable},
                 {"cached_p", s.cached_p},
                 {"seconds", seconds_since(t0)}}}};
  out << summary.dump() << '\n';
  if (s.mismatches) return mismatch;
  if (s.unresolved) return budget;
  return ok;
}

int run_crosscheck(const Command& cmd, std::ostream& out) {
  auto t0 = std::chrono::steady_clock::now();
  header(cmd, out, {{"max", cmd.max_p}, {"jobs", cmd.jobs}, {"budget", cmd.budget}});
  auto report = cross_check_directions(cmd.max_p, verify_options(cmd));
  for (const auto& d : report.discrepancies) out << Json{{"discrepancy", d}}.dump() << '\n';
  out << Json{{"summary",
               {{"changemakers", report.changemakers},
                {"linear", report.linear},
                {"sum_of_two", report.sum_of_two},
                {"not_linear", report.not_linear},
                {"embeddings", report.embeddings},
                {"unresolved", report.unresolved},
                {"discrepancies", report.discrepancies.size()},
                {"seconds", seconds_since(t0)}}}}
             .dump()
      << '\n';
  if (report.discrepancies.size() > report.unresolved) return mismatch;
  if (report.unresolved) return budget;
  return ok;
}

int run_genus(const Command& cmd, std::ostream& out) {
  auto t0 = std::chrono::steady_clock::now();
  header(cmd, out, {{"max", cmd.max_p}, {"jobs", cmd.jobs}, {"cache", cmd.cache_dir.value_or("")},
                    {"budget", cmd.budget}});
  RealizationSummary s;
  auto records = verify_realization(2, cmd.max_p, verify_options(cmd), &s);
  auto report = verify_genus_bound(records, cmd.max_p);
  std::size_t equalities = 0, i_minus_equalities = 0;
  for (const auto& g : report.records) {
    equalities += g.equality;
    i_minus_equalities += g.i_minus_equality;
    if (cmd.all_records || g.equality || g.exception || g.i_minus_equality || !g.holds || !g.i_minus_holds)
      out << Json(g).dump() << '\n';
  }
  for (const auto& p : report.problems) out << Json{{"problem", p}}.dump() << '\n';
  out << Json{{"summary",
               {{"pairs", report.records.size()},
                {"equalities", equalities},
                {"i_minus_equalities", i_minus_equalities},
                {"problems", report.problems.size()},
                {"unresolved", s.unresolved},
                {"seconds", seconds_since(t0)}}}}
             .dump()
      << '\n';
  if (!report.ok()) return mismatch;
  if (s.unresolved) return budget;
  return ok;
}

int run_fixtures(const Command& cmd, std::ostream& out) {
  auto t0 = std::chrono::steady_clock::now();
  header(cmd, out, {{"cap", cmd.cap}});
  auto report = fixtures_check(cmd.cap);
  std::size_t failed = 0;
  for (const auto& f : report.instances) {
    failed += !f.ok();
    if (cmd.all_records || !f.ok()) out << Json(f).dump() << '\n';
  }
  for (const auto& c : report.identities)
    if (cmd.all_records || c.failed) out << Json(c).dump() << '\n';
  out << Json{{"summary",
               {{"instances", report.instances.size()},
                {"failed_instances", failed},
                {"identities", report.identities.size()},
                {"failures", report.failures()},
                {"seconds", seconds_since(t0)}}}}
             .dump()
      << '\n';
  return report.ok() ? ok : mismatch;
}

int run_tiling(const Command& cmd, std::ostream& out) {
  out << tiling_svg(weight_expansion(cmd.terms), cmd.unit);
  return ok;
}

}  // namespace

Command parse(const std::vector<std::string>& args) {
  Command cmd;
  CLI::App app{"Lens space realization: continued fractions, changemaker embeddings, Berge types", "lensembed"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Read options from a TOML or INI file");
  std::string format = "json";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "human"}));

  std::string terms_text, sigma_text;
  auto* expand = app.add_subcommand("expand", "Hirzebruch-Jung expansion of p/q");
  expand->add_option("p", cmd.p)->required();
  expand->add_option("q", cmd.q)->required();
  auto* eval = app.add_subcommand("eval", "Evaluate a1,a2,...");
  eval->add_option("terms", terms_text)->required();
  auto* dual = app.add_subcommand("dual", "Riemenschneider dual of a1,a2,...");
  dual->add_option("terms", terms_text)->required();
  auto* cms = app.add_subcommand("changemakers", "Changemakers of norm p");
  cms->add_option("p", cmd.p)->required()->check(CLI::PositiveNumber);
  cms->add_option("--cap", cmd.cap, "Largest norm allowed");
  auto* basis = app.add_subcommand("basis", "Standard basis of a changemaker complement");
  basis->add_option("--sigma", sigma_text)->required();
  auto* recognize = app.add_subcommand("recognize", "Recognize a changemaker lattice as linear");
  recognize->add_option("--sigma", sigma_text)->required();
  recognize->add_flag("--allow-sum", cmd.allow_sum, "Accept a sum of two linear lattices");
  recognize->add_option("--budget", cmd.budget, "Node budget");
  auto* embed = app.add_subcommand("embed", "Changemaker embeddings of the linear lattice of L(p,q)");
  embed->add_option("p", cmd.p)->required();
  embed->add_option("q", cmd.q)->required();
  embed->add_flag("--all", cmd.all, "Return every embedding up to symmetry");
  embed->add_option("--budget", cmd.budget, "Node budget");
  auto* berge = app.add_subcommand("berge-list", "Berge list entries with p <= N");
  berge->add_option("--max-p", cmd.max_p)->required()->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 31));
  berge->add_option("--type", cmd.types, "Restrict to these type tags");
  bool csv = false, json = false;
  berge->add_flag("--csv", csv, "CSV output");
  berge->add_flag("--json", json, "JSON-lines output");
  auto* verify = app.add_subcommand("verify", "Compare embeddings with the Berge list over a range of p");
  verify->add_option("--min", cmd.min_p);
  verify->add_option("--max", cmd.max_p)->required();
  verify->add_flag("--all-records", cmd.all_records, "Print MATCH records as well");
  auto* cross = app.add_subcommand("crosscheck", "Compare the two realization engines");
  cross->add_option("--max", cmd.max_p)->required();
  auto* genus = app.add_subcommand("genus", "Check the genus bound over realizable pairs");
  genus->add_option("--max", cmd.max_p)->required();
  genus->add_flag("--all-records", cmd.all_records, "Print every record");
  auto* fixtures = app.add_subcommand("fixtures", "Check the family tables");
  fixtures->add_option("--cap", cmd.cap)->default_val(6);
  fixtures->add_flag("--all-records", cmd.all_records, "Print passing instances as well");
  auto* tiling = app.add_subcommand("tiling", "SVG square tiling of a weight expansion");
  tiling->add_option("multiplicities", terms_text)->required();
  tiling->add_option("--unit", cmd.unit, "Pixels per unit")->check(CLI::PositiveNumber);

  for (auto* sub : {verify, cross, genus}) {
    sub->add_option("--jobs", cmd.jobs, "Worker threads")->check(CLI::Range(1u, 1024u));
    sub->add_option("--budget", cmd.budget, "Node budget per (p,q)");
  }
  for (auto* sub : {verify, genus}) {
    sub->add_option("--cache", cmd.cache_dir, "Cache directory")->envname("LENSEMBED_CACHE");
    sub->add_flag("--force", cmd.force, "Recompute cached entries");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    cmd.help = true;
    auto subs = app.get_subcommands();
    cmd.help_text = subs.empty() ? app.help() : subs.front()->help();
    return cmd;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  cmd.name = app.get_subcommands().front()->get_name();
  cmd.format = format == "csv" ? Format::csv : format == "human" ? Format::human : Format::json;
  if (cmd.format == Format::csv && cmd.name != "berge-list") throw UsageError("csv output is only for berge-list");
  if (csv && json) throw UsageError("choose one of --csv and --json");
  if (csv) cmd.format = Format::csv;
  if (json) cmd.format = Format::json;

  if (cmd.name == "expand" || cmd.name == "embed") check_pair(cmd.p, cmd.q);
  if (cmd.name == "eval" || cmd.name == "dual") {
    cmd.terms = parse_list(terms_text, "term");
    check_terms(cmd.terms);
  }
  if (cmd.name == "tiling") {
    cmd.terms = parse_list(terms_text, "multiplicity");
    for (auto m : cmd.terms)
      if (m < 1) throw UsageError("multiplicities must be positive");
  }
  if (cmd.name == "basis" || cmd.name == "recognize") {
    cmd.sigma = parse_list(sigma_text, "sigma");
    if (!is_changemaker(cmd.sigma)) throw UsageError("not a changemaker: " + sigma_text);
  }
  if (cmd.name == "berge-list") {
    for (const auto& t : cmd.types)
      if (!parse_berge_type(t)) throw UsageError("unknown Berge type '" + t + "'");
  }
  if (cmd.name == "verify" && (cmd.min_p < 2 || cmd.min_p > cmd.max_p)) throw UsageError("need 2 <= --min <= --max");
  if (cmd.name == "crosscheck" && cmd.max_p < 1) throw UsageError("--max must be positive");
  if (cmd.name == "genus" && cmd.max_p < 5) throw UsageError("--max must be at least 5");
  if (cmd.name == "fixtures" && cmd.cap < 2) throw UsageError("--cap must be at least 2");
  if (cmd.budget == 0) throw UsageError("--budget must be positive");
  return cmd;
}

int run(const Command& cmd, std::ostream& out, std::ostream& err) {
  if (cmd.help) {
    out << cmd.help_text;
    return ok;
  }
  try {
    if (cmd.name == "expand") return run_expand(cmd, out);
    if (cmd.name == "eval") return run_eval(cmd, out);
    if (cmd.name == "dual") return run_dual(cmd, out);
    if (cmd.name == "changemakers") return run_changemakers(cmd, out);
    if (cmd.name == "basis") return run_basis(cmd, out);
    if (cmd.name == "recognize") return run_recognize(cmd, out);
    if (cmd.name == "embed") return run_embed(cmd, out);
    if (cmd.name == "berge-list") return run_berge_list(cmd, out);
    if (cmd.name == "verify") return run_verify(cmd, out);
    if (cmd.name == "crosscheck") return run_crosscheck(cmd, out);
    if (cmd.name == "genus") return run_genus(cmd, out);
    if (cmd.name == "fixtures") return run_fixtures(cmd, out);
    if (cmd.name == "tiling") return run_tiling(cmd, out);
  } catch (const ResourceError& e) {
    err << "lensembed: " << e.what() << '\n';
    return budget;
  } catch (const DomainError& e) {
    err << "lensembed: " << e.what() << '\n';
    return usage;
  }
  err << "lensembed: unknown command '" << cmd.name << "'\n";
  return usage;
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Command cmd;
  try {
    cmd = parse(args);
  } catch (const UsageError& e) {
    err << "lensembed: " << e.what() << "\nRun with --help for usage.\n";
    return usage;
  }
  return run(cmd, out, err);
}

}  // namespace lensembed::cli
