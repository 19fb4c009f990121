#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "ducci/coeffs.hpp"
#include "ducci/dynamics.hpp"
#include "ducci/error.hpp"
#include "ducci/graph.hpp"
#include "ducci/kernel.hpp"
#include "ducci/predecessors.hpp"
#include "ducci/tuple.hpp"

namespace ducci::cli {

namespace {

using Json = nlohmann::ordered_json;
using u64 = std::uint64_t;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string m;
  std::string n;
  std::string tuple;
  std::string row;
  std::string format;
  std::string out;
  std::string component;
  std::string method = "iterate";
  std::string check;
  bool exact = false;
  bool odd_n = false;
  std::optional<u64> budget;
  std::optional<u64> k;
  u64 seed = 0;
};

u64 parse_number(const std::string& text, const std::string& context) {
  u64 value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw UsageError("malformed number '" + text + "' in " + context);
  }
  return value;
}

Modulus single_modulus(const Options& o) {
  if (o.m.empty()) throw UsageError("--m is required");
  const auto values = parse_range(o.m);
  if (values.size() != 1) throw UsageError("this command takes a single modulus");
  return Modulus(values.front());
}

std::size_t single_n(const Options& o) {
  if (o.n.empty()) throw UsageError("--n is required");
  const auto values = parse_range(o.n);
  if (values.size() != 1) throw UsageError("this command takes a single n");
  if (values.front() == 0) throw UsageError("n must be at least 1");
  return values.front();
}

Tuple require_tuple(const std::string& text, const Modulus& modulus) {
  if (text.empty()) throw UsageError("--tuple is required");
  return parse_tuple(text, modulus);
}

std::string pick_format(const Options& o, const std::string& fallback,
                        std::initializer_list<const char*> allowed) {
  const std::string f = o.format.empty() ? fallback : o.format;
  for (const char* a : allowed) {
    if (f == a) return f;
  }
  throw UsageError("unsupported --format '" + f + "' for this command");
}

Json tuple_json(const Tuple& u) {
  Json a = Json::array();
  for (Residue x : u.entries()) a.push_back(x);
  return a;
}

CycleInfo measure(const Tuple& u, const Options& o) {
  if (o.method == "iterate") return len_per(u, o.budget.value_or(kDefaultStepBudget));
  if (o.method == "order") return len_per_by_order(u);
  throw UsageError("--method must be 'iterate' or 'order'");
}

// ---------------------------------------------------------------------------

int cmd_step(const Options& o, std::ostream& out) {
  const Modulus mod = single_modulus(o);
  const Tuple u = require_tuple(o.tuple, mod);
  const Tuple v = ducci_step(u);
  if (pick_format(o, "text", {"text", "json"}) == "json") {
    out << Json{{"m", mod.value()}, {"tuple", tuple_json(u)}, {"step", tuple_json(v)}}.dump()
        << '\n';
  } else {
    out << format_entries(v) << '\n';
  }
  return kOk;
}

int cmd_orbit(const Options& o, std::ostream& out) {
  const Modulus mod = single_modulus(o);
  const Tuple u = require_tuple(o.tuple, mod);
  const u64 cap = o.budget.value_or(kDefaultOrbitCap);
  // Without --k, list until the orbit closes: len + per + 1 tuples.
  u64 k = 0;
  if (o.k) {
    k = *o.k;
  } else {
    const CycleInfo info = len_per(u);
    k = info.len + info.per + 1;
  }
  const OrbitPrefix prefix = orbit_prefix(u, k, cap);
  if (pick_format(o, "text", {"text", "json"}) == "json") {
    Json orbit = Json::array();
    for (const Tuple& t : prefix.tuples) orbit.push_back(tuple_json(t));
    out << Json{{"m", mod.value()}, {"tuple", tuple_json(u)}, {"orbit", orbit},
                {"truncated", prefix.truncated}}
               .dump()
        << '\n';
  } else {
    for (const Tuple& t : prefix.tuples) out << format_entries(t) << '\n';
  }
  return kOk;
}

int cmd_lenper(const Options& o, std::ostream& out) {
  const Modulus mod = single_modulus(o);
  const Tuple u = require_tuple(o.tuple, mod);
  const CycleInfo info = measure(u, o);
  if (pick_format(o, "text", {"text", "json"}) == "json") {
    out << Json{{"m", mod.value()}, {"tuple", tuple_json(u)}, {"len", info.len},
                {"per", info.per}}
               .dump()
        << '\n';
  } else {
    out << "len=" << info.len << " per=" << info.per << '\n';
  }
  return kOk;
}

int cmd_basic(const Options& o, std::ostream& out) {
  const Modulus mod = single_modulus(o);
  const std::size_t n = single_n(o);
  const CycleInfo info = measure(Tuple::basic(mod, n), o);
  if (pick_format(o, "text", {"text", "json"}) == "json") {
    out << Json{{"m", mod.value()}, {"n", n}, {"L", info.len}, {"P", info.per}}.dump() << '\n';
  } else {
    out << "L=" << info.len << " P=" << info.per << '\n';
  }
  return kOk;
}

int cmd_preds(const Options& o, std::ostream& out) {
  const Modulus mod = single_modulus(o);
  const Tuple x = require_tuple(o.tuple, mod);
  const PredecessorSet preds = predecessors(x, o.budget.value_or(kDefaultListCap));
  if (pick_format(o, "json", {"text", "json"}) == "json") {
    Json solutions = Json::array();
    for (const Tuple& y : preds.solutions) solutions.push_back(tuple_json(y));
    Json j{{"target", tuple_json(x)}, {"count", preds.count}, {"solutions", solutions}};
    if (!preds.listed) j["listed"] = false;
    out << j.dump() << '\n';
  } else {
    out << "count=" << preds.count << '\n';
    for (const Tuple& y : preds.solutions) out << format_entries(y) << '\n';
  }
  return kOk;
}

int cmd_coeffs(const Options& o, std::ostream& out) {
  const Modulus mod = single_modulus(o);
  const std::size_t n = single_n(o);
  if (o.row.empty()) throw UsageError("--row is required (a row r or a range lo:hi)");
  const auto wanted_list = parse_range(o.row);
  const std::set<u64> wanted(wanted_list.begin(), wanted_list.end());
  const CoeffMode mode = o.exact ? CoeffMode::exact : CoeffMode::reduced;
  const std::string mode_name = o.exact ? "exact" : "reduced";
  const auto rows = coeff_rows(mod, n, *wanted.begin(), *wanted.rbegin(), mode);
  const bool json = pick_format(o, "csv", {"csv", "json"}) == "json";
  if (!json) out << "r,s,value,mode\n";
  for (const CoeffRow& row : rows) {
    if (!wanted.contains(row.r)) continue;
    for (std::size_t s = 1; s <= n; ++s) {
      const std::string value =
          o.exact ? row.exact[s - 1].str() : std::to_string(row.residues[s - 1]);
      if (json) {
        out << Json{{"r", row.r}, {"s", s}, {"value", value}, {"mode", mode_name}}.dump() << '\n';
      } else {
        out << row.r << ',' << s << ',' << value << ',' << mode_name << '\n';
      }
    }
  }
  return kOk;
}

int cmd_kernel(const Options& o, std::ostream& out) {
  const Modulus mod = single_modulus(o);
  const bool json = pick_format(o, "text", {"text", "json"}) == "json";
  if (!o.tuple.empty()) {
    const Tuple u = parse_tuple(o.tuple, mod);
    const bool predicate = in_kernel_predicate(u);
    const bool oracle = in_kernel_oracle(u, o.budget.value_or(kDefaultStepBudget));
    if (json) {
      out << Json{{"m", mod.value()}, {"tuple", tuple_json(u)}, {"predicate", predicate},
                  {"oracle", oracle}}
                 .dump()
          << '\n';
    } else {
      out << "predicate=" << (predicate ? "true" : "false")
          << " oracle=" << (oracle ? "true" : "false") << '\n';
    }
    return predicate == oracle ? kOk : kMismatch;
  }
  const std::size_t n = single_n(o);
  const u64 size = kernel_size(mod, n);
  if (json) {
    out << Json{{"m", mod.value()}, {"n", n}, {"kernel_size", size}}.dump() << '\n';
  } else {
    out << "kernel_size=" << size << '\n';
  }
  return kOk;
}

int cmd_graph(const Options& o, std::ostream& out) {
  pick_format(o, "dot", {"dot"});
  const Modulus mod = single_modulus(o);
  const u64 budget = o.budget.value_or(kDefaultNodeBudget);
  if (!o.component.empty()) {
    const Tuple u = parse_tuple(o.component, mod);
    if (!o.n.empty() && single_n(o) != u.size()) {
      throw UsageError("--component tuple length does not match --n");
    }
    export_dot(component_of(u, budget), out);
  } else {
    export_dot(TransitionGraph::build(mod, single_n(o), budget), out);
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct VerifyRow {
  u64 m = 0;
  unsigned l = 0;
  u64 m1 = 0;
  std::size_t n = 0;
  std::optional<u64> predicted_L;
  std::optional<u64> measured_L;
  std::optional<u64> kernel_formula;
  std::optional<u64> kernel_measured;
  u64 mismatches = 0;
  bool budget_exceeded = false;
  double seconds = 0;
};

constexpr const char* kVerifyHeader =
    "m,l,m1,n,predicted_L,measured_L,kernel_formula,kernel_measured,mismatches,"
    "budget_exceeded,seconds";

std::string seconds_text(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", s);
  return buf;
}

void write_row(std::ostream& out, const VerifyRow& r, bool json) {
  auto opt = [](const std::optional<u64>& v) { return v ? std::to_string(*v) : std::string(); };
  if (json) {
    auto opt_json = [](const std::optional<u64>& v) { return v ? Json(*v) : Json(nullptr); };
    Json j{{"m", r.m},
           {"l", r.l},
           {"m1", r.m1},
           {"n", r.n},
           {"predicted_L", opt_json(r.predicted_L)},
           {"measured_L", opt_json(r.measured_L)},
           {"kernel_formula", opt_json(r.kernel_formula)},
           {"kernel_measured", opt_json(r.kernel_measured)},
           {"mismatches", r.mismatches},
           {"budget_exceeded", r.budget_exceeded},
           {"seconds", Json::parse(seconds_text(r.seconds))}};
    out << j.dump() << '\n';
    return;
  }
  out << r.m << ',' << r.l << ',' << r.m1 << ',' << r.n << ',' << opt(r.predicted_L) << ','
      << opt(r.measured_L) << ',' << opt(r.kernel_formula) << ',' << opt(r.kernel_measured) << ','
      << r.mismatches << ',' << (r.budget_exceeded ? "true" : "false") << ','
      << seconds_text(r.seconds) << '\n';
}

VerifyRow from_kernel_report(const KernelReport& k) {
  VerifyRow r;
  r.predicted_L = k.predicted_L;
  r.measured_L = k.measured_L;
  r.kernel_formula = k.kernel_size_formula;
  r.kernel_measured = k.kernel_size_measured;
  r.mismatches = k.mismatch_count;
  if (k.measured_L && *k.measured_L != k.predicted_L && r.mismatches == 0) r.mismatches = 1;
  if (k.kernel_size_measured && k.kernel_size_formula &&
      *k.kernel_size_measured != *k.kernel_size_formula) {
    ++r.mismatches;
  }
  r.budget_exceeded = k.budget_exceeded;
  return r;
}

int cmd_verify(const Options& o, std::ostream& out) {
  if (o.m.empty() || o.n.empty()) throw UsageError("verify needs --m and --n");
  const auto ms = parse_range(o.m);
  std::vector<std::size_t> ns;
  for (u64 n : parse_range(o.n)) {
    if (n == 0) throw UsageError("n must be at least 1");
    if (o.odd_n && n % 2 == 0) continue;
    ns.push_back(n);
  }
  if (ns.empty()) throw UsageError("no n values left after filtering");
  const std::string& what = o.check;
  if ((what == "length" || what == "kernel" || what == "oddsum")) {
    for (std::size_t n : ns) {
      if (n % 2 == 0) {
        throw UsageError("verify " + what + " is only defined for odd n; pass --odd-n to filter");
      }
    }
  }
  const bool json = pick_format(o, "csv", {"csv", "json"}) == "json";

  ScanOptions scan;
  scan.budget = o.budget.value_or(kDefaultExhaustiveBudget);
  scan.seed = o.seed;

  if (!json) out << kVerifyHeader << '\n';
  bool all_ok = true;
  for (u64 mv : ms) {
    const Modulus mod(mv);
    // The odd-sum lemma says nothing when m is odd.
    if (what == "oddsum" && !mod.is_even()) continue;
    for (std::size_t n : ns) {
      const auto t0 = std::chrono::steady_clock::now();
      VerifyRow row;
      if (what == "length") {
        row = from_kernel_report(verify_length_theorem(mod, n));
      } else if (what == "kernel") {
        row = from_kernel_report(verify_kernel_theorem(mod, n, scan));
      } else if (what == "oddsum") {
        row = from_kernel_report(verify_odd_sum_length(mod, n, scan));
        row.kernel_formula.reset();
      } else if (what == "preds") {
        const PredecessorReport p = verify_predecessor_theorems(mod, n, scan.budget);
        row.mismatches = p.mismatch_count();
        row.budget_exceeded = p.budget_exceeded;
      } else {
        const CoefficientReport c = verify_coefficient_identities(mod, n, o.seed);
        row.mismatches = c.mismatch_count();
      }
      row.m = mod.value();
      row.l = mod.two_adic();
      row.m1 = mod.odd_part();
      row.n = n;
      row.seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      all_ok = all_ok && row.mismatches == 0;
      write_row(out, row, json);
    }
  }
  return all_ok ? kOk : kMismatch;
}

// ---------------------------------------------------------------------------

void add_common(CLI::App* sub, Options& o, bool with_tuple, bool with_n) {
  sub->add_option("--m", o.m, "Modulus m (verify: list or lo:hi range)");
  if (with_n) sub->add_option("--n", o.n, "Tuple length n (verify: list or lo:hi range)");
  if (with_tuple) sub->add_option("--tuple", o.tuple, "Tuple as comma-separated entries, e.g. 3,0,3");
  sub->add_option("--format", o.format, "Output format");
  sub->add_option("--out", o.out, "Write output to FILE instead of stdout");
  sub->add_option("--budget", o.budget, "Step, node, list, or tuple cap for this command");
}

}  // namespace

std::vector<unsigned long long> parse_range(const std::string& text) {
  if (text.empty()) throw UsageError("empty range");
  std::vector<unsigned long long> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      values.push_back(parse_number(item, "'" + text + "'"));
      continue;
    }
    const u64 lo = parse_number(item.substr(0, colon), "'" + text + "'");
    const u64 hi = parse_number(item.substr(colon + 1), "'" + text + "'");
    if (lo > hi) throw UsageError("empty range '" + item + "'");
    if (hi - lo > 1'000'000) throw UsageError("range '" + item + "' is too long");
    for (u64 v = lo; v <= hi; ++v) values.push_back(v);
  }
  if (values.empty() || text.back() == ',') throw UsageError("malformed range '" + text + "'");
  return values;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Ducci map on Z_m^n: orbits, predecessors, coefficients, and theorem sweeps",
               "ducci"};
  app.require_subcommand(1);

  auto* step = app.add_subcommand("step", "Apply D once");
  add_common(step, o, true, false);
  auto* orbit = app.add_subcommand("orbit", "List the first k orbit elements");
  add_common(orbit, o, true, false);
  orbit->add_option("--k", o.k, "Number of tuples (default: until the orbit closes)");
  auto* lenper = app.add_subcommand("lenper", "Pre-period and period of a tuple");
  add_common(lenper, o, true, false);
  lenper->add_option("--method", o.method, "iterate (cycle detection) or order (ring algebra)");
  auto* basic = app.add_subcommand("basic", "L_m(n) and P_m(n) of the basic tuple");
  add_common(basic, o, false, true);
  basic->add_option("--method", o.method, "iterate (cycle detection) or order (ring algebra)");
  auto* preds = app.add_subcommand("preds", "All predecessors of a tuple");
  add_common(preds, o, true, false);
  auto* coeffs = app.add_subcommand("coeffs", "Coefficient rows a_{r,s}");
  add_common(coeffs, o, false, true);
  coeffs->add_option("--row", o.row, "Row r or range lo:hi");
  coeffs->add_flag("--exact", o.exact, "Exact integers instead of residues mod m");
  auto* kernel = app.add_subcommand("kernel", "Cycle subgroup size, or membership of --tuple");
  add_common(kernel, o, true, true);
  auto* graph = app.add_subcommand("graph", "Transition graph as DOT");
  add_common(graph, o, false, true);
  graph->add_option("--component", o.component, "Only the component containing this tuple");
  auto* verify = app.add_subcommand("verify", "Theorem sweeps over (m, n) grids");
  add_common(verify, o, false, true);
  verify->add_option("check", o.check, "length | kernel | oddsum | preds | coeffs")
      ->required()
      ->check(CLI::IsMember({"length", "kernel", "oddsum", "preds", "coeffs"}));
  verify->add_flag("--odd-n", o.odd_n, "Keep only odd n");
  verify->add_option("--seed", o.seed, "Seed for sampled checks");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    std::ofstream file;
    std::ostream* sink = &out;
    if (!o.out.empty()) {
      file.open(o.out);
      if (!file) throw IoError("cannot open '" + o.out + "' for writing");
      sink = &file;
    }
    int code = kOk;
    if (step->parsed()) code = cmd_step(o, *sink);
    else if (orbit->parsed()) code = cmd_orbit(o, *sink);
    else if (lenper->parsed()) code = cmd_lenper(o, *sink);
    else if (basic->parsed()) code = cmd_basic(o, *sink);
    else if (preds->parsed()) code = cmd_preds(o, *sink);
    else if (coeffs->parsed()) code = cmd_coeffs(o, *sink);
    else if (kernel->parsed()) code = cmd_kernel(o, *sink);
    else if (graph->parsed()) code = cmd_graph(o, *sink);
    else if (verify->parsed()) code = cmd_verify(o, *sink);
    sink->flush();
    if (!*sink) throw IoError("failed to write output");
    return code;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  }
  return kUsage;
}

}  // namespace ducci::cli
