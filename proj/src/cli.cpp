#include "normsum/cli.hpp"

#include <charconv>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "normsum/census.hpp"
#include "normsum/laws.hpp"
#include "normsum/parallel.hpp"
#include "normsum/version.hpp"

namespace normsum::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

// ------------------------------------------------------------ number parsing

/// Parses a nonnegative integer, accepting scientific notation (1e6, 2.5e3).
/// Non-integral or out-of-range values are rejected.
u64 parse_integer(const std::string& text, const std::string& param) {
  const auto fail = [&](const std::string& why) -> u64 {
    throw std::invalid_argument("--" + param + ": " + why + " ('" + text +
                                "')");
  };
  if (text.empty()) fail("empty value");
  std::size_t pos = 0;
  std::string digits;
  i64 point_shift = 0;  // digits after the decimal point
  bool seen_point = false;
  while (pos < text.size() &&
         (std::isdigit(static_cast<unsigned char>(text[pos])) ||
          text[pos] == '.')) {
    if (text[pos] == '.') {
      if (seen_point) fail("malformed number");
      seen_point = true;
    } else {
      digits.push_back(text[pos]);
      if (seen_point) ++point_shift;
    }
    ++pos;
  }
  if (digits.empty()) fail("expected a number");
  i64 exponent = 0;
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') fail("malformed number");
    ++pos;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      negative = text[pos] == '-';
      ++pos;
    }
    if (pos == text.size()) fail("malformed exponent");
    i64 e = 0;
    for (; pos < text.size(); ++pos) {
      if (!std::isdigit(static_cast<unsigned char>(text[pos]))) {
        fail("malformed exponent");
      }
      e = e * 10 + (text[pos] - '0');
      if (e > 100) fail("exponent out of range");
    }
    exponent = negative ? -e : e;
  }
  if (pos != text.size()) fail("trailing characters");

  // Effective value = digits * 10^(exponent - point_shift), required integral.
  i64 shift = exponent - point_shift;
  u128 value = 0;
  constexpr u128 kU64Max = u128{~u64{0}};
  for (char c : digits) {
    value = value * 10 + static_cast<u128>(c - '0');
    if (value > (kU64Max << 10)) fail("value out of 64-bit range");
  }
  for (; shift > 0; --shift) {
    value *= 10;
    if (value > kU64Max) fail("value out of 64-bit range");
  }
  for (; shift < 0; ++shift) {
    if (value % 10 != 0) fail("value is not an integer");
    value /= 10;
  }
  if (value > kU64Max) fail("value out of 64-bit range");
  return static_cast<u64>(value);
}

std::vector<u64> parse_integer_list(const std::string& text,
                                    const std::string& param) {
  std::vector<u64> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::size_t end = comma == std::string::npos ? text.size() : comma;
    out.push_back(parse_integer(text.substr(start, end - start), param));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

MSetSpec parse_set(const std::string& text) {
  try {
    return MSetSpec::parse(text);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("--set: ") + e.what());
  }
}

// -------------------------------------------------------------- serialization

ordered_json json_law_report(const LawReport& r) {
  return ordered_json{{"law", r.law},
                      {"detail", r.detail},
                      {"lo", r.lo},
                      {"hi", r.hi},
                      {"instances", r.instances},
                      {"counterexamples", r.counterexamples},
                      {"vacuous", r.vacuous},
                      {"passed", r.passed()}};
}

ordered_json json_witness(const ReprWitness& w, u64 base) {
  std::vector<u64> powers;
  powers.reserve(w.exponents.size());
  for (u32 e : w.exponents) {
    u64 p = 1;
    for (u32 i = 0; i < e; ++i) p *= base;
    powers.push_back(p);
  }
  return ordered_json{
      {"member", w.member}, {"exponents", w.exponents}, {"powers", powers}};
}

ordered_json json_family_witness(const FamilyWitness& w) {
  return ordered_json{{"q1", w.q1},
                      {"q2", w.q2},
                      {"n", w.n},
                      {"checked", w.checked},
                      {"confirmed", w.confirmed}};
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void emit(std::ostream& out, const std::string& command,
          const ordered_json& config, const ordered_json& result) {
  ordered_json envelope{{"tool", std::string(kToolName)},
                        {"version", std::string(kToolVersion)},
                        {"command", command},
                        {"config", config},
                        {"result", result}};
  out << envelope.dump(2) << "\n";
}

// --------------------------------------------------------------- subcommands

struct CommonOptions {
  std::string format = "json";
  std::string threads = "0";
};

void check_format(const CommonOptions& common, bool csv_allowed) {
  if (common.format == "json") return;
  if (common.format == "csv" && csv_allowed) return;
  throw std::invalid_argument(csv_allowed
                                  ? "--format: must be json or csv"
                                  : "--format: this subcommand emits json only");
}

int run_member(const std::string& set, const std::string& n_text,
               const CommonOptions& common, std::ostream& out) {
  check_format(common, false);
  const MSetSpec spec = parse_set(set);
  const u64 n = parse_integer(n_text, "n");
  if (n == 0) throw std::invalid_argument("--n: must be >= 1");

  const bool member = is_member(spec, n);
  const Factorization f = factorize(n);
  ordered_json factor_list = ordered_json::array();
  ordered_json conditions = ordered_json::array();
  u64 base_exponent = 0;
  for (const auto& [q, e] : f.factors) {
    factor_list.push_back(ordered_json{{"prime", q}, {"exponent", e}});
    if (q == spec.base()) {
      base_exponent = e;
      continue;
    }
    const u64 residue = pow_mod(q, e, spec.modulus());
    conditions.push_back(ordered_json{{"prime", q},
                                      {"exponent", e},
                                      {"residue", residue},
                                      {"admissible", residue == 1}});
  }
  ordered_json config{{"set", spec.name()},
                      {"n", n},
                      {"format", common.format},
                      {"deterministic", true}};
  ordered_json result{{"n", n},
                      {"set", spec.name()},
                      {"member", member},
                      {"factorization", factor_list},
                      {"evidence",
                       ordered_json{{"base", spec.base()},
                                    {"modulus", spec.modulus()},
                                    {"base_exponent", base_exponent},
                                    {"conditions", conditions}}}};
  emit(out, "member", config, result);
  return 0;
}

int run_represent(const std::string& set, const std::string& n_text,
                  const std::string& t_text, const std::string& base_text,
                  const CommonOptions& common, std::ostream& out) {
  check_format(common, false);
  const MSetSpec spec = parse_set(set);
  const u64 n = parse_integer(n_text, "n");
  const u64 t = parse_integer(t_text, "max-powers");
  if (t > kMaxPowerCount) {
    throw std::invalid_argument("--max-powers: exceeds budget of 16");
  }
  const u64 base =
      base_text.empty() ? spec.base() : parse_integer(base_text, "base");
  if (base < 2) throw std::invalid_argument("--base: must be >= 2");

  const ReprQuery query{spec, n, base, static_cast<u32>(t)};
  const std::optional<ReprWitness> witness = is_representable(query);

  ordered_json config{{"set", spec.name()},     {"n", n},
                      {"base", base},           {"max_powers", t},
                      {"format", common.format}, {"deterministic", true}};
  ordered_json result{{"n", n},
                      {"set", spec.name()},
                      {"base", base},
                      {"max_powers", t},
                      {"representable", witness.has_value()}};
  if (witness) result["witness"] = json_witness(*witness, base);
  emit(out, "represent", config, result);
  return 0;
}

int run_search(const std::string& set, const std::string& t_text,
               const std::string& lo_text, const std::string& hi_text,
               const std::string& base_text, const CommonOptions& common,
               std::ostream& out) {
  check_format(common, false);
  const MSetSpec spec = parse_set(set);
  const u64 t = parse_integer(t_text, "max-powers");
  if (t > kMaxPowerCount) {
    throw std::invalid_argument("--max-powers: exceeds budget of 16");
  }
  const u64 lo = parse_integer(lo_text, "lo");
  const u64 hi = parse_integer(hi_text, "hi");
  const u64 base =
      base_text.empty() ? spec.base() : parse_integer(base_text, "base");
  if (base < 2) throw std::invalid_argument("--base: must be >= 2");

  const SearchReport report =
      find_nonrepresentable(spec, base, static_cast<u32>(t), lo, hi);

  ordered_json config{{"set", spec.name()},     {"base", base},
                      {"max_powers", t},        {"lo", lo},
                      {"hi", hi},               {"format", common.format},
                      {"deterministic", true}};
  ordered_json result{{"set", spec.name()},
                      {"base", base},
                      {"max_powers", t},
                      {"lo", lo},
                      {"hi", hi},
                      {"non_representable", report.non_representable},
                      {"non_representable_count",
                       report.non_representable_count()},
                      {"representable_count", report.representable_count}};
  emit(out, "search", config, result);
  return 0;
}

struct VerifyParams {
  std::string law;
  std::string lo, hi, k, p, a_max, count, verify_limit;
};

int run_verify(const VerifyParams& vp, const CommonOptions& common,
               std::ostream& out) {
  check_format(common, false);
  auto value_or = [&](const std::string& text, const std::string& param,
                      u64 fallback) {
    return text.empty() ? fallback : parse_integer(text, param);
  };

  std::vector<LawReport> reports;
  ordered_json params;
  if (vp.law == "l1") {
    const u64 hi = value_or(vp.hi, "hi", 2000);
    const u64 a_max = value_or(vp.a_max, "a-max", 3);
    params = ordered_json{{"hi", hi}, {"a_max", a_max}};
    reports.push_back(check_norm_form_doubling(hi, static_cast<u32>(a_max)));
  } else if (vp.law == "l2") {
    const u64 lo = value_or(vp.lo, "lo", 1);
    const u64 hi = value_or(vp.hi, "hi", 100000);
    params = ordered_json{{"k", 3}, {"lo", lo}, {"hi", hi}};
    reports.push_back(check_doubling_representability(3, lo, hi));
  } else if (vp.law == "l3" || vp.law == "l5") {
    const u64 lo = value_or(vp.lo, "lo", 1);
    const u64 hi = value_or(vp.hi, "hi", 100000);
    const u64 a_max = value_or(vp.a_max, "a-max", 3);
    const MSetSpec spec = vp.law == "l3"
                              ? MSetSpec::nk(static_cast<u32>(
                                    value_or(vp.k, "k", 3)))
                              : MSetSpec::mp(value_or(vp.p, "p", 3));
    params = ordered_json{
        {"set", spec.name()}, {"lo", lo}, {"hi", hi}, {"a_max", a_max}};
    reports.push_back(
        check_base_scaling(spec, lo, hi, static_cast<u32>(a_max)));
    reports.push_back(check_base_part_invariance(spec, lo, hi));
  } else if (vp.law == "l4") {
    const u64 k = value_or(vp.k, "k", 3);
    const u64 lo = value_or(vp.lo, "lo", 1);
    const u64 hi = value_or(vp.hi, "hi", 100000);
    params = ordered_json{{"k", k}, {"lo", lo}, {"hi", hi}};
    reports.push_back(
        check_lemma4_subclaim(static_cast<u32>(k), lo, hi));
    reports.push_back(
        check_doubling_representability(static_cast<u32>(k), lo, hi));
  } else if (vp.law == "l6") {
    struct Case {
      u64 p;
      u64 hi;
    };
    std::vector<Case> cases;
    if (vp.p.empty()) {
      cases = {{3, 2000}, {5, 500}, {7, 300}};
    } else {
      const u64 p = parse_integer(vp.p, "p");
      const u64 def = p == 3 ? 2000 : p == 5 ? 500 : 300;
      cases = {{p, value_or(vp.hi, "hi", def)}};
    }
    const u64 lo = value_or(vp.lo, "lo", 1);
    params = ordered_json::array();
    for (const Case& c : cases) {
      params.push_back(ordered_json{{"p", c.p}, {"lo", lo}, {"hi", c.hi}});
      reports.push_back(check_scaling_representability(c.p, lo, c.hi));
    }
  } else if (vp.law == "l7") {
    params = ordered_json::object();
    reports.push_back(verify_small_witnesses());
  } else if (vp.law == "thm") {
    const u64 count = value_or(vp.count, "count", 50);
    const u64 limit =
        value_or(vp.verify_limit, "verify-limit", kDefaultFamilyVerifyLimit);
    std::vector<u64> ps;
    if (vp.p.empty()) {
      ps = {3, 5, 7};
    } else {
      ps = {parse_integer(vp.p, "p")};
    }
    params = ordered_json::array();
    for (u64 p : ps) {
      params.push_back(
          ordered_json{{"p", p}, {"count", count}, {"verify_limit", limit}});
      reports.push_back(check_theorem_family(p, count, limit));
    }
  } else {
    throw std::invalid_argument(
        "--law: must be one of l1, l2, l3, l4, l5, l6, l7, thm");
  }

  bool passed = true;
  ordered_json report_list = ordered_json::array();
  for (const LawReport& r : reports) {
    passed = passed && r.passed();
    report_list.push_back(json_law_report(r));
  }
  ordered_json config{{"law", vp.law},
                      {"params", params},
                      {"format", common.format},
                      {"deterministic", true}};
  ordered_json result{
      {"law", vp.law}, {"reports", report_list}, {"passed", passed}};
  emit(out, "verify", config, result);
  return passed ? 0 : 1;
}

int run_family(const std::string& p_text, const std::string& count_text,
               const std::string& limit_text, const CommonOptions& common,
               std::ostream& out) {
  check_format(common, false);
  const u64 p = parse_integer(p_text, "p");
  const u64 count = parse_integer(count_text, "count");
  const u64 limit = limit_text.empty()
                        ? kDefaultFamilyVerifyLimit
                        : parse_integer(limit_text, "verify-limit");

  const std::vector<FamilyWitness> witnesses = theorem_family(p, count, limit);
  bool all_confirmed = true;
  ordered_json list = ordered_json::array();
  for (const FamilyWitness& w : witnesses) {
    all_confirmed = all_confirmed && (!w.checked || w.confirmed);
    list.push_back(json_family_witness(w));
  }
  ordered_json config{{"p", p},
                      {"count", count},
                      {"verify_limit", limit},
                      {"format", common.format},
                      {"deterministic", true}};
  ordered_json result{{"p", p},
                      {"count", count},
                      {"verify_limit", limit},
                      {"witnesses", list},
                      {"all_confirmed", all_confirmed}};
  emit(out, "family", config, result);
  return all_confirmed ? 0 : 1;
}

int run_census(const std::string& set, const std::string& checkpoints_text,
               const CommonOptions& common, std::ostream& out) {
  check_format(common, true);
  const MSetSpec spec = parse_set(set);
  const std::vector<u64> checkpoints =
      parse_integer_list(checkpoints_text, "checkpoints");
  const std::vector<DensityRow> rows = count_members(spec, checkpoints);

  if (common.format == "csv") {
    out << "x,count,normalized\n";
    for (const DensityRow& r : rows) {
      out << r.x << "," << r.count << "," << format_double(r.normalized)
          << "\n";
    }
    return 0;
  }
  ordered_json config{{"set", spec.name()},
                      {"checkpoints", checkpoints},
                      {"format", common.format},
                      {"deterministic", true}};
  ordered_json list = ordered_json::array();
  for (const DensityRow& r : rows) {
    list.push_back(ordered_json{
        {"x", r.x}, {"count", r.count}, {"normalized", r.normalized}});
  }
  ordered_json result{{"set", spec.name()}, {"rows", list}};
  emit(out, "census", config, result);
  return 0;
}

int run_density_product(const std::string& k_text,
                        const std::string& limit_text,
                        const CommonOptions& common, std::ostream& out) {
  check_format(common, false);
  const u64 k = parse_integer(k_text, "k");
  const u64 limit = parse_integer(limit_text, "prime-limit");
  const double value =
      partial_density_product(static_cast<u32>(k), limit);
  ordered_json config{{"k", k},
                      {"prime_limit", limit},
                      {"format", common.format},
                      {"deterministic", true}};
  ordered_json result{{"k", k}, {"prime_limit", limit}, {"value", value}};
  emit(out, "density-product", config, result);
  return 0;
}

int run_class_census(const std::string& k_text, const std::string& t_text,
                     const std::string& x_text, const CommonOptions& common,
                     std::ostream& out) {
  check_format(common, true);
  const u64 k = parse_integer(k_text, "k");
  const u64 t = parse_integer(t_text, "t");
  if (t > kMaxPowerCount) {
    throw std::invalid_argument("--t: exceeds budget of 16");
  }
  const u64 x = parse_integer(x_text, "x");
  const std::vector<ClassCensusRow> rows =
      residue_class_census(static_cast<u32>(k), static_cast<u32>(t), x);

  if (common.format == "csv") {
    out << "class,integers,power_sums,representable,"
           "non_representable_fraction,pairs\n";
    for (const ClassCensusRow& r : rows) {
      out << r.cls << "," << r.integers << "," << r.power_sums << ","
          << r.representable << ","
          << format_double(r.non_representable_fraction) << "," << r.pairs
          << "\n";
    }
    return 0;
  }
  ordered_json config{{"k", k},
                      {"t", t},
                      {"x", x},
                      {"format", common.format},
                      {"deterministic", true}};
  ordered_json list = ordered_json::array();
  for (const ClassCensusRow& r : rows) {
    list.push_back(ordered_json{
        {"class", r.cls},
        {"integers", r.integers},
        {"power_sums", r.power_sums},
        {"representable", r.representable},
        {"non_representable_fraction", r.non_representable_fraction},
        {"pairs", r.pairs}});
  }
  ordered_json result{{"k", k}, {"t", t}, {"x", x}, {"rows", list}};
  emit(out, "class-census", config, result);
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"membership, representation and verification tools for "
               "cyclotomic ideal-norm sets"};
  app.require_subcommand(1);

  CommonOptions common;
  app.add_option("--format", common.format, "output format: json or csv")
      ->capture_default_str();
  app.add_option("--threads", common.threads,
                 "worker thread cap (0 = all cores; never affects results)")
      ->capture_default_str();

  std::string set, n_text, t_text, base_text, lo_text, hi_text;
  std::string checkpoints_text, k_text, p_text, x_text, count_text, law_text;
  std::string a_max_text, verify_limit_text;

  CLI::App* member = app.add_subcommand(
      "member", "decide set membership with factorization evidence");
  member->add_option("--set", set, "set selector, nk:<k> or mp:<p>")
      ->required();
  member->add_option("--n", n_text, "integer to test")->required();

  CLI::App* represent = app.add_subcommand(
      "represent", "find a member-plus-powers witness or report NONREP");
  represent->add_option("--set", set, "set selector")->required();
  represent->add_option("--n", n_text, "integer to decompose")->required();
  represent->add_option("--max-powers", t_text, "power budget t")->required();
  represent->add_option("--base", base_text,
                        "power base (default: the set's base prime)");

  CLI::App* search = app.add_subcommand(
      "search", "exhaustively classify a range, listing non-representables");
  search->add_option("--set", set, "set selector")->required();
  search->add_option("--max-powers", t_text, "power budget t")->required();
  search->add_option("--lo", lo_text, "range start")->required();
  search->add_option("--hi", hi_text, "range end")->required();
  search->add_option("--base", base_text, "power base override");

  CLI::App* verify = app.add_subcommand(
      "verify", "machine-check one of the built-in laws");
  verify->add_option("--law", law_text, "l1..l7 or thm")->required();
  verify->add_option("--lo", lo_text, "range start override");
  verify->add_option("--hi", hi_text, "range end override");
  verify->add_option("--k", k_text, "cyclotomic 2-power index (l3, l4)");
  verify->add_option("--p", p_text, "odd prime (l5, l6, thm)");
  verify->add_option("--a-max", a_max_text, "scaling exponent bound");
  verify->add_option("--count", count_text, "family witness count (thm)");
  verify->add_option("--verify-limit", verify_limit_text,
                     "exhaustive-check bound for family witnesses");

  CLI::App* family = app.add_subcommand(
      "family", "generate verified witnesses of the product family");
  family->add_option("--p", p_text, "odd prime")->required();
  family->add_option("--count", count_text, "number of witnesses")->required();
  family->add_option("--verify-limit", verify_limit_text,
                     "exhaustive-check bound (default 1e6)");

  CLI::App* census = app.add_subcommand(
      "census", "member counts and normalized density ratios");
  census->add_option("--set", set, "set selector")->required();
  census->add_option("--checkpoints", checkpoints_text,
                     "comma-separated ascending bounds, e.g. 1e4,1e5")
      ->required();

  CLI::App* density = app.add_subcommand(
      "density-product", "partial Euler-type density product for nk:<k>");
  density->add_option("--k", k_text, "cyclotomic 2-power index")->required();
  density->add_option("--prime-limit", hi_text, "largest prime included")
      ->required();

  CLI::App* class_census = app.add_subcommand(
      "class-census", "per-residue-class power-sum and representability counts");
  class_census->add_option("--k", k_text, "cyclotomic 2-power index")
      ->required();
  class_census->add_option("--t", t_text, "power budget")->required();
  class_census->add_option("--x", x_text, "count integers below x")->required();

  // Let --format / --threads appear after the subcommand name as well.
  for (CLI::App* sub : {member, represent, search, verify, family, census,
                        density, class_census}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    const u64 threads = parse_integer(common.threads, "threads");
    set_worker_threads(static_cast<unsigned>(threads));

    if (*member) return run_member(set, n_text, common, out);
    if (*represent) {
      return run_represent(set, n_text, t_text, base_text, common, out);
    }
    if (*search) {
      return run_search(set, t_text, lo_text, hi_text, base_text, common, out);
    }
    if (*verify) {
      VerifyParams vp{law_text,     lo_text,    hi_text,          k_text,
                      p_text,       a_max_text, count_text,       verify_limit_text};
      return run_verify(vp, common, out);
    }
    if (*family) {
      return run_family(p_text, count_text, verify_limit_text, common, out);
    }
    if (*census) return run_census(set, checkpoints_text, common, out);
    if (*density) return run_density_product(k_text, hi_text, common, out);
    if (*class_census) {
      return run_class_census(k_text, t_text, x_text, common, out);
    }
    err << "error: no subcommand selected\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace normsum::cli
