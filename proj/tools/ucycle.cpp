// ucycle: generate and verify universal cycles for affine lines and for
// 2-subspaces.
//
// Exit codes: 0 success / verified, 1 verification failed, 2 bad input.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ucycle/io.hpp"
#include "ucycle/ucycle.hpp"

namespace {

using namespace ucycle;
using io::json;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kBadInput = 2;

struct FieldArgs {
  std::uint64_t p = 2;
  unsigned k = 1;
};

void add_field_options(CLI::App* cmd, FieldArgs& args) {
  cmd->add_option("--p", args.p, "Field characteristic (prime)")->required();
  cmd->add_option("--k", args.k, "Extension degree; q = p^k")->capture_default_str();
}

std::string vec_text(Vec const& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

// Writes to --out when given, stdout otherwise; summaries then go to the
// other stream so stdout stays machine-readable.
std::ostream& summary_stream(std::string const& out) { return out.empty() ? std::cerr : std::cout; }

template <class Writer>
void emit(std::string const& out, Writer&& write) {
  if (out.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream os(out, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + out + " for writing");
  write(os);
}

int cmd_gen(std::size_t n, FieldArgs const& fa, std::string const& format, std::string const& out) {
  if (n < 2) throw std::invalid_argument("gen needs --n >= 2");
  const Field f = Field::make(fa.p, fa.k);
  const Cycle c = universal_cycle(n, f);
  emit(out, [&](std::ostream& os) {
    if (format == "text") {
      io::write_cycle_text(os, c);
    } else {
      io::write_cycle_json(os, f, c);
    }
  });
  std::size_t infinity = 0;
  for (auto const& v : c.vertices) infinity += v.is_infinity();
  summary_stream(out) << "AG(" << n << "," << f.q() << "): vertices=" << c.size() << " (affine "
                      << c.size() - infinity << ", infinity " << infinity << ") windows=" << c.window_count()
                      << " directions=" << direction_count(n, f.q()) << "\n";
  return kOk;
}

int cmd_verify(std::string const& in, std::optional<std::size_t> n, FieldArgs const& fa, std::string const& format,
               unsigned jobs) {
  const Field f = Field::make(fa.p, fa.k);
  io::ParsedCycle parsed;
  try {
    std::ifstream is(in, std::ios::binary);
    if (!is) throw io::ParseError("cannot open " + in);
    parsed = io::read_cycle(is, &f);
  } catch (io::ParseError const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
  if (parsed.q && *parsed.q != f.q()) {
    std::cerr << "error: file is over GF(" << *parsed.q << ") but --p/--k give GF(" << f.q() << ")\n";
    return kBadInput;
  }
  const std::size_t dim = n.value_or(parsed.cycle.dim);
  if (dim < 2) {
    std::cerr << "error: dimension must be at least 2\n";
    return kBadInput;
  }
  const AffineReport report = verify_affine(f, dim, parsed.cycle, jobs);
  if (format == "json") {
    std::cout << io::report_json(report).dump(2) << "\n";
  } else {
    std::cout << (report.passed() ? "PASSED" : "FAILED") << " AG(" << dim << "," << f.q()
              << "): " << report.found_count << "/" << report.expected_count << " windows";
    std::cout << " missing=" << report.missing_total << " duplicated=" << report.duplicated_total
              << " unexpected=" << report.unexpected_total << " degenerate=" << report.degenerate_total << "\n";
    for (auto const& l : report.missing) std::cout << "  missing " << vec_text(l.base.coords) << "+<" << vec_text(l.dir.vec) << ">\n";
  }
  return report.passed() ? kOk : kFailed;
}

int cmd_grassmann(std::size_t m, FieldArgs const& fa, bool nested, std::string const& out) {
  if (m < 3) throw std::invalid_argument("grassmann needs --m >= 3");
  const Field f = Field::make(fa.p, fa.k);
  const auto levels = nested_cycles(m, f);
  auto& log = summary_stream(out);
  bool ok = true;
  json payload = json::array();
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!nested && i + 1 != levels.size()) continue;
    auto const& u = levels[i];
    const GrassReport r = verify_grassmann(f, u.dim, u);
    ok = ok && r.passed();
    log << "U_" << u.dim << " over GF(" << f.q() << "): windows=" << u.size()
        << " expected=" << gaussian_binomial2(u.dim, f.q()) << " verified=" << (r.passed() ? "true" : "false");
    if (nested && i > 0) {
      const bool nest = verify_nesting(embed(levels[i - 1], u.dim), u);
      ok = ok && nest;
      log << " contains U_" << levels[i - 1].dim << "=" << (nest ? "true" : "false");
    }
    log << "\n";
    payload.push_back(io::grass_cycle_json(f, u));
  }
  emit(out, [&](std::ostream& os) { os << (nested ? payload : payload.back()).dump() << "\n"; });
  return ok ? kOk : kFailed;
}

int cmd_stats(std::size_t n, FieldArgs const& fa, std::string const& format) {
  if (n < 2) throw std::invalid_argument("stats needs --n >= 2");
  const Field f = Field::make(fa.p, fa.k);
  const FiberPlan plan = plan_fibers(n, f);
  const std::uint64_t dirs = direction_count(n, f.q());
  if (format == "json") {
    json pairs = json::array();
    for (auto const& [a, b] : plan.pairs) pairs.push_back({a.vec, b.vec});
    json j{{"n", n},           {"q", f.q()},       {"field", io::field_json(f)},
           {"directions", dirs}, {"lines", affine_line_count(n, f.q())},
           {"branch", plan.triplet ? "odd" : "even"}, {"pairs", pairs}};
    if (plan.triplet) j["triplet"] = {(*plan.triplet)[0].vec, (*plan.triplet)[1].vec, (*plan.triplet)[2].vec};
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  std::cout << "AG(" << n << "," << f.q() << ")\n";
  std::cout << "directions [n]_q = " << dirs << "\n";
  std::cout << "lines q^(n-1)[n]_q = " << affine_line_count(n, f.q()) << "\n";
  if (plan.triplet) {
    auto const& t = *plan.triplet;
    std::cout << "branch: odd: triplet + " << plan.pairs.size() << " pairs\n";
    std::cout << "triplet " << vec_text(t[0].vec) << " " << vec_text(t[1].vec) << " " << vec_text(t[2].vec) << "\n";
  } else {
    std::cout << "branch: even: " << plan.pairs.size() << " pairs\n";
  }
  for (auto const& [a, b] : plan.pairs) std::cout << "pair " << vec_text(a.vec) << " " << vec_text(b.vec) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Universal cycles for affine lines of AG(n,q) and for Grassmannians G_q(2,m)"};
  app.require_subcommand(1);

  FieldArgs fa;
  std::size_t n = 0, m = 0;
  std::optional<std::size_t> verify_n;
  std::string format = "json", out, in;
  std::string report_format = "text";
  unsigned jobs = 1;
  bool nested = false;

  auto* gen = app.add_subcommand("gen", "Construct the universal cycle for AG(n,q)");
  gen->add_option("--n", n, "Dimension (>= 2)")->required();
  add_field_options(gen, fa);
  gen->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  gen->add_option("--out", out, "Output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "Check a cycle file against every affine line");
  verify->add_option("--in", in, "Cycle file (JSON or text)")->required();
  verify->add_option("--n", verify_n, "Dimension (default: from the file)");
  add_field_options(verify, fa);
  verify->add_option("--format", report_format, "Report format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  verify->add_option("--jobs", jobs, "Worker threads for window decoding")->capture_default_str();

  auto* grass = app.add_subcommand("grassmann", "Nested universal cycles U_3, ..., U_m on G_q(2,m)");
  grass->add_option("--m", m, "Ambient dimension (>= 3)")->required();
  add_field_options(grass, fa);
  grass->add_flag("--nested", nested, "Emit every level and check nesting");
  grass->add_option("--out", out, "Output file (default stdout)");

  auto* stats = app.add_subcommand("stats", "Direction and line counts and the fiber pairing plan");
  stats->add_option("--n", n, "Dimension (>= 2)")->required();
  add_field_options(stats, fa);
  stats->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  stats->callback([&] {
    if (stats->count("--format") == 0) format = "text";
  });

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kBadInput;
  }

  try {
    if (*gen) return cmd_gen(n, fa, format, out);
    if (*verify) return cmd_verify(in, verify_n, fa, report_format, jobs);
    if (*grass) return cmd_grassmann(m, fa, nested, out);
    if (*stats) return cmd_stats(n, fa, format);
  } catch (FieldError const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (std::invalid_argument const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kBadInput;
}
