// Command-line front end: presentation checks, normal forms, J_n spaces and
// homotopy verification.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "koszulkit/io.hpp"
#include "koszulkit/koszulkit.hpp"

namespace {

using namespace koszulkit;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

int default_k_max() {
  if (const char* env = std::getenv("KOSZULKIT_KMAX")) {
    try {
      int v = std::stoi(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring invalid KOSZULKIT_KMAX='" << env << "'\n";
  }
  return 64;
}

std::string witness_summary(const ConfluenceReport& r) {
  std::string s;
  for (const auto& d : r.degrees) {
    if (!s.empty()) s += ", ";
    s += d.confluent ? "k=" + std::to_string(d.k) : "not confluent";
    s += " @deg" + std::to_string(d.degree);
  }
  return s;
}

void print_branchings(const Presentation& p, std::ostream& out) {
  const auto list = critical_branchings(p);
  out << "critical branchings: " << list.size() << "\n";
  for (const auto& b : list) {
    const auto& a = p.alphabet();
    out << "  source " << format_word(b.source(), a) << ": (" << format_word(b.w1, a) << ", " << format_word(b.w2, a)
        << ", " << format_word(b.w3, a) << ", " << format_poly(p.relations()[b.f], a) << ", "
        << format_poly(p.relations()[b.g], a) << ")\n";
  }
}

void write_json(const nlohmann::json& j, const std::string& path) {
  if (path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << j.dump(2) << "\n";
}

int cmd_check(const std::string& file, int k_max, bool json) {
  const Presentation p = load_presentation(file);
  const ConfluenceReport r = check_side_confluence(p, k_max);
  if (json) {
    nlohmann::json j = to_json(r);
    j["branchings"] = nlohmann::json::array();
    for (const auto& b : critical_branchings(p)) j["branchings"].push_back(to_json(b, p));
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << (r.side_confluent ? "side-confluent" : "not side-confluent") << " (" << witness_summary(r)
              << "); extra-condition: " << (r.extra_condition ? "HOLDS" : "FAILS");
    if (r.extra_condition_failing_m) std::cout << " (m=" << *r.extra_condition_failing_m << ")";
    std::cout << "\n";
    print_branchings(p, std::cout);
  }
  return r.extra_confluent() ? kExitOk : kExitFail;
}

int cmd_nf(const std::string& file, const std::string& expr) {
  const Presentation p = load_presentation(file);
  const HomogPoly f = parse_expression(expr, p.alphabet());
  std::cout << format_poly(normal_form(p, f), p.alphabet()) << "\n";
  return kExitOk;
}

int cmd_jn(const std::string& file, std::size_t max_n, int k_max, bool show_basis) {
  KoszulComplex k(load_presentation(file), k_max);
  std::cout << "dims [";
  for (std::size_t n = 0; n <= max_n; ++n) std::cout << (n ? ", " : "") << k.j_space(n).dim();
  std::cout << "]\n";
  if (show_basis)
    for (std::size_t n = 0; n <= max_n; ++n) {
      std::cout << "J_" << n << " (degree " << k.l(n) << "):\n";
      for (const auto& b : k.j_space(n).basis()) std::cout << "  " << format_poly(b, k.presentation().alphabet()) << "\n";
    }
  return kExitOk;
}

int cmd_verify(const std::string& file, std::optional<std::size_t> max_degree, std::optional<std::size_t> max_n,
               unsigned jobs, int k_max, const std::string& json_path) {
  KoszulComplex k(load_presentation(file), k_max);
  const ConfluenceReport& conf = k.confluence_report();
  if (!conf.side_confluent) {
    std::cerr << "error: verify needs a side-confluent presentation (fails @deg" << *conf.failing_degree << ")\n";
    return kExitInput;
  }
  const std::size_t m_max = max_degree.value_or(2 * k.N() + 3);
  const std::size_t n_max = max_n.value_or(k.default_n_max(m_max));
  const HomotopyReport r = k.verify_homotopy(n_max, m_max, jobs);

  // With --json -, stdout carries only the JSON document.
  std::ostream& out = json_path == "-" ? std::cerr : std::cout;
  out << "n\\m";
  for (std::size_t m = 0; m <= m_max; ++m) out << " " << std::setw(4) << m;
  out << "\n";
  for (std::size_t n = 0; n <= n_max; ++n) {
    out << std::setw(3) << n;
    for (std::size_t m = 0; m <= m_max; ++m) {
      const char* mark = "   .";
      for (const auto& c : r.cells)
        if (c.n == n && c.m == m) mark = c.pass ? "PASS" : "FAIL";
      out << " " << mark;
    }
    out << "\n";
  }
  if (const CellResult* f = r.first_failure()) {
    const auto& a = k.presentation().alphabet();
    out << "first failure at n=" << f->n << ", m=" << f->m << ": " << format_poly(*f->witness, a) << " -> residual "
        << format_poly(*f->residual, a) << "\n";
  }
  out << (r.all_pass() ? "all cells pass" : "homotopy identity FAILS") << "\n";
  if (!json_path.empty()) {
    nlohmann::json j = to_json(r, k.presentation().alphabet());
    j["confluence"] = to_json(conf);
    write_json(j, json_path);
  }
  return r.all_pass() ? kExitOk : kExitFail;
}

int cmd_branchings(const std::string& file) {
  print_branchings(load_presentation(file), std::cout);
  return kExitOk;
}

void dump_operator(const std::string& name, const ReductionOperator& t, const Alphabet& a) {
  std::cout << name << ": " << t.kernel().dim() << " non-fixed words\n";
  for (const auto& b : t.kernel().basis()) {
    const Word w = b.leading_term().word;
    std::cout << "  " << format_word(w, a) << " -> " << format_poly(t.image(w), a) << "\n";
  }
}

int cmd_opdump(const std::string& file, std::size_t n, std::size_t m, int k_max) {
  KoszulComplex k(load_presentation(file), k_max);
  const auto& a = k.presentation().alphabet();
  const ReductionPair& pair = k.reduction_pair(n, m);
  std::cout << "P_{" << n << "," << m << "}: confluent with k=" << pair.witness.k << "\n";
  dump_operator("F1", pair.f1, a);
  dump_operator("F2", pair.f2, a);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Side-confluence, extra-condition and Koszul homotopy checks for N-homogeneous presentations"};
  app.require_subcommand(1);
  int k_max = default_k_max();
  app.add_option("--k-max", k_max, "Cap for confluence searches (env KOSZULKIT_KMAX)")->check(CLI::PositiveNumber);

  std::string file;
  bool json = false;
  auto* check = app.add_subcommand("check", "Decide side-confluence and the extra-condition");
  check->add_option("file", file, "Presentation file")->required();
  check->add_flag("--json", json, "Emit a JSON report");
  check->add_option("--k-max", k_max, "Cap for confluence searches")->check(CLI::PositiveNumber);

  std::string expr;
  auto* nf = app.add_subcommand("nf", "Normal form of an expression");
  nf->add_option("file", file, "Presentation file")->required();
  nf->add_option("expr", expr, "Homogeneous expression")->required();

  std::size_t max_n = 5;
  bool basis = false;
  auto* jn = app.add_subcommand("jn", "Dimensions (and bases) of J_0 .. J_max-n");
  jn->add_option("file", file, "Presentation file")->required();
  jn->add_option("--max-n", max_n, "Largest homological degree");
  jn->add_flag("--basis", basis, "Print echelon bases");

  std::optional<std::size_t> v_degree, v_n;
  unsigned jobs = 1;
  std::string json_path;
  auto* verify = app.add_subcommand("verify", "Verify the left-bound contracting homotopy");
  verify->add_option("file", file, "Presentation file")->required();
  verify->add_option("--max-degree", v_degree, "Largest total degree m (default 2N+3)");
  verify->add_option("--max-n", v_n, "Largest homological degree n");
  verify->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  verify->add_option("--json", json_path, "Write the JSON report to this path ('-' for stdout)");
  verify->add_option("--k-max", k_max, "Cap for confluence searches")->check(CLI::PositiveNumber);

  auto* branchings = app.add_subcommand("branchings", "List critical branchings");
  branchings->add_option("file", file, "Presentation file")->required();

  std::size_t op_n = 0, op_m = 0;
  auto* opdump = app.add_subcommand("opdump", "Print the reduction pair P_{n,m}");
  opdump->add_option("file", file, "Presentation file")->required();
  opdump->add_option("--n", op_n, "Homological degree")->required();
  opdump->add_option("--m", op_m, "Total degree")->required();
  opdump->add_option("--k-max", k_max, "Cap for confluence searches")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*check) return cmd_check(file, k_max, json);
    if (*nf) return cmd_nf(file, expr);
    if (*jn) return cmd_jn(file, max_n, k_max, basis);
    if (*verify) return cmd_verify(file, v_degree, v_n, jobs, k_max, json_path);
    if (*branchings) return cmd_branchings(file);
    if (*opdump) return cmd_opdump(file, op_n, op_m, k_max);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const UndeterminedError& e) {
    std::cerr << "undetermined: " << e.what() << "; raise --k-max or KOSZULKIT_KMAX\n";
    return kExitInput;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
