// Command-line front end: root data, Weyl groups, class censuses and the replicated computations.
//
// Exit codes: 0 all checks passed, 1 findings present, 2 usage or input error.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "spherical/report.hpp"
#include "spherical/weyl_audit.hpp"

using namespace spherical;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kFindings = 1;
constexpr int kUsage = 2;

// Groups at most this large keep whole centralizers in memory for the curve and flag probes.
constexpr std::uint64_t kProbeOrderLimit = 1000000;

struct Options {
  std::string type = "A";
  int rank = 1;
  int n = 3;  // Sp_2n, SO_2n+1 for the family labs
  std::uint64_t q = 3;
  std::string out;
  std::uint64_t budget = kDefaultBudget;
  int threads = 1;
  std::string rep_file;
};

std::string coords_string(const Coords& c) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << ")";
  return os.str();
}

void write_json(const std::string& path, const json& j) {
  if (path.empty()) return;
  std::ofstream f(path);
  if (!f) throw InvalidArgument("cannot open " + path + " for writing");
  f << j.dump(2) << "\n";
}

int cmd_roots(const Options& o) {
  RootSystem rs(parse_family(o.type), o.rank);
  std::cout << rs.name() << ": " << rs.num_positive() << " positive roots\n";
  json roots = json::array();
  for (int r = 0; r < rs.num_positive(); ++r) {
    std::cout << "  " << r << " " << coords_string(rs.coords(r)) << " height " << rs.height(r)
              << (rs.is_simple(r) ? " simple" : "") << "\n";
    roots.push_back({{"index", r}, {"coords", rs.coords(r)}, {"height", rs.height(r)}});
  }
  write_json(o.out, {{"schema_version", kSchemaVersion}, {"type", o.type}, {"rank", o.rank}, {"positive_roots", roots}});
  return kOk;
}

int cmd_weyl(const Options& o) {
  WeylGroup wg{RootSystem(parse_family(o.type), o.rank)};
  auto elems = wg.elements();
  std::size_t involutions = 0;
  for (const auto& w : elems) involutions += wg.is_involution(w) && w != wg.identity();
  auto admissible = admissible_subsets(wg);
  const auto& w0 = wg.longest();
  std::cout << "W(" << wg.roots().name() << "): order " << elems.size() << ", " << involutions << " involutions\n"
            << "  w_0 = " << wg.word_string(w0) << ", length " << w0.length << ", rk(1-w_0) = " << wg.rank_one_minus(w0)
            << "\n  admissible subsets Pi: " << admissible.size() << "\n";
  json adm = json::array();
  for (const auto& pi : admissible) {
    auto z = wg.mul(wg.longest_parabolic(pi), w0);
    std::cout << "    Pi = {";
    for (std::size_t i = 0; i < pi.size(); ++i) std::cout << (i ? "," : "") << pi[i] + 1;
    std::cout << "}: z = " << wg.word_string(z) << ", l + rk = " << z.length + wg.rank_one_minus(z) << "\n";
    adm.push_back({{"pi", pi}, {"z", wg.reduced_word(z)}, {"len_plus_rank", z.length + wg.rank_one_minus(z)}});
  }
  write_json(o.out, {{"schema_version", kSchemaVersion},
                     {"type", o.type},
                     {"rank", o.rank},
                     {"order", elems.size()},
                     {"involutions", involutions},
                     {"longest", wg.reduced_word(w0)},
                     {"admissible", adm}});
  return kOk;
}

void print_class_line(const ClassReport& r) {
  std::cout << "  class " << r.class_id << ": size " << r.class_size << ", dim " << r.dim_class << ", z ";
  if (r.z.empty()) std::cout << "e";
  for (int i : r.z) std::cout << "s" << i + 1;
  std::cout << ", l+rk " << r.len_plus_rank << ", involutions " << (r.all_involutions ? "yes" : "no")
            << ", spherical " << (r.spherical_by_dim ? "yes" : "no") << (r.theorem_ok ? "" : "  [DISAGREE]") << "\n";
}

int cmd_census(const Options& o, bool verbose) {
  MatrixGroup G(parse_family(o.type), o.rank, Field::of_order(o.q));
  auto report = census_report(G, o.budget, o.threads);
  std::size_t spherical = 0;
  for (const auto& c : report.classes) spherical += c.spherical_by_dim;
  std::cout << G.name() << "(F_" << o.q << "): " << report.classes.size() << " classes, " << spherical
            << " spherical, " << report.findings.size() << " findings\n";
  if (verbose)
    for (const auto& c : report.classes) print_class_line(c);
  for (const auto& f : report.findings)
    std::cout << "  finding " << f.check << " class " << f.class_id << (f.detail.empty() ? "" : ": ") << f.detail << "\n";
  write_json(o.out, report);
  return report.findings.empty() ? kOk : kFindings;
}

int cmd_class(const Options& o) {
  MatrixGroup G(parse_family(o.type), o.rank, Field::of_order(o.q));
  std::ifstream f(o.rep_file);
  if (!f) throw InvalidArgument("cannot read " + o.rep_file);
  Mat x = matrix_from_json(G.field(), json::parse(f));
  if (x.d != G.dim() || !G.contains(x)) throw InvalidArgument("matrix is not an element of " + G.name());
  ClassCensus census(G, enumerate_elements(G, o.budget), o.threads);
  auto borel = borel_elements(G);
  auto r = theorem_check(census, static_cast<int>(census.class_of(census.elements().find(x))), &borel);
  print_class_line(r);
  auto findings = findings_of(r);
  for (const auto& fd : findings) std::cout << "  finding " << fd.check << ": " << fd.detail << "\n";
  write_json(o.out, {{"schema_version", kSchemaVersion}, {"report", r}, {"findings", findings}});
  return findings.empty() ? kOk : kFindings;
}

// ---------------------------------------------------------------------------------------------

int emit(const Options& o, const std::vector<LabFinding>& findings) {
  std::unique_ptr<std::ofstream> file;
  if (!o.out.empty()) {
    file = std::make_unique<std::ofstream>(o.out);
    if (!*file) throw InvalidArgument("cannot open " + o.out + " for writing");
  }
  std::ostream& lines = file ? *file : std::cout;
  std::size_t failed = 0;
  for (const auto& f : findings) {
    lines << json(f).dump() << "\n";
    failed += !f.verdict;
  }
  if (file) std::cout << findings.size() << " verdicts, " << failed << " failed\n";
  return failed ? kFindings : kOk;
}

std::string word_name(const std::vector<int>& w) {
  if (w.empty()) return "e";
  std::string s;
  for (int i : w) s += "s" + std::to_string(i + 1);
  return s;
}

int lab_g2(const Options& o) {
  std::vector<LabFinding> out;
  for (const auto& s : g2_trace(o.q)) out.push_back({"g2." + s.chain, "G2", s.q, s.claim, s.ok, s.witness});
  return emit(o, out);
}

int lab_spn(const Options& o) {
  const int n = o.n;
  const Field F = Field::of_order(o.q);
  MatrixGroup G(Family::C, n, F);
  std::vector<LabFinding> out;
  std::vector<elem> D(n, 1), A(n);
  for (int i = 0; i < n; ++i) A[i] = F.from_int(i + 1);
  Mat x = sp_to_group(F, sp_family(F, D, A));
  bool big = G.contains(x) && bruhat_cell(G, x) == G.weyl().longest();
  out.push_back({"spn.family_big_cell", G.name(), o.q, "D=I A=diag(1..n)", big, ""});
  auto c = sp_charpoly_count(n, o.q);
  std::ostringstream w;
  w << "multisets=" << c.multisets << " distinct per D:";
  for (auto d : c.distinct) w << " " << d;
  out.push_back({"spn.charpoly_count", G.name(), o.q, "n=" + std::to_string(n), c.ok(), w.str()});
  return emit(o, out);
}

int lab_son(const Options& o) {
  auto ws = so_witnesses(o.n, o.q);
  const std::string group = "SO" + std::to_string(2 * o.n + 1);
  std::vector<LabFinding> out;
  for (const auto& x : ws.xs) {
    std::ostringstream w;
    w << "dim=" << x.dim << " in_group=" << x.in_group << " in_w0_U=" << x.in_w0_u;
    if (x.unipotent) {
      w << " jordan=";
      for (std::size_t k = 0; k < x.jordan.size(); ++k) w << (k ? "," : "") << x.jordan[k];
    }
    bool ok = x.in_group && x.in_w0_u && x.dim == ws.expected_dim;
    out.push_back({"son." + x.name, group, o.q, "n=" + std::to_string(o.n), ok, w.str()});
  }
  const auto& u = o.n % 2 ? ws.xs[0] : ws.xs[1];
  out.push_back({"son.jordan", group, o.q, u.name, u.unipotent && u.jordan == ws.expected_jordan, ""});
  out.push_back({"son.charpolys_differ", group, o.q, ws.xs[0].name + " " + ws.xs[1].name, ws.charpolys_differ, ""});
  return emit(o, out);
}

int lab_bigcell(const Options& o) {
  MatrixGroup G(parse_family(o.type), o.rank, Field::of_order(o.q));
  ClassCensus census(G, enumerate_elements(G, o.budget), o.threads);
  std::vector<LabFinding> out;
  for (std::size_t c = 0; c < census.classes().size(); ++c) {
    auto s = bigcell_coefficient_scan(census, static_cast<int>(c));
    if (!s.applicable) continue;
    std::string inputs = "class " + std::to_string(c) + " elements " + std::to_string(s.elements);
    out.push_back({"bigcell", G.name(), o.q, inputs, s.ok(), s.witness});
  }
  return emit(o, out);
}

int lab_curves(const Options& o) {
  MatrixGroup G(parse_family(o.type), o.rank, Field::of_order(o.q));
  auto order = G.order();
  if (!order || *order > kProbeOrderLimit) throw BudgetExceeded("curve and flag probes need |G| <= 10^6");
  ClassCensus census(G, enumerate_elements(G, o.budget), o.threads);
  std::vector<LabFinding> out;
  for (std::size_t c = 0; c < census.classes().size(); ++c) {
    const auto& cls = census.classes()[c];
    if (!is_spherical_by_dim(G, cls)) continue;
    auto x = curve_representative(census, cls);
    auto cent = centralizer_elements(census, *x);
    const auto& w = G.weyl_elements()[cls.z];
    for (int g = 0; g < G.roots().num_positive(); ++g) {
      if (!classify_curve_root(G.weyl(), w, g)) continue;
      auto r = curve_check(G, cent, *x, w, g);
      std::string inputs = "class " + std::to_string(c) + " gamma " + std::to_string(g);
      std::string witness = std::string(curve_case_name(r.kind)) + " good=" + std::to_string(r.good) +
                            " exceptions=" + std::to_string(r.exceptions);
      out.push_back({"curve", G.name(), o.q, inputs, r.ok, witness});
    }
    auto cov = flag_dominance_probe(G, cent);
    std::ostringstream wit;
    for (std::size_t k = 0; k < cov.reached.size(); ++k)
      wit << word_name(G.weyl().reduced_word(G.weyl_elements()[k])) << ":" << cov.reached[k] << "/" << cov.possible[k]
          << " ";
    wit << "monotone=" << cov.monotone(G);
    // Coverage is a report, not a verdict.
    out.push_back({"flag_coverage", G.name(), o.q, "class " + std::to_string(c), true, wit.str()});
  }
  return emit(o, out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spherical conjugacy classes of finite groups of Lie type"};
  app.require_subcommand(1);
  Options o;

  auto add_type = [&](CLI::App* sub) {
    sub->add_option("--type", o.type, "Cartan type A, B, C, D or G")->check(CLI::IsMember({"A", "B", "C", "D", "G"}));
    sub->add_option("--rank", o.rank, "rank")->check(CLI::Range(1, 8));
  };
  auto add_field = [&](CLI::App* sub) {
    sub->add_option("--q", o.q, "field order, an odd prime power")->check(CLI::Range(3, 1 << 20));
    sub->add_option("--budget", o.budget, "maximum group order to enumerate");
    sub->add_option("--threads", o.threads, "worker threads")->check(CLI::Range(1, 256));
  };

  auto* roots = app.add_subcommand("roots", "list positive roots");
  add_type(roots);
  roots->add_option("--out", o.out, "JSON output path");
  auto* weyl = app.add_subcommand("weyl", "Weyl group summary and admissible subsets");
  add_type(weyl);
  weyl->add_option("--out", o.out, "JSON output path");
  auto* census = app.add_subcommand("census", "full class census with theorem checks");
  add_type(census);
  add_field(census);
  census->add_option("--out", o.out, "JSON report path");
  auto* check = app.add_subcommand("check-theorem", "census with one verdict line per class");
  add_type(check);
  add_field(check);
  check->add_option("--out", o.out, "JSON report path");
  auto* cls = app.add_subcommand("class", "theorem check for the class of one element");
  add_type(cls);
  add_field(cls);
  cls->add_option("--rep", o.rep_file, "JSON file with the matrix as row-major integer arrays")->required();
  cls->add_option("--out", o.out, "JSON report path");

  auto* lab = app.add_subcommand("paperlab", "replicated computations; verdicts as JSON lines");
  lab->require_subcommand(1);
  std::vector<std::pair<CLI::App*, int (*)(const Options&)>> labs;
  auto add_lab = [&](const char* name, const char* help, int (*fn)(const Options&), bool typed) {
    auto* sub = lab->add_subcommand(name, help);
    if (typed) add_type(sub);
    else
      sub->add_option("--rank", o.n, "n (default 3)")->check(CLI::Range(2, 4));
    add_field(sub);
    sub->add_option("--out", o.out, "JSON lines output path");
    labs.emplace_back(sub, fn);
  };
  add_lab("g2", "G2 conjugation chains", lab_g2, false);
  add_lab("spn", "symplectic family x(D, A)", lab_spn, false);
  add_lab("son", "orthogonal witnesses x_1..x_4", lab_son, false);
  add_lab("bigcell", "big-cell coefficient dependency", lab_bigcell, true);
  add_lab("curves", "centralizer curves and flag coverage", lab_curves, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*roots) return cmd_roots(o);
    if (*weyl) return cmd_weyl(o);
    if (*census) return cmd_census(o, false);
    if (*check) return cmd_census(o, true);
    if (*cls) return cmd_class(o);
    for (auto& [sub, fn] : labs)
      if (*sub) return fn(o);
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
