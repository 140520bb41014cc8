// poissonhc: command-line front end for the Poisson (co)homology engine.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "poisson/corpus.hpp"
#include "poisson/duality.hpp"
#include "poisson/io.hpp"
#include "poisson/uea.hpp"

namespace fs = std::filesystem;
using namespace poisson;

namespace {

enum Exit : int { ok = 0, usage = 1, jacobi = 2, bookkeeping = 3, mismatch = 4 };

/// Input-side failure reported with exit code 1.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Loaded {
  std::string source;
  std::string text;
  StructureFile file;
  PoissonStructure P;
};

Loaded load(const std::string& where) {
  std::string text;
  if (where.rfind("corpus:", 0) == 0) {
    const CorpusEntry* e = find_corpus(where.substr(7));
    if (!e) throw InputError("no bundled structure named '" + where.substr(7) + "'");
    text = e->text;
  } else {
    try {
      text = read_text(where);
    } catch (const std::runtime_error& e) {
      throw InputError(e.what());
    }
  }
  StructureFile file;
  try {
    file = parse_structure_file(text);
  } catch (const FileParseError& e) {
    throw InputError(where + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) +
                     ": " + std::string(e.what()).substr(std::string(e.what()).find(": ") + 2));
  }
  PoissonStructure P = build_structure(file);
  return {where, std::move(text), std::move(file), std::move(P)};
}

/// Prints the failing triples; returns the Jacobi exit code.
int report_jacobi(const PoissonStructure& P) {
  std::cerr << "error: the bracket fails the Jacobi identity\n";
  for (const auto& v : check_jacobi(P)) {
    std::cerr << "  triple (" << P.vars()[v.triple[0]] << ", " << P.vars()[v.triple[1]] << ", "
              << P.vars()[v.triple[2]] << "): jacobiator " << P.format(v.jacobiator) << "\n";
  }
  return Exit::jacobi;
}

PDerivation parse_twist(const Loaded& in, const std::string& selector) {
  const PoissonStructure& P = in.P;
  if (selector == "none" || selector.empty()) return PDerivation::zero(P.nvars(), P.degree());
  if (selector == "modular") return modular_derivation(P);
  if (selector == "2modular" || selector == "2*modular") return Rational(2) * modular_derivation(P);
  if (selector == "file") {
    auto t = file_twist(in.file, P);
    if (!t) throw InputError("--twist file given but the structure file has no [twist] section");
    return *t;
  }
  std::vector<Polynomial> values;
  std::size_t start = 0;
  while (true) {
    const std::size_t semi = selector.find(';', start);
    const std::string part = selector.substr(start, semi == std::string::npos ? semi : semi - start);
    try {
      values.push_back(P.parse(part));
    } catch (const ParseError& e) {
      throw InputError("--twist value " + std::to_string(values.size() + 1) + ": " + e.what());
    }
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  if (values.size() != P.nvars()) {
    throw InputError("--twist needs " + std::to_string(P.nvars()) + " values separated by ';'");
  }
  return PDerivation(std::move(values), P.degree());
}

/// Twisted (co)chains form a complex only for Poisson derivations.
PDerivation select_twist(const Loaded& in, const std::string& selector) {
  PDerivation sigma = parse_twist(in, selector);
  try {
    require_compatible(in.P, sigma);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("--twist: ") + e.what());
  }
  if (!is_poisson_derivation(in.P, sigma)) {
    throw InputError("--twist is not a Poisson derivation, so the twisted differential does not square to zero");
  }
  return sigma;
}

Window make_window(std::int64_t max_label, const std::string& degrees, std::size_t n) {
  if (max_label < 0) throw InputError("--max-label must be non-negative");
  Window w = Window::symmetric(max_label, n);
  if (!degrees.empty()) {
    const std::size_t dots = degrees.find("..");
    try {
      if (dots == std::string::npos) {
        w.min_degree = w.max_degree = std::stoul(degrees);
      } else {
        w.min_degree = std::stoul(degrees.substr(0, dots));
        w.max_degree = std::stoul(degrees.substr(dots + 2));
      }
    } catch (const std::exception&) {
      throw InputError("--degrees expects 'a..b'");
    }
    if (w.min_degree > w.max_degree || w.max_degree > n) {
      throw InputError("--degrees must satisfy 0 <= a <= b <= " + std::to_string(n));
    }
  }
  return w;
}

void emit_json(const Json& j, const std::string& path) {
  if (path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

void print_grid(std::ostream& os, const BettiTable& t) {
  const auto& w = t.window;
  const bool hom = t.side == Side::homology;
  os << (hom ? "homology" : "cohomology") << " (twist " << t.twist << "), labels " << w.min_label
     << ".." << w.max_label << "\n";
  os << std::setw(6) << "u";
  for (std::int64_t u = w.min_label; u <= w.max_label; ++u) os << std::setw(5) << u;
  os << std::setw(7) << "total" << "\n";
  for (std::size_t p = w.min_degree; p <= w.max_degree; ++p) {
    os << std::setw(4) << (hom ? "HP_" : "HP^") << std::left << std::setw(2) << p << std::right;
    for (std::int64_t u = w.min_label; u <= w.max_label; ++u) os << std::setw(5) << t.dim(p, u);
    os << std::setw(7) << t.total(p) << "\n";
  }
}

std::string join_values(const PoissonStructure& P, const PDerivation& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < P.nvars(); ++i) s += (i ? ", " : "") + P.format(d[i]);
  return s + ")";
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

// ---- commands --------------------------------------------------------------

struct Common {
  std::string file;
  std::string json;
  bool timing = false;
};

int cmd_check(const Common& c) {
  Timer timer;
  const Loaded in = load(c.file);
  const PoissonStructure& P = in.P;
  const auto violations = check_jacobi(P);
  Json result{{"jacobi", violations.empty()}, {"degree", P.degree()}};
  std::cout << "variables: ";
  for (std::size_t i = 0; i < P.nvars(); ++i) {
    std::cout << (i ? ", " : "") << P.vars()[i] << " (weight " << P.weights()[i] << ")";
  }
  std::cout << "\nbracket degree: " << P.degree() << "\n";
  if (!violations.empty()) {
    Json bad = Json::array();
    for (const auto& v : violations) {
      bad.push_back({{"triple", {P.vars()[v.triple[0]], P.vars()[v.triple[1]], P.vars()[v.triple[2]]}},
                     {"jacobiator", P.format(v.jacobiator)}});
    }
    result["violations"] = std::move(bad);
    if (!c.json.empty()) emit_json(make_report("check", fnv1a_hex(in.text), structure_json(P), result), c.json);
    return report_jacobi(P);
  }
  const PDerivation delta = modular_derivation(P);
  result["modular_derivation"] = derivation_json(P, delta);
  result["unimodular"] = delta.is_zero();
  std::cout << "jacobi: ok\n";
  std::cout << "modular derivation: " << join_values(P, delta) << "\n";
  std::cout << "unimodular: " << (delta.is_zero() ? "true" : "false") << "\n";
  if (c.timing) result["timing_ms"] = timer.ms();
  if (!c.json.empty()) emit_json(make_report("check", fnv1a_hex(in.text), structure_json(P), result), c.json);
  return Exit::ok;
}

struct BettiOptions {
  std::string side = "hom";
  std::string twist = "none";
  std::int64_t max_label = 8;
  std::string degrees;
};

int cmd_betti(const Common& c, const BettiOptions& o) {
  Timer timer;
  const Loaded in = load(c.file);
  if (!in.P.valid()) return report_jacobi(in.P);
  Side side;
  try {
    side = side_from_string(o.side);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  const PDerivation sigma = select_twist(in, o.twist);
  const Window w = make_window(o.max_label, o.degrees, in.P.nvars());
  const BettiTable t = betti(in.P, sigma, side, w, o.twist);
  print_grid(std::cout, t);
  if (auto bad = euler_mismatch(t, in.P.nvars())) {
    throw WeightBookkeepingError("Euler characteristic mismatch at label " + std::to_string(*bad));
  }
  if (!c.json.empty()) {
    Json result = to_json(t);
    result["twist_values"] = derivation_json(in.P, sigma);
    if (c.timing) result["timing_ms"] = timer.ms();
    emit_json(make_report("betti", fnv1a_hex(in.text), structure_json(in.P), result), c.json);
  }
  return Exit::ok;
}

void print_duality(std::ostream& os, const DualityReport& r) {
  os << "structure " << r.structure_id << ": n = " << r.nvars << ", degree " << r.degree
     << ", unimodular " << (r.unimodular ? "true" : "false") << ", twist " << r.twist << "\n";
  print_grid(os, r.cohomology);
  print_grid(os, r.homology);
  std::size_t mismatched = 0;
  for (const auto& cell : r.cells) mismatched += cell.match ? 0 : 1;
  os << "compared cells: " << r.cells.size() << ", mismatched: " << mismatched << "\n";
  if (r.shift) {
    os << "label shift: " << *r.shift << " (weight shift " << *weight_shift(r) << ")\n";
  } else {
    os << "label shift: no uniform shift\n";
  }
  if (r.untwisted_equal) {
    os << "untwisted homology equals twisted homology: " << (*r.untwisted_equal ? "true" : "false")
       << "\n";
  }
  if (r.verdict == Verdict::fail) {
    os << "*** DUALITY MISMATCH: " << r.message << " ***\n";
    for (const auto& cell : r.cells) {
      if (cell.match) continue;
      os << "  HP^" << cell.degree << " at u=" << cell.label << " is " << cell.cohomology_dim
         << " but HP_" << r.nvars - cell.degree << " at u=" << cell.partner_label << " is "
         << cell.homology_dim << "\n";
    }
  }
  os << "verdict: " << to_string(r.verdict);
  if (r.verdict == Verdict::inconclusive) os << " (" << r.message << ")";
  os << "\n";
}

int cmd_duality(const Common& c, const BettiOptions& o, bool max_label_set) {
  Timer timer;
  const Loaded in = load(c.file);
  if (!in.P.valid()) return report_jacobi(in.P);
  const PDerivation tau = select_twist(in, o.twist);
  const std::int64_t max_label =
      max_label_set ? o.max_label : default_duality_window(in.P.nvars()).max_label;
  const Window w = make_window(max_label, o.degrees, in.P.nvars());
  const DualityReport r = duality_check(in.P, tau, w, o.twist);
  print_duality(std::cout, r);
  if (!c.json.empty()) {
    Json result = to_json(r);
    if (c.timing) result["timing_ms"] = timer.ms();
    emit_json(make_report("duality", fnv1a_hex(in.text), structure_json(in.P), result), c.json);
  }
  return r.verdict == Verdict::fail ? Exit::mismatch : Exit::ok;
}

struct SweepOptions {
  std::string family = "diagonal";
  std::size_t nvars = 3;
  std::string weights;
  std::int64_t coeff_bound = 3;
  std::int64_t degree = 0;
  std::size_t count = 10;
  std::uint64_t seed = 1;
  std::int64_t max_label = 4;
};

int cmd_sweep(const Common& c, const SweepOptions& o) {
  Timer timer;
  SweepConfig cfg;
  try {
    cfg.family = family_from_string(o.family);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  cfg.nvars = o.nvars;
  if (!o.weights.empty()) {
    std::stringstream ss(o.weights);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        cfg.weights.push_back(std::stoll(item));
      } catch (const std::exception&) {
        throw InputError("--weights expects comma-separated integers");
      }
    }
  }
  cfg.coeff_bound = o.coeff_bound;
  cfg.degree = o.degree;
  cfg.count = o.count;
  cfg.seed = o.seed;
  cfg.max_label = o.max_label;
  if (cfg.coeff_bound < 1) throw InputError("--coeff-bound must be positive");

  SweepResult res;
  try {
    res = sweep(cfg);
  } catch (const StructureError& e) {
    throw InputError(e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  std::size_t passed = 0, failed = 0, inconclusive = 0;
  for (std::size_t k = 0; k < res.reports.size(); ++k) {
    const auto& r = res.reports[k];
    std::cout << "#" << k << " " << r.structure_id << " " << to_string(r.verdict);
    if (r.shift) std::cout << " shift " << *r.shift;
    if (r.verdict != Verdict::pass && !r.message.empty()) std::cout << " (" << r.message << ")";
    std::cout << "\n";
    passed += r.verdict == Verdict::pass;
    failed += r.verdict == Verdict::fail;
    inconclusive += r.verdict == Verdict::inconclusive;
  }
  std::cout << "attempted " << res.attempted << ", rejected by Jacobi " << res.rejected
            << ", passed " << passed << ", failed " << failed << ", inconclusive " << inconclusive
            << "\n";
  if (failed) std::cout << "*** DUALITY MISMATCH in " << failed << " structure(s) ***\n";
  if (!c.json.empty()) {
    Json config{{"family", to_string(cfg.family)}, {"nvars", cfg.nvars},
                {"weights", cfg.weights},          {"coeff_bound", cfg.coeff_bound},
                {"degree", cfg.degree},            {"count", cfg.count},
                {"seed", cfg.seed},                {"max_label", cfg.max_label}};
    Json reports = Json::array();
    for (const auto& r : res.reports) reports.push_back(to_json(r));
    Json result{{"attempted", res.attempted},
                {"rejected", res.rejected},
                {"passed", passed},
                {"failed", failed},
                {"inconclusive", inconclusive},
                {"reports", std::move(reports)}};
    if (c.timing) result["timing_ms"] = timer.ms();
    emit_json(make_report("sweep", fnv1a_hex(config.dump()), config, result), c.json);
  }
  return failed ? Exit::mismatch : Exit::ok;
}

struct UeaOptions {
  std::string word;
  std::string strategy = "leftmost";
  std::uint64_t seed = 1;
  std::size_t witnesses = 200;
};

int cmd_uea_nf(const Common& c, const UeaOptions& o) {
  const Loaded in = load(c.file);
  if (!in.P.valid()) return report_jacobi(in.P);
  Word w;
  try {
    w = parse_word(o.word, in.P.vars());
  } catch (const ParseError& e) {
    throw InputError(std::string("word: ") + e.what());
  }
  const auto strategy =
      o.strategy == "rightmost" ? RewriteStrategy::rightmost : RewriteStrategy::leftmost;
  const UEAElement u = normal_form(in.P, w, strategy);
  const std::string text = to_string(u, in.P.vars());
  std::cout << text << "\n";
  if (!c.json.empty()) {
    Json result{{"word", o.word}, {"strategy", o.strategy}, {"normal_form", text}};
    emit_json(make_report("uea nf", fnv1a_hex(in.text), structure_json(in.P), result), c.json);
  }
  return Exit::ok;
}

int cmd_uea_nakayama(const Common& c) {
  const Loaded in = load(c.file);
  if (!in.P.valid()) return report_jacobi(in.P);
  const NakayamaReport r = nakayama(in.P);
  const auto& sigma = r.automorphism.sigma();
  std::cout << "Nakayama automorphism: ";
  for (std::size_t i = 0; i < in.P.nvars(); ++i) {
    const auto& v = in.P.vars()[i];
    std::cout << (i ? ", " : "") << "h_" << v << " -> "
              << to_string(r.automorphism.image_of_y(i), in.P.vars());
  }
  std::cout << "\nidentity: " << (r.identity ? "true" : "false")
            << "\nCalabi-Yau: " << (r.calabi_yau ? "true" : "false") << "\n";
  if (!c.json.empty()) {
    Json result{{"twist", derivation_json(in.P, sigma)},
                {"identity", r.identity},
                {"calabi_yau", r.calabi_yau}};
    emit_json(make_report("uea nakayama", fnv1a_hex(in.text), structure_json(in.P), result), c.json);
  }
  return Exit::ok;
}

int cmd_uea_ext(const Common& c, const UeaOptions& o) {
  const Loaded in = load(c.file);
  if (!in.P.valid()) return report_jacobi(in.P);
  ExtCheckOptions opts;
  opts.seed = o.seed;
  opts.image_witnesses = o.witnesses;
  opts.bracket_witnesses = o.witnesses;
  const ExtCheckResult r = ext_module_check(in.P, opts);
  std::cout << "image witnesses: " << r.image_checked << "\nbracket witnesses: " << r.bracket_checked
            << "\naction witnesses: " << r.action_checked << "\nresult: "
            << (r.pass ? "pass" : "FAIL: " + r.failure) << "\n";
  if (!c.json.empty()) {
    Json result{{"pass", r.pass},
                {"image_checked", r.image_checked},
                {"bracket_checked", r.bracket_checked},
                {"action_checked", r.action_checked},
                {"failure", r.failure},
                {"seed", o.seed}};
    emit_json(make_report("uea ext-check", fnv1a_hex(in.text), structure_json(in.P), result), c.json);
  }
  return r.pass ? Exit::ok : Exit::mismatch;
}

int cmd_corpus_list() {
  for (const auto& e : corpus()) std::cout << std::left << std::setw(18) << e.name << e.description << "\n";
  return Exit::ok;
}

int cmd_corpus_show(const std::string& name) {
  const CorpusEntry* e = find_corpus(name);
  if (!e) throw InputError("no bundled structure named '" + name + "'");
  std::cout << e->text;
  return Exit::ok;
}

int cmd_corpus_export(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  for (const auto& e : corpus()) {
    const fs::path path = fs::path(dir) / (e.name + ".poisson");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path.string() + "'");
    out << e.text;
    std::cout << path.string() << "\n";
  }
  return Exit::ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Poisson homology and cohomology of polynomial Poisson algebras"};
  app.set_version_flag("--version", version_string());
  app.require_subcommand(1);

  Common common;
  BettiOptions betti_opts;
  SweepOptions sweep_opts;
  UeaOptions uea_opts;
  std::string corpus_arg;
  int code = Exit::ok;

  auto add_file = [&](CLI::App* sub) {
    sub->add_option("file", common.file, "structure file, or corpus:<name>")->required();
    sub->add_option("--json", common.json, "write a JSON report to this path ('-' for stdout)");
    sub->add_flag("--timing", common.timing, "include wall-clock timing in the JSON report");
  };

  auto* check = app.add_subcommand("check", "Jacobi check, degree, modular derivation");
  add_file(check);

  auto* betti_cmd = app.add_subcommand("betti", "Betti table of one complex");
  add_file(betti_cmd);
  betti_cmd->add_option("--side", betti_opts.side, "hom or coh")->check(CLI::IsMember({"hom", "coh"}));
  betti_cmd->add_option("--twist", betti_opts.twist, "none, modular, 2modular, file, or 'v1;v2;...'");
  betti_cmd->add_option("--max-label", betti_opts.max_label, "labels -N..N");
  betti_cmd->add_option("--degrees", betti_opts.degrees, "degree range a..b");

  auto* duality = app.add_subcommand("duality", "twisted Poincare duality cross-check");
  add_file(duality);
  duality->add_option("--twist", betti_opts.twist, "tau: none, modular, 2modular, file, or 'v1;v2;...'");
  auto* dual_label = duality->add_option("--max-label", betti_opts.max_label,
                                         "labels -N..N (default 8 for n <= 2, else 6)");
  duality->add_option("--degrees", betti_opts.degrees, "cohomological degree range a..b");

  auto* sweep_cmd = app.add_subcommand("sweep", "duality on random structures");
  sweep_cmd->add_option("--family", sweep_opts.family, "diagonal, jacobian or random")
      ->check(CLI::IsMember({"diagonal", "jacobian", "random"}));
  sweep_cmd->add_option("--nvars", sweep_opts.nvars, "number of variables");
  sweep_cmd->add_option("--weights", sweep_opts.weights, "comma-separated weights (default all 1)");
  sweep_cmd->add_option("--coeff-bound", sweep_opts.coeff_bound, "coefficient bound");
  sweep_cmd->add_option("--degree", sweep_opts.degree,
                        "bracket degree (random) or potential weight (jacobian)");
  sweep_cmd->add_option("--count", sweep_opts.count, "number of candidates");
  sweep_cmd->add_option("--seed", sweep_opts.seed, "64-bit seed");
  sweep_cmd->add_option("--max-label", sweep_opts.max_label, "labels -N..N");
  sweep_cmd->add_option("--json", common.json, "write a JSON report to this path ('-' for stdout)");
  sweep_cmd->add_flag("--timing", common.timing, "include wall-clock timing in the JSON report");

  auto* uea = app.add_subcommand("uea", "Poisson enveloping algebra");
  uea->require_subcommand(1);
  auto* nf = uea->add_subcommand("nf", "PBW normal form of a word such as \"H(x) M(y)\"");
  add_file(nf);
  nf->add_option("word", uea_opts.word, "word in M(<var>) and H(<var>)")->required();
  nf->add_option("--strategy", uea_opts.strategy, "leftmost or rightmost")
      ->check(CLI::IsMember({"leftmost", "rightmost"}));
  auto* nak = uea->add_subcommand("nakayama", "Nakayama automorphism and Calabi-Yau verdict");
  add_file(nak);
  auto* ext = uea->add_subcommand("ext-check", "top Ext group is the twisted module A^delta");
  add_file(ext);
  ext->add_option("--seed", uea_opts.seed, "64-bit seed");
  ext->add_option("--witnesses", uea_opts.witnesses, "random witnesses per check");

  auto* corpus_cmd = app.add_subcommand("corpus", "bundled example structures");
  corpus_cmd->require_subcommand(1);
  auto* list = corpus_cmd->add_subcommand("list", "list bundled structures");
  auto* show = corpus_cmd->add_subcommand("show", "print a bundled structure file");
  show->add_option("name", corpus_arg, "structure name")->required();
  auto* exp = corpus_cmd->add_subcommand("export", "write all bundled files to a directory");
  exp->add_option("dir", corpus_arg, "target directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? Exit::ok : Exit::usage;
  }

  try {
    if (*check) code = cmd_check(common);
    else if (*betti_cmd) code = cmd_betti(common, betti_opts);
    else if (*duality) code = cmd_duality(common, betti_opts, dual_label->count() > 0);
    else if (*sweep_cmd) code = cmd_sweep(common, sweep_opts);
    else if (*nf) code = cmd_uea_nf(common, uea_opts);
    else if (*nak) code = cmd_uea_nakayama(common);
    else if (*ext) code = cmd_uea_ext(common, uea_opts);
    else if (*list) code = cmd_corpus_list();
    else if (*show) code = cmd_corpus_show(corpus_arg);
    else if (*exp) code = cmd_corpus_export(corpus_arg);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Exit::usage;
  } catch (const JacobiError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Exit::jacobi;
  } catch (const StructureError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Exit::usage;
  } catch (const WeightBookkeepingError& e) {
    std::cerr << "internal error (weight bookkeeping): " << e.what() << "\n";
    return Exit::bookkeeping;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Exit::usage;
  }
  return code;
}
