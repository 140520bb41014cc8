#include "poisson/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#ifndef POISSONHC_VERSION
#define POISSONHC_VERSION "0.0.0"
#endif

namespace poisson {
namespace {

struct Line {
  std::string_view text;
  std::size_t number = 0;
  std::size_t offset = 0;  // column of text[0], 0-based
};

std::string_view trim(std::string_view s, std::size_t* lead = nullptr) {
  std::size_t a = 0;
  while (a < s.size() && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  std::size_t b = s.size();
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  if (lead) *lead = a;
  return s.substr(a, b - a);
}

[[noreturn]] void fail(const Line& l, std::size_t col, const std::string& why) {
  throw FileParseError(why, l.number, l.offset + col + 1);
}

/// Comma-separated fields with their column offsets.
std::vector<std::pair<std::string_view, std::size_t>> split_list(std::string_view s,
                                                                  std::size_t base) {
  std::vector<std::pair<std::string_view, std::size_t>> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = s.find(',', start);
    const std::string_view raw = s.substr(start, comma == std::string_view::npos ? s.npos : comma - start);
    std::size_t lead = 0;
    out.emplace_back(trim(raw, &lead), base + start + lead);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::int64_t parse_int(const Line& l, std::string_view s, std::size_t col) {
  std::int64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) fail(l, col, "expected an integer");
  return v;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

Polynomial parse_value(const Line& l, std::string_view s, std::size_t col,
                       const std::vector<std::string>& vars) {
  try {
    return parse_polynomial(s, vars);
  } catch (const ParseError& e) {
    fail(l, col + e.position(), e.reason());
  }
}

std::size_t var_index(const Line& l, const std::vector<std::string>& vars, std::string_view name,
                      std::size_t col) {
  auto it = std::find(vars.begin(), vars.end(), name);
  if (it == vars.end()) fail(l, col, "unknown variable '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - vars.begin());
}

Json cell_json(std::size_t p, std::int64_t u, const BettiCell& c) {
  return Json{{"p", p}, {"u", u}, {"dim", c.dim}, {"chains", c.chains}};
}

}  // namespace

StructureFile parse_structure_file(std::string_view text) {
  enum class Section { none, algebra, bracket, twist };
  StructureFile file;
  Section section = Section::none;
  bool seen_vars = false;
  bool seen_weights = false;
  Line weights_line;
  std::vector<std::pair<Line, std::pair<std::string_view, std::size_t>>> pending_bracket;
  std::vector<std::pair<Line, std::pair<std::string_view, std::size_t>>> pending_twist;
  std::vector<std::pair<std::string_view, std::size_t>> weight_fields;
  std::size_t last_line = 0;

  std::size_t pos = 0;
  for (std::size_t number = 1; pos <= text.size(); ++number) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view raw = text.substr(pos, eol - pos);
    pos = eol + 1;
    last_line = number;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::size_t lead = 0;
    const std::string_view body = trim(raw, &lead);
    if (body.empty()) continue;
    const Line line{body, number, lead};

    if (body.front() == '[') {
      if (body.back() != ']') fail(line, body.size(), "expected ']'");
      const std::string_view name = trim(body.substr(1, body.size() - 2));
      if (name == "algebra") {
        section = Section::algebra;
      } else if (name == "bracket") {
        section = Section::bracket;
      } else if (name == "twist") {
        section = Section::twist;
        file.twist.emplace();
      } else {
        fail(line, 1, "unknown section '" + std::string(name) + "'");
      }
      continue;
    }
    const std::size_t eq = body.find('=');
    if (eq == std::string_view::npos) fail(line, body.size(), "expected 'key = value'");
    std::size_t klead = 0;
    const std::string_view key = trim(body.substr(0, eq), &klead);
    std::size_t vlead = 0;
    const std::string_view value = trim(body.substr(eq + 1), &vlead);
    const std::size_t vcol = eq + 1 + vlead;
    if (value.empty()) fail(line, vcol, "missing value");

    switch (section) {
      case Section::none:
        fail(line, 0, "entry outside any section");
      case Section::algebra:
        if (key == "vars") {
          if (seen_vars) fail(line, klead, "duplicate key 'vars'");
          seen_vars = true;
          for (const auto& [name, col] : split_list(value, vcol)) {
            if (!is_identifier(name)) fail(line, col, "invalid variable name '" + std::string(name) + "'");
            if (std::find(file.vars.begin(), file.vars.end(), name) != file.vars.end()) {
              fail(line, col, "duplicate variable '" + std::string(name) + "'");
            }
            file.vars.emplace_back(name);
          }
        } else if (key == "weights") {
          if (seen_weights) fail(line, klead, "duplicate key 'weights'");
          seen_weights = true;
          weights_line = line;
          weight_fields = split_list(value, vcol);
          for (const auto& [w, col] : weight_fields) file.weights.push_back(parse_int(line, w, col));
        } else if (key == "degree") {
          if (file.degree) fail(line, klead, "duplicate key 'degree'");
          file.degree = parse_int(line, value, vcol);
        } else {
          fail(line, klead, "unknown key '" + std::string(key) + "' in [algebra]");
        }
        break;
      case Section::bracket:
        pending_bracket.push_back({line, {key, klead}});
        break;
      case Section::twist:
        pending_twist.push_back({line, {key, klead}});
        break;
    }
  }

  const Line end_line{"", last_line, 0};
  if (!seen_vars) fail(end_line, 0, "missing 'vars' in [algebra]");
  if (!seen_weights) {
    file.weights.assign(file.vars.size(), 1);
  } else if (file.weights.size() != file.vars.size()) {
    fail(weights_line, weight_fields.front().second,
         "expected " + std::to_string(file.vars.size()) + " weights, got " +
             std::to_string(file.weights.size()));
  }

  const std::size_t n = file.vars.size();
  std::vector<bool> seen_pair(n * n, false);
  for (const auto& [line, kk] : pending_bracket) {
    const auto [key, kcol] = kk;
    const auto names = split_list(key, kcol);
    if (names.size() != 2) fail(line, kcol, "bracket key must be 'a,b'");
    const std::size_t a = var_index(line, file.vars, names[0].first, names[0].second);
    const std::size_t b = var_index(line, file.vars, names[1].first, names[1].second);
    if (a == b) fail(line, kcol, "bracket of a variable with itself");
    if (seen_pair[std::min(a, b) * n + std::max(a, b)]) fail(line, kcol, "duplicate bracket entry");
    seen_pair[std::min(a, b) * n + std::max(a, b)] = true;
    const std::size_t eq = line.text.find('=');
    std::size_t vlead = 0;
    const std::string_view value = trim(line.text.substr(eq + 1), &vlead);
    Polynomial f = parse_value(line, value, eq + 1 + vlead, file.vars);
    if (a < b) {
      file.entries.push_back({a, b, std::move(f)});
    } else {
      file.entries.push_back({b, a, -f});
    }
  }
  if (file.twist) {
    file.twist->assign(n, Polynomial(n));
    std::vector<bool> seen(n, false);
    for (const auto& [line, kk] : pending_twist) {
      const auto [key, kcol] = kk;
      const std::size_t i = var_index(line, file.vars, key, kcol);
      if (seen[i]) fail(line, kcol, "duplicate twist value");
      seen[i] = true;
      const std::size_t eq = line.text.find('=');
      std::size_t vlead = 0;
      const std::string_view value = trim(line.text.substr(eq + 1), &vlead);
      (*file.twist)[i] = parse_value(line, value, eq + 1 + vlead, file.vars);
    }
  }
  return file;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

PoissonStructure build_structure(const StructureFile& file) {
  return PoissonStructure::create_unchecked(file.vars, file.weights, file.entries, file.degree);
}

std::optional<PDerivation> file_twist(const StructureFile& file, const PoissonStructure& P) {
  if (!file.twist) return std::nullopt;
  return PDerivation(*file.twist, P.degree());
}

std::string format_structure_file(const PoissonStructure& P, const std::string& title) {
  std::ostringstream out;
  if (!title.empty()) out << "# " << title << "\n";
  out << "[algebra]\nvars = ";
  for (std::size_t i = 0; i < P.nvars(); ++i) out << (i ? ", " : "") << P.vars()[i];
  out << "\nweights = ";
  for (std::size_t i = 0; i < P.nvars(); ++i) out << (i ? ", " : "") << P.weights()[i];
  out << "\ndegree = " << P.degree() << "\n\n[bracket]\n";
  for (const auto& e : P.entries()) {
    out << P.vars()[e.i] << "," << P.vars()[e.j] << " = " << P.format(e.value) << "\n";
  }
  return out.str();
}

Json structure_json(const PoissonStructure& P) {
  Json brackets = Json::array();
  for (const auto& e : P.entries()) {
    brackets.push_back({{"pair", P.vars()[e.i] + "," + P.vars()[e.j]}, {"value", P.format(e.value)}});
  }
  return Json{{"vars", P.vars()},
              {"weights", P.weights()},
              {"degree", P.degree()},
              {"brackets", std::move(brackets)},
              {"digest", P.digest()}};
}

Json derivation_json(const PoissonStructure& P, const PDerivation& sigma) {
  Json j = Json::object();
  for (std::size_t i = 0; i < P.nvars(); ++i) j[P.vars()[i]] = P.format(sigma[i]);
  return j;
}

Json to_json(const Window& w) {
  return Json{{"min_label", w.min_label},
              {"max_label", w.max_label},
              {"min_degree", w.min_degree},
              {"max_degree", w.max_degree}};
}

Window window_from_json(const Json& j) {
  Window w;
  w.min_label = j.at("min_label").get<std::int64_t>();
  w.max_label = j.at("max_label").get<std::int64_t>();
  w.min_degree = j.at("min_degree").get<std::size_t>();
  w.max_degree = j.at("max_degree").get<std::size_t>();
  return w;
}

Json to_json(const BettiTable& t) {
  Json cells = Json::array();
  for (const auto& [key, c] : t.cells) cells.push_back(cell_json(key.first, key.second, c));
  return Json{{"side", to_string(t.side)},
              {"twist", t.twist},
              {"structure_digest", t.structure_digest},
              {"window", to_json(t.window)},
              {"cells", std::move(cells)}};
}

BettiTable betti_from_json(const Json& j) {
  BettiTable t;
  t.side = side_from_string(j.at("side").get<std::string>());
  t.twist = j.at("twist").get<std::string>();
  t.structure_digest = j.at("structure_digest").get<std::string>();
  t.window = window_from_json(j.at("window"));
  for (const auto& c : j.at("cells")) {
    t.cells[{c.at("p").get<std::size_t>(), c.at("u").get<std::int64_t>()}] = {
        c.at("dim").get<std::size_t>(), c.at("chains").get<std::size_t>()};
  }
  return t;
}

Json to_json(const DualityReport& r) {
  Json cells = Json::array();
  for (const auto& c : r.cells) {
    cells.push_back({{"i", c.degree},
                     {"u", c.label},
                     {"partner_u", c.partner_label},
                     {"cohomology", c.cohomology_dim},
                     {"homology", c.homology_dim},
                     {"match", c.match}});
  }
  Json j{{"structure_id", r.structure_id},
         {"nvars", r.nvars},
         {"degree", r.degree},
         {"unimodular", r.unimodular},
         {"twist", r.twist},
         {"verdict", to_string(r.verdict)}};
  if (r.shift) {
    j["shift"] = *r.shift;
    j["weight_shift"] = *weight_shift(r);
  } else {
    j["shift"] = "no uniform shift";
    j["weight_shift"] = nullptr;
  }
  j["message"] = r.message;
  j["cells"] = std::move(cells);
  j["cohomology"] = to_json(r.cohomology);
  j["homology"] = to_json(r.homology);
  if (r.untwisted_homology) {
    j["untwisted"] = {{"equal", r.untwisted_equal.value_or(false)},
                      {"homology", to_json(*r.untwisted_homology)}};
  } else {
    j["untwisted"] = nullptr;
  }
  return j;
}

DualityReport duality_from_json(const Json& j) {
  DualityReport r;
  r.structure_id = j.at("structure_id").get<std::string>();
  r.nvars = j.at("nvars").get<std::size_t>();
  r.degree = j.at("degree").get<std::int64_t>();
  r.unimodular = j.at("unimodular").get<bool>();
  r.twist = j.at("twist").get<std::string>();
  r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  if (j.at("shift").is_number_integer()) r.shift = j.at("shift").get<std::int64_t>();
  r.message = j.at("message").get<std::string>();
  for (const auto& c : j.at("cells")) {
    r.cells.push_back({c.at("i").get<std::size_t>(), c.at("u").get<std::int64_t>(),
                       c.at("partner_u").get<std::int64_t>(), c.at("cohomology").get<std::size_t>(),
                       c.at("homology").get<std::size_t>(), c.at("match").get<bool>()});
  }
  r.cohomology = betti_from_json(j.at("cohomology"));
  r.homology = betti_from_json(j.at("homology"));
  if (!j.at("untwisted").is_null()) {
    r.untwisted_equal = j.at("untwisted").at("equal").get<bool>();
    r.untwisted_homology = betti_from_json(j.at("untwisted").at("homology"));
  }
  return r;
}

Json make_report(const std::string& command, const std::string& input_digest, Json structure,
                 Json result) {
  return Json{{"command", command},
              {"input_digest", input_digest},
              {"structure", std::move(structure)},
              {"result", std::move(result)},
              {"version", version_string()}};
}

std::string version_string() { return POISSONHC_VERSION; }

}  // namespace poisson
