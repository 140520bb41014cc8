#include "poisson/duality.hpp"

#include <numeric>
#include <stdexcept>

namespace poisson {
namespace {

struct Candidate {
  std::int64_t shift = 0;
  std::size_t mismatches = 0;
  std::size_t nonzero_matches = 0;
  std::vector<DualityCell> cells;
};

Candidate evaluate(const DualityReport& r, std::int64_t s) {
  Candidate c;
  c.shift = s;
  const std::size_t n = r.nvars;
  for (const auto& [key, cell] : r.cohomology.cells) {
    const auto [i, u] = key;
    const std::int64_t partner = u + s;
    auto it = r.homology.cells.find({n - i, partner});
    if (it == r.homology.cells.end()) continue;
    DualityCell dc{i, u, partner, cell.dim, it->second.dim, cell.dim == it->second.dim};
    if (!dc.match) {
      ++c.mismatches;
    } else if (dc.cohomology_dim != 0) {
      ++c.nonzero_matches;
    }
    c.cells.push_back(dc);
  }
  return c;
}

bool better(const Candidate& a, const Candidate& b) {
  if (a.mismatches != b.mismatches) return a.mismatches < b.mismatches;
  if (a.nonzero_matches != b.nonzero_matches) return a.nonzero_matches > b.nonzero_matches;
  const auto aa = a.shift < 0 ? -a.shift : a.shift;
  const auto bb = b.shift < 0 ? -b.shift : b.shift;
  if (aa != bb) return aa < bb;
  return a.shift < b.shift;
}

std::vector<std::int64_t> sweep_weights(const SweepConfig& config) {
  if (config.weights.empty()) return std::vector<std::int64_t>(config.nvars, 1);
  if (config.weights.size() != config.nvars) {
    throw std::invalid_argument("sweep weights must have one entry per variable");
  }
  return config.weights;
}

std::vector<std::string> sweep_vars(std::size_t n) {
  static const char* names[] = {"x", "y", "z", "w"};
  std::vector<std::string> vars;
  for (std::size_t i = 0; i < n; ++i) {
    vars.push_back(n <= 4 ? names[i] : "x" + std::to_string(i + 1));
  }
  return vars;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "pass") return Verdict::pass;
  if (s == "fail") return Verdict::fail;
  if (s == "inconclusive") return Verdict::inconclusive;
  throw std::invalid_argument("unknown verdict '" + s + "'");
}

std::optional<std::int64_t> weight_shift(const DualityReport& r) {
  if (!r.shift) return std::nullopt;
  return *r.shift - static_cast<std::int64_t>(r.nvars) * r.degree;
}

Window default_duality_window(std::size_t nvars) {
  return Window::symmetric(nvars <= 2 ? 8 : 6, nvars);
}

DualityReport duality_check(const PoissonStructure& P, const Window& window) {
  return duality_check(P, PDerivation::zero(P.nvars(), P.degree()), window);
}

DualityReport duality_check(const PoissonStructure& P, const PDerivation& tau,
                            const Window& window, std::string twist_name) {
  if (!P.valid()) throw std::invalid_argument("Poisson structure failed the Jacobi check");
  require_compatible(P, tau);
  const std::size_t n = P.nvars();
  const PDerivation delta = modular_derivation(P);

  DualityReport r;
  r.structure_id = P.digest();
  r.nvars = n;
  r.degree = P.degree();
  r.unimodular = delta.is_zero();
  r.twist = std::move(twist_name);

  Window coh_window = window;
  coh_window.max_degree = std::min(window.max_degree, n);
  if (coh_window.min_degree > coh_window.max_degree) {
    throw std::invalid_argument("empty degree range");
  }
  Window hom_window = coh_window;
  hom_window.min_degree = n - coh_window.max_degree;
  hom_window.max_degree = n - coh_window.min_degree;

  r.cohomology = betti(P, tau, Side::cohomology, coh_window, r.twist);
  const std::string hom_twist = r.twist == "none" ? "modular" : r.twist + "+modular";
  r.homology = betti(P, tau + delta, Side::homology, hom_window, hom_twist);

  if (r.unimodular && tau.is_zero()) {
    r.untwisted_homology = betti(P, tau, Side::homology, hom_window, "none");
    r.untwisted_equal = r.untwisted_homology->cells == r.homology.cells;
  }

  // Try every shift that pairs at least one in-window cell. A shift is
  // consistent when all of its pairs agree; among consistent shifts the one
  // matching the most nonzero cells wins.
  bool coh_nonzero = false;
  bool hom_nonzero = false;
  for (const auto& [k, c] : r.cohomology.cells) coh_nonzero = coh_nonzero || c.dim != 0;
  for (const auto& [k, c] : r.homology.cells) hom_nonzero = hom_nonzero || c.dim != 0;
  if (!coh_nonzero && !hom_nonzero) {
    r.verdict = Verdict::inconclusive;
    r.message = "both tables vanish on the window; nothing to align";
    return r;
  }

  const std::int64_t span = window.max_label - window.min_label;
  std::optional<Candidate> best;
  for (std::int64_t s = -span; s <= span; ++s) {
    Candidate c = evaluate(r, s);
    if (c.cells.empty()) continue;
    if (!best || better(c, *best)) best = std::move(c);
  }
  if (!best) {
    r.verdict = Verdict::inconclusive;
    r.message = "no cell has an in-window partner";
    return r;
  }
  if (best->mismatches == 0 && best->nonzero_matches == 0) {
    r.verdict = Verdict::inconclusive;
    r.message = "shift " + std::to_string(best->shift) +
                " is consistent but pairs only zero cells; window too small to align";
    r.cells = std::move(best->cells);
    return r;
  }
  // Every shift within reach is refuted. A shift beyond the window's reach
  // pairs nothing and cannot be refuted, so only call this a failure when the
  // expected shift (weight of the volume form plus n*d) was within reach.
  std::int64_t expected = static_cast<std::int64_t>(n) * P.degree();
  for (const auto w : P.weights()) expected += w;
  if (best->mismatches != 0 && (expected < -span || expected > span)) {
    r.verdict = Verdict::inconclusive;
    r.message = "every shift within the window is refuted, but the expected shift " +
                std::to_string(expected) + " is beyond its reach; widen the window";
    r.cells = std::move(best->cells);
    return r;
  }
  r.cells = std::move(best->cells);
  if (best->mismatches == 0) {
    r.shift = best->shift;
    r.verdict = Verdict::pass;
    if (r.untwisted_equal && !*r.untwisted_equal) {
      r.verdict = Verdict::fail;
      r.message = "homology of A differs from homology of A^delta although delta = 0";
    }
  } else {
    r.verdict = Verdict::fail;
    r.message = "no uniform shift; closest candidate " + std::to_string(best->shift) + " has " +
                std::to_string(best->mismatches) + " mismatched cells";
  }
  return r;
}

std::string to_string(Family f) {
  switch (f) {
    case Family::diagonal: return "diagonal";
    case Family::jacobian: return "jacobian";
    case Family::random: return "random";
  }
  return "random";
}

Family family_from_string(const std::string& s) {
  if (s == "diagonal") return Family::diagonal;
  if (s == "jacobian") return Family::jacobian;
  if (s == "random") return Family::random;
  throw std::invalid_argument("unknown family '" + s + "' (expected diagonal, jacobian or random)");
}

PoissonStructure sweep_candidate(const SweepConfig& config, Rng& rng) {
  const std::size_t n = config.nvars;
  if (n < 2) throw std::invalid_argument("sweep needs at least two variables");
  const auto weights = sweep_weights(config);
  const auto vars = sweep_vars(n);
  std::vector<BracketEntry> entries;
  std::int64_t d = 0;

  switch (config.family) {
    case Family::diagonal:
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          Monomial m(n);
          m[i] = 1;
          m[j] = 1;
          entries.push_back({i, j, Polynomial::term(m, Rational(rng.nonzero(config.coeff_bound)))});
        }
      }
      break;
    case Family::jacobian: {
      if (n != 3) throw std::invalid_argument("the jacobian family needs exactly three variables");
      const Polynomial phi = random_homogeneous(rng, weights, config.degree, config.coeff_bound);
      d = config.degree - std::accumulate(weights.begin(), weights.end(), std::int64_t{0});
      // {x,y} = phi_z, {y,z} = phi_x, {z,x} = phi_y
      entries.push_back({0, 1, differentiate(phi, 2)});
      entries.push_back({1, 2, differentiate(phi, 0)});
      entries.push_back({0, 2, -differentiate(phi, 1)});
      break;
    }
    case Family::random:
      d = config.degree;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          entries.push_back({i, j, random_homogeneous(rng, weights, weights[i] + weights[j] + d,
                                                      config.coeff_bound)});
        }
      }
      break;
  }
  return PoissonStructure::create_unchecked(vars, weights, entries, d);
}

SweepResult sweep(const SweepConfig& config) {
  SweepResult result;
  Rng rng(config.seed);
  for (std::size_t t = 0; t < config.count; ++t) {
    const PoissonStructure P = sweep_candidate(config, rng);
    ++result.attempted;
    if (!P.valid()) {
      ++result.rejected;
      continue;
    }
    result.reports.push_back(
        duality_check(P, Window::symmetric(config.max_label, config.nvars)));
  }
  return result;
}

}  // namespace poisson
