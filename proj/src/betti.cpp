#include "poisson/betti.hpp"

#include <optional>

namespace poisson {

std::size_t BettiTable::dim(std::size_t p, std::int64_t u) const {
  auto it = cells.find({p, u});
  return it == cells.end() ? 0 : it->second.dim;
}

std::size_t BettiTable::total(std::size_t p) const {
  std::size_t sum = 0;
  for (const auto& [key, cell] : cells) {
    if (key.first == p) sum += cell.dim;
  }
  return sum;
}

BettiTable betti(const PoissonStructure& P, const PDerivation& sigma, Side side,
                 const Window& window, std::string twist_name) {
  if (!P.valid()) throw std::invalid_argument("Poisson structure failed the Jacobi check");
  require_compatible(P, sigma);
  const std::size_t n = P.nvars();
  BettiTable table;
  table.side = side;
  table.structure_digest = P.digest();
  table.twist = std::move(twist_name);
  table.window = window;
  table.window.max_degree = std::min(window.max_degree, n);

  for (std::int64_t u = window.min_label; u <= window.max_label; ++u) {
    std::map<std::size_t, std::size_t> rank_out;
    auto out_rank = [&](std::size_t p) -> std::size_t {
      auto it = rank_out.find(p);
      if (it != rank_out.end()) return it->second;
      const std::size_t r = rank(assemble_matrix(P, sigma, side, p, u));
      rank_out.emplace(p, r);
      return r;
    };
    for (std::size_t p = window.min_degree; p <= table.window.max_degree; ++p) {
      const std::size_t size = slice_basis(P, side, p, u).size();
      std::size_t in = 0;
      if (side == Side::homology) {
        if (p + 1 <= n) in = out_rank(p + 1);
      } else if (p >= 1) {
        in = out_rank(p - 1);
      }
      const std::size_t out = out_rank(p);
      if (out + in > size) {
        throw std::logic_error("rank accounting exceeds slice size; the differential does not square to zero");
      }
      table.cells[{p, u}] = {size - out - in, size};
    }
  }
  return table;
}

std::optional<std::int64_t> euler_mismatch(const BettiTable& table, std::size_t nvars) {
  std::map<std::int64_t, std::pair<long long, long long>> sums;
  std::map<std::int64_t, std::size_t> seen;
  for (const auto& [key, cell] : table.cells) {
    const long long sign = (key.first % 2 == 0) ? 1 : -1;
    sums[key.second].first += sign * static_cast<long long>(cell.chains);
    sums[key.second].second += sign * static_cast<long long>(cell.dim);
    ++seen[key.second];
  }
  for (const auto& [u, s] : sums) {
    if (seen[u] != nvars + 1) continue;
    if (s.first != s.second) return u;
  }
  return std::nullopt;
}

}  // namespace poisson
