#ifndef POISSON_IO_HPP
#define POISSON_IO_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "poisson/duality.hpp"
#include "poisson/structure.hpp"

namespace poisson {

using Json = nlohmann::ordered_json;

/// Structure file, a sectioned key-value text:
///
///   # comment
///   [algebra]
///   vars = x, y
///   weights = 1, 1
///   degree = 0          (optional; needed only for the zero bracket)
///
///   [bracket]
///   x,y = x*y           (y,x = ... is accepted and negated)
///
///   [twist]             (optional; values sigma(x_i))
///   x = x
///   y = -y
struct StructureFile {
  std::vector<std::string> vars;
  std::vector<std::int64_t> weights;
  std::optional<std::int64_t> degree;
  std::vector<BracketEntry> entries;
  /// One value per variable; unlisted variables map to 0.
  std::optional<std::vector<Polynomial>> twist;
};

class FileParseError : public std::runtime_error {
 public:
  FileParseError(const std::string& reason, std::size_t line, std::size_t column)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + reason),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Throws FileParseError (1-based line and column).
StructureFile parse_structure_file(std::string_view text);

/// Reads the whole file; throws std::runtime_error if it cannot be opened.
std::string read_text(const std::filesystem::path& path);

/// Builds the structure without throwing on Jacobi failure (see valid()).
/// Other validation problems throw StructureError.
PoissonStructure build_structure(const StructureFile& file);

/// The twist section as a derivation of the structure's degree.
std::optional<PDerivation> file_twist(const StructureFile& file, const PoissonStructure& P);

std::string format_structure_file(const PoissonStructure& P, const std::string& title = "");

Json structure_json(const PoissonStructure& P);
Json derivation_json(const PoissonStructure& P, const PDerivation& sigma);

Json to_json(const Window& w);
Window window_from_json(const Json& j);
Json to_json(const BettiTable& t);
BettiTable betti_from_json(const Json& j);
Json to_json(const DualityReport& r);
DualityReport duality_from_json(const Json& j);

/// {"command", "input_digest", "structure", "result", "version"}.
Json make_report(const std::string& command, const std::string& input_digest, Json structure,
                 Json result);

std::string version_string();

}  // namespace poisson

#endif  // POISSON_IO_HPP
