#include "poisson/corpus.hpp"

#include <algorithm>
#include <array>

namespace poisson {
namespace {

const std::array<CorpusEntry, 10> kCorpus = {{
    {"symplectic-plane", "symplectic plane {x,y} = 1 (degree -2, unimodular)",
     R"(# symplectic plane
[algebra]
vars = x, y
weights = 1, 1

[bracket]
x,y = 1
)"},
    {"log-canonical", "log-canonical plane {x,y} = xy (not unimodular)",
     R"(# log-canonical plane
[algebra]
vars = x, y
weights = 1, 1

[bracket]
x,y = x*y
)"},
    {"diagonal-3", "diagonal quadratic bracket {x_i,x_j} = c_ij x_i x_j on three variables",
     R"(# diagonal quadratic structure
[algebra]
vars = x, y, z
weights = 1, 1, 1

[bracket]
x,y = 2*x*y
x,z = -x*z
y,z = 3*y*z
)"},
    {"jacobian-xyz", "Jacobian structure of phi = xyz",
     R"(# Jacobian structure {x,y} = phi_z, {y,z} = phi_x, {z,x} = phi_y, phi = xyz
[algebra]
vars = x, y, z
weights = 1, 1, 1

[bracket]
x,y = x*y
y,z = y*z
z,x = x*z
)"},
    {"cubic-0", "Jacobian structure of phi = (x^3+y^3+z^3)/3",
     R"(# Jacobian structure of phi = (x^3 + y^3 + z^3)/3
[algebra]
vars = x, y, z
weights = 1, 1, 1

[bracket]
x,y = z^2
y,z = x^2
z,x = y^2
)"},
    {"cubic-1", "Jacobian structure of phi = (x^3+y^3+z^3)/3 + xyz",
     R"(# Jacobian structure of phi = (x^3 + y^3 + z^3)/3 + xyz
[algebra]
vars = x, y, z
weights = 1, 1, 1

[bracket]
x,y = z^2 + x*y
y,z = x^2 + y*z
z,x = y^2 + x*z
)"},
    {"cubic-neg2", "Jacobian structure of phi = (x^3+y^3+z^3)/3 - 2xyz",
     R"(# Jacobian structure of phi = (x^3 + y^3 + z^3)/3 - 2xyz
[algebra]
vars = x, y, z
weights = 1, 1, 1

[bracket]
x,y = z^2 - 2*x*y
y,z = x^2 - 2*y*z
z,x = y^2 - 2*x*z
)"},
    {"cubic-5-3", "Jacobian structure of phi = (x^3+y^3+z^3)/3 + (5/3)xyz",
     R"(# Jacobian structure of phi = (x^3 + y^3 + z^3)/3 + 5/3*xyz
[algebra]
vars = x, y, z
weights = 1, 1, 1

[bracket]
x,y = z^2 + 5/3*x*y
y,z = x^2 + 5/3*y*z
z,x = y^2 + 5/3*x*z
)"},
    {"zero-2", "zero bracket on two variables",
     R"(# zero bracket
[algebra]
vars = x, y
weights = 1, 1
degree = 0

[bracket]
)"},
    {"zero-3", "zero bracket on three variables",
     R"(# zero bracket
[algebra]
vars = x, y, z
weights = 1, 1, 1
degree = 0

[bracket]
)"},
}};

}  // namespace

std::span<const CorpusEntry> corpus() { return kCorpus; }

const CorpusEntry* find_corpus(std::string_view name) {
  auto it = std::find_if(kCorpus.begin(), kCorpus.end(),
                         [&](const CorpusEntry& e) { return e.name == name; });
  return it == kCorpus.end() ? nullptr : &*it;
}

}  // namespace poisson
