// Builds the universal cycle for AG(2,q), prints each window with the line
// it decodes to, and checks it against the brute-force oracle.
//
// usage: ag22_walkthrough [p [k]]

#include <cstdlib>
#include <iostream>

#include "ucycle/ucycle.hpp"

using namespace ucycle;

namespace {

std::ostream& operator<<(std::ostream& os, Vec const& v) {
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os << ')';
}

std::ostream& operator<<(std::ostream& os, ProjVertex const& v) {
  if (v.is_infinity()) return os << '[' << v.coords() << ']';
  return os << v.coords();
}

}  // namespace

int main(int argc, char** argv) {
  const std::uint64_t p = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 2;
  const unsigned k = argc > 2 ? unsigned(std::strtoul(argv[2], nullptr, 10)) : 1;
  const Field f = Field::make(p, k);
  const Cycle c = universal_cycle(2, f);

  std::cout << "AG(2," << f.q() << "): " << c.size() << " vertices\n";
  const auto lines = window_lines(f, c);
  for (std::size_t i = 0; i < c.size(); ++i)
    std::cout << "  " << c.vertices[i] << " -> " << c.vertices[(i + 1) % c.size()] << "   line " << lines[i].base.coords
              << " + t" << lines[i].dir.vec << "\n";

  const AffineReport r = verify_affine(f, 2, c);
  std::cout << (r.passed() ? "every" : "NOT every") << " affine line appears exactly once (" << r.found_count << "/"
            << r.expected_count << ")\n";
  return r.passed() ? 0 : 1;
}
