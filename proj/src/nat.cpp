#include "qg/nat.hpp"

namespace qg {

std::string nat_to_string(const Nat& n) { return n.str(); }

}  // namespace qg
