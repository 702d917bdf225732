#include <doctest.h>

#include "fd/polycore/parser.hpp"

using namespace fd::polycore;

namespace {
VarUniverse::Ptr example_universe() {
  return VarUniverse::make({{"f1", VarClass::fault},
                            {"f2", VarClass::fault},
                            {"p1", VarClass::parameter},
                            {"p2", VarClass::parameter}});
}
}  // namespace

TEST_CASE("parse basic polynomial") {
  auto u = example_universe();
  Polynomial p = parse_poly("f1^2*p1^2+1", u);
  CHECK(p.term_count() == 2);
  CHECK(p.to_string() == "f1^2*p1^2 + 1");
}
