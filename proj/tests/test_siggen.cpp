#include <doctest.h>
TEST_CASE("placeholder test_siggen") { CHECK(true); }
