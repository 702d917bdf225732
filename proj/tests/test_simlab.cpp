#include <doctest.h>
TEST_CASE("placeholder test_simlab") { CHECK(true); }
