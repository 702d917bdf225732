#include <doctest.h>
TEST_CASE("placeholder test_io_bundle") { CHECK(true); }
