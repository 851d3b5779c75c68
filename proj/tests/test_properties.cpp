#include "doctest.h"

#include <iostream>

#include "properties.hpp"

TEST_CASE("randomized properties with a fixed seed")
{
	const props::Summary s = props::run_all(1000, 20240611);
	for (const auto& note : s.notes)
		MESSAGE(note);
	CHECK(s.cases >= 1000);
	CHECK(s.failures == 0);
}

TEST_CASE("a different seed")
{
	const props::Summary s = props::run_all(200, 7);
	CHECK(s.failures == 0);
}
