#include "doctest.h"

#include "wigsmooth/units.hpp"

using namespace wigsmooth;

TEST_CASE("atomic-unit conversions reproduce the reference values") {
    CHECK(std::fabs(units::omega_au_from_wavelength_nm(800.0) - 0.05696) < 1e-4);
    CHECK(std::fabs(units::field_au_from_intensity_Wcm2(3e14) - 0.09245) < 1e-4);
    CHECK(std::fabs(units::time_au_from_fs(160.0) - 6614.6) < 0.1);
}

TEST_CASE("conversions reject non-positive inputs") {
    CHECK_THROWS_AS(units::omega_au_from_wavelength_nm(0.0), config_error);
    CHECK_THROWS_AS(units::field_au_from_intensity_Wcm2(-1.0), config_error);
    CHECK_THROWS_AS(units::time_au_from_fs(0.0), config_error);
}

TEST_CASE("round numbers: intensity from field squares back") {
    const double e0 = units::field_au_from_intensity_Wcm2(3e14);
    CHECK(e0 * e0 * units::intensity_Wcm2_per_field_au2 == doctest::Approx(3e14).epsilon(1e-12));
}
