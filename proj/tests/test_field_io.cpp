#include <sstream>

#include "doctest.h"

#include "gsmooth/errors.hpp"
#include "gsmooth/field_io.hpp"
#include "test_support.hpp"

using namespace gsmooth;

namespace {

PhaseSpaceField small_field() {
    const QuadratureGrid grid(-4, 4, 0.25);
    return smooth(wigner_grid(testing::test_state("cat:1.5,0"), grid), {0.6, 0.45});
}

void require_identical(const PhaseSpaceField& a, const PhaseSpaceField& b) {
    CHECK(a.grid() == b.grid());
    CHECK(a.label() == b.label());
    CHECK(a.sigma1() == b.sigma1());
    CHECK(a.sigma2() == b.sigma2());
    CHECK((a.values().array() == b.values().array()).all());
}

}  // namespace

TEST_CASE("field labels") {
    for (FieldLabel l : {FieldLabel::wigner, FieldLabel::husimi, FieldLabel::q, FieldLabel::g})
        CHECK(parse_field_label(to_string(l)) == l);
    CHECK_THROWS_AS(parse_field_label("p"), InvalidSpec);
}

TEST_CASE("CSV round trip is exact") {
    const PhaseSpaceField field = small_field();
    std::stringstream buffer;
    write_field_csv(buffer, field);
    const std::string text = buffer.str();
    CHECK(text.rfind("# label,sigma1,sigma2,min,max,step\n# g,", 0) == 0);
    require_identical(read_field_csv(buffer), field);
}

TEST_CASE("JSON round trip is exact") {
    const PhaseSpaceField field = small_field();
    const nlohmann::json j = field_to_json(field);
    CHECK(j["label"] == "g");
    CHECK(j["grid"]["step"] == 0.25);
    CHECK(j["values"].size() == 33);
    require_identical(field_from_json(nlohmann::json::parse(j.dump())), field);
}

TEST_CASE("malformed field files") {
    std::istringstream no_header("1,2,3\n");
    CHECK_THROWS_AS(read_field_csv(no_header), InvalidSpec);

    std::stringstream buffer;
    write_field_csv(buffer, small_field());
    std::string text = buffer.str();
    std::istringstream truncated(text.substr(0, text.size() / 2));
    CHECK_THROWS_AS(read_field_csv(truncated), InvalidSpec);

    nlohmann::json j = field_to_json(small_field());
    j["values"].erase(0);
    CHECK_THROWS_AS(field_from_json(j), InvalidSpec);
    nlohmann::json missing = field_to_json(small_field());
    missing.erase("grid");
    CHECK_THROWS_AS(field_from_json(missing), InvalidSpec);
}
