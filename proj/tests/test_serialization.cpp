#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "gptaudit/audit.hpp"
#include "gptaudit/discrimination.hpp"
#include "gptaudit/geometry.hpp"
#include "gptaudit/models.hpp"
#include "gptaudit/serialization.hpp"

using namespace gptaudit;
using nlohmann::json;

TEST_CASE("model JSON schema") {
    const auto pentagon = polygon_model(5);
    const auto doc = json::parse(model_to_json(pentagon));
    CHECK(doc["name"] == "polygon-5");
    CHECK(doc["kind"] == "polytope");
    CHECK(doc["dim"] == 3);
    CHECK(doc["unit_effect"] == json::array({0.0, 0.0, 1.0}));
    REQUIRE(doc["pure_states"].size() == 5);
    REQUIRE(doc["effects"].size() == 12);
    CHECK(doc["pure_states"][0][0].get<double>() ==
          doctest::Approx(polygon_radius(5)).epsilon(1e-15));

    const auto qubit_doc = json::parse(model_to_json(qubit_model()));
    CHECK(qubit_doc["kind"] == "qubit");
    CHECK(qubit_doc["pure_states"] == "bloch_sphere");

    const auto sp_doc = json::parse(model_to_json(spekkens_model()));
    CHECK(sp_doc["kind"] == "measurement_list");
    REQUIRE(sp_doc["measurements"].size() == 3);
    CHECK(sp_doc["state_names"].size() == 6);
}

TEST_CASE("round trip is exact") {
    for (const auto& model : {polygon_model(5), polygon_model(8), classical_model(4)}) {
        const auto text = model_to_json(model);
        const auto loaded = model_from_json_text(text);
        REQUIRE(loaded.pure_states.size() == model.pure_states.size());
        REQUIRE(loaded.effects.size() == model.effects.size());
        for (std::size_t i = 0; i < model.pure_states.size(); ++i) {
            CHECK(vec_dist(loaded.pure_states[i].coords, model.pure_states[i].coords) == 0.0);
        }
        for (std::size_t i = 0; i < model.effects.size(); ++i) {
            CHECK(vec_dist(loaded.effects[i].coords, model.effects[i].coords) == 0.0);
        }
        // a second serialization is byte-identical
        CHECK(model_to_json(loaded) == text);
    }

    // structural flags are reconstructed on load
    const auto pentagon = model_from_json_text(model_to_json(polygon_model(5)));
    CHECK(pentagon.effects[0].ray_extremal);
    CHECK_FALSE(pentagon.effects[5].ray_extremal);
    CHECK(pentagon.effects[0].complement_index == 5);
    const auto r = mesd_polytope(pentagon, pentagon.pure_states[0], pentagon.pure_states[1]);
    CHECK(r.pE == doctest::Approx((3.0 - std::sqrt(5.0)) / 4.0).epsilon(1e-12));
    CHECK(r.pure_count() == 2);

    const auto spekkens = model_from_json_text(model_to_json(spekkens_model()));
    CHECK(mesd_spekkens(spekkens, 0, 2).pE == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("squit serializes as the 4-gon") {
    CHECK(model_to_json(squit_model()) == model_to_json(polygon_model(4)));
}

TEST_CASE("malformed model JSON is rejected") {
    CHECK_THROWS_AS(model_from_json_text("not json"), std::invalid_argument);
    CHECK_THROWS_AS(model_from_json_text("[1,2,3]"), std::invalid_argument);
    CHECK_THROWS_AS(model_from_json_text(R"({"name":"x","kind":"polytope","dim":3})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        model_from_json_text(
            R"({"name":"x","kind":"wat","dim":3,"unit_effect":[0,0,1],"pure_states":[],"effects":[]})"),
        std::invalid_argument);

    // non-normalized state
    CHECK_THROWS_AS(model_from_json_text(R"({
        "name": "bad", "kind": "polytope", "dim": 2,
        "unit_effect": [1, 1],
        "pure_states": [[1, 0.5], [0, 1]],
        "effects": [[0.5, 0.5]]
    })"),
                    std::invalid_argument);

    // effect out of range on a listed state
    CHECK_THROWS_AS(model_from_json_text(R"({
        "name": "bad", "kind": "polytope", "dim": 2,
        "unit_effect": [1, 1],
        "pure_states": [[1, 0], [0, 1]],
        "effects": [[2, 0]]
    })"),
                    std::invalid_argument);

    // effect body not closed under complements
    CHECK_THROWS_AS(model_from_json_text(R"({
        "name": "bad", "kind": "polytope", "dim": 2,
        "unit_effect": [1, 1],
        "pure_states": [[1, 0], [0, 1]],
        "effects": [[1, 0]]
    })"),
                    std::invalid_argument);
}

TEST_CASE("a user-supplied polytope model works end to end") {
    // a unit square state space (gbit written by hand)
    const std::string text = R"({
        "name": "hand-gbit", "kind": "polytope", "dim": 3,
        "unit_effect": [0, 0, 1],
        "pure_states": [[1, 1, 1], [-1, 1, 1], [-1, -1, 1], [1, -1, 1]],
        "effects": [[0, 0, 0], [0, 0, 1],
                    [0.5, 0, 0.5], [-0.5, 0, 0.5], [0, 0.5, 0.5], [0, -0.5, 0.5]]
    })";
    const auto model = model_from_json_text(text);
    CHECK(model.pure_states.size() == 4);
    CHECK(model.effects[2].ray_extremal);
    CHECK_FALSE(model.effects[1].ray_extremal);  // the unit effect is not an extreme ray
    const auto r = mesd_polytope(model, model.pure_states[0], model.pure_states[1]);
    CHECK(r.pE == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("sweep CSV schemas and round trip") {
    const auto odd = sweep_odd(2, 10);
    const auto csv = sweep_odd_csv(odd);
    std::istringstream in(csv);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "m,n,p,p_bar,abs_diff");
    std::size_t row = 0;
    while (std::getline(in, line)) {
        REQUIRE(row < odd.size());
        std::istringstream fields(line);
        std::string field;
        std::getline(fields, field, ',');
        CHECK(std::stoi(field) == odd[row].m);
        std::getline(fields, field, ',');
        CHECK(std::stoi(field) == odd[row].n);
        // re-parsed values equal the in-memory ones at 12 significant digits
        std::getline(fields, field, ',');
        CHECK(format_sig(std::stod(field)) == format_sig(odd[row].p));
        std::getline(fields, field, ',');
        CHECK(format_sig(std::stod(field)) == format_sig(odd[row].p_bar));
        std::getline(fields, field, ',');
        CHECK(format_sig(std::stod(field)) == format_sig(odd[row].abs_diff));
        ++row;
    }
    CHECK(row == odd.size());

    CHECK(sweep_even1_csv(sweep_even_case1(2, 3)).substr(0, 23) == "m,l,n,p,p_bar,abs_diff\n");
    const auto csv2 = sweep_even2_csv(sweep_even_case2(1, 2));
    CHECK(csv2.substr(0, 28) == "m,l,n,pE,min_pure_asymmetry\n");

    // deterministic rendering
    CHECK(sweep_odd_csv(odd) == csv);
    CHECK(format_sig(0.3819660112501051518) == "0.38196601125");
}

TEST_CASE("report JSON") {
    const auto rep = audit_is(polygon_model(5));
    const auto doc = json::parse(is_report_to_json(rep));
    CHECK(doc["model"] == "polygon-5");
    CHECK(doc["satisfied"] == false);
    CHECK(doc["pairs"].size() == 10);

    const auto gis = audit_gis(squit_model(), {0.75});
    const auto gdoc = json::parse(gis_report_to_json(gis));
    CHECK(gdoc["satisfied"] == false);
    CHECK(gdoc["rows"].size() > 0);

    const auto r = mesd_polytope(polygon_model(5), polygon_model(5).pure_states[0],
                                 polygon_model(5).pure_states[1]);
    const auto rdoc = json::parse(result_to_json(r));
    CHECK(rdoc["pE"].get<double>() == doctest::Approx((3.0 - std::sqrt(5.0)) / 4.0));
    CHECK(rdoc["minimizers"].size() == r.minimizers.size());
}
