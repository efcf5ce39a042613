#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "baxter/io.hpp"
#include "baxter/measure.hpp"

using namespace baxter;

namespace {

MeasureSpec tridiagonal() {
    return MeasureSpec::trig({{0, cxd(1.0)}, {-1, cxd(0.5)}, {1, cxd(1.0 / 3.0)}});
}

}  // namespace

TEST_CASE("lebesgue moments are character orthogonality") {
    const MeasureSpec leb = MeasureSpec::lebesgue();
    CHECK(moment(leb, 0) == cxd(1.0));
    CHECK(moment(leb, 3) == cxd(0.0));
    CHECK(moment(leb, -7) == cxd(0.0));
}

TEST_CASE("trig density moments mirror the coefficient map") {
    const cxd a(0.25, 0.1), b(-0.125, 0.05);
    const MeasureSpec spec = MeasureSpec::trig({{1, a}, {-1, b}});
    CHECK(moment(spec, -1) == a);
    CHECK(moment(spec, 1) == b);
    CHECK(moment(spec, 0) == cxd(0.0));
    CHECK(moment(spec, 2) == cxd(0.0));
}

TEST_CASE("point mass moments evaluate the atom") {
    const MeasureSpec spec = MeasureSpec::atoms({{0.0, cxd(0.3)}});
    CHECK(moment(spec, 5) == cxd(0.3));
    CHECK(moment(spec, 0) == cxd(0.3));

    const double th = 1.2;
    const MeasureSpec rotated = MeasureSpec::atoms({{th, cxd(0.5, -0.25)}});
    const cxd expect = cxd(0.5, -0.25) * std::polar(1.0, -3 * th);
    CHECK(std::abs(moment(rotated, 3) - expect) < 1e-16);
}

TEST_CASE("moment tables are pointwise consistent") {
    const MomentTable t = moment_table(MeasureSpec::lebesgue(), 2);
    CHECK(t.at(-2) == cxd(0.0));
    CHECK(t.at(0) == cxd(1.0));
    CHECK(t.at(2) == cxd(0.0));

    MeasureSpec sum = MeasureSpec::lebesgue();
    sum.add(PointMasses{{{0.0, cxd(0.3)}}});
    const MomentTable ts = moment_table(sum, 1);
    CHECK(ts.at(-1) == cxd(0.3));
    CHECK(ts.at(0) == cxd(1.3));
    CHECK(ts.at(1) == cxd(0.3));

    const MomentTable tt = moment_table(
        MeasureSpec::trig({{1, cxd(0.5)}, {-1, cxd(1.0 / 3.0)}}), 1);
    CHECK(tt.at(-1) == cxd(0.5));
    CHECK(tt.at(0) == cxd(0.0));
    CHECK(tt.at(1) == cxd(1.0 / 3.0));
}

TEST_CASE("raw moments throw outside the table") {
    const MeasureSpec spec = MeasureSpec::raw(1, {cxd(0.1), cxd(1.0), cxd(0.2)});
    CHECK(moment(spec, 1) == cxd(0.2));
    CHECK_THROWS_AS(moment(spec, 2), IndexOutOfRange);
    CHECK_THROWS_AS(moment_table(spec, 3), IndexOutOfRange);
}

TEST_CASE("quadrature agrees with the closed forms below Nyquist") {
    Rng rng(2024);
    for (int trial = 0; trial < 10; ++trial) {
        std::map<int, cxd> coeff;
        coeff[0] = cxd(1.0);
        for (int m = 1; m <= 4; ++m) {
            coeff[m] = rng.complex_in_annulus(0.0, 0.2);
            coeff[-m] = rng.complex_in_annulus(0.0, 0.2);
        }
        const MeasureSpec spec = MeasureSpec::trig(coeff);
        for (int k = -6; k <= 6; ++k) {
            const cxd closed = moment(spec, k);
            const cxd quad = moment_quadrature(spec, k, 2048);
            CHECK(std::abs(closed - quad) <= 1e-12);
        }
    }
}

TEST_CASE("conjugation symmetry for real nonnegative densities") {
    OpucDensity od;
    od.cos_coeff = {1.0, 0.8};  // 1 + 0.8 cos(theta) > 0
    MeasureSpec spec;
    spec.parts.push_back(od);
    for (int k = 0; k <= 5; ++k) {
        const cxd plus = moment(spec, k);
        const cxd minus = moment(spec, -k);
        CHECK(std::abs(minus - std::conj(plus)) <= 1e-15);
    }
    const MeasureSpec leb = MeasureSpec::lebesgue();
    for (int k = 0; k <= 5; ++k)
        CHECK(moment(leb, -k) == std::conj(moment(leb, k)));
}

TEST_CASE("mu_0 is the total mass and moments are additive") {
    MeasureSpec sum = MeasureSpec::lebesgue();
    sum.add(PointMasses{{{0.7, cxd(0.2, 0.1)}, {2.1, cxd(-0.1, 0.0)}}});
    const MeasureSpec atoms_only =
        MeasureSpec::atoms({{0.7, cxd(0.2, 0.1)}, {2.1, cxd(-0.1, 0.0)}});
    for (int k = -4; k <= 4; ++k) {
        const cxd split = moment(MeasureSpec::lebesgue(), k) + moment(atoms_only, k);
        CHECK(std::abs(moment(sum, k) - split) <= 1e-16);
    }
    CHECK(std::abs(moment(sum, 0) - (cxd(1.0) + cxd(0.2, 0.1) + cxd(-0.1, 0.0))) <= 1e-15);
}

TEST_CASE("opuc density must be positive") {
    OpucDensity od;
    od.cos_coeff = {0.5, 1.0};  // dips negative
    MeasureSpec spec;
    spec.parts.push_back(od);
    CHECK_THROWS_AS(moment(spec, 0), Error);
}

TEST_CASE("measure specs round-trip through JSON") {
    MeasureSpec sum = tridiagonal();
    sum.add(PointMasses{{{0.3, cxd(0.1, -0.2)}}});
    OpucDensity od;
    od.cos_coeff = {1.0, 0.5};
    od.nodes = 512;
    sum.parts.push_back(od);

    const json j = to_json(sum);
    const MeasureSpec back = measure_from_json(j);
    for (int k = -5; k <= 5; ++k)
        CHECK(std::abs(moment(sum, k) - moment(back, k)) <= 1e-15);

    // single-component documents stay flat
    const json leb = to_json(MeasureSpec::lebesgue());
    CHECK(leb.at("type") == "lebesgue");
}

TEST_CASE("moment table CSV export carries full precision") {
    const MomentTable t = moment_table(tridiagonal(), 2);
    const std::string path = "/tmp/baxter_test_moments.csv";
    write_moment_table_csv(path, t);
    const std::string body = read_text_file(path);
    CHECK(body.find("k,re_mu,im_mu") == 0);
    CHECK(body.find("0.3333333333333333") != std::string::npos);
}
