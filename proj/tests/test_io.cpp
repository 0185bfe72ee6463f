#include "distlat/io.hpp"

#include <doctest.h>

#include <filesystem>
#include <string>

using namespace distlat;

namespace {

const char* kSquareJson = R"({
  "lattice": "Z2",
  "offset": ["0", "0"],
  "points": [[0,0], [1,0], [0,1], [1,1]]
})";

std::string tmp_path(const char* name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

} // namespace

TEST_CASE("lattice json accepts built-in labels and explicit gram matrices") {
    const auto z2 = lattice_from_json(R"({"label": "Z2"})");
    CHECK(z2->label() == "Z2");
    CHECK(z2->lambda1_sq() == Rat(1));

    const auto hex = lattice_from_json(R"({
      "gram": [["1", "1/2"], ["1/2", "1"]],
      "label": "my-hex"
    })");
    CHECK(hex->label() == "my-hex");
    CHECK(hex->gram().g12 == Rat(1, 2));
    CHECK(hex->covolume_sq() == Rat(3, 4));

    // Bare integers are accepted wherever a rational is expected.
    const auto scaled = lattice_from_json(R"({"gram": [[2, 0], [0, 2]]})");
    CHECK(scaled->lambda1_sq() == Rat(2));

    // Serialize and re-parse: the exact gram survives.
    const auto back = lattice_from_json(lattice_to_json(*hex));
    CHECK(back->gram().g11 == hex->gram().g11);
    CHECK(back->gram().g12 == hex->gram().g12);
    CHECK(back->gram().g22 == hex->gram().g22);
    CHECK(back->label() == "my-hex");
}

TEST_CASE("lattice json rejects malformed input with a typed error") {
    CHECK_THROWS_AS((void)lattice_from_json(""), parse_error);
    CHECK_THROWS_AS((void)lattice_from_json(R"({"label": "E8"})"), parse_error);
    CHECK_THROWS_AS((void)lattice_from_json(R"({"gram": [[1, 0]]})"), parse_error);
    // Asymmetric gram.
    CHECK_THROWS_AS((void)lattice_from_json(R"({"gram": [["1","0"],["1","1"]]})"), parse_error);
    // Malformed rational string.
    CHECK_THROWS_AS((void)lattice_from_json(R"({"gram": [["a","0"],["0","1"]]})"), parse_error);
    // Indefinite gram is a domain precondition, not a parse defect.
    CHECK_THROWS_AS((void)lattice_from_json(R"({"gram": [["1","2"],["2","1"]]})"),
                    precondition_error);
}

TEST_CASE("parse errors carry origin, line, and column") {
    const std::string bad = "{\n  \"lattice\": \"Z2\",\n  \"points\": [[0,0], [1 1]]\n}";
    try {
        (void)pointset_from_json(bad, "square.json");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("square.json:3:") != std::string::npos);
    }

    try {
        (void)lattice_from_json("", "empty.json");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(std::string(e.what()).find("empty.json:1:1") != std::string::npos);
    }
}

TEST_CASE("point-set json round-trips exactly") {
    const auto pts = pointset_from_json(kSquareJson, "square.json");
    CHECK(pts.size() == 4);
    CHECK(pts.model().label() == "Z2");
    CHECK(pts.offset() == Vec2Q{});

    const auto back = pointset_from_json(pointset_to_json(pts));
    CHECK(back.points() == pts.points());
    CHECK(back.offset() == pts.offset());
    CHECK(back.model().gram().g11 == pts.model().gram().g11);

    // Singleton sets parse; the precondition surfaces in the operation.
    const auto one = pointset_from_json(R"({"lattice": "Z2", "points": [[3,4]]})");
    CHECK(one.size() == 1);
    CHECK_THROWS_AS((void)distance_spectrum(one), precondition_error);

    CHECK_THROWS_AS((void)pointset_from_json(R"({"lattice": "Z2"})"), parse_error);
    CHECK_THROWS_AS((void)pointset_from_json(R"({"lattice": "Z2", "points": [[1,2,3]]})"),
                    parse_error);
}

TEST_CASE("unit-square spectrum renders the golden csv") {
    const auto pts = pointset_from_json(kSquareJson, "square.json");
    const auto spec = distance_spectrum(pts);
    REQUIRE(spec.k() == 2);

    CHECK(spectrum_to_csv(spec, pts.model().scale()) ==
          "key,m,distance_sq_numer,distance_sq_denom\n"
          "1,8,1,1\n"
          "2,4,2,1\n");

    // A manifest digest, when supplied, rides along as a comment line.
    const std::string tagged = spectrum_to_csv(spec, pts.model().scale(), "fnv1a:0123456789abcdef");
    CHECK(tagged.rfind("# manifest: fnv1a:0123456789abcdef\n", 0) == 0);

    // Fractional squared distances split into exact numerator/denominator.
    const auto half = lattice_from_json(R"({"gram": [["1/2","0"],["0","1/2"]]})");
    const auto hpts = LatticePointSet::make(half, {}, {{0, 0}, {1, 0}, {1, 1}});
    const std::string csv = spectrum_to_csv(distance_spectrum(hpts), half->scale());
    CHECK(csv.find("1,4,1,2\n") != std::string::npos);

    const std::string js = spectrum_to_json(spec, pts.model());
    CHECK(js.find("\"total_mass\": \"12\"") != std::string::npos);
    CHECK(js.find("\"distance_sq\": \"2\"") != std::string::npos);
}

TEST_CASE("window spec json parses disks and rectangles") {
    const auto disk = window_spec_from_json(R"({
      "lattice": "hex",
      "shape": "disk",
      "z": ["1/3", "2/7"],
      "R_sq": "25/4"
    })");
    CHECK(disk.shape == "disk");
    CHECK(disk.z == (Vec2Q{Rat(1, 3), Rat(2, 7)}));
    CHECK(disk.r_sq == Rat(25, 4));
    CHECK(disk.tau == Vec2Q{});

    const auto rect = window_spec_from_json(R"({
      "lattice": "Z2",
      "shape": "rect",
      "a0": [-2, 5],
      "L": [8, 3]
    })");
    CHECK(rect.shape == "rect");
    CHECK(rect.a0 == (Vec2I{-2, 5}));
    CHECK(rect.l1 == 8);
    CHECK(rect.l2 == 3);

    CHECK_THROWS_AS((void)window_spec_from_json(R"({"lattice": "Z2", "shape": "ball"})"),
                    parse_error);

    // Parsed disk specs feed straight into the window builder.
    const auto w = build_disk_window(disk.model, disk.tau, disk.z, disk.r_sq);
    CHECK(w.size() > 0);
    const std::string rep = window_report_to_json(w, window_spectrum(w));
    CHECK(rep.find("\"schema\": \"distlat.window/1\"") != std::string::npos);
}

TEST_CASE("classification report serializes every certificate family") {
    // Grid: the two-shift branch with its constructive surrogate label.
    std::vector<Vec2I> grid;
    for (Int x = 0; x < 12; ++x)
        for (Int y = 0; y < 12; ++y) grid.push_back({x, y});
    const auto gpts = LatticePointSet::make(
        std::make_shared<LatticeModel>(LatticeModel::builtin("Z2")), {}, grid);
    const auto grep = classify(gpts);
    REQUIRE(grep.outcome == Outcome::TwoShift);
    const std::string gjson = classification_to_json(grep);
    CHECK(gjson.find("\"outcome\": \"TwoShift\"") != std::string::npos);
    CHECK(gjson.find("\"method\": \"constructive-surrogate\"") != std::string::npos);
    CHECK(gjson.find("\"residue_sizes\"") != std::string::npos);

    // Collinear: the line certificate.
    std::vector<Vec2I> line;
    for (Int t = 0; t < 30; ++t) line.push_back({2 * t, 3 * t});
    const auto lrep = classify(LatticePointSet::make(
        std::make_shared<LatticeModel>(LatticeModel::builtin("Z2")), {}, line));
    REQUIRE(lrep.outcome == Outcome::LineHeavy);
    const std::string ljson = classification_to_json(lrep);
    CHECK(ljson.find("\"outcome\": \"LineHeavy\"") != std::string::npos);
    CHECK(ljson.find("\"s_line\": 30") != std::string::npos);
}

TEST_CASE("witness and lower-bound tables use the pinned columns") {
    const auto hex = std::make_shared<LatticeModel>(LatticeModel::builtin("hex"));
    const auto wit = construct_for_k(hex, 50);
    const std::string wjson = witness_to_json(wit, hex->label());
    CHECK(wjson.find("\"k_target\": 50") != std::string::npos);
    CHECK(wjson.find("\"ratio_n\"") != std::string::npos);

    const auto table = lower_bound_table(hex, {30, 60}, 0.5);
    const std::string csv = lower_bound_table_to_csv(table);
    CHECK(csv.rfind("k,n,k_actual,R_sq,ratio_n,ratio_pred_a,ratio_pred_b\n", 0) == 0);
    // Header plus one row per k.
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("bernays and covering reports serialize") {
    const auto est = bernays_estimate(QuadForm{1, 0, 1}, {1000, 2000, 4000, 8000});
    const std::string bjson = bernays_to_json(est, QuadForm{1, 0, 1});
    CHECK(bjson.find("\"c_fit\"") != std::string::npos);
    CHECK(bjson.find("\"extrapolated\": true") != std::string::npos);

    const auto z2 = std::make_shared<LatticeModel>(LatticeModel::builtin("Z2"));
    const auto w = build_disk_window(z2, {}, {}, Rat(100));
    const std::string cjson = covering_to_json(verify_diffset_covering(w));
    CHECK(cjson.find("\"guarantee_holds\": true") != std::string::npos);
}

TEST_CASE("verify artifacts omit wall time so reruns are byte-identical") {
    SuiteOptions opts;
    opts.trials = 10;
    opts.nmax = 12;
    std::vector<SuiteResult> a{run_suite("inversion", opts), run_suite("L6.3", opts)};
    std::vector<SuiteResult> b{run_suite("inversion", opts), run_suite("L6.3", opts)};
    // Wall clocks differ between runs; the rendered artifact must not.
    CHECK(verify_results_to_json(a, "fnv1a:0000000000000000") ==
          verify_results_to_json(b, "fnv1a:0000000000000000"));
    const std::string js = verify_results_to_json(a, "");
    CHECK(js.find("\"all_passed\": true") != std::string::npos);
    CHECK(js.find("seconds") == std::string::npos);
}

TEST_CASE("run manifest digest covers the work, not the timing") {
    RunManifest m;
    m.command = "distlat spectrum --in square.json";
    m.config = {{"in", "square.json"}, {"format", "csv"}};
    m.inputs = {{"square.json", "fnv1a:00000000deadbeef"}};
    m.version = library_version();

    const std::string d1 = m.digest();
    CHECK(d1.rfind("fnv1a:", 0) == 0);
    CHECK(d1.size() == 6 + 16);

    // Timing and output paths never perturb the digest...
    m.wall_seconds = 12.75;
    m.outputs = {"out.csv"};
    CHECK(m.digest() == d1);

    // ...and neither does the raw command line, which is provenance rather
    // than identity (it may name a different --out for the same work).
    RunManifest renamed = m;
    renamed.command = "distlat spectrum --in square.json --out elsewhere.csv";
    CHECK(renamed.digest() == d1);

    // ...but any change to the work itself does.
    RunManifest m2 = m;
    m2.config[1].second = "json";
    CHECK(m2.digest() != d1);
    RunManifest m3 = m;
    m3.inputs[0].second = "fnv1a:0000000000000001";
    CHECK(m3.digest() != d1);

    const std::string js = m.to_json();
    CHECK(js.find("\"digest\": \"" + d1 + "\"") != std::string::npos);
    CHECK(js.find("\"schema\": \"distlat.manifest/1\"") != std::string::npos);
}

TEST_CASE("text files round-trip and digest stably") {
    const std::string path = tmp_path("distlat_io_test.txt");
    const std::string body = "key,m\n1,8\n";
    write_text_file(path, body);
    CHECK(read_text_file(path) == body);

    char expect[32];
    std::snprintf(expect, sizeof expect, "fnv1a:%016llx",
                  static_cast<unsigned long long>(fnv1a64(body)));
    CHECK(file_digest(path) == expect);
    std::filesystem::remove(path);

    CHECK_THROWS_AS((void)read_text_file(tmp_path("distlat_io_missing.txt")), io_error);
    CHECK(std::string(library_version()) == "distlat 0.1.0");
}
