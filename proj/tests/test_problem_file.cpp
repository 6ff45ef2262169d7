#include <gtest/gtest.h>

#include <sstream>

#include "ghwsm/problem_file.hpp"

using namespace ghwsm;

namespace {

ProblemFile parse(const std::string& text) {
    std::istringstream in(text);
    return parse_problem(in, "t.txt");
}

std::string error_of(const std::string& text) {
    try {
        parse(text);
    } catch (const ProblemFileError& e) {
        return e.what();
    }
    return "";
}

const char* good = "# comment\n"
                   "dimension: 2\n"
                   "lower: abs(x1) + abs(x2)\n"
                   "upper: 2*abs(x1) + 2*abs(x2)   # trailing\n"
                   "\n"
                   "S: -1 1 -1 1\n"
                   "Sbar: 0 0 0 0\n"
                   "alpha: 0.8\n"
                   "grid: 17\n"
                   "seed: 3\n";

} // namespace

TEST(ProblemFile, ParsesAllKeys) {
    const ProblemFile pf = parse(good);
    EXPECT_EQ(pf.dimension, 2u);
    EXPECT_EQ(pf.upper, "2*abs(x1) + 2*abs(x2)");
    EXPECT_FALSE(pf.domain.has_value());
    EXPECT_EQ(*pf.alpha, 0.8);
    const WsmProblem p = pf.problem(*pf.alpha);
    EXPECT_EQ(p.grid, 17u);
    EXPECT_EQ(p.seed, 3u);
    EXPECT_EQ(p.f.domain().lo(), (Vec{-1, -1}));
    EXPECT_EQ(p.f.eval(Vec{0.5, -0.5}), Interval(1, 2));
}

TEST(ProblemFile, ErrorsCarryLineNumbers) {
    std::string text = good;
    EXPECT_NE(error_of("dimension: 1\nlower: x1 +\nupper: 1\nS: -1 1\nSbar: 0 0\n").find("t.txt:2:"),
              std::string::npos);
    EXPECT_NE(error_of("dimension: 1\nlower: x1\nupper: x1\nS: 1 -1\nSbar: 0 0\n").find("t.txt:4:"),
              std::string::npos);
    EXPECT_NE(error_of("dimension: 1\nlower: x1\nupper: x1\nS: -1 1 2\nSbar: 0 0\n").find("expected 2 numbers"),
              std::string::npos);
    EXPECT_NE(error_of("dimension: 1\nbogus: 3\n").find("t.txt:2: unknown key"), std::string::npos);
    EXPECT_NE(error_of("dimension: 1\ndimension: 1\n").find("duplicate"), std::string::npos);
    EXPECT_NE(error_of("dimension: 1\nno colon here\n").find("t.txt:2:"), std::string::npos);
    EXPECT_NE(error_of("dimension: 1\nlower: x2\nupper: x1\nS: -1 1\nSbar: 0 0\n").find("t.txt:2:"),
              std::string::npos);
    EXPECT_NE(error_of("dimension: 1\nlower: x1\nupper: x1\nS: -1 1\nSbar: 0 0\nalpha: -1\n").find("t.txt:6:"),
              std::string::npos);
    EXPECT_NE(error_of("dimension: 1\nlower: x1\nupper: x1\nS: -1 1\n").find("missing required key 'Sbar'"),
              std::string::npos);
    EXPECT_NE(error_of("dimension: 1\nlower: x1\nupper: x1\nS: -1 1\nSbar: 0 2\n").find("Sbar is not contained"),
              std::string::npos);
    EXPECT_NE(error_of("dimension: 1\nlower: x1\nupper: x1\ndomain: 0 1\nS: -1 1\nSbar: 0 0\n")
                  .find("S is not contained"),
              std::string::npos);
}

TEST(ProblemFile, ShippedProblemsLoad) {
    const std::string dir = GHWSM_PROBLEMS_DIR;
    for (const char* name : {"sharp_1d.txt", "smooth_1d.txt", "not_wsm.txt", "l1_2d.txt", "bilinear_a005.txt",
                             "bilinear_a05.txt"}) {
        EXPECT_NO_THROW(load_problem(dir + "/" + name)) << name;
    }
    EXPECT_EQ(*load_problem(dir + "/bilinear_a005.txt").alpha, 0.05);
    EXPECT_THROW(load_problem(dir + "/bad_box.txt"), ProblemFileError);
    EXPECT_THROW(load_problem(dir + "/does_not_exist.txt"), ProblemFileError);
}
