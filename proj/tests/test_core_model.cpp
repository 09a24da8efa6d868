#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "spas/core_model.hpp"
#include "spas/solvers.hpp"

#include <random>

using namespace spas;

TEST_CASE("parsing the one-to-one instance")
{
    Instance instance = fixtures::one_to_one();
    CHECK(instance.num_students() == 4);
    CHECK(instance.num_projects() == 4);
    CHECK(instance.num_lecturers() == 4);
    for (int p = 1; p <= 4; ++p)
        CHECK(instance.project_capacity(p) == 1);
    CHECK(instance.owner(1) == 3);
    CHECK(instance.owner(2) == 1);
    CHECK(instance.ranked_projects(4) == std::vector<int>{4, 1, 3});
    CHECK(instance.student_rank(4, 1) == 1);
    CHECK(instance.lecturer_rank(3, 4) == 1);
    CHECK(instance.acceptable(1, 1));
    CHECK_FALSE(instance.acceptable(1, 3));
}

TEST_CASE("parsing the nine-student instance")
{
    Instance instance = fixtures::nine_students();
    CHECK(instance.num_students() == 9);
    CHECK(instance.num_projects() == 8);
    CHECK(instance.num_lecturers() == 2);
    CHECK(instance.project_capacity(1) == 2);
    CHECK(instance.project_capacity(3) == 2);
    CHECK(instance.project_capacity(2) == 1);
    CHECK(instance.lecturer_capacity(1) == 4);
    CHECK(instance.lecturer_capacity(2) == 5);
    CHECK(instance.projects_of(1) == std::vector<int>{1, 2, 5, 6});
    CHECK(instance.projects_of(2) == std::vector<int>{3, 4, 7, 8});
}

TEST_CASE("an instance with no students is valid")
{
    Instance instance = parse_instance(
        "students 0\nprojects 1\nlecturers 1\n"
        "p1: cap 1 lecturer l1\n"
        "l1: cap 1 prefs\n");
    CHECK(instance.num_students() == 0);
    CHECK(instance.num_projects() == 1);
}

TEST_CASE("comments and blank lines are ignored")
{
    Instance instance = parse_instance(
        "# a comment\n\nstudents 1\nprojects 1\nlecturers 1  # trailing\n\n"
        "s1: p1\n"
        "p1: cap 1 lecturer l1\n"
        "l1: cap 2 prefs s1\n");
    CHECK(instance.ranked_projects(1) == std::vector<int>{1});
    CHECK(instance.lecturer_capacity(1) == 2);
}

TEST_CASE("parse errors carry the offending line")
{
    auto parse_fails = [](const char* text, int line) {
        try {
            parse_instance(text);
            FAIL_CHECK("expected a ParseError for:\n" << text);
        }
        catch (const ParseError& e) {
            CHECK(e.line() == line);
        }
    };

    // syntax error
    parse_fails("students 1\nprojects 1\nlecturers 1\ns1 p1\np1: cap 1 lecturer l1\nl1: cap 1 prefs s1\n", 4);
    // reference to an undefined project
    parse_fails("students 1\nprojects 1\nlecturers 1\ns1: p7\np1: cap 1 lecturer l1\nl1: cap 1 prefs s1\n", 4);
    // reference to an undefined lecturer
    parse_fails("students 1\nprojects 1\nlecturers 1\ns1: p1\np1: cap 1 lecturer l9\nl1: cap 1 prefs s1\n", 5);
    // duplicate entry in a preference list
    parse_fails("students 1\nprojects 2\nlecturers 1\ns1: p1 p2 p1\np1: cap 1 lecturer l1\np2: cap 1 lecturer l1\nl1: cap 1 prefs s1\n", 4);
    // two owner lines for one project
    parse_fails("students 1\nprojects 1\nlecturers 1\ns1: p1\np1: cap 1 lecturer l1\np1: cap 1 lecturer l1\nl1: cap 1 prefs s1\n", 6);
    // nonpositive capacity
    parse_fails("students 1\nprojects 1\nlecturers 1\ns1: p1\np1: cap 0 lecturer l1\nl1: cap 1 prefs s1\n", 5);
}

TEST_CASE("a project without an owner line is rejected")
{
    CHECK_THROWS_AS(parse_instance("students 1\nprojects 1\nlecturers 1\ns1: p1\nl1: cap 1 prefs s1\n"),
        ParseError);
}

TEST_CASE("acceptability closure is enforced")
{
    // s1 lists p1 owned by l1, but l1 does not rank s1
    CHECK_THROWS_AS(parse_instance(
                        "students 2\nprojects 1\nlecturers 1\n"
                        "s1: p1\ns2:\n"
                        "p1: cap 1 lecturer l1\n"
                        "l1: cap 1 prefs s2\n"),
        ParseError);
}

TEST_CASE("instances round-trip through the canonical form")
{
    for (const char* text : {fixtures::kOneToOneText, fixtures::kNineStudentsText}) {
        Instance instance = parse_instance(text);
        CHECK(serialize_instance(instance) == text);
        CHECK(parse_instance(serialize_instance(instance)) == instance);
    }
}

TEST_CASE("matching serialization is canonical and round-trips")
{
    Instance instance = fixtures::one_to_one();
    Matching m(4);
    m.assign(2, 3);
    m.assign(1, 1);
    m.assign(4, 4);
    m.assign(3, 2);
    CHECK(serialize_matching(m) == "s1 p1\ns2 p3\ns3 p2\ns4 p4\n");
    CHECK(parse_matching(instance, serialize_matching(m)) == m);

    Matching empty(4);
    CHECK(serialize_matching(empty) == "");
    CHECK(parse_matching(instance, "") == empty);
}

TEST_CASE("matching round-trip holds for random matchings")
{
    for (std::uint32_t seed = 1; seed <= 100; ++seed) {
        Instance instance = random_instance(seed);
        // greedy capacity-respecting assignment, arbitrary but valid
        Matching m(instance.num_students());
        Loads loads{std::vector<int>(instance.num_projects() + 1, 0),
            std::vector<int>(instance.num_lecturers() + 1, 0)};
        for (int s = 1; s <= instance.num_students(); ++s)
            for (int p : instance.ranked_projects(s)) {
                int l = instance.owner(p);
                if (loads.project[p] < instance.project_capacity(p) &&
                    loads.lecturer[l] < instance.lecturer_capacity(l)) {
                    m.assign(s, p);
                    ++loads.project[p];
                    ++loads.lecturer[l];
                    break;
                }
            }
        CHECK(validate_matching(instance, m).empty());
        CHECK(parse_matching(instance, serialize_matching(m)) == m);
    }
}

TEST_CASE("parsing is total: junk yields a diagnostic, never a crash")
{
    // assembled from grammar fragments, numbers and noise bytes
    const char* pieces[] = {"students", "projects", "lecturers", "s1:", "p1:", "l1:", "cap",
        "lecturer", "prefs", "s1", "p1", "l1", "0", "1", "-3", "99999999999999999999",
        ":", "#", "\xff\xfe", "p", "s", "l", "px", "12"};
    std::mt19937 rng(7);
    for (int round = 0; round < 2000; ++round) {
        std::string text;
        int tokens = static_cast<int>(rng() % 40);
        for (int i = 0; i < tokens; ++i) {
            text += pieces[rng() % (sizeof(pieces) / sizeof(pieces[0]))];
            text += (rng() % 4) ? " " : "\n";
        }
        try {
            parse_instance(text);
        }
        catch (const ParseError&) {
            // a diagnostic is the expected outcome for junk
        }
    }
    CHECK(true);
}

TEST_CASE("matching parse errors")
{
    Instance instance = fixtures::one_to_one();
    CHECK_THROWS_AS(parse_matching(instance, "s1 p1\ns1 p2\n"), ParseError);
    CHECK_THROWS_AS(parse_matching(instance, "s9 p1\n"), ParseError);
    CHECK_THROWS_AS(parse_matching(instance, "s1 p9\n"), ParseError);
    CHECK_THROWS_AS(parse_matching(instance, "s1\n"), ParseError);
}

TEST_CASE("validate_matching reports each violation")
{
    Instance instance = fixtures::nine_students();

    SUBCASE("a stable matching is valid")
    {
        CHECK(validate_matching(instance, fixtures::nine_students_stable(instance, 1)).empty());
    }

    SUBCASE("a pair off the student's list is reported")
    {
        Matching m = fixtures::nine_students_stable(instance, 1);
        m.assign(8, 2);     // s8 only lists p6 and p8
        auto report = validate_matching(instance, m);
        REQUIRE(report.size() == 1);
        CHECK(report.front().find("(s8, p2)") != std::string::npos);
    }

    SUBCASE("capacity overflow is reported")
    {
        Matching m(9);
        for (int s = 1; s <= 4; ++s)
            m.assign(s, 1);     // p1 holds two students at most
        auto report = validate_matching(instance, m);
        REQUIRE(!report.empty());
        CHECK(report.front().find("project p1 capacity 2 exceeded") != std::string::npos);
    }
}
