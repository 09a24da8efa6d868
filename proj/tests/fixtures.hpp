#pragma once

#include "spas/core_model.hpp"
#include "spas/solvers.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <string>
#include <utility>
#include <vector>

// Two worked instances shared across the test binaries.
//
// one_to_one: four students, four projects, four lecturers, every capacity 1,
// so it behaves like a tiny marriage market with one project per lecturer.
//
// nine_students: nine students and eight projects split between two
// lecturers (p1..p2, p5..p6 under l1; the rest under l2), capacities
// c1 = c3 = 2, d1 = 4, d2 = 5. It admits exactly seven stable matchings and
// four meta-rotations, which the expectations below spell out.

namespace fixtures {

inline constexpr const char* kOneToOneText = R"(students 4
projects 4
lecturers 4
s1: p1 p2
s2: p3 p4
s3: p2 p1
s4: p4 p1 p3
p1: cap 1 lecturer l3
p2: cap 1 lecturer l1
p3: cap 1 lecturer l4
p4: cap 1 lecturer l2
l1: cap 1 prefs s1 s3
l2: cap 1 prefs s2 s4
l3: cap 1 prefs s3 s4 s1
l4: cap 1 prefs s4 s2 s1
)";

inline constexpr const char* kNineStudentsText = R"(students 9
projects 8
lecturers 2
s1: p1 p2 p4 p3
s2: p1 p4 p3 p2
s3: p3 p1 p2 p4
s4: p3 p2 p1 p4
s5: p4 p3 p1
s6: p5 p2 p7
s7: p7 p3 p6
s8: p6 p8
s9: p8 p2 p3
p1: cap 2 lecturer l1
p2: cap 1 lecturer l1
p3: cap 2 lecturer l2
p4: cap 1 lecturer l2
p5: cap 1 lecturer l1
p6: cap 1 lecturer l1
p7: cap 1 lecturer l2
p8: cap 1 lecturer l2
l1: cap 4 prefs s7 s9 s3 s4 s5 s1 s2 s6 s8
l2: cap 5 prefs s6 s1 s2 s5 s3 s4 s7 s8 s9
)";

// The seven stable matchings of nine_students, student-optimal first,
// lecturer-optimal last.
inline constexpr std::array<const char*, 7> kNineStudentsStable = {
    "s1 p1\ns2 p1\ns3 p3\ns4 p3\ns5 p4\ns6 p5\ns7 p7\ns8 p6\ns9 p8\n",
    "s1 p1\ns2 p1\ns3 p3\ns4 p3\ns5 p4\ns6 p5\ns7 p7\ns8 p8\ns9 p2\n",
    "s1 p1\ns2 p1\ns3 p3\ns4 p3\ns5 p4\ns6 p7\ns7 p6\ns8 p8\ns9 p2\n",
    "s1 p1\ns2 p4\ns3 p3\ns4 p1\ns5 p3\ns6 p5\ns7 p7\ns8 p8\ns9 p2\n",
    "s1 p1\ns2 p4\ns3 p3\ns4 p1\ns5 p3\ns6 p7\ns7 p6\ns8 p8\ns9 p2\n",
    "s1 p4\ns2 p3\ns3 p1\ns4 p1\ns5 p3\ns6 p5\ns7 p7\ns8 p8\ns9 p2\n",
    "s1 p4\ns2 p3\ns3 p1\ns4 p1\ns5 p3\ns6 p7\ns7 p6\ns8 p8\ns9 p2\n",
};

inline constexpr const char* kOneToOneStudentOptimal = "s1 p1\ns2 p3\ns3 p2\ns4 p4\n";
inline constexpr const char* kOneToOneLecturerOptimal = "s1 p2\ns2 p4\ns3 p1\ns4 p3\n";

// nine_students pruned to the pairs that occur in some stable matching:
// every list shrinks to the span between the student-optimal and
// lecturer-optimal assignments, and s5 (left with p4 p3 only) drops off
// l1's list.
inline constexpr const char* kNineStudentsReducedText = R"(students 9
projects 8
lecturers 2
s1: p1 p2 p4
s2: p1 p4 p3
s3: p3 p1
s4: p3 p2 p1
s5: p4 p3
s6: p5 p2 p7
s7: p7 p3 p6
s8: p6 p8
s9: p8 p2
p1: cap 2 lecturer l1
p2: cap 1 lecturer l1
p3: cap 2 lecturer l2
p4: cap 1 lecturer l2
p5: cap 1 lecturer l1
p6: cap 1 lecturer l1
p7: cap 1 lecturer l2
p8: cap 1 lecturer l2
l1: cap 4 prefs s7 s9 s3 s4 s1 s2 s6 s8
l2: cap 5 prefs s6 s1 s2 s5 s3 s4 s7 s8 s9
)";

// The four meta-rotations of nine_students, in canonical text form.
inline constexpr const char* kRho1 = "rho = (s8,p6)(s9,p8)";
inline constexpr const char* kRho2 = "rho = (s6,p5)(s7,p7)";
inline constexpr const char* kRho3 = "rho = (s2,p1)(s5,p4)(s4,p3)";
inline constexpr const char* kRho4 = "rho = (s1,p1)(s2,p4)(s3,p3)";

inline spas::Instance one_to_one()
{
    return spas::parse_instance(kOneToOneText);
}

inline spas::Instance nine_students()
{
    return spas::parse_instance(kNineStudentsText);
}

/// index is 1-based to match the names above (stable matching 1..7)
inline spas::Matching nine_students_stable(const spas::Instance& instance, int index)
{
    return spas::parse_matching(instance, kNineStudentsStable.at(index - 1));
}

namespace detail {

// Shifted "ring" preferences with seeded perturbations. Uniform draws almost
// always collapse to a single stable matching at this scale; rotating every
// student's list by one against reversed lecturer lists manufactures the
// cyclic disagreement that rotations need, while every size and capacity
// stays within the sweep bounds (students <= 6, projects <= 5,
// lecturers <= 3, capacities <= 2, lists <= 4).
inline spas::Instance ring_instance(std::uint32_t seed)
{
    std::mt19937 rng(seed);
    auto draw = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint32_t>(hi - lo + 1)); };

    int n2 = draw(4, 5);
    int n1 = std::min(6, n2 + draw(0, 1));
    int n3 = draw(2, 3);
    int list_len = std::min(4, n2 - draw(0, 1));

    std::vector<spas::ProjectSpec> projects(n2);
    for (int p = 1; p <= n2; ++p) {
        projects[p - 1].capacity = draw(1, 2);
        projects[p - 1].owner = 1 + (p - 1) % n3;
    }

    std::vector<spas::StudentPref> students(n1);
    for (int s = 1; s <= n1; ++s)
        for (int i = 0; i < list_len; ++i)
            students[s - 1].ranked_projects.push_back(1 + (s - 1 + i) % n2);
    int swaps = draw(0, 4);
    for (int i = 0; i < swaps; ++i) {
        auto& list = students[draw(1, n1) - 1].ranked_projects;
        int a = draw(0, static_cast<int>(list.size()) - 1);
        int b = draw(0, static_cast<int>(list.size()) - 1);
        std::swap(list[a], list[b]);
    }

    std::vector<spas::LecturerSpec> lecturers(n3);
    for (int l = 1; l <= n3; ++l) {
        lecturers[l - 1].capacity = draw(1, 2);
        auto& ranked = lecturers[l - 1].ranked_students;
        for (int s = n1; s >= 1; --s) {
            bool lists_one = false;
            for (int p : students[s - 1].ranked_projects)
                if (projects[p - 1].owner == l)
                    lists_one = true;
            if (lists_one)
                ranked.push_back(s);
        }
        int list_swaps = draw(0, 2);
        for (int i = 0; i < list_swaps && ranked.size() >= 2; ++i) {
            int a = draw(0, static_cast<int>(ranked.size()) - 1);
            int b = draw(0, static_cast<int>(ranked.size()) - 1);
            std::swap(ranked[a], ranked[b]);
        }
    }

    return spas::Instance(std::move(students), std::move(projects), std::move(lecturers));
}

}

/// One seeded instance of the property-sweep distribution: a mix of uniform
/// draws, dense uniform draws and ring-structured draws, all within
/// students <= 6, projects <= 5, lecturers <= 3, capacities <= 2, lists <= 4.
inline spas::Instance sweep_instance(std::uint32_t seed)
{
    switch (seed % 3) {
    case 0:
        return spas::random_instance(seed);
    case 1: {
        spas::RandomBounds dense;
        dense.min_students = 6;
        dense.min_list = 3;
        return spas::random_instance(seed, dense);
    }
    default:
        return detail::ring_instance(seed);
    }
}

}
