#include "spas/core_model.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

namespace spas {

ParseError::ParseError(int line, const std::string& message) :
    std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
    line_(line)
{
}

void internal_failure(const std::string& what)
{
    throw InternalError("internal invariant violated: " + what);
}

namespace {

void require(bool ok, const std::string& message)
{
    if (!ok)
        throw std::invalid_argument(message);
}

}

Instance::Instance(std::vector<StudentPref> students,
                   std::vector<ProjectSpec> projects,
                   std::vector<LecturerSpec> lecturers) :
    students_(std::move(students)),
    projects_(std::move(projects)),
    lecturers_(std::move(lecturers))
{
    const int n1 = num_students(), n2 = num_projects(), n3 = num_lecturers();

    student_rank_.assign(n1 + 1, std::vector<int>(n2 + 1, -1));
    lecturer_rank_.assign(n3 + 1, std::vector<int>(n1 + 1, -1));
    projects_of_.assign(n3 + 1, {});

    for (int p = 1; p <= n2; ++p) {
        const ProjectSpec& spec = projects_.at(p - 1);
        require(spec.capacity >= 1, "project p" + std::to_string(p) + " has nonpositive capacity");
        require(spec.owner >= 1 && spec.owner <= n3,
            "project p" + std::to_string(p) + " is owned by undefined lecturer l" + std::to_string(spec.owner));
        projects_of_.at(spec.owner).push_back(p);
    }

    for (int l = 1; l <= n3; ++l) {
        const LecturerSpec& spec = lecturers_.at(l - 1);
        require(spec.capacity >= 1, "lecturer l" + std::to_string(l) + " has nonpositive capacity");
        for (std::size_t i = 0; i < spec.ranked_students.size(); ++i) {
            int s = spec.ranked_students[i];
            require(s >= 1 && s <= n1,
                "lecturer l" + std::to_string(l) + " ranks undefined student s" + std::to_string(s));
            require(lecturer_rank_[l][s] < 0,
                "lecturer l" + std::to_string(l) + " ranks student s" + std::to_string(s) + " twice");
            lecturer_rank_[l][s] = static_cast<int>(i);
        }
    }

    for (int s = 1; s <= n1; ++s) {
        const StudentPref& pref = students_.at(s - 1);
        for (std::size_t i = 0; i < pref.ranked_projects.size(); ++i) {
            int p = pref.ranked_projects[i];
            require(p >= 1 && p <= n2,
                "student s" + std::to_string(s) + " ranks undefined project p" + std::to_string(p));
            require(student_rank_[s][p] < 0,
                "student s" + std::to_string(s) + " ranks project p" + std::to_string(p) + " twice");
            student_rank_[s][p] = static_cast<int>(i);
            int l = projects_.at(p - 1).owner;
            require(lecturer_rank_[l][s] >= 0,
                "student s" + std::to_string(s) + " ranks project p" + std::to_string(p) +
                    " but is missing from lecturer l" + std::to_string(l) + "'s list");
        }
    }
}

bool Instance::students_eq(const Instance& o) const
{
    if (students_.size() != o.students_.size())
        return false;
    for (std::size_t i = 0; i < students_.size(); ++i)
        if (students_[i].ranked_projects != o.students_[i].ranked_projects)
            return false;
    return true;
}

bool Instance::projects_eq(const Instance& o) const
{
    if (projects_.size() != o.projects_.size())
        return false;
    for (std::size_t i = 0; i < projects_.size(); ++i)
        if (projects_[i].capacity != o.projects_[i].capacity || projects_[i].owner != o.projects_[i].owner)
            return false;
    return true;
}

bool Instance::lecturers_eq(const Instance& o) const
{
    if (lecturers_.size() != o.lecturers_.size())
        return false;
    for (std::size_t i = 0; i < lecturers_.size(); ++i)
        if (lecturers_[i].capacity != o.lecturers_[i].capacity ||
            lecturers_[i].ranked_students != o.lecturers_[i].ranked_students)
            return false;
    return true;
}

Loads compute_loads(const Instance& instance, const Matching& matching)
{
    Loads loads;
    loads.project.assign(instance.num_projects() + 1, 0);
    loads.lecturer.assign(instance.num_lecturers() + 1, 0);
    for (int s = 1; s <= matching.num_students(); ++s) {
        int p = matching.project_of(s);
        if (p == 0)
            continue;
        ++loads.project.at(p);
        ++loads.lecturer.at(instance.owner(p));
    }
    return loads;
}

std::vector<int> project_members(const Instance&, const Matching& matching, int p)
{
    std::vector<int> members;
    for (int s = 1; s <= matching.num_students(); ++s)
        if (matching.project_of(s) == p)
            members.push_back(s);
    return members;
}

std::vector<int> lecturer_members(const Instance& instance, const Matching& matching, int l)
{
    std::vector<int> members;
    for (int s = 1; s <= matching.num_students(); ++s) {
        int p = matching.project_of(s);
        if (p != 0 && instance.owner(p) == l)
            members.push_back(s);
    }
    return members;
}

namespace {

struct Line {
    int number = 0;
    std::vector<std::string> tokens;
};

// Strips comments and blank lines, splits the rest on whitespace.
std::vector<Line> tokenize(std::string_view text)
{
    std::vector<Line> lines;
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos)
            eol = text.size();
        std::string_view raw = text.substr(pos, eol - pos);
        ++number;
        pos = eol + 1;
        if (std::size_t hash = raw.find('#'); hash != std::string_view::npos)
            raw = raw.substr(0, hash);
        Line line;
        line.number = number;
        std::istringstream split{std::string(raw)};
        for (std::string token; split >> token;)
            line.tokens.push_back(token);
        if (!line.tokens.empty())
            lines.push_back(std::move(line));
        if (eol == text.size())
            break;
    }
    return lines;
}

int parse_int(const std::string& token, int line)
{
    int value = 0;
    auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || end != token.data() + token.size())
        throw ParseError(line, "expected an integer, got '" + token + "'");
    return value;
}

// "s12" -> 12, also accepting a trailing ':' when strip_colon is set.
int parse_id(std::string token, char prefix, bool strip_colon, int line)
{
    std::string shown = token;
    if (strip_colon) {
        if (token.empty() || token.back() != ':')
            throw ParseError(line, "expected '" + shown + ":' to end with a colon");
        token.pop_back();
    }
    if (token.size() < 2 || token[0] != prefix)
        throw ParseError(line, std::string("expected an id starting with '") + prefix + "', got '" + shown + "'");
    int value = parse_int(token.substr(1), line);
    if (value < 1)
        throw ParseError(line, "entity ids start at 1, got '" + shown + "'");
    return value;
}

int parse_header(const Line& line, const char* keyword)
{
    if (line.tokens.size() != 2 || line.tokens[0] != keyword)
        throw ParseError(line.number, std::string("expected header '") + keyword + " <count>'");
    int count = parse_int(line.tokens[1], line.number);
    if (count < 0)
        throw ParseError(line.number, std::string(keyword) + " count must be nonnegative");
    return count;
}

}

Instance parse_instance(std::string_view text)
{
    std::vector<Line> lines = tokenize(text);
    if (lines.size() < 3)
        throw ParseError(0, "missing header lines (students/projects/lecturers)");

    const int n1 = parse_header(lines[0], "students");
    const int n2 = parse_header(lines[1], "projects");
    const int n3 = parse_header(lines[2], "lecturers");

    std::vector<StudentPref> students(n1);
    std::vector<ProjectSpec> projects(n2);
    std::vector<LecturerSpec> lecturers(n3);
    std::vector<int> seen_student(n1 + 1, 0), seen_project(n2 + 1, 0), seen_lecturer(n3 + 1, 0);

    auto check_id = [](int id, int limit, const char* kind, int line) {
        if (id > limit)
            throw ParseError(line,
                std::string("undefined ") + kind + " id " + std::to_string(id) +
                    " (declared count is " + std::to_string(limit) + ")");
    };

    for (std::size_t i = 3; i < lines.size(); ++i) {
        const Line& line = lines[i];
        const std::string& head = line.tokens[0];
        if (head[0] == 's') {
            int s = parse_id(head, 's', true, line.number);
            check_id(s, n1, "student", line.number);
            if (seen_student[s]++)
                throw ParseError(line.number, "duplicate line for student s" + std::to_string(s));
            StudentPref pref;
            for (std::size_t t = 1; t < line.tokens.size(); ++t) {
                int p = parse_id(line.tokens[t], 'p', false, line.number);
                check_id(p, n2, "project", line.number);
                if (std::find(pref.ranked_projects.begin(), pref.ranked_projects.end(), p) !=
                    pref.ranked_projects.end())
                    throw ParseError(line.number,
                        "duplicate project p" + std::to_string(p) + " in student s" + std::to_string(s) + "'s list");
                pref.ranked_projects.push_back(p);
            }
            students[s - 1] = std::move(pref);
        }
        else if (head[0] == 'p') {
            int p = parse_id(head, 'p', true, line.number);
            check_id(p, n2, "project", line.number);
            if (seen_project[p]++)
                throw ParseError(line.number, "project p" + std::to_string(p) + " has two owner lines");
            if (line.tokens.size() != 5 || line.tokens[1] != "cap" || line.tokens[3] != "lecturer")
                throw ParseError(line.number, "expected 'p<j>: cap <c> lecturer l<k>'");
            ProjectSpec spec;
            spec.capacity = parse_int(line.tokens[2], line.number);
            if (spec.capacity < 1)
                throw ParseError(line.number, "project p" + std::to_string(p) + " has nonpositive capacity");
            spec.owner = parse_id(line.tokens[4], 'l', false, line.number);
            check_id(spec.owner, n3, "lecturer", line.number);
            projects[p - 1] = spec;
        }
        else if (head[0] == 'l') {
            int l = parse_id(head, 'l', true, line.number);
            check_id(l, n3, "lecturer", line.number);
            if (seen_lecturer[l]++)
                throw ParseError(line.number, "duplicate line for lecturer l" + std::to_string(l));
            if (line.tokens.size() < 4 || line.tokens[1] != "cap" || line.tokens[3] != "prefs")
                throw ParseError(line.number, "expected 'l<k>: cap <d> prefs s<x> ...'");
            LecturerSpec spec;
            spec.capacity = parse_int(line.tokens[2], line.number);
            if (spec.capacity < 1)
                throw ParseError(line.number, "lecturer l" + std::to_string(l) + " has nonpositive capacity");
            for (std::size_t t = 4; t < line.tokens.size(); ++t) {
                int s = parse_id(line.tokens[t], 's', false, line.number);
                check_id(s, n1, "student", line.number);
                if (std::find(spec.ranked_students.begin(), spec.ranked_students.end(), s) !=
                    spec.ranked_students.end())
                    throw ParseError(line.number,
                        "duplicate student s" + std::to_string(s) + " in lecturer l" + std::to_string(l) + "'s list");
                spec.ranked_students.push_back(s);
            }
            lecturers[l - 1] = std::move(spec);
        }
        else {
            throw ParseError(line.number, "unrecognized line starting with '" + head + "'");
        }
    }

    for (int s = 1; s <= n1; ++s)
        if (!seen_student[s])
            throw ParseError(0, "missing line for student s" + std::to_string(s));
    for (int p = 1; p <= n2; ++p)
        if (!seen_project[p])
            throw ParseError(0, "project p" + std::to_string(p) + " has no owner line");
    for (int l = 1; l <= n3; ++l)
        if (!seen_lecturer[l])
            throw ParseError(0, "missing line for lecturer l" + std::to_string(l));

    try {
        return Instance(std::move(students), std::move(projects), std::move(lecturers));
    }
    catch (const std::invalid_argument& e) {
        throw ParseError(0, e.what());
    }
}

std::string serialize_instance(const Instance& instance)
{
    std::ostringstream out;
    out << "students " << instance.num_students() << "\n";
    out << "projects " << instance.num_projects() << "\n";
    out << "lecturers " << instance.num_lecturers() << "\n";
    for (int s = 1; s <= instance.num_students(); ++s) {
        out << "s" << s << ":";
        for (int p : instance.ranked_projects(s))
            out << " p" << p;
        out << "\n";
    }
    for (int p = 1; p <= instance.num_projects(); ++p)
        out << "p" << p << ": cap " << instance.project_capacity(p) << " lecturer l" << instance.owner(p) << "\n";
    for (int l = 1; l <= instance.num_lecturers(); ++l) {
        out << "l" << l << ": cap " << instance.lecturer_capacity(l) << " prefs";
        for (int s : instance.ranked_students(l))
            out << " s" << s;
        out << "\n";
    }
    return out.str();
}

Matching parse_matching(const Instance& instance, std::string_view text)
{
    Matching matching(instance.num_students());
    for (const Line& line : tokenize(text)) {
        if (line.tokens.size() != 2)
            throw ParseError(line.number, "expected 's<i> p<j>'");
        int s = parse_id(line.tokens[0], 's', false, line.number);
        int p = parse_id(line.tokens[1], 'p', false, line.number);
        if (s > instance.num_students())
            throw ParseError(line.number, "undefined student s" + std::to_string(s));
        if (p > instance.num_projects())
            throw ParseError(line.number, "undefined project p" + std::to_string(p));
        if (matching.assigned(s))
            throw ParseError(line.number, "student s" + std::to_string(s) + " is assigned twice");
        matching.assign(s, p);
    }
    return matching;
}

std::string serialize_matching(const Matching& matching)
{
    std::ostringstream out;
    for (int s = 1; s <= matching.num_students(); ++s)
        if (matching.assigned(s))
            out << "s" << s << " p" << matching.project_of(s) << "\n";
    return out.str();
}

std::vector<std::string> validate_matching(const Instance& instance, const Matching& matching)
{
    std::vector<std::string> report;
    if (matching.num_students() != instance.num_students()) {
        report.push_back("matching covers " + std::to_string(matching.num_students()) +
            " students but the instance has " + std::to_string(instance.num_students()));
        return report;
    }
    for (int s = 1; s <= instance.num_students(); ++s) {
        int p = matching.project_of(s);
        if (p == 0)
            continue;
        if (p < 1 || p > instance.num_projects()) {
            report.push_back("student s" + std::to_string(s) + " is assigned undefined project p" + std::to_string(p));
            continue;
        }
        if (!instance.acceptable(s, p))
            report.push_back("pair (s" + std::to_string(s) + ", p" + std::to_string(p) + ") is not acceptable");
    }
    if (!report.empty())
        return report;

    Loads loads = compute_loads(instance, matching);
    for (int p = 1; p <= instance.num_projects(); ++p)
        if (loads.project[p] > instance.project_capacity(p))
            report.push_back("project p" + std::to_string(p) + " capacity " +
                std::to_string(instance.project_capacity(p)) + " exceeded: " +
                std::to_string(loads.project[p]) + " assigned");
    for (int l = 1; l <= instance.num_lecturers(); ++l)
        if (loads.lecturer[l] > instance.lecturer_capacity(l))
            report.push_back("lecturer l" + std::to_string(l) + " capacity " +
                std::to_string(instance.lecturer_capacity(l)) + " exceeded: " +
                std::to_string(loads.lecturer[l]) + " assigned");
    return report;
}

}
