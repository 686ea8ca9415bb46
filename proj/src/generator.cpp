#include "rors/generator.hpp"

#include <random>
#include <string>
#include <string_view>

#include "rors/errors.hpp"
#include "rors/vocab.hpp"

namespace rors {
namespace {

constexpr std::string_view kNs = "http://rors.example.org/uni#";

// Campus layout per generated university.
constexpr int kDeptsPerUniversity = 4;
constexpr int kGroupsPerDept = 2;
constexpr int kProfessorsPerDept = 3;
constexpr int kAssistantsPerDept = 1;
constexpr int kLecturersPerDept = 2;
constexpr int kStudentsPerDept = 24;
constexpr int kGraduatesPerDept = 6;
constexpr int kCoursesPerDept = 9;
constexpr int kGraduateCoursesPerDept = 3;

class Builder {
 public:
  Builder(Dictionary& dict, const GeneratorConfig& config)
      : dict_(dict), vocab_(dict), config_(config), rng_(config.seed) {}

  std::vector<Triple> run() {
    intern_domain_terms();
    emit_schema();
    for (int u = 0; out_.size() < config_.size; ++u) {
      emit_university(u);
    }
    return std::move(out_);
  }

 private:
  // ---- randomness (explicit mappings keep output platform-stable) ----

  std::uint64_t pick(std::uint64_t n) { return rng_() % n; }

  bool chance(double p) {
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53 < p;
  }

  // ---- term helpers ----

  TermId iri(const std::string& name) {
    return dict_.intern(Term::iri(std::string(kNs) + name));
  }

  TermId blank(const std::string& label) {
    return dict_.intern(Term::blank(label));
  }

  TermId literal(const std::string& lexical) {
    return dict_.intern(Term::literal("\"" + lexical + "\""));
  }

  void triple(TermId s, TermId p, TermId o) { out_.push_back(Triple{s, p, o}); }

  void intern_domain_terms() {
    person_ = iri("Person");
    employee_ = iri("Employee");
    faculty_ = iri("Faculty");
    professor_ = iri("Professor");
    assistant_professor_ = iri("AssistantProfessor");
    lecturer_ = iri("Lecturer");
    chair_ = iri("Chair");
    tenured_faculty_ = iri("TenuredFaculty");
    honored_person_ = iri("HonoredPerson");
    mentored_person_ = iri("MentoredPerson");
    student_ = iri("Student");
    pupil_ = iri("Pupil");
    graduate_student_ = iri("GraduateStudent");
    organization_ = iri("Organization");
    university_ = iri("University");
    department_ = iri("Department");
    research_group_ = iri("ResearchGroup");
    course_ = iri("Course");
    graduate_course_ = iri("GraduateCourse");
    research_project_ = iri("ResearchProject");

    works_for_ = iri("worksFor");
    member_of_ = iri("memberOf");
    affiliated_with_ = iri("affiliatedWith");
    head_of_ = iri("headOf");
    teacher_of_ = iri("teacherOf");
    takes_course_ = iri("takesCourse");
    advisor_ = iri("advisor");
    sub_organization_of_ = iri("subOrganizationOf");
    colleague_with_ = iri("colleagueWith");
    degree_from_ = iri("degreeFrom");
    has_alumnus_ = iri("hasAlumnus");
    email_address_ = iri("emailAddress");
    isni_ = iri("isni");
    status_ = iri("status");
    has_condition_ = iri("hasCondition");
    mentored_by_ = iri("mentoredBy");
    has_mentor_ = iri("hasMentor");
    group_project_ = iri("groupProject");
    offered_by_ = iri("offeredBy");
    course_code_ = iri("courseCode");
    credit_value_ = iri("creditValue");
    course_title_ = iri("courseTitle");
    dept_code_ = iri("deptCode");
    office_address_ = iri("officeAddress");
    founded_year_ = iri("foundedYear");
    uni_code_ = iri("uniCode");
    location_ = iri("location");
    motto_ = iri("motto");
    research_topic_ = iri("researchTopic");
    meeting_room_ = iri("meetingRoom");
    web_page_ = iri("webPage");

    restr_tenured_ = blank("restrTenuredStatus");
    restr_condition_ = blank("restrTenuredCondition");
    restr_head_ = blank("restrHeadsDepartment");
    restr_mentoring_ = blank("restrMentoringService");
    restr_projects_ = blank("restrGroupProjects");
    advising_service_ = iri("advisingService");
    tenured_lit_ = literal("tenured");
  }

  // ---- schema block ----

  void emit_schema() {
    const Vocab& v = vocab_;

    // Class hierarchy.
    triple(employee_, v.sub_class_of, person_);
    triple(faculty_, v.sub_class_of, employee_);
    triple(professor_, v.sub_class_of, faculty_);
    triple(assistant_professor_, v.sub_class_of, professor_);
    triple(lecturer_, v.sub_class_of, faculty_);
    triple(chair_, v.sub_class_of, professor_);
    triple(tenured_faculty_, v.sub_class_of, faculty_);
    triple(student_, v.sub_class_of, person_);
    triple(graduate_student_, v.sub_class_of, student_);
    triple(university_, v.sub_class_of, organization_);
    triple(department_, v.sub_class_of, organization_);
    triple(research_group_, v.sub_class_of, organization_);
    triple(graduate_course_, v.sub_class_of, course_);
    triple(pupil_, v.equivalent_class, student_);

    // Property hierarchy and characteristics.
    triple(works_for_, v.sub_property_of, member_of_);
    triple(head_of_, v.sub_property_of, works_for_);
    triple(member_of_, v.equivalent_property, affiliated_with_);
    triple(status_, v.sub_property_of, has_condition_);
    triple(mentored_by_, v.sub_property_of, has_mentor_);
    triple(member_of_, v.domain, person_);
    triple(member_of_, v.range, organization_);
    triple(teacher_of_, v.domain, faculty_);
    triple(teacher_of_, v.range, course_);
    triple(takes_course_, v.domain, student_);
    triple(takes_course_, v.range, course_);
    triple(advisor_, v.domain, person_);
    triple(advisor_, v.range, professor_);
    triple(degree_from_, v.domain, person_);
    triple(degree_from_, v.range, university_);
    triple(has_mentor_, v.domain, mentored_person_);
    triple(sub_organization_of_, v.domain, organization_);
    triple(sub_organization_of_, v.range, organization_);
    triple(sub_organization_of_, v.type, v.transitive_property);
    triple(colleague_with_, v.type, v.symmetric_property);
    triple(degree_from_, v.inverse_of, has_alumnus_);
    triple(email_address_, v.type, v.functional_property);
    triple(isni_, v.type, v.inverse_functional_property);
    triple(works_for_, v.type, v.owl_object_property);
    triple(takes_course_, v.type, v.owl_object_property);
    triple(email_address_, v.type, v.owl_datatype_property);
    triple(person_, v.type, v.owl_class);
    triple(organization_, v.type, v.owl_class);
    triple(course_, v.type, v.owl_class);

    // Faculty with status "tenured" gain HonoredPerson and TenuredFaculty
    // membership through a pair of value restrictions bridged by the
    // status -> hasCondition property hierarchy.
    triple(restr_tenured_, v.type, v.owl_restriction);
    triple(restr_tenured_, v.on_property, status_);
    triple(restr_tenured_, v.has_value, tenured_lit_);
    triple(restr_tenured_, v.sub_class_of, tenured_faculty_);
    triple(restr_condition_, v.type, v.owl_restriction);
    triple(restr_condition_, v.on_property, has_condition_);
    triple(restr_condition_, v.has_value, tenured_lit_);
    triple(restr_condition_, v.sub_class_of, honored_person_);

    // Department heads are recognized as Chairs through an existential
    // restriction over headOf.
    triple(restr_head_, v.type, v.owl_restriction);
    triple(restr_head_, v.on_property, head_of_);
    triple(restr_head_, v.some_values_from, department_);
    triple(restr_head_, v.sub_class_of, chair_);

    // Every graduate student is enrolled with the advising service: the
    // class membership feeds a hasValue restriction that emits a plain
    // fact, which in turn feeds the property hierarchy and a domain
    // axiom.  This chain makes class reasoning and plain-fact reasoning
    // hand results back and forth across loop iterations.
    triple(restr_mentoring_, v.type, v.owl_restriction);
    triple(restr_mentoring_, v.on_property, mentored_by_);
    triple(restr_mentoring_, v.has_value, advising_service_);
    triple(graduate_student_, v.sub_class_of, restr_mentoring_);

    // Everything a research group member files as a group project is a
    // ResearchProject (universal restriction).
    triple(restr_projects_, v.type, v.owl_restriction);
    triple(restr_projects_, v.on_property, group_project_);
    triple(restr_projects_, v.all_values_from, research_project_);
    triple(graduate_student_, v.sub_class_of, restr_projects_);
  }

  // ---- instance blocks ----

  struct Campus {
    std::string uni;
    TermId uni_id = 0;
    std::vector<TermId> depts;
    std::vector<TermId> courses;           // all courses of the university
    std::vector<std::vector<TermId>> dept_courses;
    std::vector<std::vector<TermId>> dept_faculty;
  };

  void maybe_alias(TermId entity, const std::string& name) {
    const double r = config_.sameas_rate;
    if (r <= 0.0) return;
    // Every entity block averages ~5.1 triples; adding one alias triple with
    // probability q per block keeps the overall sameAs share at r:
    // q / (5.1 + q) = r.
    const double q = 5.1 * r / (1.0 - r);
    if (chance(q)) {
      triple(iri(name + "_alias"), vocab_.same_as, entity);
    }
  }

  void emit_university(int u) {
    Campus campus;
    campus.uni = "uni" + std::to_string(u);
    campus.uni_id = iri(campus.uni);
    triple(campus.uni_id, vocab_.type, university_);
    triple(campus.uni_id, uni_code_, literal("U-" + std::to_string(1000 + u)));
    triple(campus.uni_id, location_, literal("City " + std::to_string(u % 37)));
    triple(campus.uni_id, founded_year_,
           literal(std::to_string(1820 + static_cast<int>(pick(180)))));
    triple(campus.uni_id, motto_, literal("Lux et scientia " + std::to_string(u)));
    maybe_alias(campus.uni_id, campus.uni);

    for (int d = 0; d < kDeptsPerUniversity; ++d) {
      emit_department(campus, d);
    }
    for (int d = 0; d < kDeptsPerUniversity; ++d) {
      emit_people(campus, d);
    }
  }

  void emit_department(Campus& campus, int d) {
    const std::string dept_name = campus.uni + "_dept" + std::to_string(d);
    const TermId dept = iri(dept_name);
    campus.depts.push_back(dept);
    campus.dept_courses.emplace_back();
    campus.dept_faculty.emplace_back();

    triple(dept, vocab_.type, department_);
    triple(dept, sub_organization_of_, campus.uni_id);
    triple(dept, dept_code_, literal("D" + std::to_string(d)));
    triple(dept, office_address_,
           literal("Building " + std::to_string(pick(12))));
    triple(dept, founded_year_,
           literal(std::to_string(1900 + static_cast<int>(pick(100)))));
    maybe_alias(dept, dept_name);

    for (int g = 0; g < kGroupsPerDept; ++g) {
      const std::string group_name = dept_name + "_group" + std::to_string(g);
      const TermId group = iri(group_name);
      triple(group, vocab_.type, research_group_);
      triple(group, sub_organization_of_, dept);
      triple(group, research_topic_, literal("Topic " + std::to_string(pick(50))));
      triple(group, meeting_room_, literal("Room " + std::to_string(pick(400))));
      triple(group, web_page_, literal("https://" + group_name + ".example.edu"));
      maybe_alias(group, group_name);
    }

    for (int c = 0; c < kCoursesPerDept; ++c) {
      const std::string course_name = dept_name + "_course" + std::to_string(c);
      const TermId course = iri(course_name);
      campus.courses.push_back(course);
      campus.dept_courses[static_cast<std::size_t>(d)].push_back(course);
      const bool graduate = c < kGraduateCoursesPerDept;
      triple(course, vocab_.type, graduate ? graduate_course_ : course_);
      triple(course, offered_by_, dept);
      triple(course, course_code_,
             literal("C" + std::to_string(d) + "." + std::to_string(c)));
      triple(course, credit_value_, literal(std::to_string(2 + pick(4))));
      triple(course, course_title_, literal("Course " + std::to_string(pick(900))));
      maybe_alias(course, course_name);
    }
  }

  void emit_people(Campus& campus, int d) {
    const std::string dept_name = campus.uni + "_dept" + std::to_string(d);
    const TermId dept = campus.depts[static_cast<std::size_t>(d)];
    const auto& courses = campus.dept_courses[static_cast<std::size_t>(d)];
    auto& faculty = campus.dept_faculty[static_cast<std::size_t>(d)];

    const int faculty_count =
        kProfessorsPerDept + kAssistantsPerDept + kLecturersPerDept;
    for (int f = 0; f < faculty_count; ++f) {
      const std::string name = dept_name + "_fac" + std::to_string(f);
      const TermId fac = iri(name);
      const bool is_professor = f < kProfessorsPerDept;
      const bool is_assistant =
          !is_professor && f < kProfessorsPerDept + kAssistantsPerDept;

      TermId cls = lecturer_;
      if (is_professor) cls = professor_;
      if (is_assistant) cls = assistant_professor_;
      triple(fac, vocab_.type, cls);
      triple(fac, works_for_, dept);
      triple(fac, teacher_of_, courses[pick(courses.size())]);
      triple(fac, email_address_, literal(name + "@example.edu"));
      if (is_professor || is_assistant) {
        triple(fac, degree_from_, campus.uni_id);
        triple(fac, isni_, literal("0000-" + name));
      }
      if (f == 0) {
        triple(fac, head_of_, dept);
      }
      if ((is_professor || is_assistant) && chance(0.3)) {
        triple(fac, status_, tenured_lit_);
      }
      if (f > 0 && chance(0.3)) {
        triple(fac, colleague_with_, faculty.back());
      }
      faculty.push_back(fac);
      maybe_alias(fac, name);
    }

    for (int s = 0; s < kStudentsPerDept; ++s) {
      const std::string name = dept_name + "_stud" + std::to_string(s);
      const TermId stud = iri(name);
      const bool graduate = s < kGraduatesPerDept;
      triple(stud, vocab_.type, graduate ? graduate_student_ : student_);
      triple(stud, member_of_, dept);
      if (graduate) {
        triple(stud, takes_course_, courses[pick(kGraduateCoursesPerDept)]);
        triple(stud, advisor_, faculty[pick(kProfessorsPerDept)]);
        triple(stud, group_project_,
               iri(name + "_project" + std::to_string(pick(3))));
      } else {
        triple(stud, takes_course_, courses[pick(courses.size())]);
        triple(stud, takes_course_, courses[pick(courses.size())]);
        triple(stud, email_address_, literal(name + "@example.edu"));
      }
      maybe_alias(stud, name);
    }
  }

  Dictionary& dict_;
  Vocab vocab_;
  GeneratorConfig config_;
  std::mt19937_64 rng_;
  std::vector<Triple> out_;

  TermId person_ = 0, employee_ = 0, faculty_ = 0, professor_ = 0;
  TermId assistant_professor_ = 0, lecturer_ = 0, chair_ = 0;
  TermId tenured_faculty_ = 0, honored_person_ = 0, mentored_person_ = 0;
  TermId student_ = 0, pupil_ = 0, graduate_student_ = 0;
  TermId organization_ = 0, university_ = 0, department_ = 0;
  TermId research_group_ = 0, course_ = 0, graduate_course_ = 0;
  TermId research_project_ = 0;
  TermId works_for_ = 0, member_of_ = 0, affiliated_with_ = 0, head_of_ = 0;
  TermId teacher_of_ = 0, takes_course_ = 0, advisor_ = 0;
  TermId sub_organization_of_ = 0, colleague_with_ = 0;
  TermId degree_from_ = 0, has_alumnus_ = 0, email_address_ = 0, isni_ = 0;
  TermId status_ = 0, has_condition_ = 0, mentored_by_ = 0, has_mentor_ = 0;
  TermId group_project_ = 0, offered_by_ = 0, course_code_ = 0;
  TermId credit_value_ = 0, course_title_ = 0, dept_code_ = 0;
  TermId office_address_ = 0, founded_year_ = 0, uni_code_ = 0;
  TermId location_ = 0, motto_ = 0, research_topic_ = 0, meeting_room_ = 0;
  TermId web_page_ = 0;
  TermId restr_tenured_ = 0, restr_condition_ = 0, restr_head_ = 0;
  TermId restr_mentoring_ = 0, restr_projects_ = 0;
  TermId advising_service_ = 0, tenured_lit_ = 0;
};

}  // namespace

std::vector<Triple> generate_university(Dictionary& dict,
                                        const GeneratorConfig& config) {
  if (config.sameas_rate < 0.0 || config.sameas_rate > 0.15) {
    throw ConfigError("sameas rate must lie in [0, 0.15]");
  }
  if (config.size == 0) {
    throw ConfigError("target size must be positive");
  }
  Builder builder(dict, config);
  return builder.run();
}

}  // namespace rors
