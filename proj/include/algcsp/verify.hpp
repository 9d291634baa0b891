#pragma once

#include <iosfwd>
#include <sstream>
#include <string>
#include <vector>

namespace algcsp {

struct VerificationCase {
  std::string description;
  std::string expected;
  std::string actual;
  bool pass = false;
};

struct VerificationReport {
  std::string suite;
  std::vector<VerificationCase> cases;
  std::vector<std::string> notes;  // enumeration bounds, sampling flags

  template <typename E, typename A>
  void check(const std::string& description, const E& expected,
             const A& actual) {
    std::ostringstream es, as;
    es << expected;
    as << actual;
    cases.push_back({description, es.str(), as.str(), es.str() == as.str()});
  }
  void check_true(const std::string& description, bool condition) {
    check(description, true, condition);
  }

  int failures() const;
  bool passed() const { return failures() == 0; }
  void print(std::ostream& os, bool verbose = false) const;
};

std::ostream& operator<<(std::ostream& os, const std::vector<int>& v);
std::ostream& operator<<(std::ostream& os,
                         const std::vector<std::vector<int>>& v);

/// Reproduces the small-size CIB classification: counts per size, the
/// simple members, subalgebra inventories, masses and abelian members.
VerificationReport classify_cibs_report(int max_size);

struct FamilyConfig {
  /// Catalog names of factor algebras; pairs and triples are drawn from
  /// this list subject to the product-size bound.
  std::vector<std::string> factors;
  int max_product_size = 16;
  bool sample = false;   // sample subuniverses instead of enumerating
  unsigned seed = 0;
  int sample_count = 200;
};

FamilyConfig default_family_config();

VerificationReport verify_rectangularity(const FamilyConfig& config);
VerificationReport verify_linking(const FamilyConfig& config);
VerificationReport verify_fry_pan(const FamilyConfig& config);

VerificationReport reproduce_mass_product_example();
VerificationReport reproduce_majority_example();
VerificationReport reproduce_xor_example();
VerificationReport verify_example_identities();

/// All suites, in a fixed order.
std::vector<VerificationReport> run_all_suites(const FamilyConfig& config);

}  // namespace algcsp
