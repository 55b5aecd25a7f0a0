#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dgcat/algebra.hpp"

namespace dgcat {

// A localized morphism together with its four auxiliary generators.
struct InverseRecord {
  Element base;
  std::string inverse;
  std::string hat;
  std::string check;
  std::string bar;

  std::vector<std::string> members() const { return {inverse, hat, check, bar}; }
};

// Semifree dg category: ordered generators whose differentials only use
// earlier generators.
class DgPresentation {
 public:
  const Signature& signature() const { return sig_; }
  const std::vector<std::string>& objects() const { return sig_.objects(); }
  const std::vector<GeneratorDecl>& generators() const { return sig_.generators(); }
  std::size_t size() const { return diffs_.size(); }
  const GeneratorDecl& gen(GenIndex g) const { return sig_.gen(g); }
  const Element& differential(GenIndex g) const { return diffs_.at(g); }
  const Element& differential(std::string_view name) const { return diffs_.at(sig_.generator(name)); }
  const std::vector<InverseRecord>& inverses() const { return inverses_; }

  Element element(std::string_view text, std::optional<Endpoints> expected = std::nullopt) const {
    return parse_element(sig_, text, expected);
  }
  Element generator(std::string_view name) const { return Element::generator(sig_, sig_.generator(name)); }
  std::string format(const Element& e) const { return format_element(sig_, e); }

  bool operator==(const DgPresentation& other) const;

 private:
  Signature sig_;
  std::vector<Element> diffs_;
  std::vector<InverseRecord> inverses_;

  friend class PresentationBuilder;
};

class PresentationBuilder {
 public:
  PresentationBuilder() = default;
  explicit PresentationBuilder(DgPresentation base) : p_(std::move(base)) {}

  ObjIndex add_object(const std::string& name);
  // Throws PreconditionError when d mentions a generator not yet declared.
  GenIndex add_generator(const std::string& name, ObjIndex source, ObjIndex target, int degree, Element d);
  GenIndex add_generator(const std::string& name, const std::string& source, const std::string& target,
                         int degree, std::string_view d);
  void add_inverse(InverseRecord record);

  const Signature& signature() const { return p_.sig_; }
  Element element(std::string_view text, std::optional<Endpoints> expected = std::nullopt) const {
    return parse_element(p_.sig_, text, expected);
  }
  // `base` if unused, otherwise `base_2`, `base_3`, ...
  std::string fresh_name(const std::string& base) const;

  DgPresentation build() const& { return p_; }
  DgPresentation build() && { return std::move(p_); }

 private:
  DgPresentation p_;
};

// Leibniz extension of the generator differentials.
Element extend_differential(const DgPresentation& p, const Element& e);

struct Issue {
  std::string subject;
  std::string check;
  std::string message;
};

struct ValidationReport {
  std::vector<Issue> issues;
  bool ok() const { return issues.empty(); }
  void add(std::string subject, std::string check, std::string message) {
    issues.push_back({std::move(subject), std::move(check), std::move(message)});
  }
  std::string to_string() const;
};

ValidationReport validate(const DgPresentation& p);

nlohmann::json presentation_to_json(const DgPresentation& p);
DgPresentation presentation_from_json(const nlohmann::json& j);
DgPresentation parse_presentation(std::string_view text);
std::string serialize_presentation(const DgPresentation& p);

// Converts a nlohmann parse failure into a ParseError with line and column.
[[noreturn]] void rethrow_json_error(std::string_view text, const nlohmann::json::parse_error& e);

}  // namespace dgcat
