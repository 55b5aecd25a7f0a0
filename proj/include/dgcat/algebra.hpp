#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace dgcat {

using Integer = boost::multiprecision::cpp_int;
using ObjIndex = std::uint32_t;
using GenIndex = std::uint32_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CompositionError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct GeneratorDecl {
  std::string name;
  ObjIndex source = 0;
  ObjIndex target = 0;
  int degree = 0;
};

bool is_valid_name(std::string_view name);

// Objects and graded generators of a free graded category.
class Signature {
 public:
  ObjIndex add_object(const std::string& name);
  GenIndex add_generator(const GeneratorDecl& decl);

  const std::vector<std::string>& objects() const { return objects_; }
  const std::vector<GeneratorDecl>& generators() const { return generators_; }
  const GeneratorDecl& gen(GenIndex g) const { return generators_.at(g); }
  const std::string& object_name(ObjIndex o) const { return objects_.at(o); }

  std::optional<ObjIndex> find_object(std::string_view name) const;
  std::optional<GenIndex> find_generator(std::string_view name) const;
  ObjIndex object(std::string_view name) const;
  GenIndex generator(std::string_view name) const;
  bool has_name(std::string_view name) const;

  bool operator==(const Signature& other) const;

 private:
  std::vector<std::string> objects_;
  std::vector<GeneratorDecl> generators_;
  std::map<std::string, ObjIndex, std::less<>> object_index_;
  std::map<std::string, GenIndex, std::less<>> generator_index_;
};

// A maximal block of one repeated letter.
struct Run {
  GenIndex gen;
  std::uint32_t power;
  bool operator==(const Run&) const = default;
};

// Composable sequence of letters, stored run-length encoded. The leftmost
// letter is applied last.
class Word {
 public:
  Word() = default;
  static Word identity(ObjIndex object);
  static Word letter(const Signature& sig, GenIndex g, std::uint32_t power = 1);

  ObjIndex source() const { return source_; }
  ObjIndex target() const { return target_; }
  int degree() const { return degree_; }
  std::size_t length() const { return length_; }
  bool is_identity() const { return runs_.empty(); }
  const std::vector<Run>& runs() const { return runs_; }
  bool contains(GenIndex g) const;

  friend Word word_compose(const Word& outer, const Word& inner);
  bool operator==(const Word& other) const = default;

 private:
  ObjIndex source_ = 0;
  ObjIndex target_ = 0;
  int degree_ = 0;
  std::size_t length_ = 0;
  std::vector<Run> runs_;

  friend class WordBuilder;
};

Word word_compose(const Word& outer, const Word& inner);

// Canonical term order: length first, then lexicographic by generator index.
std::strong_ordering compare_words(const Word& a, const Word& b);

struct WordLess {
  bool operator()(const Word& a, const Word& b) const { return compare_words(a, b) < 0; }
};

// Appends letters left to right, starting from the identity at `target`.
class WordBuilder {
 public:
  WordBuilder(const Signature& sig, ObjIndex target);
  WordBuilder& append(GenIndex g, std::uint32_t power = 1);
  Word build() const;

 private:
  const Signature* sig_;
  Word word_;
};

struct Term {
  Word word;
  Integer coef;
};

class Element {
 public:
  Element() = default;
  Element(ObjIndex source, ObjIndex target) : source_(source), target_(target) {}

  static Element zero(ObjIndex source, ObjIndex target) { return Element(source, target); }
  static Element identity(ObjIndex object);
  static Element of_word(Word w, Integer coef = 1);
  static Element generator(const Signature& sig, GenIndex g, std::uint32_t power = 1);
  static Element from_terms(ObjIndex source, ObjIndex target, std::vector<Term> terms);

  ObjIndex source() const { return source_; }
  ObjIndex target() const { return target_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  Integer coefficient(const Word& w) const;
  bool contains(GenIndex g) const;

  bool operator==(const Element& other) const;

 private:
  ObjIndex source_ = 0;
  ObjIndex target_ = 0;
  std::vector<Term> terms_;  // sorted by WordLess, coefficients nonzero

  void normalize();
  friend Element elem_add(const Element&, const Element&);
  friend Element elem_scale(const Element&, const Integer&);
  friend Element elem_mul(const Element&, const Element&);
};

Element elem_add(const Element& a, const Element& b);
Element elem_sub(const Element& a, const Element& b);
Element elem_neg(const Element& a);
Element elem_scale(const Element& a, const Integer& c);
Element elem_mul(const Element& a, const Element& b);
Element elem_pow(const Element& a, unsigned k);

inline Element operator+(const Element& a, const Element& b) { return elem_add(a, b); }
inline Element operator-(const Element& a, const Element& b) { return elem_sub(a, b); }
inline Element operator-(const Element& a) { return elem_neg(a); }
inline Element operator*(const Element& a, const Element& b) { return elem_mul(a, b); }
inline Element operator*(const Integer& c, const Element& a) { return elem_scale(a, c); }

struct Degree {
  enum class Kind { any, exact, mixed };
  Kind kind = Kind::any;
  int value = 0;
  bool homogeneous() const { return kind != Kind::mixed; }
  bool matches(int d) const { return kind == Kind::any || (kind == Kind::exact && value == d); }
};

Degree elem_degree(const Element& a);

// Multiplicative extension of a letter assignment. images[g] must have
// endpoints object_map(source g), object_map(target g).
Element substitute(const Element& e, const std::vector<const Element*>& images,
                   const std::vector<ObjIndex>& object_map);

// Relabels letters through a permutation of generator indices.
Element reindex(const Element& e, const Signature& target_sig, const std::vector<GenIndex>& gen_map,
                const std::vector<ObjIndex>& object_map);

std::string format_word(const Signature& sig, const Word& w);
std::string format_element(const Signature& sig, const Element& e);

struct Endpoints {
  ObjIndex source;
  ObjIndex target;
};

// Parses the element grammar. `expected` gives the endpoints of bare scalars
// such as "0" or "1 - 1"; it is not checked against parsed words.
Element parse_element(const Signature& sig, std::string_view text,
                      std::optional<Endpoints> expected = std::nullopt);

}  // namespace dgcat
