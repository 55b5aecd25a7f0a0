#include "dgcat/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>
#include <utility>

namespace dgcat {

ParseError::ParseError(const std::string& message, int line, int column)
    : Error(line > 0 ? message + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"
                     : message),
      line_(line),
      column_(column) {}

namespace {

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '#' || c == '\'' || c == '.';
}

}  // namespace

bool is_valid_name(std::string_view name) {
  if (name.empty() || !is_name_start(name.front())) return false;
  return std::all_of(name.begin(), name.end(), is_name_char);
}

ObjIndex Signature::add_object(const std::string& name) {
  if (!is_valid_name(name)) throw PreconditionError("invalid object name '" + name + "'");
  if (object_index_.count(name)) throw PreconditionError("duplicate object '" + name + "'");
  auto index = static_cast<ObjIndex>(objects_.size());
  objects_.push_back(name);
  object_index_.emplace(name, index);
  return index;
}

GenIndex Signature::add_generator(const GeneratorDecl& decl) {
  if (!is_valid_name(decl.name)) throw PreconditionError("invalid generator name '" + decl.name + "'");
  if (generator_index_.count(decl.name)) throw PreconditionError("duplicate generator '" + decl.name + "'");
  if (decl.source >= objects_.size() || decl.target >= objects_.size())
    throw PreconditionError("generator '" + decl.name + "' has unknown endpoint");
  auto index = static_cast<GenIndex>(generators_.size());
  generators_.push_back(decl);
  generator_index_.emplace(decl.name, index);
  return index;
}

std::optional<ObjIndex> Signature::find_object(std::string_view name) const {
  auto it = object_index_.find(name);
  if (it == object_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<GenIndex> Signature::find_generator(std::string_view name) const {
  auto it = generator_index_.find(name);
  if (it == generator_index_.end()) return std::nullopt;
  return it->second;
}

ObjIndex Signature::object(std::string_view name) const {
  if (auto o = find_object(name)) return *o;
  throw PreconditionError("unknown object '" + std::string(name) + "'");
}

GenIndex Signature::generator(std::string_view name) const {
  if (auto g = find_generator(name)) return *g;
  throw PreconditionError("unknown generator '" + std::string(name) + "'");
}

bool Signature::has_name(std::string_view name) const {
  return object_index_.count(name) || generator_index_.count(name);
}

bool Signature::operator==(const Signature& other) const {
  if (objects_ != other.objects_ || generators_.size() != other.generators_.size()) return false;
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    const auto& a = generators_[i];
    const auto& b = other.generators_[i];
    if (a.name != b.name || a.source != b.source || a.target != b.target || a.degree != b.degree)
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

Word Word::identity(ObjIndex object) {
  Word w;
  w.source_ = object;
  w.target_ = object;
  return w;
}

Word Word::letter(const Signature& sig, GenIndex g, std::uint32_t power) {
  const auto& decl = sig.gen(g);
  if (power == 0) throw CompositionError("zero power of a letter has no endpoints");
  if (power > 1 && decl.source != decl.target)
    throw CompositionError("power of non-endomorphism '" + decl.name + "'");
  Word w;
  w.source_ = decl.source;
  w.target_ = decl.target;
  w.degree_ = decl.degree * static_cast<int>(power);
  w.length_ = power;
  w.runs_.push_back({g, power});
  return w;
}

bool Word::contains(GenIndex g) const {
  return std::any_of(runs_.begin(), runs_.end(), [g](const Run& r) { return r.gen == g; });
}

Word word_compose(const Word& outer, const Word& inner) {
  if (outer.source_ != inner.target_) throw CompositionError("non-composable words");
  Word w;
  w.source_ = inner.source_;
  w.target_ = outer.target_;
  w.degree_ = outer.degree_ + inner.degree_;
  w.length_ = outer.length_ + inner.length_;
  w.runs_.reserve(outer.runs_.size() + inner.runs_.size());
  w.runs_ = outer.runs_;
  auto it = inner.runs_.begin();
  if (!w.runs_.empty() && it != inner.runs_.end() && w.runs_.back().gen == it->gen) {
    w.runs_.back().power += it->power;
    ++it;
  }
  w.runs_.insert(w.runs_.end(), it, inner.runs_.end());
  return w;
}

std::strong_ordering compare_words(const Word& a, const Word& b) {
  if (a.length() != b.length()) return a.length() <=> b.length();
  const auto& ra = a.runs();
  const auto& rb = b.runs();
  std::size_t i = 0, j = 0;
  std::uint32_t used_a = 0, used_b = 0;
  while (i < ra.size() && j < rb.size()) {
    if (ra[i].gen != rb[j].gen) return ra[i].gen <=> rb[j].gen;
    std::uint32_t step = std::min(ra[i].power - used_a, rb[j].power - used_b);
    used_a += step;
    used_b += step;
    if (used_a == ra[i].power) {
      ++i;
      used_a = 0;
    }
    if (used_b == rb[j].power) {
      ++j;
      used_b = 0;
    }
  }
  if (a.source() != b.source()) return a.source() <=> b.source();
  return a.target() <=> b.target();
}

WordBuilder::WordBuilder(const Signature& sig, ObjIndex target) : sig_(&sig), word_(Word::identity(target)) {}

WordBuilder& WordBuilder::append(GenIndex g, std::uint32_t power) {
  if (power == 0) return *this;
  const auto& decl = sig_->gen(g);
  if (power > 1 && decl.source != decl.target)
    throw CompositionError("power of non-endomorphism '" + decl.name + "'");
  if (decl.target != word_.source_) throw CompositionError("non-composable words");
  if (!word_.runs_.empty() && word_.runs_.back().gen == g) {
    word_.runs_.back().power += power;
  } else {
    word_.runs_.push_back({g, power});
  }
  word_.source_ = decl.source;
  word_.degree_ += decl.degree * static_cast<int>(power);
  word_.length_ += power;
  return *this;
}

Word WordBuilder::build() const { return word_; }

// ---------------------------------------------------------------------------

Element Element::identity(ObjIndex object) { return of_word(Word::identity(object)); }

Element Element::of_word(Word w, Integer coef) {
  Element e(w.source(), w.target());
  if (coef != 0) e.terms_.push_back({std::move(w), std::move(coef)});
  return e;
}

Element Element::generator(const Signature& sig, GenIndex g, std::uint32_t power) {
  return of_word(Word::letter(sig, g, power));
}

Element Element::from_terms(ObjIndex source, ObjIndex target, std::vector<Term> terms) {
  Element e(source, target);
  for (const auto& t : terms) {
    if (t.word.source() != source || t.word.target() != target)
      throw CompositionError("term endpoints differ from element endpoints");
  }
  e.terms_ = std::move(terms);
  e.normalize();
  return e;
}

namespace {

struct WordPtrHash {
  std::size_t operator()(const Word* w) const {
    std::size_t h = std::hash<std::size_t>{}(w->source()) * 31U + w->target();
    for (const auto& r : w->runs()) h = (h * 1000003U) ^ (static_cast<std::size_t>(r.gen) << 20U) ^ r.power;
    return h;
  }
};

struct WordPtrEq {
  bool operator()(const Word* a, const Word* b) const { return *a == *b; }
};

}  // namespace

void Element::normalize() {
  if (terms_.size() > 64) {
    // Combine duplicates by hashing before sorting the survivors.
    std::unordered_map<const Word*, std::size_t, WordPtrHash, WordPtrEq> slot;
    slot.reserve(terms_.size());
    std::vector<char> live(terms_.size(), 1);
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      auto [it, inserted] = slot.emplace(&terms_[i].word, i);
      if (!inserted) {
        terms_[it->second].coef += terms_[i].coef;
        live[i] = 0;
      }
    }
    std::size_t out = 0;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (!live[i] || terms_[i].coef == 0) continue;
      if (out != i) terms_[out] = std::move(terms_[i]);
      ++out;
    }
    terms_.resize(out);
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return compare_words(a.word, b.word) < 0; });
    return;
  }
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return compare_words(a.word, b.word) < 0; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms_.size();) {
    std::size_t j = i + 1;
    Integer sum = std::move(terms_[i].coef);
    while (j < terms_.size() && terms_[j].word == terms_[i].word) {
      sum += terms_[j].coef;
      ++j;
    }
    if (sum != 0) {
      if (out != i) terms_[out].word = std::move(terms_[i].word);
      terms_[out].coef = std::move(sum);
      ++out;
    }
    i = j;
  }
  terms_.resize(out);
}

Integer Element::coefficient(const Word& w) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), w,
                             [](const Term& t, const Word& key) { return compare_words(t.word, key) < 0; });
  if (it != terms_.end() && it->word == w) return it->coef;
  return 0;
}

bool Element::contains(GenIndex g) const {
  return std::any_of(terms_.begin(), terms_.end(), [g](const Term& t) { return t.word.contains(g); });
}

bool Element::operator==(const Element& other) const {
  if (source_ != other.source_ || target_ != other.target_ || terms_.size() != other.terms_.size())
    return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].coef != other.terms_[i].coef || !(terms_[i].word == other.terms_[i].word)) return false;
  }
  return true;
}

Element elem_add(const Element& a, const Element& b) {
  if (a.source() != b.source() || a.target() != b.target())
    throw CompositionError("adding elements with different endpoints");
  Element out(a.source(), a.target());
  out.terms_.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size()) {
      out.terms_.push_back(a.terms_[i++]);
      continue;
    }
    if (i == a.size()) {
      out.terms_.push_back(b.terms_[j++]);
      continue;
    }
    auto c = compare_words(a.terms_[i].word, b.terms_[j].word);
    if (c < 0) {
      out.terms_.push_back(a.terms_[i++]);
    } else if (c > 0) {
      out.terms_.push_back(b.terms_[j++]);
    } else {
      Integer sum = a.terms_[i].coef + b.terms_[j].coef;
      if (sum != 0) out.terms_.push_back({a.terms_[i].word, std::move(sum)});
      ++i;
      ++j;
    }
  }
  return out;
}

Element elem_scale(const Element& a, const Integer& c) {
  Element out(a.source(), a.target());
  if (c == 0) return out;
  out.terms_ = a.terms_;
  for (auto& t : out.terms_) t.coef *= c;
  return out;
}

Element elem_neg(const Element& a) { return elem_scale(a, -1); }

Element elem_sub(const Element& a, const Element& b) { return elem_add(a, elem_neg(b)); }

Element elem_mul(const Element& a, const Element& b) {
  if (a.source() != b.target()) throw CompositionError("multiplying non-composable elements");
  std::vector<Term> terms;
  terms.reserve(a.size() * b.size());
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) terms.push_back({word_compose(ta.word, tb.word), ta.coef * tb.coef});
  }
  if (a.size() <= 1 || b.size() <= 1) {
    // Composing with a single word preserves the order and distinctness of terms.
    Element out(b.source(), a.target());
    out.terms_ = std::move(terms);
    return out;
  }
  return Element::from_terms(b.source(), a.target(), std::move(terms));
}

Element elem_pow(const Element& a, unsigned k) {
  if (a.source() != a.target()) throw CompositionError("power of a non-endomorphism element");
  if (a.size() == 1 && a.terms().front().word.length() == 0 && a.terms().front().coef == 1) return a;
  Element result = Element::identity(a.source());
  Element base = a;
  while (k > 0) {
    if (k & 1U) result = elem_mul(result, base);
    k >>= 1U;
    if (k > 0) base = elem_mul(base, base);
  }
  return result;
}

Degree elem_degree(const Element& a) {
  Degree d;
  for (const auto& t : a.terms()) {
    if (d.kind == Degree::Kind::any) {
      d.kind = Degree::Kind::exact;
      d.value = t.word.degree();
    } else if (d.value != t.word.degree()) {
      d.kind = Degree::Kind::mixed;
      return d;
    }
  }
  return d;
}

Element substitute(const Element& e, const std::vector<const Element*>& images,
                   const std::vector<ObjIndex>& object_map) {
  ObjIndex source = object_map.at(e.source());
  ObjIndex target = object_map.at(e.target());
  std::map<std::pair<GenIndex, std::uint32_t>, Element> powers;
  auto image_power = [&](const Run& r) -> const Element& {
    const Element* img = images.at(r.gen);
    if (img == nullptr) throw PreconditionError("no image for generator index " + std::to_string(r.gen));
    if (r.power == 1) return *img;
    auto key = std::make_pair(r.gen, r.power);
    auto it = powers.find(key);
    if (it == powers.end()) it = powers.emplace(key, elem_pow(*img, r.power)).first;
    return it->second;
  };
  std::vector<Term> terms;
  for (const auto& t : e.terms()) {
    Element acc = Element::identity(object_map.at(t.word.target()));
    for (const auto& r : t.word.runs()) {
      acc = elem_mul(acc, image_power(r));
      if (acc.is_zero()) break;
    }
    for (const auto& at : acc.terms()) terms.push_back({at.word, at.coef * t.coef});
  }
  return Element::from_terms(source, target, std::move(terms));
}

Element reindex(const Element& e, const Signature& target_sig, const std::vector<GenIndex>& gen_map,
                const std::vector<ObjIndex>& object_map) {
  ObjIndex source = object_map.at(e.source());
  ObjIndex target = object_map.at(e.target());
  std::vector<Term> terms;
  terms.reserve(e.size());
  for (const auto& t : e.terms()) {
    WordBuilder wb(target_sig, target);
    for (const auto& r : t.word.runs()) wb.append(gen_map.at(r.gen), r.power);
    Word w = wb.build();
    if (w.source() != source) throw CompositionError("reindexed word has wrong source");
    terms.push_back({std::move(w), t.coef});
  }
  return Element::from_terms(source, target, std::move(terms));
}

// ---------------------------------------------------------------------------

std::string format_word(const Signature& sig, const Word& w) {
  if (w.is_identity()) {
    if (sig.objects().size() <= 1) return "1";
    return "1_" + sig.object_name(w.source());
  }
  std::string out;
  for (const auto& r : w.runs()) {
    if (!out.empty()) out += '*';
    out += sig.gen(r.gen).name;
    if (r.power > 1) out += '^' + std::to_string(r.power);
  }
  return out;
}

std::string format_element(const Signature& sig, const Element& e) {
  if (e.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : e.terms()) {
    Integer mag = abs(t.coef);
    bool negative = t.coef < 0;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (t.word.is_identity()) {
      if (mag != 1) out += mag.str();
      else out += format_word(sig, t.word);
      if (mag != 1 && sig.objects().size() > 1) out += '*' + format_word(sig, t.word);
      continue;
    }
    if (mag != 1) out += mag.str() + '*';
    out += format_word(sig, t.word);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// A parsed subexpression: either a pure scalar or an element with endpoints.
struct Value {
  std::optional<Element> elem;
  Integer scalar = 0;
};

class ElementParser {
 public:
  ElementParser(const Signature& sig, std::string_view text, std::optional<Endpoints> expected)
      : sig_(sig), text_(text), expected_(expected) {}

  Element run() {
    skip_space();
    if (at_end()) fail("empty expression");
    Value v = parse_sum();
    skip_space();
    if (!at_end()) fail(std::string("unexpected character '") + peek() + "'");
    if (v.elem) return *v.elem;
    if (!expected_ && sig_.objects().size() == 1) expected_ = Endpoints{0, 0};
    if (!expected_) fail("scalar expression needs known endpoints");
    if (v.scalar == 0) return Element::zero(expected_->source, expected_->target);
    if (expected_->source != expected_->target) fail("nonzero scalar between distinct objects");
    return elem_scale(Element::identity(expected_->source), v.scalar);
  }

 private:
  const Signature& sig_;
  std::string_view text_;
  std::optional<Endpoints> expected_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " in '" + std::string(text_) + "'", 1, static_cast<int>(pos_) + 1);
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  Value add(Value a, Value b, bool subtract) {
    if (subtract) {
      if (b.elem) b.elem = elem_neg(*b.elem);
      b.scalar = -b.scalar;
    }
    if (!a.elem && !b.elem) return Value{std::nullopt, a.scalar + b.scalar};
    if (a.elem && b.elem) {
      if (a.elem->source() != b.elem->source() || a.elem->target() != b.elem->target())
        fail("sum of terms with different endpoints");
      return Value{elem_add(*a.elem, *b.elem), 0};
    }
    const Element& e = a.elem ? *a.elem : *b.elem;
    const Integer& s = a.elem ? b.scalar : a.scalar;
    if (s == 0) return Value{e, 0};
    if (e.source() != e.target()) fail("scalar added to a morphism between distinct objects");
    return Value{elem_add(e, elem_scale(Element::identity(e.source()), s)), 0};
  }

  Value multiply(Value a, Value b) {
    if (!a.elem && !b.elem) return Value{std::nullopt, a.scalar * b.scalar};
    if (a.elem && b.elem) {
      if (a.elem->source() != b.elem->target()) fail("non-composable product");
      return Value{elem_mul(*a.elem, *b.elem), 0};
    }
    if (a.elem) return Value{elem_scale(*a.elem, b.scalar), 0};
    return Value{elem_scale(*b.elem, a.scalar), 0};
  }

  Value parse_sum() {
    skip_space();
    bool negate = false;
    if (peek() == '+' || peek() == '-') {
      negate = peek() == '-';
      ++pos_;
    }
    Value acc = parse_product();
    if (negate) acc = add(Value{std::nullopt, 0}, acc, true);
    for (;;) {
      skip_space();
      char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      Value rhs = parse_product();
      acc = add(std::move(acc), std::move(rhs), c == '-');
    }
    return acc;
  }

  bool starts_factor() const {
    char c = peek();
    return is_name_start(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '(';
  }

  Value parse_product() {
    skip_space();
    Value acc = parse_power();
    for (;;) {
      skip_space();
      if (peek() == '*') {
        ++pos_;
        skip_space();
        acc = multiply(std::move(acc), parse_power());
      } else if (starts_factor()) {
        acc = multiply(std::move(acc), parse_power());
      } else {
        break;
      }
    }
    return acc;
  }

  unsigned parse_exponent() {
    skip_space();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent");
    unsigned long k = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      k = k * 10 + static_cast<unsigned long>(peek() - '0');
      if (k > 1000000) fail("exponent too large");
      ++pos_;
    }
    return static_cast<unsigned>(k);
  }

  Value parse_power() {
    Value base = parse_atom();
    skip_space();
    if (peek() != '^') return base;
    ++pos_;
    unsigned k = parse_exponent();
    if (!base.elem) return Value{std::nullopt, boost::multiprecision::pow(base.scalar, k)};
    if (base.elem->source() != base.elem->target()) fail("power of a non-endomorphism");
    return Value{elem_pow(*base.elem, k), 0};
  }

  std::string read_name() {
    std::size_t start = pos_;
    while (!at_end() && is_name_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Value parse_atom() {
    skip_space();
    char c = peek();
    if (c == '(') {
      ++pos_;
      Value v = parse_sum();
      skip_space();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      std::string digits(text_.substr(start, pos_ - start));
      if (digits == "1" && peek() == '_') {
        ++pos_;
        std::string obj = read_name();
        auto o = sig_.find_object(obj);
        if (!o) fail("unknown object '" + obj + "'");
        return Value{Element::identity(*o), 0};
      }
      return Value{std::nullopt, Integer(digits)};
    }
    if (is_name_start(c)) {
      std::size_t start = pos_;
      std::string name = read_name();
      auto g = sig_.find_generator(name);
      if (!g) {
        pos_ = start;
        fail("unknown generator '" + name + "'");
      }
      return Value{Element::generator(sig_, *g), 0};
    }
    if (at_end()) fail("unexpected end of expression");
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

Element parse_element(const Signature& sig, std::string_view text, std::optional<Endpoints> expected) {
  return ElementParser(sig, text, expected).run();
}

}  // namespace dgcat
