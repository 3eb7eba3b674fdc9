#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace operadica {

// Immutable s-expression: an integer, a symbol, or a list of Obj.
// Integers sort before symbols, symbols before lists; lists compare lexicographically.
class Obj {
 public:
  using List = std::vector<Obj>;

  Obj() : Obj(List{}) {}

  static Obj integer(long long v) {
    if (v >= -16 && v < 256) return small_integers()[static_cast<std::size_t>(v + 16)];
    return Obj(Value{v});
  }
  static Obj symbol(std::string s) {
    if (s.empty()) throw std::invalid_argument("empty symbol");
    return Obj(Value{std::move(s)});
  }
  static Obj list(List items) { return Obj(Value{std::move(items)}); }

  // (tag args...)
  template <typename... Args>
  static Obj tagged(const std::string& tag, Args&&... args) {
    return list(List{symbol(tag), Obj(std::forward<Args>(args))...});
  }
  static Obj tagged_list(const std::string& tag, const List& rest) {
    List items;
    items.reserve(rest.size() + 1);
    items.push_back(symbol(tag));
    items.insert(items.end(), rest.begin(), rest.end());
    return list(std::move(items));
  }
  static Obj int_list(const std::string& tag, const std::vector<long long>& values) {
    List items;
    items.reserve(values.size() + 1);
    items.push_back(symbol(tag));
    for (long long v : values) items.push_back(integer(v));
    return list(std::move(items));
  }

  Obj(long long v) : Obj(integer(v)) {}  // NOLINT
  Obj(int v) : Obj(integer(v)) {}        // NOLINT

  bool is_int() const { return rep_->value.index() == 0; }
  bool is_symbol() const { return rep_->value.index() == 1; }
  bool is_list() const { return rep_->value.index() == 2; }

  long long as_int() const {
    if (!is_int()) throw std::invalid_argument("expected an integer, got " + str());
    return std::get<0>(rep_->value);
  }
  const std::string& as_symbol() const {
    if (!is_symbol()) throw std::invalid_argument("expected a symbol, got " + str());
    return std::get<1>(rep_->value);
  }
  const List& items() const {
    if (!is_list()) throw std::invalid_argument("expected a list, got " + str());
    return std::get<2>(rep_->value);
  }
  std::size_t length() const { return items().size(); }
  const Obj& operator[](std::size_t i) const { return items().at(i); }

  // Head symbol of a tagged list, or "" if there is none.
  std::string tag() const {
    if (!is_list() || items().empty() || !items()[0].is_symbol()) return "";
    return items()[0].as_symbol();
  }
  bool has_tag(const std::string& t) const { return tag() == t; }

  // Integer payload of (tag i1 i2 ...).
  std::vector<long long> int_args() const {
    std::vector<long long> out;
    const auto& it = items();
    for (std::size_t k = 1; k < it.size(); ++k) out.push_back(it[k].as_int());
    return out;
  }

  std::size_t hash() const { return rep_->hash; }

  std::strong_ordering operator<=>(const Obj& o) const {
    if (rep_ == o.rep_) return std::strong_ordering::equal;
    if (auto c = rep_->value.index() <=> o.rep_->value.index(); c != 0) return c;
    switch (rep_->value.index()) {
      case 0: return std::get<0>(rep_->value) <=> std::get<0>(o.rep_->value);
      case 1: {
        int c = std::get<1>(rep_->value).compare(std::get<1>(o.rep_->value));
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
      }
      default: {
        const auto& a = std::get<2>(rep_->value);
        const auto& b = std::get<2>(o.rep_->value);
        for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
          if (auto c = a[i] <=> b[i]; c != 0) return c;
        return a.size() <=> b.size();
      }
    }
  }
  bool operator==(const Obj& o) const {
    if (rep_ == o.rep_) return true;
    if (rep_->hash != o.rep_->hash) return false;
    return (*this <=> o) == 0;
  }

  std::string str() const {
    std::string out;
    write(out);
    return out;
  }

  void write(std::string& out) const {
    switch (rep_->value.index()) {
      case 0: out += std::to_string(std::get<0>(rep_->value)); break;
      case 1: out += std::get<1>(rep_->value); break;
      default: {
        out += '(';
        bool first = true;
        for (const auto& x : std::get<2>(rep_->value)) {
          if (!first) out += ' ';
          first = false;
          x.write(out);
        }
        out += ')';
      }
    }
  }

  static Obj parse(const std::string& text);

 private:
  using Value = std::variant<long long, std::string, List>;
  struct Rep {
    Value value;
    std::size_t hash;
  };

  explicit Obj(Value v) {
    std::size_t h = v.index() * 0x9e3779b97f4a7c15ULL;
    switch (v.index()) {
      case 0: h ^= std::hash<long long>{}(std::get<0>(v)) + 0x51ed27; break;
      case 1: h ^= std::hash<std::string>{}(std::get<1>(v)); break;
      default:
        for (const auto& x : std::get<2>(v)) h = (h ^ x.hash()) * 0x100000001b3ULL + 0x7f4a7c15;
    }
    rep_ = std::make_shared<const Rep>(Rep{std::move(v), h});
  }

  // Small integers share one node each; permutations and words are mostly made of them.
  static const std::vector<Obj>& small_integers() {
    static const std::vector<Obj> table = [] {
      std::vector<Obj> t;
      for (long long v = -16; v < 256; ++v) t.push_back(Obj(Value{v}));
      return t;
    }();
    return table;
  }

  std::shared_ptr<const Rep> rep_;
};

inline std::ostream& operator<<(std::ostream& os, const Obj& o) { return os << o.str(); }

namespace detail {

class SexpReader {
 public:
  explicit SexpReader(const std::string& s) : s_(s) {}

  Obj read_all() {
    Obj o = read();
    skip();
    if (pos_ != s_.size()) fail("trailing text");
    return o;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("cannot parse '" + s_ + "' at offset " + std::to_string(pos_) +
                                ": " + why);
  }
  void skip() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' ||
                                s_[pos_] == '\r'))
      ++pos_;
  }
  Obj read() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (s_[pos_] == ')') fail("unbalanced ')'");
    if (s_[pos_] == '(') {
      ++pos_;
      Obj::List items;
      for (;;) {
        skip();
        if (pos_ >= s_.size()) fail("missing ')'");
        if (s_[pos_] == ')') {
          ++pos_;
          return Obj::list(std::move(items));
        }
        items.push_back(read());
      }
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] != '(' && s_[pos_] != ')' && s_[pos_] != ' ' &&
           s_[pos_] != '\t' && s_[pos_] != '\n' && s_[pos_] != '\r')
      ++pos_;
    std::string tok = s_.substr(start, pos_ - start);
    if (is_integer_token(tok)) {
      try {
        return Obj::integer(std::stoll(tok));
      } catch (const std::out_of_range&) {
        fail("integer out of range");
      }
    }
    return Obj::symbol(tok);
  }
  static bool is_integer_token(const std::string& t) {
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Obj Obj::parse(const std::string& text) { return detail::SexpReader(text).read_all(); }

struct ObjHash {
  std::size_t operator()(const Obj& o) const { return o.hash(); }
};

}  // namespace operadica
